"""The four target domains with signed membership gaps and boundary curves.

The gap is the literal defect of each defining inequality: positive inside,
negative outside, zero on the boundary.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .analytic import EXP, SQRT_1PZ, AnalyticFn, closed_form, janowski_fn, sqrt_upper
from .errors import DomainError, ParameterError

PARABOLA_VMAX = 50.0


@dataclass(frozen=True)
class Region:
    kind: str
    A: float | None = None
    B: float | None = None

    def __post_init__(self):
        if self.kind not in ("janowski", "lemniscate", "expdisc", "parabola"):
            raise ParameterError(f"unknown region {self.kind!r}")
        if self.kind == "janowski":
            if self.A is None or self.B is None or not (-1.0 <= self.B < self.A <= 1.0):
                raise ParameterError(f"Janowski region needs -1 <= B < A <= 1, got A={self.A}, B={self.B}")

    @property
    def label(self):
        if self.kind == "janowski":
            return f"janowski({self.A:g},{self.B:g})"
        return self.kind

    def target(self) -> AnalyticFn:
        """The univalent map q with q(D) equal to this region."""
        if self.kind == "janowski":
            return janowski_fn(self.A, self.B)
        return {"lemniscate": SQRT_1PZ, "expdisc": EXP, "parabola": PHI_PAR}[self.kind]

    @classmethod
    def parse(cls, text: str) -> "Region":
        """Parse ``lemniscate``, ``expdisc``, ``parabola`` or ``janowski:A,B``."""
        name, _, args = text.strip().lower().partition(":")
        if name == "janowski":
            try:
                A, B = (float(x) for x in args.split(","))
            except ValueError:
                raise ParameterError(f"expected janowski:A,B, got {text!r}") from None
            return cls("janowski", A, B)
        return cls(name)


def janowski(A, B) -> Region:
    return Region("janowski", float(A), float(B))


LEMNISCATE = Region("lemniscate")
EXP_DISC = Region("expdisc")
PARABOLA = Region("parabola")


def gap_values(region: Region, w):
    """Vectorised gap; NaN where the defining expression is undefined."""
    w = np.asarray(w, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        if region.kind == "janowski":
            den = region.A - region.B * w
            out = np.where(den != 0, 1.0 - np.abs((w - 1.0) / den), np.nan)
        elif region.kind == "lemniscate":
            out = 1.0 - np.abs(w * w - 1.0)
        elif region.kind == "expdisc":
            on_cut = (w.imag == 0) & (w.real <= 0)
            out = np.where(on_cut, np.nan, 1.0 - np.abs(np.log(w)))
        else:
            out = w.real - np.abs(w - 1.0)
    return out


def gap(region: Region, w):
    """Signed membership gap of ``w``; raises :class:`DomainError` on poles and cuts."""
    out = gap_values(region, w)
    if np.any(np.isnan(out)):
        what = "pole A/B of the Moebius inverse" if region.kind == "janowski" else "cut (-inf, 0]"
        raise DomainError(f"{region.label}: gap undefined at the {what}")
    return float(out) if np.ndim(out) == 0 else out


def boundary_point(region: Region, theta):
    """Point on the boundary curve at parameter ``theta`` in ``[-pi, pi]``.

    Bounded regions use ``q(e^{i theta})``.  The parabola is cut off at
    ``|Im w| <= 50``: ``v = 50 theta/pi``, ``u = (1 + v^2)/2``.  The Janowski
    half-plane (``B = -1``) returns ``inf`` at its pole ``theta = 0``.
    """
    theta = np.asarray(theta, dtype=float)
    if region.kind == "parabola":
        v = PARABOLA_VMAX * theta / np.pi
        out = 0.5 * (1.0 + v * v) + 1j * v
    elif region.kind == "lemniscate":
        unit = np.cos(theta) + 1j * np.sin(theta)
        out = np.sqrt(1.0 + unit)
        out = np.where(np.abs(np.abs(theta) - np.pi) < 1e-15, 0.0, out)
    elif region.kind == "expdisc":
        out = np.exp(np.cos(theta) + 1j * np.sin(theta))
    else:
        unit = np.exp(1j * theta)
        den = 1.0 + region.B * unit
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(np.abs(den) > 1e-15, (1.0 + region.A * unit) / den, complex(np.inf))
    return complex(out) if np.ndim(out) == 0 else out


def _phi_par(z):
    z = np.asarray(z, dtype=complex)
    if np.any(z == 1.0):
        raise DomainError("phi_par is singular at z = 1")
    s = np.asarray(sqrt_upper(z))
    ratio = (1.0 + s) / (1.0 - s)
    ratio = ratio.real + 1j * (ratio.imag + 0.0)
    return 1.0 + (2.0 / np.pi**2) * np.log(ratio) ** 2


def _phi_par_deriv(z):
    # d/dz of log((1+s)/(1-s))^2 with s^2 = z:  2 L * (2/(1-z)) * 1/(2 s) = 2 L / (s (1 - z))
    z = np.asarray(z, dtype=complex)
    s = np.asarray(sqrt_upper(z))
    with np.errstate(divide="ignore", invalid="ignore"):
        L = np.log((1.0 + s) / (1.0 - s))
        d = (2.0 / np.pi**2) * 2.0 * L / (s * (1.0 - z))
    # L/s -> 2 as s -> 0
    return np.where(np.abs(s) < 1e-8, 8.0 / np.pi**2 * (1.0 + z / 3.0) / (1.0 - z), d)


PHI_PAR = closed_form("phi_par", _phi_par, _phi_par_deriv, at_zero=1.0)


def phi_par(z):
    """The parabolic map ``1 + (2/pi^2) log((1+s)/(1-s))^2`` with ``s = sqrt_upper(z)``."""
    out = _phi_par(z)
    return complex(out) if np.ndim(out) == 0 else out


def boundary_polyline(region: Region, n=256):
    theta = np.linspace(-np.pi, np.pi, n)
    return theta, np.asarray(boundary_point(region, theta))


def write_boundary_csv(region: Region, path, n=256):
    theta, w = boundary_polyline(region, n)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta", "re", "im"])
        for t, pt in zip(theta, w):
            writer.writerow([f"{t:.17g}", f"{pt.real:.17g}", f"{pt.imag:.17g}"])
