"""Briot-Bouquet transform and numerical subordination by image containment."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .analytic import AnalyticFn
from .errors import PoleError
from .regions import Region, gap_values

POLE_THRESHOLD = 1e-12
DEFAULT_TOL = 1e-9
DEFAULT_RADII = 12
DEFAULT_SAMPLES = 1024
INNER_RADIUS = 0.3
MAX_FAILURE_FRACTION = 0.01


def bb_transform(p: AnalyticFn, beta, gamma, z):
    """``p(z) + z p'(z) / (beta p(z) + gamma)``."""
    z = np.asarray(z, dtype=complex)
    pz = np.asarray(p(z))
    den = beta * pz + gamma
    small = np.abs(den) <= POLE_THRESHOLD
    if np.any(small):
        where = z[small].ravel()[0] if z.ndim else complex(z)
        modulus = np.abs(den[small]).ravel()[0] if den.ndim else abs(complex(den))
        raise PoleError(f"beta*p + gamma vanishes at z={where}", z=complex(where), modulus=float(modulus))
    dp = np.asarray(p.deriv(z))
    out = pz + z * dp / den
    return complex(out) if out.ndim == 0 else out


def bb_image(p: AnalyticFn, beta, gamma, name=None) -> AnalyticFn:
    """The transform ``z -> bb_transform(p, beta, gamma, z)`` as an analytic function."""
    return AnalyticFn(
        name or f"BB[{p.name}; {beta:g}, {gamma:g}]",
        "closed",
        lambda z: bb_transform(p, beta, gamma, z),
        at_zero=p.at_zero,
        params={"beta": beta, "gamma": gamma},
    )


@dataclass
class SubordReport:
    min_gap: float
    argmin: tuple[float, float]
    radii: list[float]
    samples_per_circle: int
    verdict: str
    target: str = ""
    function: str = ""
    tol: float = DEFAULT_TOL
    failures: int = 0
    p_at_zero: tuple[float, float] = (1.0, 0.0)

    def to_dict(self):
        d = asdict(self)
        d["argmin"] = {"r": self.argmin[0], "theta": self.argmin[1]}
        d["p_at_zero"] = {"re": self.p_at_zero[0], "im": self.p_at_zero[1]}
        return d

    @property
    def passed(self):
        return self.verdict == "contained"


def verdict_for(min_gap, tol):
    if min_gap > tol:
        return "contained"
    if min_gap < -tol:
        return "violated"
    return "inconclusive"


def _worker_count():
    try:
        n = int(os.environ.get("BB_SUBORD_THREADS", "0"))
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def _circle_gaps(p, target, r, theta):
    z = r * np.exp(1j * theta)
    try:
        with np.errstate(all="ignore"):
            values = np.asarray(p(z))
    except (ArithmeticError, ValueError):
        # fall back to per-sample evaluation so isolated failures are skipped
        values = np.empty_like(z)
        for i, zi in enumerate(z):
            try:
                values[i] = p(zi)
            except (ArithmeticError, ValueError):
                values[i] = np.nan
    return gap_values(target, values)


def is_subordinate(
    p: AnalyticFn,
    target: Region,
    r_max=0.99,
    n_radii=DEFAULT_RADII,
    n_samples=DEFAULT_SAMPLES,
    tol=DEFAULT_TOL,
    r_min=INNER_RADIUS,
) -> SubordReport:
    """Test ``p < q_target`` by sampling ``p`` on circles ``|z| = r`` up to ``r_max``.

    Valid because every target map is univalent: subordination reduces to
    ``p(0) = q(0) = 1`` plus containment of the image.
    """
    if not 0 < r_max < 1:
        raise ValueError("r_max must lie in (0, 1)")
    p0 = complex(p(0.0))
    radii = np.geomspace(min(r_min, r_max), r_max, n_radii) if n_radii > 1 else np.array([r_max])
    theta = np.linspace(-np.pi, np.pi, n_samples, endpoint=False)
    base = dict(
        radii=[float(r) for r in radii],
        samples_per_circle=int(n_samples),
        target=target.label,
        function=p.name,
        tol=tol,
        p_at_zero=(p0.real, p0.imag),
    )
    if abs(p0 - 1.0) > 1e-9:
        return SubordReport(min_gap=float("-inf"), argmin=(0.0, 0.0), verdict="violated", **base)

    with ThreadPoolExecutor(max_workers=min(_worker_count(), len(radii))) as pool:
        gaps = list(pool.map(lambda r: _circle_gaps(p, target, r, theta), radii))
    gaps = np.array(gaps)
    failures = int(np.sum(~np.isfinite(gaps)))
    masked = np.where(np.isfinite(gaps), gaps, np.inf)
    i, j = np.unravel_index(np.argmin(masked), masked.shape)
    min_gap = float(masked[i, j])
    verdict = verdict_for(min_gap, tol)
    if failures > MAX_FAILURE_FRACTION * gaps.size:
        verdict = "inconclusive"
    return SubordReport(
        min_gap=min_gap,
        argmin=(float(radii[i]), float(theta[j])),
        verdict=verdict,
        failures=failures,
        **base,
    )


def ode_residual(p: AnalyticFn, h: AnalyticFn, beta, gamma, r, n_samples=512):
    """Max of ``|bb_transform(p) - h|`` over ``n_samples`` points of ``|z| = r``."""
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    z = r * np.exp(2j * np.pi * np.arange(n_samples) / n_samples)
    return float(np.max(np.abs(bb_transform(p, beta, gamma, z) - np.asarray(h(z)))))
