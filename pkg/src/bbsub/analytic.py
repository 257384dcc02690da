"""Complex evaluation primitives: principal branches, Chi/Shi, analytic functions on the disc.

Every function here accepts a scalar or an array.  Scalars come back as Python
``complex``; arrays keep their shape.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
from scipy.special import roots_jacobi

from .errors import DomainError
from .quadrature import DEFAULT_LEVELS, DEFAULT_TOL, gauss_kronrod

EULER_GAMMA = 0.57721566490153286060651209008240243

SERIES_RTOL = 1e-15
SERIES_MAX_TERMS = 60

CAUCHY_SAMPLES = 64
CAUCHY_MAX_RADIUS = 0.05

# Gauss-Jacobi rule for algebraic endpoint weights, used on [0, JACOBI_SPLIT].
JACOBI_NODES = 40
JACOBI_SPLIT = 0.5

# Points per quadrature batch; bounds memory for nested integrals.
CHUNK = 2048


def _as_complex(w):
    w = np.asarray(w, dtype=complex)
    # +0.0 turns a signed -0.0 imaginary part into +0.0: the cut is approached from above.
    return w.real + 1j * (w.imag + 0.0)


def _out(x):
    return complex(x) if np.ndim(x) == 0 else x


def principal_sqrt(w):
    """Square root with ``Re >= 0``; on the negative axis the value from above (``+i|w|^½``)."""
    return _out(np.sqrt(_as_complex(w)))


def sqrt_upper(w):
    """Square root with ``Im >= 0`` (the branch used by the parabolic map)."""
    s = np.sqrt(_as_complex(w))
    return _out(np.where(s.imag < 0, -s, s))


def principal_log(w):
    """Logarithm with imaginary part in ``(-pi, pi]``."""
    w = _as_complex(w)
    if np.any(w == 0):
        raise DomainError("principal_log is undefined at 0")
    return _out(np.log(w))


def _even_odd_series(z, odd):
    # odd:  sum_{k>=0} z^(2k+1) / ((2k+1) (2k+1)!)
    # even: sum_{k>=1} z^(2k)   / ((2k)   (2k)!)
    z2 = z * z
    if odd:
        power = z.copy()
        total = power.copy()
        n = 1
    else:
        power = np.ones_like(z)
        total = np.zeros_like(z)
        n = 0
    for _ in range(SERIES_MAX_TERMS):
        power = power * z2 / ((n + 1) * (n + 2))
        n += 2
        term = power / n
        total = total + term
        if np.all(np.abs(term) <= SERIES_RTOL * np.abs(total)):
            break
    return total


def shi(z):
    """Hyperbolic sine integral ``int_0^z sinh(t)/t dt`` by its Taylor series."""
    z = _as_complex(z)
    return _out(_even_odd_series(z, odd=True))


def chi(z):
    """Hyperbolic cosine integral ``gamma + log z + int_0^z (cosh t - 1)/t dt``."""
    z = _as_complex(z)
    if np.any(z == 0):
        raise DomainError("chi has a logarithmic singularity at 0")
    return _out(EULER_GAMMA + np.log(z) + _even_odd_series(z, odd=False))


def chi_regular(z):
    """``Chi(z) - euler_gamma - log z``: the entire part of Chi, finite at 0."""
    return _out(_even_odd_series(_as_complex(z), odd=False))


def cauchy_derivative(fn, z, samples=CAUCHY_SAMPLES):
    """Derivative of ``fn`` at ``z`` from the trapezoidal Cauchy integral.

    The circle has radius ``min(0.05, (1 - |z|)/2)`` so it stays inside the disc.
    """
    z = np.asarray(z, dtype=complex)
    rho = np.minimum(CAUCHY_MAX_RADIUS, 0.5 * (1.0 - np.abs(z)))
    theta = 2.0 * np.pi * np.arange(samples) / samples
    rot = np.exp(1j * theta)
    ring = z[..., None] + rho[..., None] * rot
    values = np.asarray(fn(ring))
    return np.mean(values / rot, axis=-1) / rho


@dataclass(frozen=True)
class AnalyticFn:
    """An analytic function on the unit disc with value and derivative.

    ``kind`` is one of ``"closed"``, ``"series"`` or ``"integral"``; ``value``
    and ``derivative`` are array callables.  Without ``derivative`` the Cauchy
    formula is used.
    """

    name: str
    kind: str
    value: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray] | None = None
    at_zero: complex = 1.0
    params: Mapping[str, object] = field(default_factory=dict)

    def _check(self, z):
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) >= 1.0):
            raise DomainError(f"{self.name}: evaluation requires |z| < 1")
        return z

    def __call__(self, z):
        return _out(np.asarray(self.value(self._check(z)), dtype=complex))

    def deriv(self, z):
        z = self._check(z)
        if self.derivative is not None:
            return _out(np.asarray(self.derivative(z), dtype=complex))
        return _out(cauchy_derivative(self.value, z))

    def derivative_fn(self):
        """``f'`` as an :class:`AnalyticFn` (its own derivative via Cauchy)."""
        return AnalyticFn(
            name=f"d/dz {self.name}",
            kind=self.kind,
            value=lambda z: self.deriv(z),
            at_zero=self.deriv(0.0),
            params=dict(self.params),
        )

    def __repr__(self):
        ps = ", ".join(f"{k}={v!r}" for k, v in self.params.items() if k != "coeffs")
        return f"AnalyticFn({self.name!r}, kind={self.kind!r}{', ' + ps if ps else ''})"


def evaluate(f: AnalyticFn, z):
    return f(z)


def deriv(f: AnalyticFn, z):
    return f.deriv(z)


def closed_form(name, value, derivative=None, at_zero=1.0, **params) -> AnalyticFn:
    return AnalyticFn(name, "closed", value, derivative, complex(at_zero), params)


def power_series(coeffs, name="series") -> AnalyticFn:
    """``sum_n coeffs[n] z^n`` (coefficients in increasing order)."""
    c = np.asarray(coeffs, dtype=complex)
    dc = c[1:] * np.arange(1, len(c))

    def value(z):
        return np.polynomial.polynomial.polyval(z, c)

    def derivative(z):
        return np.polynomial.polynomial.polyval(z, dc) if len(dc) else np.zeros_like(z)

    return AnalyticFn(name, "series", value, derivative, complex(c[0]), {"coeffs": tuple(c)})


def _jacobi_rule(power, n=JACOBI_NODES, b=JACOBI_SPLIT):
    # nodes/weights for int_0^b s^power g(s) ds
    x, w = roots_jacobi(n, 0.0, power)
    s = 0.5 * b * (x + 1.0)
    return s, w * (0.5 * b) ** (power + 1.0)


def integrate_family(integrand, z, tol=DEFAULT_TOL, max_levels=DEFAULT_LEVELS, aux=(), power=0.0):
    """``int_0^1 s^power integrand(s, z) ds`` for every entry of ``z``, batched in chunks.

    ``integrand`` is called with ``s`` of shape ``(m, 1)`` and ``z`` of shape
    ``(1, n)``, followed by one ``(1, n)`` slice of every array in ``aux``
    (per-point data with the shape of ``z``).  ``integrand`` should be smooth
    on ``[0, 1]``; a non-integer ``power > -1`` is handled by a Gauss-Jacobi
    rule on ``[0, 1/2]`` and adaptive Gauss-Kronrod on ``[1/2, 1]``.
    """
    if not power > -1:
        raise DomainError(f"weight s^{power} is not integrable at 0")
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    extra = [np.broadcast_to(np.asarray(a), z.shape).ravel() for a in aux]
    out = np.empty(flat.shape, dtype=complex)
    smooth = float(power).is_integer() and power >= 0
    if not smooth:
        s_j, w_j = _jacobi_rule(float(power))
    for start in range(0, flat.size, CHUNK):
        sl = slice(start, start + CHUNK)
        zc = flat[sl][None, :]
        ac = [a[sl][None, :] for a in extra]

        def weighted(t):
            vals = np.asarray(integrand(t[:, None], zc, *ac), dtype=complex)
            return np.broadcast_to(vals, (len(t), zc.shape[1])) * t[:, None] ** power

        if smooth:
            out[sl] = gauss_kronrod(weighted, 0.0, 1.0, tol=tol, max_levels=max_levels)
        else:
            head_vals = np.asarray(integrand(s_j[:, None], zc, *ac), dtype=complex)
            head = w_j @ np.broadcast_to(head_vals, (len(s_j), zc.shape[1]))
            tail = gauss_kronrod(weighted, JACOBI_SPLIT, 1.0, tol=tol, max_levels=max_levels)
            out[sl] = head + tail
    return out.reshape(z.shape)


# Target functions q of the four regions.

def _sqrt1p(z):
    return np.sqrt(_as_complex(1.0 + np.asarray(z)))


SQRT_1PZ = closed_form(
    "sqrt(1+z)", _sqrt1p, lambda z: 0.5 / _sqrt1p(z), at_zero=1.0
)
EXP = closed_form("exp(z)", np.exp, np.exp, at_zero=1.0)
IDENTITY_ONE = closed_form("1", lambda z: np.ones_like(z), lambda z: np.zeros_like(z))


def janowski_fn(A, B) -> AnalyticFn:
    """``(1 + A z)/(1 + B z)``."""
    return closed_form(
        f"(1+{A}z)/(1+{B}z)",
        lambda z: (1 + A * z) / (1 + B * z),
        lambda z: (A - B) / (1 + B * z) ** 2,
        at_zero=1.0,
        A=A,
        B=B,
    )
