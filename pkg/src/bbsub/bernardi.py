"""Bernardi operator, exemplar class members, Briot-Bouquet solutions and the test corpus."""

from __future__ import annotations

import configparser
import math
import warnings
from dataclasses import dataclass, field
from importlib import resources

import numpy as np
from scipy.integrate import solve_ivp

from .analytic import (
    EXP,
    IDENTITY_ONE,
    SQRT_1PZ,
    AnalyticFn,
    chi_regular,
    integrate_family,
    principal_sqrt,
    shi,
)
from .errors import DomainError, ParameterError, PoleError
from .regions import PHI_PAR, Region, janowski
from .subordination import SubordReport, is_subordinate

E = math.e
SQRT2 = math.sqrt(2.0)

P1_RANGE = (-1 / E + 1 / (1 - SQRT2 * E), -1 / E)
P2_RANGE = (-1 / 3, (1 - E) / (1 + 3 * E))

# Taylor start for ray integration of the Briot-Bouquet equation
SERIES_ORDER = 10
SERIES_RADIUS = 0.5
RAY_START = 1e-2


def _out(x):
    return complex(x) if np.ndim(x) == 0 else x


def _safe_ratio(f: AnalyticFn, w):
    """``f(w)/w``, with the limit ``f'(0)`` at (and within ``1e-100`` of) ``w = 0``."""
    w = np.asarray(w, dtype=complex)
    # complex division of subnormals overflows; the limit is exact to O(|w|) there
    zero = np.abs(w) < 1e-100
    wsafe = np.where(zero, 1.0, w)
    fw = np.asarray(f.value(wsafe), dtype=complex)
    if np.any(zero):
        fw = np.where(zero, complex(f.deriv(0.0)), fw / wsafe)
        return fw
    return fw / wsafe


# -- Bernardi operator ----------------------------------------------------------------------

def _check_c(c):
    if not c > -1:
        raise ParameterError(f"Bernardi operator needs c > -1, got {c}")


def bernardi_transform(f: AnalyticFn, c) -> AnalyticFn:
    """``F(z) = (c+1) int_0^1 s^{c-1} f(zs) ds`` as an :class:`AnalyticFn`.

    Written as ``(c+1) z int_0^1 s^c g(zs) ds`` with ``g(w) = f(w)/w`` so the
    integrand is smooth and the weight ``s^c`` is handled exactly.  ``F'`` is
    computed by differentiating under the integral sign.
    """
    _check_c(c)
    c = float(c)

    def value(z):
        z = np.asarray(z, dtype=complex)
        return (c + 1.0) * z * integrate_family(lambda s, zz: _safe_ratio(f, zz * s), z, power=c)

    def derivative(z):
        z = np.asarray(z, dtype=complex)
        return (c + 1.0) * integrate_family(lambda s, zz: np.asarray(f.deriv(zz * s)), z, power=c)

    return AnalyticFn(f"Bernardi[{f.name}; c={c:g}]", "integral", value, derivative, 0.0, {"c": c, "f": f.name})


def bernardi(f: AnalyticFn, c, z):
    _check_c(c)
    return bernardi_transform(f, c)(z)


# -- ratios and exemplars -------------------------------------------------------------------

def star_ratio(f: AnalyticFn, z):
    """``z f'(z)/f(z)``; the limit 1 at ``z = 0`` for normalised ``f``."""
    z = np.asarray(z, dtype=complex)
    zero = np.abs(z) < 1e-100  # as in _safe_ratio
    zs = np.where(zero, 0.5, z)
    fz = np.asarray(f(zs))
    if np.any((np.abs(fz) < 1e-300) & ~zero):
        raise PoleError(f"{f.name} vanishes inside the disc", z=complex(zs[np.abs(fz) < 1e-300].ravel()[0]))
    out = np.where(zero, 1.0 + 0j, zs * np.asarray(f.deriv(zs)) / fz)
    return _out(out)


def star_ratio_fn(f: AnalyticFn) -> AnalyticFn:
    return AnalyticFn(f"zf'/f[{f.name}]", f.kind, lambda z: star_ratio(f, z), at_zero=1.0, params=dict(f.params))


def make_starlike_from_target(phi: AnalyticFn) -> AnalyticFn:
    """``f(z) = z exp(int_0^1 (phi(zu) - 1)/u du)``, so that ``z f'/f = phi``.

    The derivative is exact: ``f' = exp(I) phi``.
    """
    if abs(complex(phi(0.0)) - 1) > 1e-12:
        raise ParameterError("make_starlike_from_target needs phi(0) = 1")
    if phi is IDENTITY_ONE:
        return AnalyticFn("z", "closed", lambda z: z, lambda z: np.ones_like(z), 0.0)

    def log_part(z):
        return integrate_family(lambda u, zz: (np.asarray(phi.value(zz * u)) - 1.0) / u, z)

    def value(z):
        z = np.asarray(z, dtype=complex)
        return z * np.exp(log_part(z))

    def derivative(z):
        z = np.asarray(z, dtype=complex)
        return np.exp(log_part(z)) * np.asarray(phi.value(z))

    return AnalyticFn(f"starlike[{phi.name}]", "integral", value, derivative, 0.0, {"phi": phi.name})


def make_derivative_from_target(phi: AnalyticFn) -> AnalyticFn:
    """``f(z) = z int_0^1 phi(zu) du``, so that ``f' = phi``."""

    def value(z):
        z = np.asarray(z, dtype=complex)
        return z * integrate_family(lambda u, zz: np.asarray(phi.value(zz * u)), z)

    return AnalyticFn(f"primitive[{phi.name}]", "integral", value, lambda z: np.asarray(phi.value(z)), 0.0,
                      {"phi": phi.name})


def janowski_starlike(A, B) -> AnalyticFn:
    """Closed-form ``f`` with ``z f'/f = (1+Az)/(1+Bz)``."""
    if B == 0:
        return AnalyticFn(f"z exp({A}z)", "closed", lambda z: z * np.exp(A * z),
                          lambda z: (1 + A * z) * np.exp(A * z), 0.0, {"A": A, "B": B})
    e = (A - B) / B
    return AnalyticFn(
        f"z(1+{B}z)^{e:g}", "closed",
        lambda z: z * (1 + B * z) ** e,
        lambda z: (1 + B * z) ** (e - 1) * (1 + A * z),
        0.0, {"A": A, "B": B},
    )


def open_door(d, f, z):
    """``d (1+z)/(1-z) + 2 f z/(1-z^2)``."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(1 - z * z) == 0):
        raise PoleError("open door mapping has poles at z = +-1", z=complex(z.ravel()[0]) if z.ndim else complex(z))
    return _out(d * (1 + z) / (1 - z) + 2 * f * z / (1 - z * z))


# -- Briot-Bouquet solutions ----------------------------------------------------------------

def _primitive_log(h: AnalyticFn):
    """``J(w) = int_0^w (h(x) - 1)/x dx`` by quadrature."""

    def J(w):
        return integrate_family(lambda u, ww: (np.asarray(h.value(ww * u)) - 1.0) / u, w)

    return J


def _integral_solution(name, h: AnalyticFn, J, beta, gamma, **params) -> AnalyticFn:
    """Solution of ``p + z p'/(beta p + gamma) = h`` with ``p(0) = 1``, for ``beta + gamma > 0``.

    ``v = 1/(beta p + gamma)`` solves ``z v' + (beta h + gamma) v = 1``, so
    ``v(z) = int_0^1 s^{beta+gamma-1} exp(beta (J(zs) - J(z))) ds``.
    """
    lam = beta + gamma
    h0 = complex(h.deriv(0.0))

    def v(z):
        z = np.asarray(z, dtype=complex)
        Jz = np.asarray(J(z))
        return integrate_family(
            lambda s, zz, jz: np.exp(beta * (np.asarray(J(zz * s)) - jz)), z, aux=(Jz,), power=lam - 1.0
        )

    def dv(z):
        # v' = (beta/z) int s^{lam-1} R(s) (h(zs) - h(z)) ds
        z = np.asarray(z, dtype=complex)
        small = np.abs(z) < 1e-12
        zs = np.where(small, 0.5, z)
        Jz = np.asarray(J(zs))
        hz = np.asarray(h.value(zs))

        def integrand(s, zz, jz, hh):
            w = zz * s
            return np.exp(beta * (np.asarray(J(w)) - jz)) * (np.asarray(h.value(w)) - hh)

        out = beta * integrate_family(integrand, zs, aux=(Jz, hz), power=lam - 1.0) / zs
        limit = -beta * h0 / (lam * (lam + 1.0))
        return np.where(small, limit, out)

    def value(z):
        return (1.0 / v(z) - gamma) / beta

    def derivative(z):
        vz = v(z)
        return -dv(z) / (beta * vz * vz)

    return AnalyticFn(name, "integral", value, derivative, 1.0, {"beta": beta, "gamma": gamma, **params})


def _linear_solution(h: AnalyticFn, gamma) -> AnalyticFn:
    # beta = 0: p + z p'/gamma = h  =>  p(z) = gamma int_0^1 t^{gamma-1} h(tz) dt

    def value(z):
        return gamma * integrate_family(lambda t, zz: np.asarray(h.value(zz * t)), np.asarray(z, dtype=complex),
                                        power=gamma - 1.0)

    def derivative(z):
        return gamma * integrate_family(lambda t, zz: np.asarray(h.deriv(zz * t)), np.asarray(z, dtype=complex),
                                        power=gamma)

    return AnalyticFn(f"BBsol[{h.name}; 0, {gamma:g}]", "integral", value, derivative, 1.0,
                      {"beta": 0.0, "gamma": gamma})


def taylor_coefficients(fn: AnalyticFn, n, radius=SERIES_RADIUS, samples=128):
    """First ``n`` Taylor coefficients at 0 by the FFT of samples on ``|z| = radius``."""
    w = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    c = np.fft.fft(np.asarray(fn(w))) / samples
    return c[:n] / radius ** np.arange(n)


def _ode_solution(h: AnalyticFn, beta, gamma) -> AnalyticFn:
    """Ray integration of ``s dv/ds = 1 - (beta h(sz) + gamma) v`` from a Taylor start."""
    lam = beta + gamma
    hc = taylor_coefficients(h, SERIES_ORDER)
    vc = np.zeros(SERIES_ORDER, dtype=complex)
    for n in range(SERIES_ORDER):
        if abs(n + lam) < 1e-12:
            raise ParameterError(f"no analytic solution: beta + gamma = {-n}")
        rhs = (1.0 if n == 0 else 0.0) - beta * sum(hc[j] * vc[n - j] for j in range(1, n + 1))
        vc[n] = rhs / (n + lam)

    def v(z):
        z = np.asarray(z, dtype=complex)
        flat = z.ravel()
        out = np.empty_like(flat)
        big = np.abs(flat) > RAY_START
        out[~big] = np.polynomial.polynomial.polyval(flat[~big], vc)
        if np.any(big):
            zb = flat[big]
            s0 = RAY_START / np.max(np.abs(zb))
            y0 = np.polynomial.polynomial.polyval(s0 * zb, vc)

            def rhs(s, y):
                return (1.0 - (beta * np.asarray(h.value(s * zb)) + gamma) * y) / s

            sol = solve_ivp(rhs, (s0, 1.0), y0.astype(complex), method="DOP853", rtol=1e-12, atol=1e-14)
            if not sol.success:
                raise ArithmeticError(f"ray integration failed: {sol.message}")
            out[big] = sol.y[:, -1]
        return out.reshape(z.shape)

    def value(z):
        return (1.0 / v(z) - gamma) / beta

    return AnalyticFn(f"BBsol[{h.name}; {beta:g}, {gamma:g}]", "ode", value, None, 1.0,
                      {"beta": beta, "gamma": gamma})


def bb_solution(h: AnalyticFn, beta, gamma) -> AnalyticFn:
    """The analytic solution ``p`` (``p(0) = 1``) of ``p + z p'/(beta p + gamma) = h``.

    Uses the integral representation when ``beta + gamma > 0`` and ray
    integration of the linearised equation otherwise.
    """
    if beta == 0:
        if not gamma > 0:
            raise ParameterError("beta = 0 needs gamma > 0")
        return _linear_solution(h, gamma)
    if beta + gamma > 0:
        J = _primitive_log(h)
        return _integral_solution(f"BBsol[{h.name}; {beta:g}, {gamma:g}]", h, J, beta, gamma)
    return _ode_solution(h, beta, gamma)


def _J_sqrt(w):
    s = np.asarray(principal_sqrt(1.0 + np.asarray(w)))
    return 2.0 * s - 2.0 - 2.0 * np.log((1.0 + s) / 2.0)


def _J_exp(w):
    # int_0^w (e^x - 1)/x dx = Chi(w) + Shi(w) - euler_gamma - log w, summed without the log
    return np.asarray(chi_regular(w)) + np.asarray(shi(w))


def _warn_range(name, gamma, lo, hi):
    if not lo - 1e-12 <= gamma <= hi + 1e-12:
        warnings.warn(f"{name}: gamma={gamma} outside the proven range [{lo:.6g}, {hi:.6g}]", stacklevel=3)


def example_p1_fn(gamma) -> AnalyticFn:
    """Solution of ``p + z p'/(p + gamma) = sqrt(1+z)``, ``p(0) = 1``.

    ``p = 1/v - gamma`` with ``v = int_0^1 t^gamma R(t, z) dt`` and
    ``R = e^{2 sqrt(1+tz) - 2 sqrt(1+z)} (sqrt(1+z)+1)^2/(sqrt(1+tz)+1)^2``.
    """
    _warn_range("example_p1", gamma, *P1_RANGE)
    if not gamma > -1:
        raise ParameterError("example_p1 needs gamma > -1")
    return _integral_solution(f"example_p1(gamma={gamma:g})", SQRT_1PZ, _J_sqrt, 1.0, gamma)


def example_p2_fn(gamma) -> AnalyticFn:
    """Solution of ``p + z p'/(p + gamma) = e^z``, ``p(0) = 1``, through Chi and Shi."""
    _warn_range("example_p2", gamma, *P2_RANGE)
    if not gamma > -1:
        raise ParameterError("example_p2 needs gamma > -1")
    return _integral_solution(f"example_p2(gamma={gamma:g})", EXP, _J_exp, 1.0, gamma)


def example_p1(gamma, z):
    return example_p1_fn(gamma)(z)


def example_p2(gamma, z):
    return example_p2_fn(gamma)(z)


def example_p1_as_printed(gamma) -> AnalyticFn:
    """``-gamma + int_0^1 t^{-gamma} e^{2 sqrt(z+1) - 2 sqrt(tz+1)} (sqrt(tz+1)+1)^2/(sqrt(z+1)+1)^2 dt``.

    Kept for comparison: its value at 0 is ``1/(1-gamma) - gamma``, not 1.
    """

    def value(z):
        z = np.asarray(z, dtype=complex)

        def integrand(t, zz):
            st = principal_sqrt(1 + t * zz)
            sz = principal_sqrt(1 + zz)
            return np.exp(2 * sz - 2 * st) * (st + 1) ** 2 / (sz + 1) ** 2

        return -gamma + integrate_family(integrand, z, power=-gamma)

    return AnalyticFn(f"example_p1_as_printed(gamma={gamma:g})", "integral", value, None,
                      1 / (1 - gamma) - gamma, {"gamma": gamma})


def example_p2_as_printed(gamma) -> AnalyticFn:
    """``int_0^1 t^{1-gamma} e^{-Chi(tz)+Chi(z)-Shi(tz)+Shi(z)} dt - gamma`` (value at 0 is ``1/(1-gamma) - gamma``)."""

    def value(z):
        z = np.asarray(z, dtype=complex)

        def integrand(t, zz):
            # t^{1-gamma} e^{-Chi(tz)+Chi(z)} = t^{-gamma} e^{-(J(tz) - J(z))}, finite at z = 0
            return np.exp(-(_J_exp(t * zz) - _J_exp(zz)))

        return integrate_family(integrand, z, power=-gamma) - gamma

    return AnalyticFn(f"example_p2_as_printed(gamma={gamma:g})", "integral", value, None,
                      1 / (1 - gamma) - gamma, {"gamma": gamma})


# -- corpus ---------------------------------------------------------------------------------

MODES = ("ratio", "derivative", "raw")


@dataclass
class CorpusEntry:
    name: str
    f: AnalyticFn
    region: Region
    mode: str
    note: str = ""
    corollary: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParameterError(f"mode must be one of {MODES}, got {self.mode!r}")

    def transformed(self) -> AnalyticFn:
        if self.mode == "ratio":
            return star_ratio_fn(self.f)
        if self.mode == "derivative":
            return self.f.derivative_fn()
        return self.f

    def normalization_defect(self):
        """``max(|f(0)|, |f'(0) - 1|)`` for class-A entries, ``|p(0) - 1|`` for raw ones."""
        if self.mode == "raw":
            return abs(complex(self.f(0.0)) - 1)
        return max(abs(complex(self.f(0.0))), abs(complex(self.f.deriv(0.0)) - 1))


def class_membership(entry: CorpusEntry, r_max=0.99, **kw) -> SubordReport:
    """Apply the entry's transform and test subordination to its claimed region."""
    return is_subordinate(entry.transformed(), entry.region, r_max=r_max, **kw)


_TARGETS = {"lemniscate": SQRT_1PZ, "expdisc": EXP, "parabola": PHI_PAR, "one": IDENTITY_ONE}


def _target(spec: str) -> AnalyticFn:
    spec = spec.strip().lower()
    if spec in _TARGETS:
        return _TARGETS[spec]
    return Region.parse(spec).target()


def build_function(kind, params: dict, registry: dict | None = None) -> AnalyticFn:
    """Construct the analytic function of a manifest entry."""
    g = lambda k: float(params[k])  # noqa: E731
    if kind == "identity":
        return AnalyticFn("z", "closed", lambda z: z, lambda z: np.ones_like(z), 0.0)
    if kind == "koebe_half":
        return AnalyticFn("z/(1-z)", "closed", lambda z: z / (1 - z), lambda z: 1 / (1 - z) ** 2, 0.0)
    if kind == "janowski_starlike":
        return janowski_starlike(g("A"), g("B"))
    if kind == "starlike_target":
        return make_starlike_from_target(_target(params["target"]))
    if kind == "derivative_target":
        return make_derivative_from_target(_target(params["target"]))
    if kind == "example_p1":
        return example_p1_fn(g("gamma"))
    if kind == "example_p2":
        return example_p2_fn(g("gamma"))
    if kind == "bb_solution":
        return bb_solution(_target(params["target"]), g("beta"), g("gamma"))
    if kind == "bernardi":
        base = params["base"]
        if registry is None or base not in registry:
            raise ParameterError(f"bernardi entry refers to unknown base {base!r}")
        return bernardi_transform(registry[base], g("c"))
    raise ParameterError(f"unknown corpus kind {kind!r}")


def load_corpus(path=None) -> dict[str, CorpusEntry]:
    """Read the corpus manifest (INI) into entries; functions are built lazily in order."""
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keep A and B distinct from a and b
    if path is None:
        text = resources.files("bbsub").joinpath("corpus.ini").read_text()
        parser.read_string(text)
    else:
        with open(path) as fh:
            parser.read_file(fh)
    fns: dict[str, AnalyticFn] = {}
    out: dict[str, CorpusEntry] = {}
    for name in parser.sections():
        sec = dict(parser[name])
        kind = sec.pop("kind")
        claimed = sec.pop("claimed")
        mode = sec.pop("mode", "ratio")
        note = sec.pop("note", "")
        corollary = sec.pop("corollary", "")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            fn = build_function(kind, sec, fns)
        fns[name] = fn
        out[name] = CorpusEntry(name, fn, Region.parse(claimed), mode, note, corollary, sec)
    return out


def corpus_entry(name, path=None) -> CorpusEntry:
    corpus = load_corpus(path)
    try:
        return corpus[name]
    except KeyError:
        raise ParameterError(f"unknown corpus entry {name!r}; known: {sorted(corpus)}") from None


def example_entry(which, gamma) -> CorpusEntry:
    """``example_p1`` (claimed ExpDisc) or ``example_p2`` (claimed Janowski(1/2, -1/2))."""
    if which == "example_p1":
        return CorpusEntry(which, example_p1_fn(gamma), Region("expdisc"), "raw", params={"gamma": gamma})
    if which == "example_p2":
        return CorpusEntry(which, example_p2_fn(gamma), janowski(0.5, -0.5), "raw", params={"gamma": gamma})
    raise DomainError(f"unknown example {which!r}")
