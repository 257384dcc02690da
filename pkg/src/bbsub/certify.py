"""Boundary-gap functions of the admissibility inequalities and their certification.

For each theorem the gap ``h(t, k)`` is nonnegative exactly when the boundary
candidate ``psi(q(e^{it}), k e^{it} q'(e^{it}))`` lies outside the target
region.  Gaps are computed by complex arithmetic with denominators cleared;
the expanded trigonometric forms (``*_expanded``) are independent
transcriptions kept as cross-checks.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ParameterError, PoleError
from .theorems import BBParams, HypothesisResult, hypothesis, t5_condition_ii_sides

E = math.e
SQRT2 = math.sqrt(2.0)
POLE_EPS = 1e-12
LARGE_K = 1e3
ENDPOINT_TOL = 1e-9
REFINE_ROUNDS = 3
REFINE_HALF_WIDTH = 10  # points on each side of the incumbent per refinement round


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def _raise_pole(mask, what, t, k):
    if np.any(mask):
        t, k = np.broadcast_arrays(np.asarray(t, float), np.asarray(k, float))
        idx = np.flatnonzero(np.broadcast_to(mask, t.shape))[0]
        raise PoleError(f"{what} vanishes at t={t.flat[idx]}, k={k.flat[idx]}", z=complex(np.exp(1j * t.flat[idx])))


# -- T1: lemniscate membership of the exponential boundary ---------------------------------

def _t1_raw(t, k, beta, gamma):
    w = np.exp(1j * np.asarray(t, float))
    E_ = np.exp(w)
    D = beta * E_ + gamma
    N = E_ * D + k * w * E_
    h = np.abs(N * N - D * D) ** 2 - np.abs(D) ** 4
    return h, np.abs(D) <= POLE_EPS


def gap_t1(t, k, beta, gamma):
    """``|psi^2 - 1|^2 - 1`` times ``|beta e^{e^{it}} + gamma|^4``."""
    h, pole = _t1_raw(t, k, beta, gamma)
    _raise_pole(pole, "beta e^{e^{it}} + gamma", t, k)
    return _scalar(h)


def gap_t1_expanded(t, k, beta, gamma):
    t = np.asarray(t, float)
    c, s = np.cos(t), np.sin(t)
    ec = np.exp(c)
    e2c = np.exp(2 * c)
    X = gamma + k * c + beta * ec * np.cos(s)
    Y = k * s + beta * np.sin(s) * ec
    R = gamma + beta * ec * np.cos(s)
    f = (
        e2c * np.cos(2 * s) * (X**2 - Y**2) - 2 * np.sin(2 * s) * e2c * Y * X
        + beta**2 * np.sin(s) ** 2 * e2c - R**2
    ) ** 2 + (
        2 * e2c * np.cos(2 * s) * Y * X + np.sin(2 * s) * e2c * (X**2 - Y**2)
        - 2 * beta * np.sin(s) * ec * R
    ) ** 2
    g = (beta**2 * np.sin(s) ** 2 * e2c + R**2) ** 2
    return _scalar(f - g)


def t1_h0(k, beta, gamma):
    u = E * beta + gamma
    return (E**2 * (u + k) ** 2 - u**2) ** 2 - u**4


def t1_hpi(k, beta, gamma):
    u = beta / E + gamma
    return (((u - k) / E) ** 2 - u**2) ** 2 - u**4


# -- T2: exponential-disc membership of the Janowski boundary ------------------------------

def t2_P(t, k, p: BBParams):
    w = np.exp(1j * np.asarray(t, float))
    s = p.beta + p.gamma
    lin = s + p.G * w
    num = k * w * (p.A - p.B) + (1 + p.A * w) * lin
    den = (1 + p.B * w) * lin
    return num, den


def _t2_raw(t, k, p: BBParams):
    num, den = t2_P(t, k, p)
    pole = (np.abs(den) <= POLE_EPS) | (np.abs(num) <= POLE_EPS)
    with np.errstate(all="ignore"):
        P = num / den
        f = 4 * np.angle(P) ** 2 + np.log(np.abs(P) ** 2) ** 2 - 4
    return f, pole


def gap_t2(t, k, p: BBParams):
    """``4 arg(P)^2 + (log |P|^2)^2 - 4`` at the boundary point ``P(z_0)``."""
    f, pole = _t2_raw(t, k, p)
    _raise_pole(pole, "(1 + B e^{it})(beta + gamma + G e^{it}) or P", t, k)
    return _scalar(f)


def t2_psi(k, p: BBParams):
    A, B, b, g = p.A, p.B, p.beta, p.gamma
    return (A**2 * b + A * (2 * b + B * g + g + k) + b + B * (g - k) + g) / ((1 + B) * (b * (1 + A) + g * (1 + B)))


def t2_phi(k, p: BBParams):
    A, B, b, g = p.A, p.B, p.beta, p.gamma
    return (A**2 * b - 2 * A * b + (A - 1) * (B - 1) * g - A * k + b + B * k) / ((B - 1) * (-A * b + b - B * g + g))


def _arg(x):
    return np.angle(np.asarray(x, dtype=complex))


def t2_f0(k, p: BBParams):
    psi = t2_psi(k, p)
    return -4 + 4 * _arg(psi) ** 2 + np.log(psi**2) ** 2


def t2_fpi(k, p: BBParams):
    phi = t2_phi(k, p)
    return -4 + 4 * _arg(-phi) ** 2 + np.log(phi**2) ** 2


# -- T3: Janowski membership of the lemniscate boundary ------------------------------------

def _t3_parts(t, k, p: BBParams):
    t = np.asarray(t, float)
    w = np.exp(1j * t)
    one_w = 1 + w
    # the branch point 1 + e^{i pi} = 0 is removable: use the exact limit
    sq = np.where(np.abs(one_w) < 1e-15, 0.0, np.sqrt(one_w))
    lin = p.gamma + p.beta * sq
    Q = 2 * sq * lin
    N = k * w + 2 * one_w * lin
    return N, Q


def _t3_raw(t, k, p: BBParams):
    N, Q = _t3_parts(t, k, p)
    h = np.abs(N - Q) ** 2 - np.abs(p.A * Q - p.B * N) ** 2
    return h, np.zeros(np.shape(h), dtype=bool)


def gap_t3(t, k, p: BBParams):
    """``|N - Q|^2 - |A Q - B N|^2`` where ``P(z_0) = N/Q``."""
    return _scalar(_t3_raw(t, k, p)[0])


def _t3_expanded(t, k, p: BBParams, corrected):
    A, B, b, g = p.A, p.B, p.beta, p.gamma
    t = np.asarray(t, float)
    # sqrt(1 + e^{it}) = r e^{i t/4} on (-pi, pi); r vanishes at t = pi as in the complex form
    half = t / 4
    c2 = 2 * np.cos(t / 2)
    r = np.where(c2 < 1e-15, 0.0, np.sqrt(np.maximum(c2, 0.0)))
    S = np.sin(half) * r
    C = np.cos(half) * r
    st, ct = np.sin(t), np.cos(t)
    f = ((2 * b * ct + 2 * (b - g)) * S + st * (k + 2 * (g + b * (-1 + C)))) ** 2 + (
        -ct * (k + 2 * (g + b * (-1 + C))) + 2 * b * st * S + 2 * (b - g) * (1 - C)
    ) ** 2
    g1 = -2 * A * (b * st + g * S) + 4 * B * b * np.cos(t / 2) ** 2 * S + B * st * (k + 2 * g + 2 * b * C)
    if corrected:
        g2 = (-4 * A * b * np.cos(t / 2) ** 2 + B * (k + 2 * g) * ct + 2 * B * g - 2 * B * b * st * S
              + 2 * (-A * g + B * b * ct + B * b) * C)
    else:
        g2 = (-4 * A * b * np.cos(t / 2) ** 2 + B * (k + 2 * g) * ct + 2 * g - 2 * B * b * st * S
              + 2 * (-A * g + B * b * ct + b) * C)
    return _scalar(f - (g1**2 + g2**2))


def gap_t3_expanded(t, k, p: BBParams):
    """The trigonometric ``f(t) - g(t)`` exactly as printed."""
    return _t3_expanded(t, k, p, corrected=False)


def gap_t3_expanded_corrected(t, k, p: BBParams):
    """As printed but with ``2 B gamma`` and ``B beta`` in the second term of ``g``.

    Only this version reduces to ``S(k)`` at ``t = 0`` and matches the complex form.
    """
    return _t3_expanded(t, k, p, corrected=True)


def t3_S(k, p: BBParams):
    A, B, b, g = p.A, p.B, p.beta, p.gamma
    return (4 * (SQRT2 - 1) * b - 2 * (SQRT2 - 2) * g + k) ** 2 - (
        B * (4 * (SQRT2 * b + g) + k) - 2 * A * (2 * b + SQRT2 * g)
    ) ** 2


def t3_hpi(k, p: BBParams):
    return (1 - p.B**2) * np.asarray(k, float) ** 2


# -- T4: Janowski membership of the exponential boundary -----------------------------------

def _t4_raw(t, k, p: BBParams):
    w = np.exp(1j * np.asarray(t, float))
    E_ = np.exp(w)
    D = p.beta * E_ + p.gamma
    N = E_ * D + k * w * E_
    h = np.abs(N - D) ** 2 - np.abs(p.A * D - p.B * N) ** 2
    return h, np.abs(D) <= POLE_EPS


def gap_t4(t, k, p: BBParams):
    """``|psi - 1|^2 - |A - B psi|^2`` times ``|beta e^{e^{it}} + gamma|^2``."""
    h, pole = _t4_raw(t, k, p)
    _raise_pole(pole, "beta e^{e^{it}} + gamma", t, k)
    return _scalar(h)


def gap_t4_expanded(t, k, p: BBParams):
    A, B, b, g = p.A, p.B, p.beta, p.gamma
    t = np.asarray(t, float)
    c, s = np.cos(t), np.sin(t)
    f = (
        np.exp(3 * c) * (2 * b * k * s * np.sin(s) + 2 * b * k * c * np.cos(s) - 2 * b**2 * np.cos(s) + 2 * b * g * np.cos(s))
        + np.exp(2 * c) * ((b - g) ** 2 + k**2 - 2 * b * k * c + 2 * g * k * c + 2 * b * g * np.sin(s) ** 2
                           - 2 * b * g * np.cos(s) ** 2)
        + np.exp(c) * (2 * g * k * s * np.sin(s) - 2 * g * k * c * np.cos(s) + 2 * b * g * np.cos(s) - 2 * g**2 * np.cos(s))
        + b**2 * np.exp(4 * c) + g**2
    )
    gg = (
        A**2 * g**2 + b**2 * B**2 * np.exp(4 * c)
        + 2 * b * B * np.exp(3 * c) * ((B * g - A * b) * np.cos(s) + B * k * np.cos(t - s))
        + np.exp(2 * c) * (B * (B * (g**2 + k**2) - 2 * A * b * g) + 2 * B * (B * g - A * b) * k * c
                           - 2 * A * B * b * g * np.cos(2 * s) + A**2 * b**2)
        + 2 * A * g * np.exp(c) * ((A * b - B * g) * np.cos(s) - B * k * np.cos(t + s))
    )
    return _scalar(f - gg)


def t4_phi(k, p: BBParams):
    A, B, b, g = p.A, p.B, p.beta, p.gamma
    return (
        E**2 * ((1 - A**2) * b**2 + 2 * k * (b * (A * B - 1) + (1 - B**2) * g) + 4 * b * g * (A * B - 1)
                + (1 - B**2) * (g**2 + k**2))
        + 2 * E * g * (-(A**2) * b + (A * B - 1) * (g + k) + b)
        + 2 * E**3 * b * (b * (A * B - 1) + (1 - B**2) * (g + k))
        + E**4 * b**2 * (1 - B**2)
        + (1 - A**2) * g**2
    )


def t4_psi(k, p: BBParams):
    A, B, b, g = p.A, p.B, p.beta, p.gamma
    return (-1 / E**4) * (
        E * ((A - 1) * b + (1 - B) * (g - k)) + E**2 * (A - 1) * g + b * (1 - B)
    ) * (E * ((1 + A) * b + (B + 1) * (k - g)) + E**2 * (A + 1) * g - b * (B + 1))


# -- T5: the two-sided bound on |v|/pi ------------------------------------------------------

def t5_F(x, k, p: BBParams):
    s = p.beta + p.gamma
    G, L = p.G, p.L(k)
    return 4 * (1 + p.B**2 + 2 * p.B * x) * (s**2 + G**2 + 2 * s * G * x) - (p.A - p.B) ** 2 * (L**2 + G**2 + 2 * L * G * x)


def t5_H(x, k, m, p: BBParams):
    s = p.beta + p.gamma
    G, L = p.G, p.L(k)
    return 4 * (p.A - p.B) ** 2 * m**4 * (L**2 + G**2 + 2 * L * G * x) - (1 + p.B**2 + 2 * p.B * x) * (
        s**2 + G**2 + 2 * s * G * x
    )


def gap_t5(t, k, m, p: BBParams):
    """``(F(cos t), H(cos t))``: the upper and lower bound gaps."""
    x = np.cos(np.asarray(t, float))
    return _scalar(t5_F(x, k, p)), _scalar(t5_H(x, k, m, p))


def _t5_den(p: BBParams):
    den = 16 * p.B * p.G * (p.beta + p.gamma)
    if den == 0:
        raise ParameterError("x0 is undefined when B G (beta + gamma) = 0")
    return den


def t5_x0(k, p: BBParams):
    s = p.beta + p.gamma
    A, B, G, L = p.A, p.B, p.G, p.L(k)
    num = G * (A**2 * L - 4 * s) - 2 * B * (A * G * L + 2 * s**2 + 2 * G**2) + B**2 * G * (L - 4 * s)
    return num / _t5_den(p)


def t5_F_x0(k, p: BBParams):
    """The displayed closed form of ``F(x_0)``."""
    lhs, rhs = t5_condition_ii_sides(p.A, p.B, p.beta, p.gamma, k)
    return (lhs - rhs) / _t5_den(p)


def t5_F_second(p: BBParams):
    return 32 * p.B * p.G * (p.beta + p.gamma)


def t5_H1(k, m, p: BBParams):
    s = p.beta + p.gamma
    return 4 * m**4 * (p.A - p.B) ** 2 * (s + p.G + k) ** 2 - (p.B + 1) ** 2 * (s + p.G) ** 2


# -- grid evaluation ------------------------------------------------------------------------

def _grid_raw(theorem, p: BBParams, t, k, m=None):
    """Gap and pole mask on broadcastable (t, k[, m]) arrays."""
    if theorem == "t1":
        return _t1_raw(t, k, p.beta, p.gamma)
    if theorem == "t2":
        return _t2_raw(t, k, p)
    if theorem == "t3":
        return _t3_raw(t, k, p)
    if theorem == "t4":
        return _t4_raw(t, k, p)
    if theorem == "t5":
        x = np.cos(t)
        h = np.minimum(t5_F(x, k, p), t5_H(x, k, m, p))
        return h, np.zeros(np.shape(h), dtype=bool)
    raise ParameterError(f"unknown theorem {theorem!r}")


def gap(theorem, t, k, p: BBParams, m=1.0):
    """Generic gap; for T5 the smaller of the upper and lower gaps."""
    theorem = theorem.lower()
    h, pole = _grid_raw(theorem, p, np.asarray(t, float), np.asarray(k, float), np.asarray(m, float))
    _raise_pole(pole, "denominator", t, k)
    return _scalar(h)


@dataclass
class GapReport:
    theorem: str
    params: BBParams
    min_gap: float
    argmin: dict
    grid: dict
    endpoints: dict
    large_k: dict
    poles: list = field(default_factory=list)
    pole_count: int = 0
    hypothesis: dict | None = None
    notes: list = field(default_factory=list)

    @property
    def verdict(self):
        if not math.isfinite(self.min_gap):
            return "inconclusive"
        return "pass" if self.min_gap >= -ENDPOINT_TOL else "fail"

    def to_dict(self):
        d = asdict(self)
        d["params"] = asdict(self.params)
        d["verdict"] = self.verdict
        d["min_gap"] = self.min_gap if math.isfinite(self.min_gap) else str(self.min_gap)
        return d

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def _axes(theorem, t_points, k_max, k_points, m_points):
    t = np.linspace(0.0, np.pi, t_points)
    k = np.linspace(1.0, k_max, k_points) if k_points > 1 else np.array([1.0])
    m = np.linspace(0.0, 1.0, m_points) if theorem == "t5" else None
    return t, k, m


def _evaluate(theorem, p, t, k, m):
    if m is None:
        h, pole = _grid_raw(theorem, p, t[:, None], k[None, :])
    else:
        h, pole = _grid_raw(theorem, p, t[:, None, None], k[None, :, None], m[None, None, :])
    h = np.asarray(h, float)
    bad = np.broadcast_to(pole, h.shape) | ~np.isfinite(h)
    return h, bad


def _refine(theorem, p, axes, spans, best):
    """One round of 10x local refinement around ``best`` (indices into ``axes``)."""
    new_axes = []
    for ax, (lo, hi), i in zip(axes, spans, best):
        if len(ax) < 2:
            new_axes.append(ax)
            continue
        step = ax[1] - ax[0] if len(ax) > 1 else 0.0
        centre = ax[i]
        fine = centre + np.linspace(-step, step, 2 * REFINE_HALF_WIDTH + 1)
        new_axes.append(np.clip(fine, lo, hi))
    h, bad = _evaluate(theorem, p, new_axes[0], new_axes[1], new_axes[2] if len(new_axes) > 2 else None)
    return new_axes, h, bad


def certify(
    theorem,
    p: BBParams,
    t_points=257,
    k_max=64.0,
    k_points=64,
    m_points=65,
    rounds=REFINE_ROUNDS,
    check_hypothesis=True,
) -> GapReport:
    """Global minimum of the theorem's boundary gap over ``t in [0, pi]``, ``k in [1, k_max]``.

    Evenness in ``t`` makes the half interval sufficient.  The coarse grid is
    followed by ``rounds`` rounds of local refinement (step divided by 10
    each time) around the incumbent minimum.  Poles are skipped and listed.
    """
    theorem = theorem.lower()
    if t_points < 2 or k_points < 1 or k_max < 1 or (theorem == "t5" and m_points < 2):
        raise ParameterError("need t_points >= 2, k_points >= 1, k_max >= 1 (and m_points >= 2 for t5)")
    t, k, m = _axes(theorem, t_points, k_max, k_points, m_points)
    h, bad = _evaluate(theorem, p, t, k, m)
    masked = np.where(bad, np.inf, h)

    poles = []
    if np.any(bad):
        for idx in np.argwhere(bad)[:20]:
            poles.append({"t": float(t[idx[0]]), "k": float(k[idx[1]]), "m": float(m[idx[2]]) if m is not None else None})
    pole_count = int(np.sum(bad))

    # endpoints before refinement: the grid contains t = 0 and t = pi
    ends = {}
    for label, ki in (("k_1", 0), ("k_max", len(k) - 1)):
        h0 = masked[0, ki]
        hpi = masked[-1, ki]
        if m is not None:
            h0, hpi = np.min(h0), np.min(hpi)
        ends[label] = {"k": float(k[ki]), "h0": float(h0), "hpi": float(hpi)}

    best = np.unravel_index(np.argmin(masked), masked.shape)
    min_gap = float(masked[best])
    argmin = {"t": float(t[best[0]]), "k": float(k[best[1]]), "m": float(m[best[2]]) if m is not None else None}
    axes = [t, k] + ([m] if m is not None else [])
    spans = [(0.0, np.pi), (1.0, k_max)] + ([(0.0, 1.0)] if m is not None else [])
    for _ in range(rounds if math.isfinite(min_gap) else 0):
        axes, hr, badr = _refine(theorem, p, axes, spans, best)
        mr = np.where(badr, np.inf, hr)
        best = np.unravel_index(np.argmin(mr), mr.shape)
        if mr[best] < min_gap:
            min_gap = float(mr[best])
            argmin = {"t": float(axes[0][best[0]]), "k": float(axes[1][best[1]]),
                      "m": float(axes[2][best[2]]) if m is not None else None}

    # leading-order behaviour in k, checked at a single large k
    tl = np.linspace(0.0, np.pi, t_points)
    hl, badl = _evaluate(theorem, p, tl, np.array([LARGE_K]), m)
    hl = np.where(badl, np.inf, hl)
    large = {"k": LARGE_K, "min_gap": float(np.min(hl))}
    large["ok"] = bool(large["min_gap"] >= 0)

    hyp = None
    notes = []
    if check_hypothesis:
        try:
            res: HypothesisResult = hypothesis(theorem, p, **({"k_max": k_max, "m_grid": m_points} if theorem == "t5" else {}))
            hyp = res.to_dict()
            if not res.satisfied:
                notes.append("hypothesis not satisfied; report produced for sharpness probing")
        except ParameterError as exc:
            notes.append(f"hypothesis not evaluated: {exc}")
    if pole_count:
        notes.append(f"{pole_count} grid points skipped at poles")
    return GapReport(
        theorem=theorem,
        params=p,
        min_gap=min_gap,
        argmin=argmin,
        grid={"t_points": t_points, "k_points": k_points, "k_max": k_max,
              "m_points": m_points if theorem == "t5" else None, "refinements": rounds},
        endpoints=ends,
        large_k=large,
        poles=poles,
        pole_count=pole_count,
        hypothesis=hyp,
        notes=notes,
    )


def write_surface_csv(theorem, p: BBParams, path, t_points=257, k_max=64.0, k_points=64, m_points=65):
    """Full ``(t, k, m, gap)`` surface; ``m`` is empty except for T5."""
    theorem = theorem.lower()
    t, k, m = _axes(theorem, t_points, k_max, k_points, m_points)
    h, bad = _evaluate(theorem, p, t, k, m)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "k", "m", "gap"])
        for idx in np.ndindex(h.shape):
            val = "nan" if bad[idx] else f"{h[idx]:.17g}"
            mm = f"{m[idx[2]]:.17g}" if m is not None else ""
            w.writerow([f"{t[idx[0]]:.17g}", f"{k[idx[1]]:.17g}", mm, val])


@dataclass
class EndpointCheck:
    theorem: str
    passed: bool
    worst_deficit: float
    worst: dict | None
    params: BBParams

    def to_dict(self):
        d = asdict(self)
        d["params"] = asdict(self.params)
        return d


def endpoint_minimum_check(theorem, p: BBParams, t_points=257, k_max=16.0, k_points=16, m_points=17, tol=ENDPOINT_TOL):
    """Test the claim that the gap's minimum over ``t`` is attained at ``t = 0`` or ``t = pi``.

    For every sampled ``k`` (and ``m``) the interior minimum must be at least
    ``min(gap(0), gap(pi)) - tol * max(1, |min(gap(0), gap(pi))|)``.  For T5
    the claim concerns the lower gap ``H`` (``F`` has its minimum at the
    interior critical point ``x_0``).  ``worst_deficit`` is the largest
    shortfall found (positive means the claim failed).
    """
    theorem = theorem.lower()
    t, k, m = _axes(theorem, t_points, k_max, k_points, m_points)
    if theorem == "t5":
        h = np.asarray(t5_H(np.cos(t)[:, None, None], k[None, :, None], m[None, None, :], p), float)
        bad = ~np.isfinite(h)
    else:
        h, bad = _evaluate(theorem, p, t, k, None)
    h = np.where(bad, np.inf, h)
    ends = np.minimum(h[0], h[-1])
    interior = np.min(h[1:-1], axis=0)
    allowed = tol * np.maximum(1.0, np.abs(ends))
    deficit = np.where(np.isfinite(ends), ends - interior - allowed, -np.inf)
    worst_idx = np.unravel_index(np.argmax(deficit), deficit.shape)
    worst_deficit = float(deficit[worst_idx] + allowed[worst_idx]) if np.isfinite(deficit[worst_idx]) else 0.0
    passed = bool(np.all(deficit <= 0))
    worst = None
    if not passed:
        ti = np.argmin(h[(slice(1, -1),) + worst_idx]) + 1
        worst = {"t": float(t[ti]), "k": float(k[worst_idx[0]]),
                 "m": float(m[worst_idx[1]]) if m is not None else None,
                 "interior": float(h[(ti,) + worst_idx]), "endpoint_min": float(ends[worst_idx])}
    return EndpointCheck(theorem, passed, worst_deficit, worst, p)
