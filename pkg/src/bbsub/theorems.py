"""Hypothesis inequalities of the five Briot-Bouquet theorems as margin predicates.

Every predicate works on scalars or numpy arrays (broadcast together), so the
same code serves single checks, parameter scans and random sampling.  A margin
is the signed defect of one written inequality; strict inequalities need
``margin > 0``, non-strict ones ``margin >= -1e-12``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .errors import ParameterError

E = math.e
SQRT2 = math.sqrt(2.0)
NONSTRICT_EPS = 1e-12

T5_K_POINTS = 512
T5_M_POINTS = 257
T5_K_MAX = 64.0

THEOREMS = ("t1", "t2", "t3", "t4", "t5")


@dataclass(frozen=True)
class BBParams:
    A: float = 0.0
    B: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    @property
    def G(self):
        return self.A * self.beta + self.B * self.gamma

    def L(self, k):
        return k + self.beta + self.gamma

    def replace(self, **kw):
        return BBParams(**{**asdict(self), **kw})


@dataclass
class Margin:
    id: str
    value: float
    strict: bool = False

    @property
    def ok(self):
        return self.value > 0 if self.strict else self.value >= -NONSTRICT_EPS

    def to_dict(self):
        v = self.value
        return {"id": self.id, "value": v if math.isfinite(v) else str(v), "strict": self.strict, "ok": self.ok}


@dataclass
class HypothesisResult:
    theorem: str
    margins: list[Margin]
    notes: list[str] = field(default_factory=list)

    @property
    def satisfied(self):
        return all(m.ok for m in self.margins)

    def margin(self, cid):
        return next(m.value for m in self.margins if m.id == cid)

    def to_dict(self):
        return {
            "theorem": self.theorem,
            "satisfied": self.satisfied,
            "margins": [m.to_dict() for m in self.margins],
            "notes": list(self.notes),
        }


# -- raw margin formulas (vectorised) -------------------------------------------------------

def t1_margins(beta, gamma):
    """``max{-gamma/e, -gamma e + e/(1 - sqrt2 e)} <= beta <= -e gamma``."""
    return [
        ("lower_a", beta + gamma / E, False),
        ("lower_b", beta - (-gamma * E + E / (1.0 - SQRT2 * E)), False),
        ("upper", -E * gamma - beta, False),
    ]


def t1_proof_margins(beta, gamma):
    """The proof's restatement: ``e beta + gamma >= 0`` and ``1/(1-sqrt2 e) <= gamma + beta/e <= 0``."""
    s = gamma + beta / E
    return [
        ("e_beta_plus_gamma", E * beta + gamma, False),
        ("lower", s - 1.0 / (1.0 - SQRT2 * E), False),
        ("upper", -s, False),
    ]


def t2_margins(A, B, beta, gamma):
    """Both sign instances of conditions (i) and (ii).

    (i) is multiplied through by ``(1 -+ B)((1 -+ A) beta + (1 -+ B) gamma)``,
    positive whenever (ii) holds.
    """
    lin_minus = (1 - A) * beta + (1 - B) * gamma
    lin_plus = (1 + A) * beta + (1 + B) * gamma
    return [
        ("i_upper", (A - B) - lin_minus * ((1 - A) + E * (1 - B)), False),
        ("i_lower", (A - B) - lin_plus * (-(1 + A) + E * (1 + B)), False),
        ("ii_upper", lin_plus, True),
        ("ii_lower", lin_minus, True),
    ]


def t3_lhs_rhs(A, B, beta, gamma):
    lhs = 1 + 4 * (SQRT2 - 1) * beta - 2 * (SQRT2 - 2) * gamma
    rhs = -2 * A * (2 * beta + SQRT2 * gamma) + B * (1 + 4 * (SQRT2 * beta + gamma))
    return lhs, rhs


def t3_margins(A, B, beta, gamma):
    lhs, rhs = t3_lhs_rhs(A, B, beta, gamma)
    return [("i", lhs - B * rhs, False), ("ii", lhs**2 - rhs**2, False)]


def t4_margins(A, B, beta, gamma):
    b, g, e = beta, gamma, E
    c1 = e**2 * b * (1 - B**2) + e * (-B * (-A * b + B * g + B) - b + g + 1) + g * (A * B - 1)
    c2 = (e * ((A + e - 1) * b - (e * b + 1) * B + 1) + g * (A + e * (1 - B) - 1)) * (
        e * (-(A - e + 1) * b + B * (e * b + 1) + 1) + g * (-A + e * (B + 1) - 1)
    )
    c3 = e * (b * (1 - A * B) + B**2 * (g - 1) - g + 1) + e**2 * g * (1 - A * B) + b * (B**2 - 1)
    c4 = (e * ((A - 1) * b + (1 - B) * (g - 1)) + e**2 * (A - 1) * g + b * (1 - B)) * (
        -e * ((A + 1) * b + (B + 1) * (1 - g)) - e**2 * (A + 1) * g + b * (B + 1)
    )
    return [("i", c1, False), ("ii", c2, False), ("iii", c3, False), ("iv", c4, False)]


def t5_condition_ii_sides(A, B, beta, gamma, k):
    G = A * beta + B * gamma
    s = beta + gamma
    L = k + s
    lhs = (G * (A**2 * L + 4 * s) - 2 * B * (A * G * L + 2 * s**2 + 2 * G**2) + B**2 * G * (4 * s + L)) * (
        G * (A**2 * L - 4 * s) + B * (-2 * A * G * L + 4 * s**2 + 4 * G**2) + B**2 * G * (L - 4 * s)
    )
    rhs = 2 * G * (A - B) ** 2 * (
        G * L * (A**2 * L - 4 * s)
        - 2 * B * (A * G * L**2 + 2 * G**2 * (L - 2 * s) - 2 * L * s * (-s + 2 * L))
        + B**2 * G * L * (L - 4 * s)
    )
    return lhs, rhs


def t5_condition_iii(A, B, beta, gamma, k):
    G = A * beta + B * gamma
    s = beta + gamma
    return 2 * (B - 1) ** 2 * G * s + 2 * B * (s - G) ** 2 - 8 * G * (A - B) ** 2 * (s + k)


def t5_condition_v(A, B, beta, gamma, m):
    G = A * beta + B * gamma
    s = beta + gamma
    return 4 * m**4 * (A - B) ** 2 * (s + G + 1) ** 2 - (B + 1) ** 2 * (s + G) ** 2


def t5_margins(A, B, beta, gamma, k_max=T5_K_MAX, k_points=T5_K_POINTS, m_points=T5_M_POINTS):
    """Conditions (i)-(v), with k over ``[1, k_max]`` and m over ``[0, 1]``.

    k- and m-dependent margins are minima over their grids.  The ``*_k_inf``
    margins are the leading coefficients in k of (ii) and (iii): a negative
    value means the condition fails for all large enough k.
    """
    A, B, beta, gamma = (np.asarray(x, dtype=float)[..., None] for x in (A, B, beta, gamma))
    ks = np.linspace(1.0, k_max, k_points)
    ms = np.linspace(0.0, 1.0, m_points)
    G = A * beta + B * gamma
    s = beta + gamma
    lhs, rhs = t5_condition_ii_sides(A, B, beta, gamma, ks)
    ii = np.min(lhs - rhs, axis=-1)
    iii = np.min(t5_condition_iii(A, B, beta, gamma, ks), axis=-1)
    v = np.min(t5_condition_v(A, B, beta, gamma, ms), axis=-1)
    # (ii) is quadratic and (iii) linear in k: exact leading coefficients
    ii_lead = -G * (A - B) ** 2 * (G * (A - B) ** 2 + 16 * B * s)
    iii_lead = -8 * G * (A - B) ** 2
    sq = lambda x: x[..., 0]  # noqa: E731
    return [
        ("i", sq(B * G * s), True),
        ("ii", ii, False),
        ("ii_k_inf", sq(ii_lead), False),
        ("iii", iii, False),
        ("iii_k_inf", sq(iii_lead), False),
        ("iv_a", sq(1 + s), False),
        ("iv_b", sq(G), False),
        ("v", v, False),
    ]


# -- validation and result objects ----------------------------------------------------------

def _check_order(A, B, open_lower=False):
    low_ok = B > -1 if open_lower else B >= -1
    if not (low_ok and B < A <= 1):
        rng = "-1 < B < A <= 1" if open_lower else "-1 <= B < A <= 1"
        raise ParameterError(f"need {rng}, got A={A}, B={B}")


def _result(theorem, rows, notes=()):
    return HypothesisResult(theorem, [Margin(i, float(v), s) for i, v, s in rows], list(notes))


def t1_hypothesis(beta, gamma) -> HypothesisResult:
    return _result("t1", t1_margins(beta, gamma))


def t2_hypothesis(p: BBParams) -> HypothesisResult:
    _check_order(p.A, p.B, open_lower=True)
    return _result("t2", t2_margins(p.A, p.B, p.beta, p.gamma))


def t3_hypothesis(p: BBParams) -> HypothesisResult:
    _check_order(p.A, p.B)
    return _result("t3", t3_margins(p.A, p.B, p.beta, p.gamma))


def t4_hypothesis(p: BBParams) -> HypothesisResult:
    _check_order(p.A, p.B)
    return _result("t4", t4_margins(p.A, p.B, p.beta, p.gamma))


def t5_hypothesis(p: BBParams, k_max=T5_K_MAX, m_grid=T5_M_POINTS, k_points=T5_K_POINTS) -> HypothesisResult:
    _check_order(p.A, p.B)
    if k_max < 1 or m_grid < 2:
        raise ParameterError("need k_max >= 1 and m_grid >= 2")
    notes = [f"k in [1, {k_max:g}] ({k_points} points) plus k -> inf; m in [0, 1] ({m_grid} points)"]
    return _result("t5", t5_margins(p.A, p.B, p.beta, p.gamma, k_max, k_points, m_grid), notes)


def hypothesis(theorem, p: BBParams, **grid) -> HypothesisResult:
    theorem = theorem.lower()
    if theorem == "t1":
        return t1_hypothesis(p.beta, p.gamma)
    if theorem == "t5":
        return t5_hypothesis(p, **grid)
    try:
        fn = {"t2": t2_hypothesis, "t3": t3_hypothesis, "t4": t4_hypothesis}[theorem]
    except KeyError:
        raise ParameterError(f"unknown theorem {theorem!r}") from None
    return fn(p)


def margin_rows(theorem, A=0.0, B=0.0, beta=0.0, gamma=0.0, **grid):
    theorem = theorem.lower()
    if theorem == "t1":
        return t1_margins(beta, gamma)
    if theorem == "t2":
        return t2_margins(A, B, beta, gamma)
    if theorem == "t3":
        return t3_margins(A, B, beta, gamma)
    if theorem == "t4":
        return t4_margins(A, B, beta, gamma)
    if theorem == "t5":
        return t5_margins(A, B, beta, gamma, **grid)
    raise ParameterError(f"unknown theorem {theorem!r}")


def _order_mask(theorem, A, B):
    if theorem == "t1":
        return True
    low = B > -1 if theorem == "t2" else B >= -1
    return low & (B < A) & (A <= 1)


def satisfied_mask(theorem, A=0.0, B=0.0, beta=0.0, gamma=0.0, **grid):
    """Vectorised ``hypothesis(...).satisfied``; False where (A, B) is out of range."""
    theorem = theorem.lower()
    A, B, beta, gamma = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (A, B, beta, gamma)))
    ok = np.asarray(_order_mask(theorem, A, B), dtype=bool) & np.ones(A.shape, dtype=bool)
    with np.errstate(all="ignore"):
        for _, v, strict in margin_rows(theorem, A, B, beta, gamma, **grid):
            ok = ok & ((v > 0) if strict else (v >= -NONSTRICT_EPS))
    return ok


# -- feasible intervals ---------------------------------------------------------------------

@dataclass
class Interval:
    lo: float
    hi: float

    def __contains__(self, x):
        return self.lo <= x <= self.hi

    def to_list(self):
        enc = lambda v: v if math.isfinite(v) else str(v)  # noqa: E731
        return [enc(self.lo), enc(self.hi)]


def feasible_interval(theorem, fixed: dict, free: str, lo=-20.0, hi=20.0, n_scan=None, tol=1e-12, **grid):
    """Maximal intervals of ``free`` on which the theorem's hypothesis holds.

    The range ``[lo, hi]`` is scanned, then every change of verdict is located
    by bisection to ``tol``.  Returns a list of :class:`Interval` (empty when
    infeasible); a run reaching the scan edge is reported as unbounded.
    """
    theorem = theorem.lower()
    if free not in ("A", "B", "beta", "gamma"):
        raise ParameterError(f"free parameter must be one of A, B, beta, gamma; got {free!r}")
    if n_scan is None:
        n_scan = 2001 if theorem == "t5" else 200001
    base = {"A": 0.0, "B": 0.0, "beta": 0.0, "gamma": 0.0, **fixed}

    def mask(x):
        return satisfied_mask(theorem, **{**base, free: x}, **grid)

    xs = np.linspace(lo, hi, n_scan)
    ok = mask(xs)

    def edge(a, b):
        # a has verdict va, b the opposite; shrink to the switch point
        va = bool(mask(np.array([a]))[0])
        for _ in range(200):
            if abs(b - a) <= tol:
                break
            mid = 0.5 * (a + b)
            if bool(mask(np.array([mid]))[0]) == va:
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    out = []
    i = 0
    n = len(xs)
    while i < n:
        if not ok[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and ok[j + 1]:
            j += 1
        left = -math.inf if i == 0 else edge(xs[i], xs[i - 1])
        right = math.inf if j == n - 1 else edge(xs[j], xs[j + 1])
        out.append(Interval(left, right))
        i = j + 1
    return out


# -- corollary specialisations --------------------------------------------------------------

@dataclass(frozen=True)
class Corollary:
    id: str
    theorem: str
    free: tuple[str, ...]
    substitute: Callable[..., BBParams]
    displayed: Callable[..., list]
    ranges: dict
    conclusion: str
    transform: str  # ratio | derivative | bb_ratio
    note: str = ""


@dataclass
class Specialization:
    corollary: str
    theorem: str
    params: BBParams
    extra: list[Margin]
    notes: list[str] = field(default_factory=list)

    @property
    def displayed_ok(self):
        return all(m.ok for m in self.extra)

    def parent(self, **grid) -> HypothesisResult:
        return hypothesis(self.theorem, self.params, **grid)

    def to_dict(self):
        return {
            "corollary": self.corollary,
            "theorem": self.theorem,
            "params": asdict(self.params),
            "extra": [m.to_dict() for m in self.extra],
            "displayed_ok": self.displayed_ok,
            "notes": list(self.notes),
        }


def _cor312(alpha, beta):
    with np.errstate(divide="ignore", invalid="ignore"):
        vac = alpha * beta == 0
        first = np.where(vac, np.inf, 1.0 / np.where(vac, 1.0, alpha * beta) - (alpha + E + 1.0 / beta))
    return [
        ("alpha+e+1/beta<=1/(alpha beta)", first, False),
        ("1-alpha>=beta(2-alpha)(e-2+alpha)", 1 - alpha - beta * (2 - alpha) * (E - 2 + alpha), False),
        ("beta>0", beta, True),
    ]


def _cor314(alpha, beta):
    return [
        ("beta>=1/(4(alpha-sqrt2))", beta - 1.0 / (4 * (alpha - SQRT2)), False),
        ("beta<0", -beta, True),
    ]


def _cor315(alpha, beta):
    return [
        ("beta>=1/(1-e)", beta - 1.0 / (1 - E), False),
        ("product_1", (-alpha * beta + beta * E + 1) * (beta * (alpha + E - 2) + 1), False),
        ("product_2", (beta - E * ((2 - alpha) * beta + 1)) * (beta + E * (-alpha * beta - 1)), False),
    ]


def _cor317(alpha, beta, k_max=T5_K_MAX, k_points=T5_K_POINTS):
    a = np.asarray(alpha, dtype=float)[..., None]
    b = np.asarray(beta, dtype=float)[..., None]
    k = np.linspace(1.0, k_max, k_points)
    first = (
        (2 * a**2 + a - 3) ** 2 * b**2
        + (4 * a**4 - 12 * a**3 + 13 * a**2 + 2 * a - 3) * k**2
        + 2 * (4 * a**4 - 20 * a**3 + 17 * a**2 + 2 * a - 3) * b * k
    )
    second = 4 * (a - 1) ** 2 * (2 * a - 1) * b * (b + k) - (a**2 + 2 * a - 1) * b**2
    return [
        ("first<=0", np.min(-first, axis=-1), False),
        ("second", np.min(second, axis=-1), False),
        ("alpha>1/2", a[..., 0] - 0.5, True),
        ("beta>=-1", b[..., 0] + 1, False),
        ("beta<0", -b[..., 0], True),
    ]


def _cor33(A, B, c):
    lhs = 1 + 4 * (SQRT2 - 1) - 2 * (SQRT2 - 2) * c
    rhs = -2 * A * (2 + SQRT2 * c) + B * (1 + 4 * (SQRT2 + c))
    return [("i", lhs - B * rhs, False), ("ii", lhs**2 - rhs**2, False), ("c>-1", c + 1, True)]


def _cor34(A, B, c):
    lhs = 5 - 2 * SQRT2 - 2 * (SQRT2 - 2) * c
    rhs = -2 * SQRT2 * (c + 1) * A + (5 + 4 * c) * B
    return [("i", lhs - B * rhs, False), ("ii", lhs**2 - rhs**2, False), ("c>-1", c + 1, True)]


def _c_only(*args):
    c = args[-1]
    return [("c>-1", c + 1, True)]


_AB = {"A": (-1.0, 1.0), "B": (-1.0, 1.0)}
_C = {"c": (-1.0, 3.0)}

COROLLARIES = {
    "cor_3.12": Corollary(
        "cor_3.12", "t2", ("alpha", "beta"),
        lambda alpha, beta: BBParams(A=1 - alpha, B=0.0, beta=beta, gamma=0.0),
        _cor312, {"alpha": (0.0, 1.0), "beta": (1e-6, 3.0)}, "S*(alpha)", "bb_ratio",
    ),
    "cor_3.14": Corollary(
        "cor_3.14", "t3", ("alpha", "beta"),
        lambda alpha, beta: BBParams(A=1 - 2 * alpha, B=-1.0, beta=beta, gamma=0.0),
        _cor314, {"alpha": (0.0, 1.0), "beta": (-0.5, 0.5)}, "S*_L", "bb_ratio",
    ),
    "cor_3.15": Corollary(
        "cor_3.15", "t4", ("alpha", "beta"),
        lambda alpha, beta: BBParams(A=1 - alpha, B=0.0, beta=beta, gamma=0.0),
        _cor315, {"alpha": (0.0, 1.0), "beta": (-2.0, 3.0)}, "S*_e", "bb_ratio",
    ),
    "cor_3.17": Corollary(
        "cor_3.17", "t5", ("alpha", "beta"),
        lambda alpha, beta: BBParams(A=1 - 2 * alpha, B=-1.0, beta=beta, gamma=0.0),
        _cor317, {"alpha": (0.5, 1.0), "beta": (-1.0, 0.0)}, "S*(alpha)", "bb_ratio",
    ),
    "cor_3.3": Corollary(
        "cor_3.3", "t3", ("A", "B", "c"),
        lambda A, B, c: BBParams(A=A, B=B, beta=1.0, gamma=c),
        _cor33, {**_AB, **_C}, "S*_L", "ratio",
    ),
    "cor_3.4": Corollary(
        "cor_3.4", "t3", ("A", "B", "c"),
        lambda A, B, c: BBParams(A=A, B=B, beta=0.0, gamma=c + 1),
        _cor34, {**_AB, **_C}, "lemniscate (F')", "derivative",
    ),
    "bernardi_t1_i": Corollary(
        "bernardi_t1_i", "t1", ("c",), lambda c: BBParams(beta=1.0, gamma=c),
        _c_only, dict(_C), "S*_e", "ratio",
    ),
    "bernardi_t1_ii": Corollary(
        "bernardi_t1_ii", "t1", ("c",), lambda c: BBParams(beta=0.0, gamma=c + 1),
        _c_only, dict(_C), "expdisc (F')", "derivative",
        note="with beta = 0 the theorem forces gamma = 0, i.e. c = -1, outside c > -1",
    ),
    "bernardi_t2_i": Corollary(
        "bernardi_t2_i", "t2", ("A", "B", "c"), lambda A, B, c: BBParams(A=A, B=B, beta=1.0, gamma=c),
        _c_only, {**_AB, **_C}, "S*[A,B]", "ratio",
    ),
    "bernardi_t2_ii": Corollary(
        "bernardi_t2_ii", "t2", ("A", "B", "c"), lambda A, B, c: BBParams(A=A, B=B, beta=0.0, gamma=c + 1),
        _c_only, {**_AB, **_C}, "R[A,B]", "derivative",
    ),
    "bernardi_t4_i": Corollary(
        "bernardi_t4_i", "t4", ("A", "B", "c"), lambda A, B, c: BBParams(A=A, B=B, beta=1.0, gamma=c),
        _c_only, {**_AB, **_C}, "S*_e", "ratio",
    ),
    "bernardi_t4_ii": Corollary(
        "bernardi_t4_ii", "t4", ("A", "B", "c"), lambda A, B, c: BBParams(A=A, B=B, beta=0.0, gamma=c + 1),
        _c_only, {**_AB, **_C}, "expdisc (F')", "derivative",
    ),
}


def specialize(corollary_id, **free) -> Specialization:
    """Substitute a corollary's parameter choice into its parent theorem."""
    try:
        cor = COROLLARIES[corollary_id]
    except KeyError:
        raise ParameterError(f"unknown corollary {corollary_id!r}; known: {sorted(COROLLARIES)}") from None
    missing = set(cor.free) - set(free)
    if missing:
        raise ParameterError(f"{corollary_id} needs {sorted(missing)}")
    for name in cor.free:
        lo, hi = cor.ranges[name]
        if name in ("alpha",) and not (lo <= free[name] < hi):
            raise ParameterError(f"{corollary_id}: {name}={free[name]} outside [{lo}, {hi})")
        if name == "c" and not free[name] > -1:
            raise ParameterError(f"{corollary_id}: Bernardi operator needs c > -1")
    args = [float(free[n]) for n in cor.free]
    params = cor.substitute(*args)
    notes = [cor.note] if cor.note else []
    extra = []
    for mid, value, strict in cor.displayed(*args):
        value = float(value)
        if math.isinf(value) and value > 0:
            notes.append(f"{mid}: division by zero, treated as vacuously true")
        extra.append(Margin(mid, value, strict))
    return Specialization(corollary_id, cor.theorem, params, extra, notes)


def corollary_consistency(corollary_id, n=1000, seed=42, **grid):
    """Compare displayed inequalities with the parent theorem on random free parameters.

    Returns ``(checked, discrepancies)`` where each discrepancy is a dict of the
    free parameters and both verdicts.  Points where the substitution leaves
    the parent theorem's (A, B) range are skipped.
    """
    cor = COROLLARIES[corollary_id]
    rng = np.random.default_rng(seed)
    discrepancies = []
    checked = 0
    while checked < n:
        free = {}
        for name in cor.free:
            lo, hi = cor.ranges[name]
            free[name] = float(rng.uniform(lo, hi))
        if "A" in free and "B" in free:
            free["A"], free["B"] = max(free["A"], free["B"]), min(free["A"], free["B"])
            if free["A"] == free["B"] or (cor.theorem == "t2" and free["B"] <= -1):
                continue
        if "c" in free and free["c"] <= -1:
            continue
        spec = specialize(corollary_id, **free)
        try:
            parent = spec.parent(**grid).satisfied
        except ParameterError:
            continue
        checked += 1
        shown = spec.displayed_ok
        if shown != parent:
            discrepancies.append({**free, "displayed": shown, "theorem": parent})
    return checked, discrepancies


# -- sampling -------------------------------------------------------------------------------

class InfeasibleError(RuntimeError):
    """No hypothesis-satisfying parameters were found."""


def sample_feasible(theorem, n, seed=0, box=4.0, max_draws=2_000_000, batch=100_000, **grid) -> list[BBParams]:
    """Rejection-sample ``n`` parameter tuples satisfying the theorem's hypothesis."""
    theorem = theorem.lower()
    rng = np.random.default_rng(seed)
    found: list[BBParams] = []
    drawn = 0
    if theorem == "t5":
        batch = min(batch, 2000)
    while len(found) < n and drawn < max_draws:
        B = rng.uniform(-1.0, 1.0, batch)
        if theorem in ("t3", "t4", "t5"):
            B[rng.random(batch) < 0.1] = -1.0
        A = B + (1.0 - B) * rng.random(batch)
        beta = rng.uniform(-box, box, batch)
        gamma = rng.uniform(-box, box, batch)
        if theorem == "t1":
            # strip 1/(1 - sqrt2 e) <= gamma + beta/e <= 0
            gamma = rng.uniform(1.0 / (1.0 - SQRT2 * E), 0.0, batch) - beta / E
        ok = satisfied_mask(theorem, A, B, beta, gamma, **grid)
        for i in np.flatnonzero(ok)[: n - len(found)]:
            found.append(BBParams(float(A[i]), float(B[i]), float(beta[i]), float(gamma[i])))
        drawn += batch
    if len(found) < n:
        raise InfeasibleError(f"{theorem}: found {len(found)} of {n} hypothesis-satisfying draws in {drawn} tries")
    return found
