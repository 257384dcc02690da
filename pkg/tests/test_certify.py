import csv
import importlib
import json
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from bbsub.errors import ParameterError, PoleError
from bbsub.theorems import BBParams, sample_feasible

cert = importlib.import_module("bbsub.certify")

ts = st.floats(0, math.pi)
ks = st.floats(1, 64)
reals = st.floats(-4, 4)
ab = st.tuples(st.floats(-0.99, 1), st.floats(-0.99, 1)).filter(lambda x: x[1] < x[0] - 1e-3)


def _boundary_image(t, k, p_val, zp_val, beta, gamma):
    return p_val + k * zp_val / (beta * p_val + gamma)


# Each gap is a positive multiple of the region defect of the image point
# w = p + k z p'/(beta p + gamma) on |z| = 1: these oracles rebuild w directly.

@given(ts, ks, reals, reals)
def test_t1_gap_is_scaled_lemniscate_defect(t, k, beta, gamma):
    z = complex(math.cos(t), math.sin(t))
    E = np.exp(z)
    D = beta * E + gamma
    assume(abs(D) > 1e-3)
    w = _boundary_image(t, k, E, z * E, beta, gamma)
    want = abs(D) ** 4 * (abs(w * w - 1) ** 2 - 1)
    got = cert.gap_t1(t, k, beta, gamma)
    assert got == pytest.approx(want, rel=1e-9, abs=1e-9 * abs(D) ** 4 * (1 + abs(w) ** 4))


@given(ts, ks, ab, reals, reals)
def test_t2_gap_is_scaled_exp_defect(t, k, AB, beta, gamma):
    A, B = AB
    p = BBParams(A, B, beta, gamma)
    z = complex(math.cos(t), math.sin(t))
    pv = (1 + A * z) / (1 + B * z)
    assume(abs(beta * pv + gamma) > 1e-3)
    w = _boundary_image(t, k, pv, (A - B) * z / (1 + B * z) ** 2, beta, gamma)
    assume(abs(w) > 1e-6 and not (abs(w.imag) < 1e-9 and w.real < 0))
    L = np.log(w)
    assert cert.gap_t2(t, k, p) == pytest.approx(4 * (abs(L) ** 2 - 1), rel=1e-8, abs=1e-8)


@given(ts, ks, ab, reals, reals)
def test_t3_gap_is_scaled_janowski_defect(t, k, AB, beta, gamma):
    A, B = AB
    p = BBParams(A, B, beta, gamma)
    z = complex(math.cos(t), math.sin(t))
    assume(abs(1 + z) > 1e-3)
    s = np.sqrt(1 + z)
    Q = 2 * s * (gamma + beta * s)
    assume(abs(Q) > 1e-3)
    w = _boundary_image(t, k, s, z / (2 * s), beta, gamma)
    want = abs(Q) ** 2 * (abs(w - 1) ** 2 - abs(A - B * w) ** 2)
    assert cert.gap_t3(t, k, p) == pytest.approx(want, rel=1e-8, abs=1e-8 * abs(Q) ** 2 * (1 + abs(w) ** 2))


@given(ts, ks, ab, reals, reals)
def test_t4_gap_is_scaled_janowski_defect(t, k, AB, beta, gamma):
    A, B = AB
    p = BBParams(A, B, beta, gamma)
    z = complex(math.cos(t), math.sin(t))
    E = np.exp(z)
    D = beta * E + gamma
    assume(abs(D) > 1e-3)
    w = _boundary_image(t, k, E, z * E, beta, gamma)
    want = abs(D) ** 2 * (abs(w - 1) ** 2 - abs(A - B * w) ** 2)
    assert cert.gap_t4(t, k, p) == pytest.approx(want, rel=1e-8, abs=1e-8 * abs(D) ** 2 * (1 + abs(w) ** 2))


def no_pole(fn, *args):
    try:
        return fn(*args)
    except PoleError:
        assume(False)


@given(ks, ab, reals, reals)
def test_endpoint_closed_forms(k, AB, beta, gamma):
    A, B = AB
    p = BBParams(A, B, beta, gamma)

    def close(a, b):
        return abs(a - b) <= 1e-9 * max(abs(a), abs(b)) + 1e-9

    assert close(cert.gap_t3(math.pi, k, p), float(cert.t3_hpi(k, p)))
    assert close(cert.gap_t3(0.0, k, p), cert.t3_S(k, p))
    assert close(no_pole(cert.gap_t4, 0.0, k, p), cert.t4_phi(k, p))
    assert close(no_pole(cert.gap_t4, math.pi, k, p), cert.t4_psi(k, p))
    assert close(no_pole(cert.gap_t1, 0.0, k, beta, gamma), cert.t1_h0(k, beta, gamma))
    assert close(no_pole(cert.gap_t1, math.pi, k, beta, gamma), cert.t1_hpi(k, beta, gamma))


@given(ts, st.floats(1, 16), ab, reals, reals)
def test_t1_t4_expansions_match(t, k, AB, beta, gamma):
    p = BBParams(*AB, beta, gamma)
    a, b = no_pole(cert.gap_t1, t, k, beta, gamma), cert.gap_t1_expanded(t, k, beta, gamma)
    assert abs(a - b) <= 1e-9 * max(abs(a), abs(b), 1.0) * (1 + k) ** 4
    a, b = no_pole(cert.gap_t4, t, k, p), cert.gap_t4_expanded(t, k, p)
    assert abs(a - b) <= 1e-9 * max(abs(a), abs(b), 1.0) * (1 + k) ** 2


def test_t3_corrected_expansion_matches_and_printed_one_does_not():
    rng = np.random.default_rng(5)
    t = np.linspace(0, math.pi, 64)[:, None]
    k = np.linspace(1, 16, 8)[None, :]
    printed_off = 0
    for _ in range(20):
        B = rng.uniform(-1, 1)
        p = BBParams(rng.uniform(B, 1), B, *rng.uniform(-3, 3, 2))
        direct = cert.gap_t3(t, k, p)
        fixed = cert.gap_t3_expanded_corrected(t, k, p)
        assert np.allclose(fixed, direct, rtol=1e-9, atol=1e-9 * np.abs(direct).max())
        printed_off += not np.allclose(cert.gap_t3_expanded(t, k, p), direct, rtol=1e-8)
    assert printed_off == 20


@given(st.floats(-1, 1), ks, ab, reals, reals)
def test_t5_quadratic_structure(x, k, AB, beta, gamma):
    p = BBParams(*AB, beta, gamma)
    second = cert.t5_F(x + 1, k, p) - 2 * cert.t5_F(x, k, p) + cert.t5_F(x - 1, k, p)
    assert second == pytest.approx(cert.t5_F_second(p), rel=1e-9, abs=1e-9 * (1 + abs(cert.t5_F(x, k, p))))
    assert cert.t5_H(1.0, k, 0.7, p) == pytest.approx(cert.t5_H1(k, 0.7, p), rel=1e-12, abs=1e-12)


def test_t5_vertex_value_on_condition_i_draws():
    # the displayed F(x0) formula is checked wherever x0 is defined: only condition (i) is needed
    rng = np.random.default_rng(8)
    checked = 0
    while checked < 200:
        B = rng.uniform(-1, 1)
        p = BBParams(rng.uniform(B, 1), B, *rng.uniform(-4, 4, 2))
        if not p.B * p.G * (p.beta + p.gamma) > 1e-3:
            continue
        for k in (1.0, 3.0, 10.0):
            x0 = cert.t5_x0(k, p)
            direct = cert.t5_F(x0, k, p)
            shown = cert.t5_F_x0(k, p)
            assert abs(direct - shown) <= 1e-9 * max(abs(direct), abs(shown)) + 1e-9
            # x0 is the vertex of the parabola F
            h = 1e-3
            assert cert.t5_F(x0 + h, k, p) - direct == pytest.approx(cert.t5_F(x0 - h, k, p) - direct, rel=1e-5, abs=1e-9)
        checked += 1
    with pytest.raises(ParameterError):
        cert.t5_x0(1.0, BBParams(0.5, 0.0, 1.0, 1.0))


def test_t1_counterexample_sign_at_k1():
    # hypothesis fails through its upper bound; the k = 1, t = pi gap is still positive
    h = cert.t1_hpi(1.0, 1.0, -0.2)
    assert 0 < h < 0.01
    from bbsub.theorems import t1_hypothesis

    r = t1_hypothesis(1.0, -0.2)
    assert not r.satisfied and r.margin("upper") < 0


def test_certify_pass_report():
    r = cert.certify("t1", BBParams(beta=1.0, gamma=-0.5))
    assert r.verdict == "pass" and r.min_gap > 0
    assert r.hypothesis["satisfied"]
    assert r.endpoints["k_1"]["k"] == 1.0 and r.endpoints["k_max"]["k"] == 64.0
    assert r.large_k["ok"]
    d = json.loads(r.to_json())
    assert d["verdict"] == "pass" and d["params"]["gamma"] == -0.5


def test_certify_refinement_never_worsens():
    p = BBParams(0.5, -0.5, 1.0, -0.25)
    coarse = cert.certify("t2", p, rounds=0)
    fine = cert.certify("t2", p, rounds=3)
    assert fine.min_gap <= coarse.min_gap


def test_certify_skips_poles():
    # beta e^{e^{it}} + gamma vanishes at t = 0 when gamma = -e beta
    r = cert.certify("t1", BBParams(beta=1.0, gamma=-math.e))
    assert r.pole_count > 0 and r.poles[0]["t"] == 0.0
    assert math.isfinite(r.min_gap)
    with pytest.raises(PoleError):
        cert.gap_t1(0.0, 1.0, 1.0, -math.e)


def test_certify_flags_unsatisfied_hypothesis_and_bad_grids():
    r = cert.certify("t1", BBParams(beta=1.0, gamma=-0.2))
    assert r.notes and not r.hypothesis["satisfied"]
    with pytest.raises(ParameterError):
        cert.certify("t1", BBParams(), t_points=1)
    with pytest.raises(ParameterError):
        cert.gap("t7", 0.0, 1.0, BBParams())


def test_t5_generic_gap_is_min_of_bounds():
    p = BBParams(0.5, -0.5, 1.0, 1.0)
    F, H = cert.gap_t5(0.4, 2.0, 0.5, p)
    assert cert.gap("t5", 0.4, 2.0, p, m=0.5) == pytest.approx(min(F, H))


def test_surface_csv(tmp_path):
    path = tmp_path / "s.csv"
    cert.write_surface_csv("t4", BBParams(0.5, -0.5, 0.2, 1.0), path, t_points=5, k_points=3)
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["t", "k", "m", "gap"] and len(rows) == 16


def test_endpoint_check_pass_and_fail():
    p = sample_feasible("t1", 1, seed=3)[0]
    assert cert.endpoint_minimum_check("t1", p).passed
    bad = BBParams(A=0.5984485965235269, B=-0.5395496844447556, beta=3.237273453583698, gamma=-0.7829465689534194)
    res = cert.endpoint_minimum_check("t2", bad)
    assert not res.passed and res.worst_deficit > 1 and 0 < res.worst["t"] < math.pi
