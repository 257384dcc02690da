import numpy as np
import pytest

from bbsub.analytic import EXP, SQRT_1PZ, closed_form, janowski_fn
from bbsub.errors import PoleError
from bbsub.regions import EXP_DISC, LEMNISCATE, janowski
from bbsub.subordination import bb_image, bb_transform, is_subordinate, ode_residual, verdict_for


def test_bb_transform_of_constant_is_constant():
    one = closed_form("1", lambda z: np.ones_like(z), lambda z: np.zeros_like(z))
    assert bb_transform(one, 2.0, 1.0, 0.3) == pytest.approx(1.0)


def test_bb_transform_explicit():
    z = 0.4 + 0.2j
    want = np.exp(z) + z * np.exp(z) / (0.5 * np.exp(z) + 1.5)
    assert bb_transform(EXP, 0.5, 1.5, z) == pytest.approx(want, rel=1e-14)


def test_bb_transform_pole():
    # beta e^z + gamma = 0 at z = 0 when beta = -gamma
    with pytest.raises(PoleError) as info:
        bb_transform(EXP, 1.0, -1.0, np.array([0.0, 0.2]))
    assert info.value.z == 0


def test_bb_image_is_analytic_fn():
    f = bb_image(EXP, 1.0, 1.0)
    assert f(0.0) == pytest.approx(1.0)
    assert f.deriv(0.1) == pytest.approx((f(0.1 + 1e-6) - f(0.1 - 1e-6)) / 2e-6, rel=1e-6)


def test_self_subordination_is_contained():
    assert is_subordinate(SQRT_1PZ, LEMNISCATE, r_max=0.95).verdict == "contained"
    assert is_subordinate(EXP, EXP_DISC, r_max=0.95).passed


def test_violation_detected():
    rep = is_subordinate(janowski_fn(1.0, -1.0), LEMNISCATE, r_max=0.95)
    assert rep.verdict == "violated"
    assert rep.min_gap < 0
    assert 0 < rep.argmin[0] <= 0.95


def test_normalization_is_required():
    shifted = closed_form("e^z+1", lambda z: np.exp(z) + 1, np.exp, at_zero=2.0)
    rep = is_subordinate(shifted, EXP_DISC)
    assert rep.verdict == "violated" and rep.min_gap == -np.inf


def test_verdict_band():
    assert verdict_for(1e-8, 1e-9) == "contained"
    assert verdict_for(0.0, 1e-9) == "inconclusive"
    assert verdict_for(-1e-8, 1e-9) == "violated"


def test_report_dict():
    d = is_subordinate(EXP, janowski(1.0, -1.0), r_max=0.5, n_radii=3, n_samples=64).to_dict()
    assert set(d["argmin"]) == {"r", "theta"} and len(d["radii"]) == 3


def test_ode_residual_of_exact_solution():
    # p = e^z with beta = 0, gamma = 1 solves p + z p' = (1 + z) e^z
    h = closed_form("(1+z)e^z", lambda z: (1 + z) * np.exp(z), at_zero=1.0)
    assert ode_residual(EXP, h, 0.0, 1.0, 0.9) < 1e-13
    with pytest.raises(ValueError):
        ode_residual(EXP, h, 0.0, 1.0, 1.0)
