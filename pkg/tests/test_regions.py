import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bbsub.errors import DomainError, ParameterError
from bbsub.regions import (
    EXP_DISC,
    LEMNISCATE,
    PARABOLA,
    PHI_PAR,
    Region,
    boundary_point,
    gap,
    janowski,
    phi_par,
)

thetas = st.floats(-math.pi + 1e-6, math.pi - 1e-6)
janowski_pairs = st.tuples(st.floats(-1, 1), st.floats(-1, 1)).filter(lambda ab: ab[1] < ab[0] - 1e-3)


def test_parse_and_labels():
    assert Region.parse("janowski:0.5,-0.5") == janowski(0.5, -0.5)
    assert Region.parse("Lemniscate") is not None and Region.parse("expdisc").label == "expdisc"
    with pytest.raises(ParameterError):
        Region.parse("janowski:0.5")
    with pytest.raises(ParameterError):
        janowski(0.2, 0.5)
    with pytest.raises(ParameterError):
        Region("disc")


def test_one_is_interior_everywhere():
    for region in (janowski(0.5, -0.5), janowski(1, -1), LEMNISCATE, EXP_DISC, PARABOLA):
        assert gap(region, 1.0) > 0


@pytest.mark.parametrize("region", [LEMNISCATE, EXP_DISC, PARABOLA])
@given(theta=thetas)
def test_boundary_has_zero_gap(region, theta):
    w = boundary_point(region, theta)
    assert abs(gap(region, w)) <= 1e-12 * max(1.0, abs(w))


@given(janowski_pairs, thetas)
def test_janowski_boundary_has_zero_gap(ab, theta):
    A, B = ab
    region = janowski(A, B)
    w = boundary_point(region, theta)
    if np.isfinite(w):
        assert abs(gap(region, w)) <= 1e-9


@pytest.mark.parametrize("region", [LEMNISCATE, EXP_DISC, PARABOLA, janowski(0.5, -0.5)])
def test_target_map_sends_disc_inside(region):
    q = region.target()
    z = 0.9 * np.exp(2j * np.pi * np.arange(64) / 64)
    assert np.all(gap(region, q(z)) > 0)
    assert q(0.0) == pytest.approx(1.0)


def test_gap_sign_outside():
    assert gap(LEMNISCATE, 2.0) < 0
    assert gap(EXP_DISC, 3.0) < 0
    assert gap(PARABOLA, 0.4) < 0
    assert gap(janowski(0.5, 0.0), 2.0) < 0


def test_undefined_points_raise():
    with pytest.raises(DomainError):
        gap(EXP_DISC, -1.0)
    with pytest.raises(DomainError):
        gap(janowski(0.5, -0.5), -1.0)  # w = A/B


def test_phi_par_values():
    assert phi_par(0.0) == pytest.approx(1.0, abs=1e-15)
    assert phi_par(-1.0) == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(DomainError):
        phi_par(1.0)


@given(st.floats(0, 0.9), thetas)
def test_phi_par_derivative(r, theta):
    z = r * complex(math.cos(theta), math.sin(theta))
    h = 1e-6
    fd = (PHI_PAR(z + h) - PHI_PAR(z - h)) / (2 * h)
    assert abs(PHI_PAR.deriv(z) - fd) <= 1e-6 * max(1, abs(fd))


def test_parabola_boundary_is_affine_in_theta():
    w = boundary_point(PARABOLA, np.array([-math.pi, 0.0, math.pi]))
    assert w[1] == pytest.approx(0.5)
    assert w[2].imag == pytest.approx(50.0)
    assert w[0].imag == pytest.approx(-50.0)


def test_half_plane_boundary_pole():
    assert np.isinf(boundary_point(janowski(1.0, -1.0), 0.0))
