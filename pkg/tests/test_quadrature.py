import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bbsub.errors import QuadratureError
from bbsub.quadrature import GAUSS_WEIGHTS, KRONROD_WEIGHTS, gauss_kronrod


def test_rule_weights_sum_to_interval_length():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)


@given(st.integers(0, 20))
def test_polynomials_are_exact(n):
    got = gauss_kronrod(lambda t: t**n, 0.0, 1.0)
    assert got == pytest.approx(1.0 / (n + 1), rel=1e-14)


def test_complex_family_in_one_pass():
    z = np.array([0.3, -0.5 + 0.2j, 0.9j])
    got = gauss_kronrod(lambda t: np.exp(t[:, None] * z[None, :]), 0.0, 1.0)
    want = np.expm1(z) / z
    assert np.allclose(got, want, rtol=1e-13, atol=0)


def test_sharp_peak_is_resolved():
    eps = 1e-2
    got = gauss_kronrod(lambda t: 1.0 / (eps**2 + (t - 0.3) ** 2), 0.0, 1.0)
    want = (np.arctan(0.7 / eps) + np.arctan(0.3 / eps)) / eps
    assert got == pytest.approx(want, rel=1e-12)


def test_endpoint_singularity_is_out_of_scope():
    # the per-interval tolerance shrinks like h while the error of t^-1/2 shrinks
    # like sqrt(h); algebraic weights go through integrate_family(power=...) instead
    with pytest.raises(QuadratureError):
        gauss_kronrod(lambda t: 1.0 / np.sqrt(t), 0.0, 1.0, tol=1e-10, max_levels=20)


def test_oscillatory_integrand():
    got = gauss_kronrod(lambda t: np.cos(40 * t), 0.0, np.pi / 2)
    assert got == pytest.approx(np.sin(20 * np.pi) / 40, abs=1e-12)


def test_nonconvergence_reports_residual():
    with pytest.raises(QuadratureError) as info:
        gauss_kronrod(lambda t: 1.0 / t, 0.0, 1.0, max_levels=3)
    assert info.value.residual > 0


def test_non_finite_values_raise():
    with pytest.raises(QuadratureError):
        gauss_kronrod(lambda t: np.where(t > 0.5, np.inf, 1.0), 0.0, 1.0)
