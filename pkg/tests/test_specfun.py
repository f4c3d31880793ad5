import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from besseldrift.specfun import (
    AccuracyPolicy,
    DomainError,
    bessel_i,
    h_drift,
    log_bessel_i,
    log_gamma,
    log_h_drift,
    reg_inc_beta,
    reg_inc_gamma_lower,
    reg_inc_gamma_upper,
)


@pytest.mark.parametrize(
    "a, expected",
    [(1.0, 0.0), (0.5, math.log(math.sqrt(math.pi))), (5.0, math.log(24.0))],
)
def test_log_gamma_known_values(a, expected):
    assert log_gamma(a) == pytest.approx(expected, rel=1e-14, abs=1e-15)


def test_log_gamma_matches_scipy_on_a_box():
    a = np.geomspace(1e-3, 1e3, 400)
    np.testing.assert_allclose(log_gamma(a), special.gammaln(a), rtol=1e-13, atol=1e-14)


def test_log_gamma_rejects_nonpositive():
    with pytest.raises(DomainError):
        log_gamma(0.0)
    with pytest.raises(DomainError):
        log_gamma(-2.5)


def _series_oracle(nu, z, terms=60):
    # plain power series, independent of the library implementation
    return sum((z / 2) ** (2 * k + nu) / (math.factorial(k) * math.gamma(k + nu + 1)) for k in range(terms))


def test_bessel_i_at_zero():
    assert bessel_i(0.0, 0.0) == 1.0
    assert bessel_i(1.5, 0.0) == 0.0


@pytest.mark.parametrize(
    "nu, closed",
    [(0.5, math.sqrt(2 / math.pi) * math.sinh(1.0)), (-0.5, math.sqrt(2 / math.pi) * math.cosh(1.0))],
)
def test_bessel_i_half_orders(nu, closed):
    assert bessel_i(nu, 1.0) == pytest.approx(closed, rel=1e-14)
    assert _series_oracle(nu, 1.0) == pytest.approx(closed, rel=1e-14)


def test_bessel_i_half_order_reference_digits():
    assert bessel_i(0.5, 1.0) == pytest.approx(0.9376748, abs=1e-7)
    # sqrt(2/pi) cosh(1) = 1.2312002 (the often-quoted 1.2312336 is a typo)
    assert bessel_i(-0.5, 1.0) == pytest.approx(1.2312002, abs=1e-7)


@pytest.mark.parametrize("nu", [-1.0, -0.5, -0.25, 0.0, 0.5, 1.0, 2.5, 10.0])
def test_bessel_i_matches_scipy_across_the_switch(nu):
    z = np.concatenate([np.linspace(0.01, 24.99, 200), np.linspace(25.0, 600.0, 200)])
    ours = log_bessel_i(nu, z)
    ref = np.log(special.ive(nu, z)) + z
    np.testing.assert_allclose(ours, ref, rtol=1e-12, atol=1e-12)


def test_bessel_i_continuous_at_switch():
    for nu in (-0.5, 0.0, 0.75, 3.0):
        lo, hi = log_bessel_i(nu, np.nextafter(25.0, 0.0)), log_bessel_i(nu, 25.0)
        assert abs(lo - hi) < 1e-12


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.5])
def test_bessel_recurrence(nu):
    z = np.linspace(0.1, 50.0, 300)
    lhs = bessel_i(nu - 1, z) - bessel_i(nu + 1, z) - (2 * nu / z) * bessel_i(nu, z)
    assert np.all(np.abs(lhs) <= 1e-10 * bessel_i(nu - 1, z))


def test_bessel_i_domain():
    with pytest.raises(DomainError):
        bessel_i(0.0, -1.0)
    with pytest.raises(DomainError):
        bessel_i(-1.5, 1.0)


def test_bessel_i_integer_negative_order_symmetry():
    z = np.linspace(0.0, 40.0, 50)
    np.testing.assert_array_equal(bessel_i(-1.0, z), bessel_i(1.0, z))


def test_h_at_zero_is_one():
    for delta in (0.3, 1.0, 2.0, 3.7):
        for mu in (0.1, 1.0, 5.0):
            assert h_drift(delta, mu, 0.0) == 1.0


def test_h_continuous_at_zero():
    for delta in (0.5, 1.0, 3.0):
        assert h_drift(delta, 2.0, 1e-9) == pytest.approx(1.0, abs=1e-15)


def test_h_reference_values():
    assert h_drift(1.0, 2.0, 3.0) == pytest.approx(math.cosh(6.0), rel=1e-13)
    assert h_drift(1.0, 2.0, 3.0) == pytest.approx(201.71564, abs=5e-6)
    # sinh(6)/6 = 33.6188596 to 7 decimals
    assert h_drift(3.0, 2.0, 3.0) == pytest.approx(math.sinh(6.0) / 6.0, rel=1e-13)


def test_h_closed_forms_up_to_30():
    mu = np.array([0.5, 1.0, 2.0, 3.0])
    for m in mu:
        x = np.linspace(0.0, 30.0 / m, 301)[1:]
        np.testing.assert_allclose(h_drift(1.0, m, x), np.cosh(m * x), rtol=1e-12)
        np.testing.assert_allclose(h_drift(3.0, m, x), np.sinh(m * x) / (m * x), rtol=1e-12)


def test_log_h_large_argument_no_overflow():
    # cosh(5000) overflows a double; its log does not
    assert log_h_drift(1.0, 1.0, 5000.0) == pytest.approx(5000.0 - math.log(2.0), rel=1e-14)


def test_h_domain():
    with pytest.raises(DomainError):
        h_drift(1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        h_drift(0.0, 1.0, 1.0)


def test_reg_inc_beta_examples():
    assert reg_inc_beta(0.5, 0.5, 0.5) == pytest.approx(0.5, abs=1e-15)
    assert reg_inc_beta(0.5, 0.5, 0.25) == pytest.approx(2 / math.pi * math.asin(0.5), abs=1e-14)
    assert reg_inc_beta(0.6, 0.4, 1.0) == 1.0
    assert reg_inc_beta(0.6, 0.4, 0.0) == 0.0


def test_reg_inc_beta_against_quadrature():
    quad, _ = integrate.quad(lambda u: u**-0.5 * (1 - u) ** -0.5 / math.pi, 0.0, 0.25)
    assert reg_inc_beta(0.5, 0.5, 0.25) == pytest.approx(quad, abs=1e-9)


def test_reg_inc_beta_matches_scipy():
    rng = np.random.default_rng(0)
    a, b, x = rng.uniform(0.05, 20, 500), rng.uniform(0.05, 20, 500), rng.uniform(0, 1, 500)
    ours = np.array([reg_inc_beta(*v) for v in zip(a, b, x)])
    np.testing.assert_allclose(ours, special.betainc(a, b, x), rtol=1e-10, atol=1e-14)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(0.05, 30.0), st.floats(0.05, 30.0), st.floats(0.0, 1.0),
)
def test_reg_inc_beta_reflection(a, b, x):
    # use an exactly complementary pair; 1 - x alone can round to 1
    y = 1.0 - x
    x = 1.0 - y
    assert reg_inc_beta(a, b, x) + reg_inc_beta(b, a, y) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 30.0), st.floats(0.05, 30.0))
def test_reg_inc_beta_monotone(a, b):
    v = reg_inc_beta(a, b, np.linspace(0.0, 1.0, 101))
    assert np.all(np.diff(v) >= -1e-15)
    assert np.all((v >= 0) & (v <= 1))


def test_reg_inc_beta_domain():
    with pytest.raises(DomainError):
        reg_inc_beta(1.0, 1.0, 1.5)


def test_reg_inc_gamma_examples():
    assert reg_inc_gamma_upper(1.0, 0.5) == pytest.approx(math.exp(-0.5), rel=1e-14)
    assert reg_inc_gamma_upper(2.0, 0.0) == 1.0
    assert reg_inc_gamma_upper(0.5, 1.0) == pytest.approx(math.erfc(1.0), rel=1e-13)
    assert reg_inc_gamma_upper(0.5, 1.0) == pytest.approx(0.1572992, abs=5e-8)


def test_reg_inc_gamma_against_quadrature():
    quad, _ = integrate.quad(lambda s: s**-0.5 * math.exp(-s) / math.sqrt(math.pi), 1.0, np.inf)
    assert reg_inc_gamma_upper(0.5, 1.0) == pytest.approx(quad, abs=1e-9)


def test_reg_inc_gamma_matches_scipy():
    rng = np.random.default_rng(1)
    a, x = rng.uniform(0.01, 50, 500), rng.uniform(0, 80, 500)
    q = np.array([reg_inc_gamma_upper(*v) for v in zip(a, x)])
    p = np.array([reg_inc_gamma_lower(*v) for v in zip(a, x)])
    np.testing.assert_allclose(q, special.gammaincc(a, x), rtol=1e-10, atol=1e-14)
    np.testing.assert_allclose(p, special.gammainc(a, x), rtol=1e-10, atol=1e-14)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 50.0), st.floats(0.0, 200.0))
def test_reg_inc_gamma_complement(a, x):
    p, q = reg_inc_gamma_lower(a, x), reg_inc_gamma_upper(a, x)
    assert 0.0 <= q <= 1.0
    assert p + q == pytest.approx(1.0, abs=1e-13)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 50.0))
def test_reg_inc_gamma_upper_nonincreasing(a):
    q = reg_inc_gamma_upper(a, np.linspace(0.0, 100.0, 201))
    assert q[0] == 1.0
    assert np.all(np.diff(q) <= 1e-15)


def test_policy_bounds():
    AccuracyPolicy(rel_tol=1e-6, max_terms=50)
    with pytest.raises(ValueError):
        AccuracyPolicy(rel_tol=1e-3)
    with pytest.raises(ValueError):
        AccuracyPolicy(rel_tol=0.0)
    with pytest.raises(ValueError):
        AccuracyPolicy(max_terms=49)


def test_looser_policy_still_accurate_to_its_tolerance():
    pol = AccuracyPolicy(rel_tol=1e-8, max_terms=60)
    assert bessel_i(0.5, 3.0, pol) == pytest.approx(special.iv(0.5, 3.0), rel=1e-7)


def test_outputs_finite_on_parameter_box():
    z = np.geomspace(1e-6, 700.0, 60)
    for nu in np.linspace(-1.0, 5.0, 13):
        assert np.all(np.isfinite(log_bessel_i(nu, z)))
    x = np.linspace(0.0, 200.0, 50)
    for d in np.linspace(0.1, 6.0, 12):
        assert np.all(np.isfinite(log_h_drift(d, 1.5, x)))
