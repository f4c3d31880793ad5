import math

import numpy as np
import pytest
from scipy import integrate, special

from besseldrift import randkit as rk
from besseldrift.randkit import (
    Beta,
    CensoredExp,
    Exponential,
    Gamma,
    InverseGamma,
    Product,
    Reciprocal,
    RngStream,
    ShiftedMax,
    sample_blocks,
)
from besseldrift.stats import ks_one_sample, ks_two_sample

N = 100_000


def gen(seed, sid=0):
    return RngStream(seed, sid).generator


def test_same_key_is_bit_identical():
    a = RngStream(7, 3).generator.standard_normal(1000)
    b = RngStream(7, 3).generator.standard_normal(1000)
    assert a.tobytes() == b.tobytes()


def test_distinct_streams_differ_and_look_independent():
    a = RngStream(7, 3).generator.random(N)
    b = RngStream(7, 4).generator.random(N)
    assert not np.array_equal(a, b)
    assert abs(np.corrcoef(a, b)[0, 1]) < 4 / math.sqrt(N)


def test_substreams_are_distinct():
    root = RngStream(1, 2)
    ids = {root.substream(k).stream_id for k in range(100)}
    assert len(ids) == 100 and root.stream_id not in ids


def test_blocks_do_not_depend_on_worker_count():
    s = RngStream(11, 5)
    draw = lambda g, m: g.gamma(0.3, size=m)
    one = sample_blocks(draw, 50_000, s, block_size=4096, workers=1)
    four = sample_blocks(draw, 50_000, s, block_size=4096, workers=4)
    assert one.tobytes() == four.tobytes()
    assert one.size == 50_000


def test_stream_rejects_out_of_range_keys():
    with pytest.raises(ValueError):
        RngStream(-1, 0)
    with pytest.raises(ValueError):
        RngStream(0, 1 << 64)


def test_as_generator_type_check():
    with pytest.raises(TypeError):
        rk.as_generator(42)


def test_censored_exp_atom_frequency():
    x = CensoredExp(1.0, 0.5).sample(gen(1), N)
    p = math.exp(-0.5)
    se = math.sqrt(p * (1 - p) / N)
    assert abs(np.mean(x == 1.0) - p) < 4 * se
    assert x.max() == 1.0


def test_gamma_shape_one_is_exponential():
    lam = 1.7
    g = Gamma(1.0, lam).sample(gen(2), N)
    e = Exponential(lam).sample(gen(3), N)
    assert ks_two_sample(g, e).pvalue > 1e-3
    y = np.linspace(0, 5, 101)
    np.testing.assert_allclose(Gamma(1.0, lam).cdf(y), Exponential(lam).cdf(y), atol=1e-14)


def test_product_mean():
    # E[min(1, E)] = (1 - e^{-rate}) / rate for rate 0.5, times E[A] = 1/2
    n = 1_000_000
    z = Product(CensoredExp(1.0, 0.5), Beta(0.5, 0.5)).sample(gen(4), n)
    target = (1 - math.exp(-0.5)) / 0.5 * 0.5
    assert abs(z.mean() - target) < 4 * z.std() / math.sqrt(n)


def test_simple_cdf_values():
    assert Beta(0.5, 0.5).cdf(0.5) == pytest.approx(0.5, abs=1e-15)
    c = CensoredExp(1.0, 0.5)
    assert c.cdf(1.0) == 1.0
    assert c.cdf_left(1.0) == pytest.approx(1 - math.exp(-0.5), rel=1e-14)
    assert c.atom_mass(1.0) == pytest.approx(math.exp(-0.5), rel=1e-12)
    assert c.jumps == (1.0,)


def _product_oracle(y, t, rate, a, b):
    # direct form: atom at the cap plus the exponential body, with scipy's betainc
    f = lambda s: rate * math.exp(-rate * s) * special.betainc(a, b, min(1.0, y / s))
    kink = min(y, t)
    body = integrate.quad(f, 0, kink, epsabs=1e-12)[0] + integrate.quad(f, kink, t, epsabs=1e-12, limit=200)[0]
    return body + math.exp(-rate * t) * special.betainc(a, b, min(1.0, y / t))


@pytest.mark.parametrize("y", [0.01, 0.25, 0.5, 0.9, 0.999])
def test_product_cdf_matches_quadrature_oracle(y):
    law = Product(CensoredExp(1.0, 0.5), Beta(0.5, 0.5))
    assert law.cdf(y) == pytest.approx(_product_oracle(y, 1.0, 0.5, 0.5, 0.5), abs=1e-8)


def test_product_cdf_matches_monte_carlo():
    law = Product(CensoredExp(1.0, 0.5), Beta(0.5, 0.5))
    z = law.sample(gen(5), 1_000_000)
    assert abs(np.mean(z <= 0.5) - law.cdf(0.5)) < 3e-3


def test_product_cdf_routes_agree():
    y = np.linspace(0.0, 2.5, 61)
    beta = Beta(0.3, 0.7)
    law = Product(CensoredExp(2.0, 1.3), beta)
    np.testing.assert_allclose(law.cdf(y), rk._mixture_cdf(y, 2.0, 1.3, beta), atol=1e-9)


def test_product_cdf_order_of_factors():
    y = np.linspace(0.0, 1.0, 21)
    a = Product(CensoredExp(1.0, 0.5), Beta(0.5, 0.5)).cdf(y)
    b = Product(Beta(0.5, 0.5), CensoredExp(1.0, 0.5)).cdf(y)
    np.testing.assert_allclose(a, b, atol=1e-15)


def test_product_cdf_needs_exponential_factor():
    with pytest.raises(NotImplementedError):
        Product(Beta(1, 1), Gamma(1, 1)).cdf(0.5)


def test_reciprocal_rejects_atom_at_zero():
    with pytest.raises(ValueError):
        Reciprocal(CensoredExp(0.0, 1.0))


@pytest.mark.parametrize(
    "make",
    [
        lambda: Beta(0.0, 1.0),
        lambda: Exponential(-1.0),
        lambda: Gamma(1.0, 0.0),
        lambda: InverseGamma(float("nan"), 1.0),
        lambda: CensoredExp(-1.0, 1.0),
        lambda: ShiftedMax(-0.5, Exponential(1.0)),
    ],
)
def test_parameter_validation(make):
    with pytest.raises(ValueError):
        make()


LAWS = {
    "beta": Beta(0.3, 0.7),
    "exponential": Exponential(0.5),
    "gamma": Gamma(0.4, 2.0),
    "inverse_gamma": InverseGamma(0.75, 0.5),
    "censored_exp": CensoredExp(1.0, 0.5),
    "reciprocal_exp": Reciprocal(Exponential(0.5)),
    "shifted_max": ShiftedMax(1.0, Reciprocal(Exponential(0.5))),
    "product_censored_beta": Product(CensoredExp(2.0, 0.125), Beta(0.25, 0.75)),
    "product_exp_beta": Product(Exponential(0.5), Beta(0.5, 0.5)),
    "product_censored_gamma": Product(CensoredExp(1.0, 0.5), Gamma(2.0, 1.0)),
}


@pytest.mark.parametrize("name", sorted(LAWS))
def test_sampler_matches_own_cdf(name):
    law = LAWS[name]
    x = law.sample(RngStream(2024, 1 + sorted(LAWS).index(name)).generator, N)
    r = ks_one_sample(x, law.cdf, jumps=law.jumps, cdf_left=law.cdf_left)
    assert r.pvalue > 1e-3, r


@pytest.mark.parametrize("name", sorted(LAWS))
def test_cdf_monotone_with_limits(name):
    law = LAWS[name]
    hi = law.upper if math.isfinite(law.upper) else 1e6
    y = np.concatenate([[-1.0], np.linspace(0.0, hi * 1.01, 998), [1e300]])
    f = np.asarray(law.cdf(y))
    assert np.all((f >= 0) & (f <= 1))
    assert np.all(np.diff(f) >= -1e-12)
    assert f[0] == 0.0
    assert f[-1] == pytest.approx(1.0, abs=1e-8)


def test_module_level_helpers():
    law = Exponential(2.0)
    assert rk.cdf(law, 0.5) == law.cdf(0.5)
    a = rk.sample(law, RngStream(3).generator, 5)
    b = law.sample(RngStream(3).generator, 5)
    np.testing.assert_array_equal(a, b)
