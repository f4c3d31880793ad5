import json
import math

import jsonschema
import numpy as np
import pytest
from scipy import stats as sps

from besseldrift import identities as ident
from besseldrift.identities import (
    IdentityCase,
    Route,
    TestReport,
    UnknownIdentityError,
    audit_routes,
    catalog,
    get_case,
    report_schema,
    run_identity,
    run_suite,
)
from besseldrift.randkit import Exponential, Reciprocal
from besseldrift.stats import ks_one_sample, ks_two_sample

EXPECTED = [
    "decomp", "last_zero", "first_zero", "lamperti_limit", "esg_case", "g_infinity", "duality",
    "drift_scaling", "additivity", "bridge_additivity", "zero_bridge", "time_inversion_t1",
    "lln_drift", "absorption",
]


@pytest.fixture(scope="module")
def default_suite():
    return run_suite()


def _strip(d):
    d = dict(d)
    d.pop("wall_ms")
    return d


def test_catalog_contents():
    cases = catalog()
    assert [c.name for c in cases] == EXPECTED
    assert all(c.n >= 10_000 for c in cases)
    assert all(c.alpha == 1e-3 and c.seed == 42 for c in cases)


def test_routes_are_disjoint():
    assert audit_routes() == []


def test_audit_flags_a_tautology():
    bad = IdentityCase(
        "circular", "thm", "two-sample-KS",
        Route("uses the theorem", frozenset({"thm"})), Route("other"),
    )
    same = IdentityCase("same", "thm", "two-sample-KS", Route("a"), Route("a"))
    assert audit_routes([bad, same]) == ["circular", "same"]


def test_absorption_closed_form():
    assert Reciprocal(Exponential(0.5)).cdf(1.0) == pytest.approx(math.exp(-0.5), rel=1e-15)


def test_unknown_name_lists_catalog():
    with pytest.raises(UnknownIdentityError) as err:
        run_identity("bogus")
    assert all(name in str(err.value) for name in EXPECTED)


def test_case_validation():
    with pytest.raises(ValueError):
        get_case("last_zero").with_params(kappa=1.0)
    with pytest.raises(ValueError):
        IdentityCase("x", "y", "chi-square", Route("a"), Route("b"))


def test_every_entry_passes_at_defaults(default_suite):
    failed = [r.name for r in default_suite if not r.passed]
    assert failed == []
    assert [r.name for r in default_suite] == EXPECTED


def test_reports_validate_and_round_trip(default_suite):
    schema = report_schema()
    for r in default_suite:
        d = json.loads(r.to_json())
        jsonschema.validate(d, schema)
        assert set(d) == {"name", "params", "statistic", "p_value", "alpha", "decision", "n", "seed", "wall_ms"}
        assert TestReport.from_json(r.to_json()) == r


def test_schema_rejects_extra_fields(default_suite):
    d = default_suite[0].to_dict()
    d["extra"] = 1
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(d, report_schema())


def test_deterministic_given_seed():
    a = run_identity(get_case("last_zero").with_params(n=20_000, seed=5))
    b = run_identity(get_case("last_zero").with_params(n=20_000, seed=5))
    assert _strip(a.to_dict()) == _strip(b.to_dict())
    c = run_identity(get_case("last_zero").with_params(n=20_000, seed=6))
    assert c.statistic != a.statistic


def test_suite_is_independent_of_workers():
    names = ["last_zero", "duality", "absorption"]
    one = run_suite(names, workers=1)
    two = run_suite(names, workers=3)
    assert [_strip(r.to_dict()) for r in one] == [_strip(r.to_dict()) for r in two]


def test_last_zero_default_passes():
    r = run_identity("last_zero")
    assert r.passed and r.n == 100_000 and r.p_value["ks"] > 1e-3


def test_decomp_marginals_and_zero_fractions(default_suite):
    r = next(r for r in default_suite if r.name == "decomp")
    assert all(r.p_value[f"ks[t={t:g}]"] > 1e-3 for t in (0.5, 1, 2))
    # zero-fraction agreement is a band check reported as a z-score
    assert all(r.statistic[f"zero_fraction[t={t:g}]"] <= 3 for t in (0.5, 1, 2))


def test_holm_within_entry():
    checks = [ident.Check("a", 0.1, 0.0004), ident.Check("b", 0.1, 0.5), ident.Check("c", 0.1, None, ok=True)]
    adj = ident._holm_by_label(checks)
    assert adj == {"a": 0.0008, "b": 0.5}
    assert ident._decide(checks, adj, 1e-3) == "fail"
    assert ident._decide(checks, adj, 1e-4) == "pass"
    checks[2].ok = False
    assert ident._decide(checks, adj, 1e-4) == "fail"


def test_null_pvalues_uniform_over_seeds():
    # identical sampler on both sides, different substreams
    def same(p, n, gl, gr, ga):
        return [ident._ks2("ks", gl.gamma(0.5, size=n), gr.gamma(0.5, size=n))]

    base = get_case("last_zero").with_params(n=10_000)
    ps = [run_identity(base.with_params(seed=s), runner=same).p_value["ks"] for s in range(200)]
    assert ks_one_sample(ps, lambda v: np.clip(v, 0, 1)).pvalue > 0.01


@pytest.mark.parametrize("name", ["drift_scaling", "time_inversion_t1"])
@pytest.mark.parametrize("delta", [0.5, 1.5])
def test_non_integer_dimensions_use_density_route(name, delta):
    r = run_identity(get_case(name).with_params(delta=delta, n=50_000))
    assert r.passed, r


def test_tabulated_density_cdf_is_accurate():
    mu, t = 1.0, 1.0
    law = ident._drifted_marginal_law(1.0, mu, t)
    y = np.linspace(0.0, 6.0, 301)
    folded = sps.norm.cdf((y - mu * t) / math.sqrt(t)) - sps.norm.cdf((-y - mu * t) / math.sqrt(t))
    np.testing.assert_allclose(law.cdf(y), folded, atol=1e-8)


def test_bad_sampler_is_caught():
    # a deliberately wrong rhs (exponential rate off by 20%) must fail
    def wrong(p, n, gl, gr, ga):
        return [ident._ks2("ks", gl.exponential(1.0, n), gr.exponential(1.2, n))]

    assert not run_identity("last_zero", runner=wrong).passed


def test_esg_case_gaussian_route_differs_from_inversion():
    r = run_identity("esg_case")
    assert set(r.p_value) == {"ks[inversion]", "ks[gaussian]", "ks[marginal]"}
    assert r.passed
