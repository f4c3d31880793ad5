"""Named equality-in-law checks for Bessel processes with drift.

Each catalog entry samples two sides through unrelated constructions (or
one side against a closed-form CDF) and compares them with KS tests. Joint
laws on a grid are compared per marginal plus pairwise Spearman
correlations. Every check inside an entry feeds a Holm correction; the
entry passes when Holm rejects nothing and all deterministic band checks
hold.

Routes are tagged with the facts they rely on so :func:`audit_routes` can
confirm that no entry uses the identity it tests.
"""

from __future__ import annotations

import itertools
import json
import math
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from importlib import resources
from typing import Callable, Mapping

import numpy as np
from scipy.integrate import cumulative_simpson

from . import randkit as rk
from .bessel_core import (
    BesselLaw,
    besq_path,
    besq_transition,
    drifted_from_zero,
    drifted_sampler,
    drifted_transition_density,
    first_zero_sample,
    gaussian_norm_drifted,
    last_zero_bridge_sample,
    last_zero_drifted_sample,
    tau0_sample,
)
from .bridges import (
    bridge0_reject,
    delayed_start,
    process_to_bridge_time,
    sample_bridge,
    zero_bridge_transform,
)
from .randkit import RngStream
from .stats import (
    holm_adjusted,
    ks_one_sample,
    ks_two_sample,
    proportion_z_pvalue,
    spearman,
    spearman_equal_pvalue,
)

__all__ = [
    "Route",
    "IdentityCase",
    "Check",
    "TestReport",
    "catalog",
    "catalog_names",
    "get_case",
    "run_identity",
    "run_suite",
    "audit_routes",
    "report_schema",
    "UnknownIdentityError",
]

DEFAULT_N = 100_000
DEFAULT_SEED = 42
DEFAULT_ALPHA = 1e-3
TESTS = ("two-sample-KS", "one-sample-KS", "joint-marginals-KS", "band")


class UnknownIdentityError(KeyError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown identity {name!r}; catalog: {', '.join(catalog_names())}")

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class Route:
    """How one side is sampled and which facts that construction relies on."""

    description: str
    relies_on: frozenset = frozenset()


@dataclass(frozen=True)
class IdentityCase:
    name: str
    identity: str
    test: str
    lhs: Route
    rhs: Route
    params: Mapping = field(default_factory=dict)
    n: int = DEFAULT_N
    seed: int = DEFAULT_SEED
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        if self.test not in TESTS:
            raise ValueError(f"test must be one of {TESTS}, got {self.test!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")

    def with_params(self, n=None, seed=None, alpha=None, **params) -> "IdentityCase":
        unknown = set(params) - set(self.params)
        if unknown:
            raise ValueError(f"{self.name} has no parameters {sorted(unknown)}; known: {sorted(self.params)}")
        return replace(
            self,
            params={**self.params, **params},
            n=self.n if n is None else int(n),
            seed=self.seed if seed is None else int(seed),
            alpha=self.alpha if alpha is None else float(alpha),
        )


@dataclass
class Check:
    """One statistic inside an entry; ``ok`` is set only for band checks."""

    label: str
    statistic: float
    pvalue: float | None = None
    ok: bool | None = None


@dataclass
class TestReport:
    __test__ = False  # not a pytest class

    name: str
    params: dict
    statistic: dict
    p_value: dict
    alpha: float
    decision: str
    n: int
    seed: int
    wall_ms: float

    @property
    def passed(self) -> bool:
        return self.decision == "pass"

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: Mapping) -> "TestReport":
        return cls(**{k: d[k] for k in cls.__dataclass_fields__})

    @classmethod
    def from_json(cls, s: str) -> "TestReport":
        return cls.from_dict(json.loads(s))


def report_schema() -> dict:
    text = resources.files("besseldrift").joinpath("report.schema.json").read_text()
    return json.loads(text)


# ---------------------------------------------------------------------------
# shared pieces


def _alpha(delta):
    return 1.0 - 0.5 * delta


def _is_int(delta):
    return float(delta).is_integer() and delta >= 1


def _ks2(label, a, b):
    r = ks_two_sample(a, b)
    return Check(label, r.statistic, r.pvalue)


def _ks1(label, sample, law):
    r = ks_one_sample(sample, law.cdf, jumps=law.jumps, cdf_left=law.cdf_left)
    return Check(label, r.statistic, r.pvalue)


def _joint_checks(lhs, rhs, times):
    """Per-marginal KS plus pairwise Spearman comparisons."""
    out = [_ks2(f"ks[t={t:g}]", lhs[:, j], rhs[:, j]) for j, t in enumerate(times)]
    for i, j in itertools.combinations(range(len(times)), 2):
        diff = spearman(lhs[:, i], lhs[:, j]) - spearman(rhs[:, i], rhs[:, j])
        p = spearman_equal_pvalue(lhs[:, i], lhs[:, j], rhs[:, i], rhs[:, j])
        out.append(Check(f"spearman[{times[i]:g},{times[j]:g}]", abs(diff), p))
    return out


def _zero_fraction_band(label, a, b, k=3.0):
    """|frac_a - frac_b| within ``k`` pooled standard errors."""
    fa, fb = np.mean(a == 0), np.mean(b == 0)
    pool = 0.5 * (fa + fb)
    se = math.sqrt(pool * (1 - pool) * (1 / a.size + 1 / b.size))
    z = 0.0 if fa == fb else abs(fa - fb) / se
    return Check(label, z, ok=bool(z <= k))


class _TableCdf(rk.ScalarLaw):
    """Continuous CDF tabulated from a density by Simpson's rule.

    The density is integrated in ``u = y**power`` so that a ``y**(power-1)``
    singularity at 0 becomes bounded.
    """

    def __init__(self, log_density, upper, power=1.0, points=40_001):
        u = np.linspace(0.0, upper**power, points)
        y = u ** (1.0 / power)
        y[0] = 1e-300  # the substituted integrand has a finite limit at 0
        with np.errstate(divide="ignore"):
            g = np.exp(log_density(y) + (1.0 - power) * np.log(y) - math.log(power))
        self._u, self.power = u, power
        self._f = np.concatenate([[0.0], cumulative_simpson(g, x=u)])
        self.upper = math.inf

    def cdf(self, y):
        y = np.asarray(y, dtype=float)
        u = np.maximum(y, 0.0) ** self.power
        return rk._f(np.clip(np.interp(u, self._u, self._f, right=1.0), 0.0, 1.0))


def _drifted_marginal_law(delta, mu, t):
    """Law of X_t under P_0^{delta,mu} from its closed-form density."""
    upper = mu * t + 12.0 * math.sqrt(t) + 4.0 * math.sqrt(delta * t)
    return _TableCdf(lambda y: drifted_transition_density(delta, mu, t, 0.0, y, log=True), upper, power=delta)


# ---------------------------------------------------------------------------
# entries; each takes (params, n, lhs_gen, rhs_gen, aux_gen) and returns checks


def _decomp(p, n, gl, gr, ga):
    d, mu, grid = p["delta"], p["mu"], np.asarray(p["grid"], dtype=float)
    lhs = drifted_from_zero(d, mu, grid, gl, n, kind="squared").values
    base = besq_path(BesselLaw(d, kind="squared"), grid, gr, n).values
    late = delayed_start(drifted_sampler(4.0, mu, "squared"), 0.5 * mu * mu, grid, ga, n).values
    rhs = base + late
    checks = _joint_checks(lhs, rhs, grid)
    for j, t in enumerate(grid):
        checks.append(_zero_fraction_band(f"zero_fraction[t={t:g}]", lhs[:, j], rhs[:, j]))
        # the delayed summand is 0 exactly until its start
        hits = int(np.sum(late[:, j] == 0))
        p0 = math.exp(-0.5 * mu * mu * t)
        checks.append(Check(f"delay_zero[t={t:g}]", hits / n, proportion_z_pvalue(hits, n, p0)))
    return checks


def _last_zero(p, n, gl, gr, ga):
    d, mu, t = p["delta"], p["mu"], p["t"]
    lhs = last_zero_drifted_sample(d, mu, t, gl, n)
    rhs = rk.Product(rk.CensoredExp(t, 0.5 * mu * mu), rk.Beta(_alpha(d), 1 - _alpha(d))).sample(gr, n)
    return [_ks2("ks", lhs, rhs)]


def _first_zero(p, n, gl, gr, ga):
    d, x, t = p["delta"], p["x"], p["t"]
    lhs = first_zero_sample(d, x, t, gl, n)
    law = rk.Product(
        rk.ShiftedMax(t, rk.Reciprocal(rk.Exponential(0.5 * x * x))),
        rk.Reciprocal(rk.Beta(_alpha(d), 1 - _alpha(d))),
    )
    return [_ks2("ks", lhs, law.sample(gr, n))]


class _Scaled(rk.ScalarLaw):
    def __init__(self, law, c):
        self.law, self.c, self.upper = law, c, law.upper * c

    def cdf(self, y):
        return self.law.cdf(np.asarray(y, dtype=float) / self.c)


def _lamperti(p, n, gl, gr, ga):
    d, mu, t = p["delta"], p["mu"], p["t"]
    lhs = last_zero_drifted_sample(d, mu, t, gl, n)
    return [_ks1("ks", lhs, _Scaled(rk.Beta(_alpha(d), 1 - _alpha(d)), t))]


def _esg(p, n, gl, gr, ga):
    mu, t = p["mu"], p["t"]
    factor = rk.Product(rk.CensoredExp(t, 0.5 * mu * mu), rk.Beta(0.5, 0.5)).sample(gr, n)
    inverted = last_zero_drifted_sample(1.0, mu, t, gl, n)
    # Gaussian terminal value, then Levy's hitting time z^2 / N^2 after time inversion
    y = gaussian_norm_drifted(1, mu, [t], ga, n).values[:, 0]
    z = ga.standard_normal(n)
    gauss = 1.0 / (1.0 / t + (y / t) ** 2 / (z * z))
    marg_inv = drifted_from_zero(1.0, mu, [t], gl, n).values[:, 0]
    marg_gauss = gaussian_norm_drifted(1, mu, [t], gr, n).values[:, 0]
    return [
        _ks2("ks[inversion]", inverted, factor),
        _ks2("ks[gaussian]", gauss, factor),
        _ks2("ks[marginal]", marg_inv, marg_gauss),
    ]


def _g_infinity(p, n, gl, gr, ga):
    d, mu, t = p["delta"], p["mu"], p["t"]
    lhs = last_zero_drifted_sample(d, mu, t, gl, n)
    return [_ks1("ks", lhs, rk.Gamma(_alpha(d), 0.5 * mu * mu))]


def _duality(p, n, gl, gr, ga):
    d, x, t = p["delta"], p["x"], p["t"]
    lhs = 1.0 / first_zero_sample(d, x, 1.0 / t, gl, n)
    rhs = last_zero_bridge_sample(d, x, t, gr, n)
    return [_ks2("ks", lhs, rhs)]


def _drift_scaling(p, n, gl, gr, ga):
    d, mu, t, c = p["delta"], p["mu"], p["t"], p["c"]
    lhs = c * drifted_from_zero(d, mu, [t / (c * c)], gl, n).values[:, 0]
    if _is_int(d):
        rhs = gaussian_norm_drifted(int(d), mu / c, [t], gr, n).values[:, 0]
        return [_ks2("ks", lhs, rhs)]
    return [_ks1("ks", lhs, _drifted_marginal_law(d, mu / c, t))]


def _additivity(p, n, gl, gr, ga):
    d, x, d2, x2 = p["delta"], p["x"], p["delta2"], p["x2"]
    grid = np.asarray(p["grid"], dtype=float)
    a = besq_path(BesselLaw(d, x0=x, kind="squared"), grid, gl, n).values
    b = besq_path(BesselLaw(d2, x0=x2, kind="squared"), grid, ga, n).values
    rhs = besq_path(BesselLaw(d + d2, x0=x + x2, kind="squared"), grid, gr, n).values
    return _joint_checks(a + b, rhs, grid)


def _bridge_additivity(p, n, gl, gr, ga):
    d, x, d2, x2, T, s = p["delta"], p["x"], p["delta2"], p["x2"], p["T"], p["s"]
    # endpoints are on the squared scale
    a = sample_bridge(d, math.sqrt(x), T, [s], gl, n, squared=True).values[:, 0]
    b = sample_bridge(d2, math.sqrt(x2), T, [s], ga, n, squared=True).values[:, 0]
    rhs = sample_bridge(d + d2, math.sqrt(x + x2), T, [s], gr, n, squared=True).values[:, 0]
    return [_ks2(f"ks[s={s:g}]", a + b, rhs)]


def _zero_bridge(p, n, gl, gr, ga):
    mu, times = p["mu"], np.asarray(p["grid"], dtype=float)
    bgrid = np.concatenate([[0.0], process_to_bridge_time(times, 1.0), [1.0]])
    lhs = zero_bridge_transform(bridge0_reject(mu, bgrid, gl, n), times).values
    rhs = delayed_start(drifted_sampler(4.0, mu, "radial"), 0.5 * mu * mu, times, gr, n).values
    checks = _joint_checks(lhs, rhs, times)
    for j, t in enumerate(times):
        hits = int(np.sum(lhs[:, j] == 0))
        p0 = math.exp(-0.5 * mu * mu * t)
        checks.append(Check(f"zero_fraction[t={t:g}]", hits / n, proportion_z_pvalue(hits, n, p0)))
    return checks


def _time_inversion(p, n, gl, gr, ga):
    d, mu = p["delta"], p["mu"]
    rhs = np.sqrt(besq_transition(d, mu * mu, 1.0, gr, n))
    if _is_int(d):
        lhs = gaussian_norm_drifted(int(d), mu, [1.0], gl, n).values[:, 0]
        return [_ks2("ks", lhs, rhs)]
    return [_ks1("ks", rhs, _drifted_marginal_law(d, mu, 1.0))]


def _lln(p, n, gl, gr, ga):
    d, mu, t, band = p["delta"], p["mu"], p["t"], p["band"]
    mean = float(np.mean(drifted_from_zero(d, mu, [t], gl, n).values[:, 0]) / t)
    err = abs(mean - mu)
    return [Check("abs_error", err, ok=bool(err <= band))]


def _absorption(p, n, gl, gr, ga):
    x, t = p["x"], p["t"]
    law = rk.Reciprocal(rk.Exponential(0.5 * x * x))
    checks = [_ks1("ks", tau0_sample(0.0, x, gl, n), law)]
    hits = int(np.sum(besq_transition(0.0, x * x, t, gr, n) == 0.0))
    p0 = math.exp(-x * x / (2.0 * t))
    checks.append(Check(f"absorbed[t={t:g}]", hits / n, proportion_z_pvalue(hits, n, p0)))
    return checks


_EXACT = frozenset({"besq_transition"})
_INV = _EXACT | {"time_inversion"}

_CATALOG = [
    (
        IdentityCase(
            "decomp", "decomposition", "joint-marginals-KS",
            Route("squared drifted process from 0 by time inversion", _INV),
            Route("driftless squared process plus delayed 4-dim drifted process", _INV | {"exp_delay"}),
            {"delta": 1.0, "mu": 1.0, "grid": [0.5, 1.0, 2.0]},
        ),
        _decomp,
    ),
    (
        IdentityCase(
            "last_zero", "last_zero_factorization", "two-sample-KS",
            Route("1 / first zero after 1/t of driftless process from mu", _INV | {"hitting_time_inverse_gamma"}),
            Route("min(t, E) * Beta product", frozenset({"beta", "exponential"})),
            {"delta": 1.0, "mu": 1.0, "t": 1.0},
        ),
        _last_zero,
    ),
    (
        IdentityCase(
            "first_zero", "first_zero_factorization", "two-sample-KS",
            Route("t + hitting time of 0 from exact X_t", _EXACT | {"hitting_time_inverse_gamma"}),
            Route("max(t, 1/E) / Beta product", frozenset({"beta", "exponential"})),
            {"delta": 1.0, "x": 1.0, "t": 1.0},
        ),
        _first_zero,
    ),
    (
        IdentityCase(
            "lamperti_limit", "lamperti_arcsine", "one-sample-KS",
            Route("last zero by time inversion at tiny drift", _INV | {"hitting_time_inverse_gamma"}),
            Route("t * Beta CDF", frozenset({"beta"})),
            {"delta": 1.0, "mu": 1e-4, "t": 1.0},
        ),
        _lamperti,
    ),
    (
        IdentityCase(
            "esg_case", "brownian_drift_factorization", "two-sample-KS",
            Route(
                "last zero by time inversion, and by Gaussian X_t with Levy hitting time",
                _INV | {"hitting_time_inverse_gamma", "gaussian_norm", "levy_hitting_time"},
            ),
            Route("min(t, E) * Beta(1/2, 1/2) product", frozenset({"beta", "exponential"})),
            {"mu": 1.0, "t": 1.0},
        ),
        _esg,
    ),
    (
        IdentityCase(
            "g_infinity", "beta_gamma_limit", "one-sample-KS",
            Route("last zero by time inversion at large t", _INV | {"hitting_time_inverse_gamma"}),
            Route("Gamma CDF", frozenset({"gamma"})),
            {"delta": 1.0, "mu": 1.0, "t": 50.0},
        ),
        _g_infinity,
    ),
    (
        IdentityCase(
            "duality", "first_last_duality", "two-sample-KS",
            Route("1 / first zero after 1/t from x", _EXACT | {"hitting_time_inverse_gamma"}),
            Route(
                "terminal value then reversed bridge hitting time",
                frozenset({"gaussian_norm", "bridge_hitting_time"}),
            ),
            {"delta": 1.0, "x": 1.0, "t": 1.0},
        ),
        _duality,
    ),
    (
        IdentityCase(
            "drift_scaling", "brownian_scaling", "two-sample-KS",
            Route("c X_{t/c^2} by time inversion", _INV),
            Route("Gaussian norm at drift mu/c, or closed-form density", frozenset({"gaussian_norm", "h_transform"})),
            {"delta": 1.0, "mu": 1.0, "t": 1.0, "c": 2.0},
        ),
        _drift_scaling,
    ),
    (
        IdentityCase(
            "additivity", "additivity", "joint-marginals-KS",
            Route("sum of two independent squared processes", _EXACT),
            Route("one squared process with summed parameters", _EXACT),
            {"delta": 1.0, "x": 1.0, "delta2": 0.5, "x2": 0.5, "grid": [0.5, 1.0]},
        ),
        _additivity,
    ),
    (
        IdentityCase(
            "bridge_additivity", "bridge_additivity", "two-sample-KS",
            Route("sum of two squared bridges from the space-time map", _INV | {"bridge_map"}),
            Route("one squared bridge with summed parameters", _INV | {"bridge_map"}),
            {"delta": 1.0, "x": 1.0, "delta2": 0.5, "x2": 0.5, "T": 1.0, "s": 0.5},
        ),
        _bridge_additivity,
    ),
    (
        IdentityCase(
            "zero_bridge", "zero_bridge", "joint-marginals-KS",
            Route("(1+t) B_{t/(1+t)} of rejection-sampled 0-dim bridge", _EXACT | {"absorption_atom", "bridge_map"}),
            Route("4-dim drifted process after Exp(mu^2/2) delay", _INV | {"exp_delay"}),
            {"mu": 1.0, "grid": [0.5, 1.0, 3.0]},
        ),
        _zero_bridge,
    ),
    (
        IdentityCase(
            "time_inversion_t1", "time_inversion", "two-sample-KS",
            Route("Gaussian norm with drift, or closed-form density", frozenset({"gaussian_norm", "h_transform"})),
            Route("driftless squared transition from mu^2", _EXACT),
            {"delta": 1.0, "mu": 1.0},
        ),
        _time_inversion,
    ),
    (
        IdentityCase(
            "lln_drift", "drift_growth", "band",
            Route("mean of X_t / t by time inversion", _INV),
            Route("constant mu", frozenset()),
            {"delta": 1.0, "mu": 1.0, "t": 100.0, "band": 0.05},
        ),
        _lln,
    ),
    (
        IdentityCase(
            "absorption", "absorption_time", "one-sample-KS",
            Route("inverse gamma hitting time, and the BESQ_0 atom at 0", _EXACT | {"hitting_time_inverse_gamma"}),
            Route("exp(-x^2 / (2t)) CDF", frozenset({"exponential"})),
            {"x": 1.0, "t": 1.0},
        ),
        _absorption,
    ),
]

_RUNNERS: dict[str, Callable] = {case.name: fn for case, fn in _CATALOG}


def catalog() -> list[IdentityCase]:
    """Default templates, in a fixed order."""
    return [case for case, _ in _CATALOG]


def catalog_names() -> list[str]:
    return [case.name for case, _ in _CATALOG]


def get_case(name: str, **overrides) -> IdentityCase:
    for case in catalog():
        if case.name == name:
            return case.with_params(**overrides) if overrides else case
    raise UnknownIdentityError(name)


def audit_routes(cases=None) -> list[str]:
    """Names of entries whose routes use the identity under test or coincide."""
    bad = []
    for case in catalog() if cases is None else cases:
        if case.identity in case.lhs.relies_on | case.rhs.relies_on or case.lhs == case.rhs:
            bad.append(case.name)
    return bad


# ---------------------------------------------------------------------------
# running


def _streams(case: IdentityCase):
    root = RngStream(case.seed, zlib.crc32(case.name.encode()))
    return tuple(root.substream(k).generator for k in range(3))


def _evaluate(case: IdentityCase, runner=None) -> tuple[list[Check], float]:
    runner = runner or _RUNNERS.get(case.name)
    if runner is None:
        raise UnknownIdentityError(case.name)
    start = time.perf_counter()
    checks = runner(dict(case.params), case.n, *_streams(case))
    return checks, 1e3 * (time.perf_counter() - start)


def _decide(checks: list[Check], adjusted: dict, alpha: float) -> str:
    bands = all(c.ok for c in checks if c.ok is not None)
    tests = all(adjusted[c.label] > alpha for c in checks if c.pvalue is not None)
    return "pass" if bands and tests else "fail"


def _report(case, checks, wall_ms, decision) -> TestReport:
    return TestReport(
        name=case.name,
        params={k: (list(v) if isinstance(v, (list, tuple, np.ndarray)) else v) for k, v in case.params.items()},
        statistic={c.label: float(c.statistic) for c in checks},
        p_value={c.label: (None if c.pvalue is None else float(c.pvalue)) for c in checks},
        alpha=case.alpha,
        decision=decision,
        n=case.n,
        seed=case.seed,
        wall_ms=round(wall_ms, 3),
    )


def _holm_by_label(checks):
    tested = [c for c in checks if c.pvalue is not None]
    adj = holm_adjusted([c.pvalue for c in tested]) if tested else []
    return {c.label: a for c, a in zip(tested, adj)}


def run_identity(case: IdentityCase | str, runner: Callable | None = None) -> TestReport:
    """Run one entry. Holm corrects across the checks of this entry only.

    ``runner`` replaces the catalog sampler, which lets callers run custom
    comparisons through the same streams and report format.
    """
    if isinstance(case, str):
        case = get_case(case)
    checks, wall = _evaluate(case, runner)
    return _report(case, checks, wall, _decide(checks, _holm_by_label(checks), case.alpha))


def run_suite(cases=None, alpha: float = DEFAULT_ALPHA, workers: int = 1) -> list[TestReport]:
    """Run several entries with one Holm correction across every check.

    Entries use their own streams, so the result does not depend on
    ``workers``. Reports keep the input order.
    """
    cases = catalog() if cases is None else [get_case(c) if isinstance(c, str) else c for c in cases]
    cases = [c.with_params(alpha=alpha) for c in cases]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate, cases))
    else:
        results = [_evaluate(c) for c in cases]
    keyed = [(i, c) for i, (checks, _) in enumerate(results) for c in checks]
    tested = [(i, c) for i, c in keyed if c.pvalue is not None]
    adj = holm_adjusted([c.pvalue for _, c in tested]) if tested else []
    per_entry = [dict() for _ in cases]
    for (i, c), a in zip(tested, adj):
        per_entry[i][c.label] = a
    return [
        _report(case, checks, wall, _decide(checks, per_entry[i], alpha))
        for i, (case, (checks, wall)) in enumerate(zip(cases, results))
    ]
