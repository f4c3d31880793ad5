"""Kolmogorov-Smirnov statistics that stay correct for laws with atoms.

p-values come from the asymptotic Kolmogorov distribution. They are exact
in the limit for continuous laws and conservative when the law has jumps.
For samples under ~100 points they are biased; the harness uses n >= 1e4.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "Ecdf",
    "KSResult",
    "kolmogorov_sf",
    "ks_one_sample",
    "ks_two_sample",
    "holm",
    "holm_adjusted",
    "spearman_equal_pvalue",
    "spearman",
    "proportion_z_pvalue",
]


class KSResult(NamedTuple):
    statistic: float
    pvalue: float


class Ecdf:
    """Right-continuous empirical distribution function."""

    def __init__(self, sample):
        x = np.asarray(sample, dtype=float).ravel()
        if x.size == 0:
            raise ValueError("empirical CDF of an empty sample")
        self.values = np.sort(x)
        self.n = x.size

    def __call__(self, y):
        return np.searchsorted(self.values, y, side="right") / self.n

    def left(self, y):
        return np.searchsorted(self.values, y, side="left") / self.n


def kolmogorov_sf(lam):
    """P(K > lam) for the Kolmogorov distribution."""
    lam = float(lam)
    if lam <= 0:
        return 1.0
    if lam < 1.18:
        # Jacobi-transformed series converges fast for small lam
        w = math.sqrt(2.0 * math.pi) / lam
        q = math.exp(-math.pi**2 / (8.0 * lam * lam))
        cdf = w * sum(q ** ((2 * k - 1) ** 2) for k in range(1, 8))
        return min(1.0, max(0.0, 1.0 - cdf))
    total = 0.0
    for k in range(1, 101):
        term = math.exp(-2.0 * k * k * lam * lam)
        total += term if k % 2 else -term
        if term < 1e-17:
            break
    return min(1.0, max(0.0, 2.0 * total))


def ks_two_sample(a, b) -> KSResult:
    """Two-sample KS statistic sup |F_a - F_b| over the pooled sample.

    Both ECDFs are step functions jumping only at pooled points, so checking
    right-limits at every distinct pooled value covers ties exactly.
    """
    a = np.sort(np.asarray(a, dtype=float).ravel())
    b = np.sort(np.asarray(b, dtype=float).ravel())
    if a.size == 0 or b.size == 0:
        raise ValueError("ks_two_sample needs two nonempty samples")
    pooled = np.unique(np.concatenate([a, b]))
    fa = np.searchsorted(a, pooled, side="right") / a.size
    fb = np.searchsorted(b, pooled, side="right") / b.size
    d = float(np.max(np.abs(fa - fb)))
    n_eff = a.size * b.size / (a.size + b.size)
    return KSResult(d, kolmogorov_sf(math.sqrt(n_eff) * d))


def ks_one_sample(
    sample,
    cdf: Callable,
    jumps: Iterable[float] = (),
    cdf_left: Callable | None = None,
) -> KSResult:
    """One-sample KS statistic against a right-continuous ``cdf``.

    When ``jumps`` are declared, both one-sided gaps are checked at every
    distinct sample value and at each jump location, with left limits taken
    from ``cdf_left`` (default: ``cdf`` one ulp to the left).
    """
    x = np.sort(np.asarray(sample, dtype=float).ravel())
    if x.size == 0:
        raise ValueError("ks_one_sample needs a nonempty sample")
    n = x.size
    jumps = np.asarray(sorted(jumps), dtype=float)
    if cdf_left is None:
        cdf_left = lambda y: cdf(np.nextafter(np.asarray(y, dtype=float), -np.inf))

    values, counts = np.unique(x, return_counts=True)
    right = np.asarray(cdf(values), dtype=float)
    _check_range(right)
    f_n = np.cumsum(counts) / n
    f_n_left = f_n - counts / n
    if jumps.size == 0 and values.size == n:
        left = right
    else:
        left = np.asarray(cdf_left(values), dtype=float)
        _check_range(left)
    d = max(np.max(f_n - right), np.max(left - f_n_left))
    if jumps.size:
        e_right = np.searchsorted(x, jumps, side="right") / n
        e_left = np.searchsorted(x, jumps, side="left") / n
        j_right = np.asarray(cdf(jumps), dtype=float)
        j_left = np.asarray(cdf_left(jumps), dtype=float)
        _check_range(j_right), _check_range(j_left)
        d = max(d, np.max(np.abs(e_right - j_right)), np.max(np.abs(e_left - j_left)))
    d = float(max(d, 0.0))
    return KSResult(d, kolmogorov_sf(math.sqrt(n) * d))


def _check_range(f):
    if np.any(~((f >= 0.0) & (f <= 1.0))):
        raise ValueError("cdf returned a value outside [0, 1]")


def holm(pvalues: Sequence[float], alpha: float) -> list[bool]:
    """Holm step-down: True where the hypothesis is rejected."""
    p = np.asarray(pvalues, dtype=float)
    order = np.argsort(p, kind="stable")
    m = p.size
    reject = np.zeros(m, dtype=bool)
    for rank, idx in enumerate(order):
        if p[idx] > alpha / (m - rank):
            break
        reject[idx] = True
    return reject.tolist()


def holm_adjusted(pvalues: Sequence[float]) -> list[float]:
    p = np.asarray(pvalues, dtype=float)
    order = np.argsort(p, kind="stable")
    m = p.size
    adj = np.empty(m)
    running = 0.0
    for rank, idx in enumerate(order):
        running = max(running, min(1.0, (m - rank) * p[idx]))
        adj[idx] = running
    return adj.tolist()


def _avg_rank(x):
    x = np.asarray(x, dtype=float)
    _, inv, counts = np.unique(x, return_inverse=True, return_counts=True)
    # tied values share the mean of the ranks they occupy
    ends = np.cumsum(counts)
    return (ends - (counts - 1) / 2.0)[inv]


def spearman(x, y) -> float:
    return float(np.corrcoef(_avg_rank(x), _avg_rank(y))[0, 1])


def spearman_equal_pvalue(x1, y1, x2, y2, batches: int = 100) -> float:
    """Two-sided p-value for equal Spearman correlation of (x1, y1) and (x2, y2).

    Each sample is cut into ``batches`` consecutive batches; the batch
    correlations give a distribution-free standard error for their mean.
    """
    def batch_stats(x, y):
        x, y = np.asarray(x), np.asarray(y)
        m = x.size // batches
        if m < 10:
            raise ValueError("too few points per batch for a correlation")
        r = np.array([spearman(x[i * m:(i + 1) * m], y[i * m:(i + 1) * m]) for i in range(batches)])
        return r.mean(), r.var(ddof=1) / batches

    m1, v1 = batch_stats(x1, y1)
    m2, v2 = batch_stats(x2, y2)
    se = math.sqrt(v1 + v2)
    if se == 0.0:
        return 1.0 if m1 == m2 else 0.0
    return math.erfc(abs(m1 - m2) / se / math.sqrt(2.0))


def proportion_z_pvalue(hits: int, n: int, p0: float) -> float:
    """Two-sided normal-approximation p-value for a binomial frequency."""
    if p0 in (0.0, 1.0):
        return 1.0 if hits == n * p0 else 0.0
    z = (hits / n - p0) / math.sqrt(p0 * (1.0 - p0) / n)
    return math.erfc(abs(z) / math.sqrt(2.0))
