"""Exact finite-dimensional sampling of Bessel processes with drift.

Nothing here discretises an SDE. Driftless squared Bessel processes move by
their exact Poisson-mixed gamma transition; processes with drift started at
0 are obtained by time inversion, which turns ``P_0^{delta,mu}`` at time t
into ``t`` times the driftless process from ``mu`` at time ``1/t``. Integer
dimensions also have a Gaussian construction, kept as an independent
cross-check.

Samplers are vectorised: they take a ``size`` (number of independent
paths or draws) and a random source, which is either an
:class:`~besseldrift.randkit.RngStream` or a numpy Generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .randkit import as_generator
from .specfun import log_bessel_i, log_gamma, log_h_drift

__all__ = [
    "BesselLaw",
    "PathGrid",
    "besq_transition",
    "besq_path",
    "sample_path",
    "drifted_from_zero",
    "drifted_sampler",
    "gaussian_norm_drifted",
    "tau0_sample",
    "first_zero_sample",
    "last_zero_drifted_sample",
    "last_zero_bridge_sample",
    "driftless_transition_density",
    "drifted_transition_density",
    "absorption_violations",
]

KINDS = ("radial", "squared")


@dataclass(frozen=True)
class BesselLaw:
    """Law of a Bessel (``radial``) or squared Bessel (``squared``) process.

    ``x0`` is the starting value on the scale of ``kind``.
    """

    delta: float
    mu: float = 0.0
    x0: float = 0.0
    kind: str = "radial"

    def __post_init__(self):
        if not self.delta >= 0:
            raise ValueError(f"dimension must be >= 0, got {self.delta}")
        if not self.mu >= 0:
            raise ValueError(f"drift must be >= 0, got {self.mu}")
        if not self.x0 >= 0:
            raise ValueError(f"start must be >= 0, got {self.x0}")
        if self.delta == 0 and self.mu != 0:
            raise ValueError("drift is only defined for dimension > 0")
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")

    @property
    def squared_start(self) -> float:
        return self.x0**2 if self.kind == "radial" else self.x0


@dataclass
class PathGrid:
    """A batch of paths observed on a common time grid.

    ``values`` has shape ``(n_paths, len(times))``.
    """

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.atleast_2d(np.asarray(self.values, dtype=float))
        if self.times.ndim != 1:
            raise ValueError("times must be one-dimensional")
        _check_grid(self.times)
        if self.values.shape[1] != self.times.size:
            raise ValueError(
                f"values have {self.values.shape[1]} columns for {self.times.size} times"
            )
        if np.any(self.values < 0):
            raise ValueError("path values must be nonnegative")

    def __len__(self):
        return self.values.shape[0]

    def at(self, t: float) -> np.ndarray:
        """Column of values at grid time ``t`` (must be on the grid)."""
        idx = np.flatnonzero(self.times == t)
        if idx.size == 0:
            raise KeyError(f"time {t} is not on the grid")
        return self.values[:, idx[0]]

    def last_zero(self) -> np.ndarray:
        """Last grid time at which each path is 0 (nan if never)."""
        zero = self.values == 0
        any_zero = zero.any(axis=1)
        last = self.values.shape[1] - 1 - np.argmax(zero[:, ::-1], axis=1)
        return np.where(any_zero, self.times[last], np.nan)


def _check_grid(times, positive=False):
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("time grid must be a nonempty 1-d sequence")
    if np.any(~np.isfinite(times)):
        raise ValueError("time grid must be finite")
    if np.any(np.diff(times) <= 0):
        raise ValueError("time grid must be strictly increasing")
    if positive and times[0] <= 0:
        raise ValueError("time grid must be strictly positive (X_0 = 0 is fixed by continuity)")
    if times[0] < 0:
        raise ValueError("time grid must be nonnegative")
    return times


def absorption_violations(path: PathGrid) -> int:
    """Number of paths that leave 0 after reaching it."""
    zero = path.values == 0
    reached = np.maximum.accumulate(zero, axis=1)
    return int(np.sum(np.any(reached & ~zero, axis=1)))


# ---------------------------------------------------------------------------
# driftless squared process


def besq_transition(delta, x, dt, rng, size=None):
    """One exact step of the squared Bessel process of dimension ``delta``.

    Draws ``N ~ Poisson(x / (2 dt))`` and returns ``2 dt * Gamma(delta/2 + N)``.
    For ``delta = 0`` and ``N = 0`` the result is exactly 0. ``x`` and ``dt``
    broadcast; a zero ``dt`` returns ``x`` unchanged.
    """
    if not delta >= 0:
        raise ValueError(f"dimension must be >= 0, got {delta}")
    gen = as_generator(rng)
    x = np.asarray(x, dtype=float)
    dt = np.asarray(dt, dtype=float)
    if np.any(dt < 0):
        raise ValueError("time step must be >= 0")
    shape = np.broadcast_shapes(x.shape, dt.shape) if size is None else size
    x = np.broadcast_to(x, shape)
    dt = np.broadcast_to(dt, shape)
    moving = dt > 0
    safe_dt = np.where(moving, dt, 1.0)
    n = gen.poisson(np.where(moving, x / (2.0 * safe_dt), 0.0))
    k = 0.5 * delta + n
    y = 2.0 * safe_dt * gen.standard_gamma(np.where(k > 0, k, 1.0))
    y = np.where(k > 0, y, 0.0)
    out = np.where(moving, y, x)
    return float(out) if out.ndim == 0 else out


def _besq_chain(delta, x_sq, times, gen):
    """Chain exact transitions from ``x_sq`` at time 0 along per-path grids.

    ``times`` has shape (n, m) and is nondecreasing along each row.
    """
    n, m = times.shape
    out = np.empty((n, m))
    current = np.broadcast_to(np.asarray(x_sq, dtype=float), (n,)).copy()
    prev = np.zeros(n)
    for j in range(m):
        current = besq_transition(delta, current, times[:, j] - prev, gen)
        out[:, j] = current
        prev = times[:, j]
    return out


def besq_path(law: BesselLaw, times, rng, size: int = 1) -> PathGrid:
    """Paths of the driftless (squared) Bessel process on ``times``.

    A grid time 0 carries the starting value. For ``kind='radial'`` the
    square root is taken after sampling the squared process.
    """
    if law.mu != 0:
        raise ValueError("besq_path samples driftless laws; use drifted_from_zero for mu > 0")
    times = _check_grid(times)
    grid = np.broadcast_to(times, (size, times.size))
    sq = _besq_chain(law.delta, law.squared_start, grid, as_generator(rng))
    return PathGrid(times, np.sqrt(sq) if law.kind == "radial" else sq)


# ---------------------------------------------------------------------------
# drift via time inversion


def _drifted_squared(delta, mu, times, gen):
    """Squared values of P_0^{delta,mu} at per-path nondecreasing ``times`` (n, m).

    Zero times give 0. Uses t^2 * Y_{1/t} with Y the driftless squared process
    from mu^2, sampled forward in 1/t.
    """
    times = np.asarray(times, dtype=float)
    rev = times[:, ::-1]
    pos = rev > 0
    with np.errstate(divide="ignore"):
        inv = np.where(pos, 1.0 / np.where(pos, rev, 1.0), np.nan)
    # zero times sit at the end of each reversed row; hold the last value there
    filled = np.where(pos, inv, -np.inf)
    filled = np.maximum.accumulate(filled, axis=1)
    filled = np.where(np.isfinite(filled), filled, 0.0)
    y = _besq_chain(delta, mu * mu, filled, gen)
    out = np.where(pos, rev * rev * y, 0.0)
    return out[:, ::-1]


def drifted_from_zero(delta, mu, times, rng, size: int = 1, kind: str = "radial") -> PathGrid:
    """Paths of the Bessel process with drift ``mu`` started at 0.

    Exact in law on the (strictly positive) grid, via time inversion.
    """
    if not delta > 0:
        raise ValueError(f"dimension must be > 0, got {delta}")
    if not mu >= 0:
        raise ValueError(f"drift must be >= 0, got {mu}")
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    times = _check_grid(times, positive=True)
    grid = np.broadcast_to(times, (size, times.size))
    sq = _drifted_squared(delta, mu, grid, as_generator(rng))
    return PathGrid(times, np.sqrt(sq) if kind == "radial" else sq)


def drifted_sampler(delta, mu, kind: str = "squared") -> Callable:
    """Process sampler ``(times (n, m), rng) -> values (n, m)`` for P_0^{delta,mu}.

    Accepts per-path nondecreasing grids containing zeros, as needed by
    :func:`besseldrift.bridges.delayed_start`.
    """
    if not delta > 0:
        raise ValueError(f"dimension must be > 0, got {delta}")

    def sampler(times, rng):
        sq = _drifted_squared(delta, mu, np.atleast_2d(times), as_generator(rng))
        return np.sqrt(sq) if kind == "radial" else sq

    return sampler


def sample_path(law: BesselLaw, times, rng, size: int = 1) -> PathGrid:
    """Dispatch to the exact sampler available for ``law``."""
    if law.mu == 0:
        return besq_path(law, times, rng, size)
    if law.x0 == 0:
        times = _check_grid(times)
        grid = np.broadcast_to(times, (size, times.size))
        sq = _drifted_squared(law.delta, law.mu, grid, as_generator(rng))
        return PathGrid(times, np.sqrt(sq) if law.kind == "radial" else sq)
    raise NotImplementedError("no exact sampler for drift > 0 started away from 0")


def gaussian_norm_drifted(delta, mu, times, rng, size: int = 1) -> PathGrid:
    """Euclidean norm of ``delta``-dimensional Brownian motion with drift
    ``(mu, 0, ..., 0)`` started at the origin."""
    if isinstance(delta, bool) or not float(delta).is_integer() or delta < 1:
        raise ValueError(f"Gaussian construction needs a positive integer dimension, got {delta}")
    delta = int(delta)
    times = _check_grid(times)
    gen = as_generator(rng)
    dt = np.diff(np.concatenate([[0.0], times]))
    steps = gen.standard_normal((size, times.size, delta)) * np.sqrt(dt)[None, :, None]
    coords = np.cumsum(steps, axis=1)
    coords[:, :, 0] += mu * times[None, :]
    return PathGrid(times, np.sqrt(np.sum(coords * coords, axis=2)))


# ---------------------------------------------------------------------------
# zero-hitting functionals


def _alpha(delta):
    return 1.0 - 0.5 * delta


def _tau0_from(delta, x, gen):
    # x^2 / (2 Gamma(alpha)); zero start hits at once
    x = np.asarray(x, dtype=float)
    g = gen.standard_gamma(_alpha(delta), x.shape)
    return np.where(x > 0, 0.5 * x * x / g, 0.0)


def tau0_sample(delta, x, rng, size=None):
    """First hitting time of 0 from ``x > 0`` for dimension ``0 <= delta < 2``.

    Inverse gamma with shape ``1 - delta/2`` and rate ``x^2 / 2``; for
    ``delta = 0`` this is ``1 / Exp(x^2 / 2)``.
    """
    if not 0 <= delta < 2:
        raise ValueError(f"0 is reached only for 0 <= delta < 2, got delta={delta}")
    if not np.all(np.asarray(x) > 0):
        raise ValueError("start must be > 0")
    gen = as_generator(rng)
    x = np.broadcast_to(np.asarray(x, dtype=float), () if size is None else size)
    out = _tau0_from(delta, x, gen)
    return float(out) if out.ndim == 0 else out


def _check_recurrent(delta):
    if not 0 < delta < 2:
        raise ValueError(f"zero-hitting functionals need 0 < delta < 2, got delta={delta}")


def first_zero_sample(delta, x, t, rng, size=None):
    """First zero after time ``t`` of the driftless Bessel process from ``x``.

    Samples ``X_t`` by one exact transition, then adds the hitting time of 0
    from there.
    """
    _check_recurrent(delta)
    if not (x >= 0 and t >= 0):
        raise ValueError("need x >= 0 and t >= 0")
    gen = as_generator(rng)
    shape = () if size is None else size
    if t > 0:
        xt = np.sqrt(besq_transition(delta, np.full(shape, x * x, dtype=float), t, gen))
    else:
        xt = np.full(shape, float(x))
    out = t + _tau0_from(delta, xt, gen)
    return float(out) if np.ndim(out) == 0 else out


def last_zero_drifted_sample(delta, mu, t, rng, size=None):
    """Last zero before ``t`` under P_0^{delta,mu}.

    Time inversion gives ``g_t = 1 / d_{1/t}`` with ``d`` the first zero of
    the driftless process started at ``mu``.
    """
    _check_recurrent(delta)
    if not (mu > 0 and t > 0):
        raise ValueError("need mu > 0 and t > 0")
    return 1.0 / first_zero_sample(delta, mu, 1.0 / t, rng, size)


def last_zero_bridge_sample(delta, mu, t, rng, size=None, marginal: str = "auto"):
    """Last zero before ``t`` under P_0^{delta,mu} through the terminal value.

    Given ``X_t = y`` the path on [0, t] is a driftless Bessel bridge from 0
    to y. Run backwards it is a bridge from y to 0, whose hitting time of 0
    is ``t / (1 + W)`` with ``W ~ Gamma(1 - delta/2, rate y^2 / (2t))``;
    hence ``g_t = t W / (1 + W)``.

    ``marginal`` chooses how ``X_t`` is drawn: ``'gaussian'`` (integer
    dimension only), ``'inversion'``, or ``'auto'`` (gaussian when possible).
    """
    _check_recurrent(delta)
    if not (mu >= 0 and t > 0):
        raise ValueError("need mu >= 0 and t > 0")
    n = 1 if size is None else size
    gen = as_generator(rng)
    if marginal == "auto":
        marginal = "gaussian" if float(delta).is_integer() else "inversion"
    if marginal == "gaussian":
        y = gaussian_norm_drifted(delta, mu, [t], gen, n).values[:, 0]
    elif marginal == "inversion":
        y = drifted_from_zero(delta, mu, [t], gen, n).values[:, 0]
    else:
        raise ValueError(f"unknown marginal route {marginal!r}")
    g2t = 2.0 * t * gen.standard_gamma(_alpha(delta), n)
    out = t * g2t / (y * y + g2t)
    return float(out[0]) if size is None else out


# ---------------------------------------------------------------------------
# densities


def driftless_transition_density(delta, t, x, y, log=False):
    """Transition density in y of the Bessel process of dimension ``delta > 0``.

    For ``0 < delta < 2`` this is the instantaneously reflected process.
    """
    if not delta > 0:
        raise ValueError(f"dimension must be > 0, got {delta}")
    if not t > 0:
        raise ValueError(f"time must be > 0, got {t}")
    if not x >= 0:
        raise ValueError("start must be >= 0")
    nu = 0.5 * delta - 1.0
    y = np.asarray(y, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ly = np.log(y)
        if x == 0:
            lp = (
                -nu * math.log(2.0)
                - (nu + 1.0) * math.log(t)
                - log_gamma(nu + 1.0)
                + (2.0 * nu + 1.0) * ly
                - y * y / (2.0 * t)
            )
        else:
            lp = (
                ly
                - math.log(t)
                + nu * (ly - math.log(x))
                - (x * x + y * y) / (2.0 * t)
                + log_bessel_i(nu, x * y / t)
            )
    # the density behaves like y^(delta-1) at 0
    if delta == 1:
        at_zero = 0.5 * math.log(2.0 / (math.pi * t)) - x * x / (2.0 * t)
    else:
        at_zero = -np.inf if delta > 1 else np.inf
    lp = np.where(y > 0, lp, np.where(y == 0, at_zero, -np.inf))
    out = lp if log else np.exp(lp)
    return float(out) if np.ndim(out) == 0 else out


def drifted_transition_density(delta, mu, t, x, y, log=False):
    """Transition density in y of the Bessel process with drift ``mu``.

    ``exp(-mu^2 t / 2) h(y) / h(x) p_t(x, y)``, evaluated in log space.
    """
    lp = driftless_transition_density(delta, t, x, y, log=True)
    if mu > 0:
        y = np.asarray(y, dtype=float)
        lh = log_h_drift(delta, mu, np.maximum(y, 0.0))
        lp = lp + lh - log_h_drift(delta, mu, x) - 0.5 * mu * mu * t
    elif mu < 0:
        raise ValueError("drift must be >= 0")
    out = lp if log else np.exp(lp)
    return float(out) if np.ndim(out) == 0 else out
