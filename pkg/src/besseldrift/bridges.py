"""Space-time maps between Bessel bridges and Bessel processes with drift.

For ``delta > 0`` a bridge from 0 to ``mu`` of length ``T`` is

    B_s = (T - s) X_{s / (T (T - s))},    0 <= s < T,

with ``X`` under P_0^{delta,mu}; the inverse map is

    X_t = (1 + T t) / T * B_{T^2 t / (1 + T t)}.

Callers ask for times on one side; the matching times on the other side are
computed exactly and looked up on the supplied grid. Nothing is ever
interpolated.

Dimension 0 bridges from 0 are obtained by rejection: run the 0-dimensional
squared process backwards from ``mu^2`` and keep the paths absorbed by the
end of the interval.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bessel_core import PathGrid, _besq_chain, _check_grid, drifted_from_zero
from .randkit import as_generator

__all__ = [
    "BridgeLaw",
    "RejectionPaths",
    "bridge_to_process_time",
    "process_to_bridge_time",
    "bridge_from_process",
    "process_from_bridge",
    "sample_bridge",
    "bridge0_reject",
    "zero_bridge_transform",
    "delayed_start",
]

_GRID_ATOL = 1e-12


@dataclass(frozen=True)
class BridgeLaw:
    delta: float
    start: float
    end: float
    length: float

    def __post_init__(self):
        if not self.delta >= 0:
            raise ValueError("dimension must be >= 0")
        if not (self.start >= 0 and self.end >= 0):
            raise ValueError("endpoints must be >= 0")
        if not self.length > 0:
            raise ValueError("bridge length must be > 0")
        if self.start != 0:
            raise NotImplementedError("only bridges started at 0 are supported")

    @property
    def degenerate(self) -> bool:
        """The constant-0 path: dimension 0 pinned at 0 on both ends."""
        return self.delta == 0 and self.end == 0


def bridge_to_process_time(s, T):
    s = np.asarray(s, dtype=float)
    if np.any(s >= T) or np.any(s < 0):
        raise ValueError(f"bridge times must lie in [0, T) with T={T}")
    return s / (T * (T - s))


def process_to_bridge_time(t, T):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("process times must be >= 0")
    return T * T * t / (1.0 + T * t)


def _columns(path: PathGrid, targets) -> np.ndarray:
    """Columns of ``path`` at ``targets``; a missing time 0 reads as 0."""
    cols = []
    for x in np.atleast_1d(targets):
        hit = np.flatnonzero(np.abs(path.times - x) <= _GRID_ATOL * max(1.0, abs(x)))
        if hit.size:
            cols.append(path.values[:, hit[0]])
        elif x == 0:
            cols.append(np.zeros(len(path)))
        else:
            raise ValueError(f"time {x!r} is not on the supplied grid")
    return np.stack(cols, axis=1)


def bridge_from_process(s, T, process: PathGrid, squared: bool = False) -> PathGrid:
    """Bridge values at times ``s`` from a drifted path observed at the mapped times."""
    s = _check_grid(s)
    vals = _columns(process, bridge_to_process_time(s, T))
    scale = (T - s) ** 2 if squared else T - s
    return PathGrid(s, scale[None, :] * vals)


def process_from_bridge(t, T, bridge: PathGrid, squared: bool = False) -> PathGrid:
    """Process values at times ``t`` from a bridge observed at the mapped times."""
    t = _check_grid(t)
    vals = _columns(bridge, process_to_bridge_time(t, T))
    scale = (1.0 + T * t) / T
    return PathGrid(t, (scale**2 if squared else scale)[None, :] * vals)


def sample_bridge(delta, end, T, s, rng, size: int = 1, squared: bool = False) -> PathGrid:
    """Bessel bridge of dimension ``delta > 0`` from 0 to ``end`` (radial scale).

    Built from P_0^{delta,end} by the space-time map; ``s`` may include ``T``,
    where the value is pinned at ``end``.
    """
    s = _check_grid(s)
    inner = s < T
    if np.any(s > T):
        raise ValueError(f"bridge times must lie in [0, T], T={T}")
    pt = bridge_to_process_time(s[inner], T)
    pos = pt[pt > 0]
    if pos.size:
        proc = drifted_from_zero(delta, end, pos, rng, size, kind="radial")
    else:
        proc = PathGrid(np.array([1.0]), np.zeros((size, 1)))
    out = np.empty((size, s.size))
    out[:, inner] = bridge_from_process(s[inner], T, proc).values
    out[:, ~inner] = end
    return PathGrid(s, out**2 if squared else out)


@dataclass
class RejectionPaths(PathGrid):
    """Accepted paths plus the number of proposals that produced them."""

    attempts: int = 0


def bridge0_reject(mu, grid, rng, size: int = 1, batch: int | None = None) -> RejectionPaths:
    """0-dimensional Bessel bridge from 0 to ``mu`` on [0, 1], by rejection.

    The 0-dimensional squared process is run from ``mu^2`` on the reversed
    grid and accepted iff it is exactly 0 at the end; reversing time gives
    the bridge. Each proposal is accepted with probability ``exp(-mu^2/2)``.
    """
    if not mu > 0:
        raise ValueError(f"endpoint must be > 0, got {mu}")
    grid = _check_grid(grid)
    if grid[0] != 0.0 or grid[-1] != 1.0:
        raise ValueError("grid must start at 0 and end at 1")
    gen = as_generator(rng)
    rev = 1.0 - grid[::-1]
    rev[0] = 0.0
    batch = batch or max(64, int(1.2 * size * np.exp(0.5 * mu * mu)) + 16)
    kept, have, attempts = [], 0, 0
    while have < size:
        sq = _besq_chain(0.0, mu * mu, np.broadcast_to(rev, (batch, rev.size)), gen)
        hits = np.flatnonzero(sq[:, -1] == 0.0)
        need = size - have
        if hits.size >= need:
            # count proposals only up to the last acceptance used
            hits = hits[:need]
            attempts += int(hits[-1]) + 1
        else:
            attempts += batch
        kept.append(sq[hits])
        have += hits.size
    sq = np.concatenate(kept)
    return RejectionPaths(grid, np.sqrt(sq[:, ::-1]), attempts=attempts)


def zero_bridge_transform(bridge: PathGrid, t) -> PathGrid:
    """``(1 + t) B_{t / (1 + t)}`` for a bridge on [0, 1] observed at those times."""
    return process_from_bridge(t, 1.0, bridge)


def delayed_start(sampler, rate, times, rng, size: int = 1) -> PathGrid:
    """Evaluate a process started at 0 after an independent Exp(``rate``) delay.

    ``sampler(times (n, m), rng)`` must return values at per-path
    nondecreasing times (zeros allowed). Returns ``X_{(t - E)^+}``.
    """
    if not rate > 0:
        raise ValueError(f"rate must be > 0, got {rate}")
    times = _check_grid(times)
    gen = as_generator(rng)
    delay = gen.exponential(1.0 / rate, size) if np.isfinite(rate) else np.zeros(size)
    shifted = np.maximum(times[None, :] - delay[:, None], 0.0)
    return PathGrid(times, sampler(shifted, gen))
