"""Seedable random streams and the scalar laws used by the identities.

Streams are keyed Philox generators: the 128-bit key is ``(seed, stream_id)``
and independent blocks of one stream are carved out of the 256-bit counter,
so a Monte Carlo run split into fixed-size blocks gives the same draws no
matter how many workers evaluate the blocks.

Laws are immutable dataclasses with ``sample(rng, size)`` and ``cdf(y)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .specfun import log_gamma, reg_inc_beta, reg_inc_gamma_lower, reg_inc_gamma_upper

__all__ = [
    "RngStream",
    "as_generator",
    "sample_blocks",
    "ScalarLaw",
    "Beta",
    "Exponential",
    "Gamma",
    "InverseGamma",
    "CensoredExp",
    "Product",
    "Reciprocal",
    "ShiftedMax",
    "sample",
    "cdf",
    "PRODUCT_CDF_ABS_TOL",
]

_MASK64 = (1 << 64) - 1
PRODUCT_CDF_ABS_TOL = 1e-8


class RngStream:
    """A reproducible random stream identified by ``(seed, stream_id)``.

    ``generator`` is the stream's own numpy Generator. ``block(i)`` returns a
    fresh Generator for the i-th independent block of the same key; blocks
    never share counter values.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        for name, v in (("seed", seed), ("stream_id", stream_id)):
            if not 0 <= int(v) <= _MASK64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {v}")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        self.generator = self.block(0)

    @property
    def key(self) -> int:
        return (self.seed << 64) | self.stream_id

    def block(self, index: int) -> np.random.Generator:
        # block index occupies the top counter word
        return np.random.Generator(np.random.Philox(key=self.key, counter=[0, 0, 0, int(index)]))

    def substream(self, k: int) -> "RngStream":
        """A stream with the same seed and a derived, distinct id."""
        return RngStream(self.seed, (self.stream_id * 1_000_003 + 7919 * (k + 1)) & _MASK64)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


def as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


def sample_blocks(
    draw: Callable[[np.random.Generator, int], np.ndarray],
    n: int,
    stream: RngStream,
    block_size: int = 1 << 14,
    workers: int = 1,
) -> np.ndarray:
    """Draw ``n`` values as ``ceil(n / block_size)`` independent blocks.

    ``draw(gen, m)`` must return ``m`` draws (along axis 0). The result does
    not depend on ``workers``.
    """
    sizes = [min(block_size, n - s) for s in range(0, n, block_size)]

    def run(i):
        return draw(stream.block(i + 1), sizes[i])

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(i) for i in range(len(sizes))]
    return np.concatenate(parts, axis=0)


# ---------------------------------------------------------------------------
# laws


def _pos(name, v, allow_zero=False, allow_inf=False):
    v = float(v)
    ok = (v >= 0 if allow_zero else v > 0) and (allow_inf or math.isfinite(v))
    if not ok:
        raise ValueError(f"{name} must be {'nonnegative' if allow_zero else 'positive'}, got {v}")
    return v


class ScalarLaw:
    """Base class of the one-dimensional laws. Supports are in [0, inf)."""

    #: locations where the CDF jumps
    jumps: tuple = ()
    #: supremum of the support
    upper: float = math.inf

    def sample(self, rng, size=None):
        raise NotImplementedError

    def cdf(self, y):
        raise NotImplementedError

    def cdf_left(self, y):
        """Left limit F(y-)."""
        y = np.asarray(y, dtype=float)
        return self.cdf(np.nextafter(y, -np.inf))

    def atom_mass(self, y: float) -> float:
        return float(self.cdf(y) - self.cdf_left(y))


def _f(x):
    return float(x) if np.ndim(x) == 0 else x


@dataclass(frozen=True)
class Beta(ScalarLaw):
    a: float
    b: float

    def __post_init__(self):
        _pos("a", self.a), _pos("b", self.b)

    upper = 1.0

    def sample(self, rng, size=None):
        return as_generator(rng).beta(self.a, self.b, size)

    def cdf(self, y):
        return reg_inc_beta(self.a, self.b, np.clip(y, 0.0, 1.0))

    def log_pdf(self, u):
        u = np.asarray(u, dtype=float)
        lbeta = log_gamma(self.a) + log_gamma(self.b) - log_gamma(self.a + self.b)
        return (self.a - 1.0) * np.log(u) + (self.b - 1.0) * np.log1p(-u) - lbeta


@dataclass(frozen=True)
class Exponential(ScalarLaw):
    rate: float

    def __post_init__(self):
        _pos("rate", self.rate)

    def sample(self, rng, size=None):
        return as_generator(rng).exponential(1.0 / self.rate, size)

    def cdf(self, y):
        y = np.asarray(y, dtype=float)
        return _f(np.where(y > 0, -np.expm1(-self.rate * np.maximum(y, 0.0)), 0.0))


@dataclass(frozen=True)
class Gamma(ScalarLaw):
    shape: float
    rate: float

    def __post_init__(self):
        _pos("shape", self.shape), _pos("rate", self.rate)

    def sample(self, rng, size=None):
        return as_generator(rng).gamma(self.shape, 1.0 / self.rate, size)

    def cdf(self, y):
        y = np.asarray(y, dtype=float)
        return reg_inc_gamma_lower(self.shape, np.maximum(y, 0.0) * self.rate)


@dataclass(frozen=True)
class InverseGamma(ScalarLaw):
    """Law of ``1/G`` with ``G ~ Gamma(shape, rate)``."""

    shape: float
    rate: float

    def __post_init__(self):
        _pos("shape", self.shape), _pos("rate", self.rate)

    def sample(self, rng, size=None):
        return self.rate / as_generator(rng).standard_gamma(self.shape, size)

    def cdf(self, y):
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore"):
            arg = np.where(y > 0, self.rate / np.where(y > 0, y, 1.0), np.inf)
        return reg_inc_gamma_upper(self.shape, arg)


@dataclass(frozen=True)
class CensoredExp(ScalarLaw):
    """``min(cap, E)`` with ``E ~ Exponential(rate)``; atom ``exp(-rate cap)`` at the cap."""

    cap: float
    rate: float

    def __post_init__(self):
        _pos("cap", self.cap, allow_zero=True, allow_inf=True)
        _pos("rate", self.rate)
        object.__setattr__(self, "jumps", (self.cap,) if math.isfinite(self.cap) else ())
        object.__setattr__(self, "upper", self.cap)

    def sample(self, rng, size=None):
        return np.minimum(self.cap, as_generator(rng).exponential(1.0 / self.rate, size))

    def cdf(self, y):
        y = np.asarray(y, dtype=float)
        body = -np.expm1(-self.rate * np.maximum(y, 0.0))
        return _f(np.where(y >= self.cap, 1.0, np.where(y > 0, body, 0.0)))


@dataclass(frozen=True)
class Reciprocal(ScalarLaw):
    law: ScalarLaw

    def __post_init__(self):
        if self.law.cdf(0.0) > 0:
            raise ValueError("Reciprocal needs a law with no mass at 0")
        object.__setattr__(self, "jumps", tuple(sorted(1.0 / j for j in self.law.jumps if j > 0)))

    def sample(self, rng, size=None):
        return 1.0 / self.law.sample(rng, size)

    def cdf(self, y):
        # P(1/X <= y) = P(X >= 1/y) = 1 - F(1/y -)
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore"):
            inv = np.where(y > 0, 1.0 / np.where(y > 0, y, 1.0), np.inf)
        return _f(np.where(y > 0, 1.0 - np.asarray(self.law.cdf_left(inv)), 0.0))


@dataclass(frozen=True)
class ShiftedMax(ScalarLaw):
    """``max(floor, X)``."""

    floor: float
    law: ScalarLaw

    def __post_init__(self):
        _pos("floor", self.floor, allow_zero=True)
        js = {self.floor} | {j for j in self.law.jumps if j > self.floor}
        object.__setattr__(self, "jumps", tuple(sorted(js)))
        object.__setattr__(self, "upper", max(self.floor, self.law.upper))

    def sample(self, rng, size=None):
        return np.maximum(self.floor, self.law.sample(rng, size))

    def cdf(self, y):
        y = np.asarray(y, dtype=float)
        return _f(np.where(y >= self.floor, self.law.cdf(y), 0.0))


@dataclass(frozen=True)
class Product(ScalarLaw):
    """Product of independent draws from ``left`` and ``right``.

    The CDF is available when one factor is exponential or censored
    exponential; it is then a one-dimensional integral over that factor.
    """

    left: ScalarLaw
    right: ScalarLaw

    def __post_init__(self):
        js = {x * y for x in self.left.jumps for y in self.right.jumps}
        object.__setattr__(self, "jumps", tuple(sorted(js)))
        object.__setattr__(self, "upper", self.left.upper * self.right.upper)

    def sample(self, rng, size=None):
        return self.left.sample(rng, size) * self.right.sample(rng, size)

    def _split(self):
        for e, other in ((self.left, self.right), (self.right, self.left)):
            if isinstance(e, (CensoredExp, Exponential)):
                cap = e.cap if isinstance(e, CensoredExp) else math.inf
                return cap, e.rate, other
        raise NotImplementedError(
            "Product.cdf needs an exponential or censored-exponential factor"
        )

    def cdf(self, y):
        cap, rate, other = self._split()
        y = np.asarray(y, dtype=float)
        if isinstance(other, Beta):
            return _f(_censored_beta_cdf(y, cap, rate, other))
        return _f(_mixture_cdf(y, cap, rate, other))


def _censored_beta_cdf(y, cap, rate, beta):
    """P(min(cap, E) A <= y) for E ~ Exp(rate), A ~ Beta(a, b).

    Uses P(min(cap,E) A > y) = E[exp(-rate y / A); A > y / cap], integrated
    over A in two pieces: [lo, 1/2] in log-scale and [1/2, 1] with the
    substitution that absorbs the (1-u)^(b-1) endpoint behaviour.
    """
    a, b = beta.a, beta.b
    lbeta = log_gamma(a) + log_gamma(b) - log_gamma(a + b)
    out = np.where(y >= cap, 1.0, 0.0)
    inner = (y > 0) & (y < cap)
    yi = y[inner]
    if yi.size == 0:
        return out
    lo = yi / cap if math.isfinite(cap) else np.zeros_like(yi)
    ry = rate * yi

    # piece 1: u in [lo, 1/2], u = exp(s)
    has1 = lo < 0.5
    # below u = rate y / 800 the factor exp(-rate y / u) underflows
    s_lo = np.log(ry / 800.0)
    s_lo = np.where(lo > 0, np.maximum(np.log(np.where(lo > 0, lo, 1.0)), s_lo), s_lo)
    s_hi = math.log(0.5)
    s_lo = np.minimum(s_lo, s_hi)
    span1 = np.where(has1, s_hi - s_lo, 0.0)

    # piece 2: u in [max(lo, 1/2), 1], 1 - u = (1 - u_lo) rho^(1/b)
    u_lo = np.maximum(lo, 0.5)
    w2 = 1.0 - u_lo

    def integrand(w):
        s = s_lo + span1 * w
        u1 = np.exp(s)
        f1 = span1 * np.exp(a * s - ry / u1 + (b - 1.0) * np.log1p(-u1) - lbeta)
        u2 = 1.0 - w2 * w ** (1.0 / b)
        f2 = (w2**b / b) * np.exp((a - 1.0) * np.log(u2) - ry / u2 - lbeta)
        return f1 + f2

    sf, _ = integrate.quad_vec(integrand, 0.0, 1.0, epsabs=PRODUCT_CDF_ABS_TOL / 4, epsrel=0.0, norm="max")
    out[inner] = np.clip(1.0 - sf, 0.0, 1.0)
    return out


def _mixture_cdf(y, cap, rate, other):
    """P(min(cap, E) Y <= y) = e^{-rate cap} F_Y(y/cap) + int_0^cap rate e^{-rate s} F_Y(y/s) ds.

    ``F_Y(y/s) = 1`` for ``s <= y / sup Y``, which integrates in closed form.
    On the rest, ``w = exp(-rate s)`` rescaled to [0, 1] gives a bounded
    integrand whose kink sits at the same endpoint for every ``y``.
    """
    y = np.asarray(y, dtype=float)
    flat = np.atleast_1d(y).ravel()
    res = np.zeros_like(flat)
    if cap == 0:
        res[flat >= 0] = 1.0
        return res.reshape(y.shape)
    pos = flat >= 0
    yp = flat[pos]
    w0 = math.exp(-rate * cap)
    kink = yp / other.upper if math.isfinite(other.upper) else np.zeros_like(yp)
    wk = np.exp(-rate * np.minimum(kink, cap))

    def integrand(v):
        w = w0 + (wk - w0) * v
        with np.errstate(divide="ignore"):
            arg = np.where(w < 1.0, rate * yp / -np.log(np.minimum(w, 1.0)), np.inf)
        return (wk - w0) * np.asarray(other.cdf(arg), dtype=float)

    val, _ = integrate.quad_vec(
        integrand, 0.0, 1.0, epsabs=PRODUCT_CDF_ABS_TOL / 2, epsrel=0.0, norm="max", limit=2000
    )
    val = val + (1.0 - wk)
    if math.isfinite(cap):
        val = val + w0 * np.asarray(other.cdf(yp / cap), dtype=float)
    res[pos] = np.clip(val, 0.0, 1.0)
    return res.reshape(y.shape)


def sample(law: ScalarLaw, rng, size=None):
    """Draw from ``law`` using ``rng`` (RngStream or numpy Generator)."""
    return law.sample(rng, size)


def cdf(law: ScalarLaw, y):
    """Right-continuous CDF of ``law`` at ``y``."""
    return law.cdf(y)
