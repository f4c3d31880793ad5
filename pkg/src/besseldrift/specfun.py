"""Special functions behind the densities and closed-form laws.

All functions accept scalars or numpy arrays and broadcast over their
arguments. Scalars in give Python floats out.

The modified Bessel function uses its power series for ``z <= 25`` and the
exponentially scaled Hankel expansion beyond that. The regularized
incomplete gamma and beta functions use the usual series / continued
fraction split (Lentz's method for the fractions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AccuracyPolicy",
    "DEFAULT_POLICY",
    "DomainError",
    "log_gamma",
    "bessel_i",
    "log_bessel_i",
    "h_drift",
    "log_h_drift",
    "reg_inc_beta",
    "reg_inc_gamma_upper",
    "reg_inc_gamma_lower",
]


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


@dataclass(frozen=True)
class AccuracyPolicy:
    rel_tol: float = 1e-15
    max_terms: int = 500

    def __post_init__(self):
        if not 0.0 < self.rel_tol <= 1e-6:
            raise ValueError(f"rel_tol must lie in (0, 1e-6], got {self.rel_tol}")
        if self.max_terms < 50:
            raise ValueError(f"max_terms must be >= 50, got {self.max_terms}")


DEFAULT_POLICY = AccuracyPolicy()

BESSEL_SWITCH = 25.0
_TINY = 1e-300

# Lanczos coefficients, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def log_gamma(a):
    """Natural log of the gamma function for positive arguments."""
    a = np.asarray(a, dtype=float)
    if np.any(~(a > 0)):
        raise DomainError("log_gamma requires a > 0")
    # shift small arguments up so the Lanczos sum is used where it is accurate
    small = a < 0.5
    z = np.where(small, a + 1.0, a) - 1.0
    s = np.full_like(z, _LANCZOS[0])
    for k in range(1, len(_LANCZOS)):
        s = s + _LANCZOS[k] / (z + k)
    w = z + _LANCZOS_G + 0.5
    out = _LOG_SQRT_2PI + (z + 0.5) * np.log(w) - w + np.log(s)
    out = np.where(small, out - np.log(a), out)
    # Lanczos is not exact at the integers 1 and 2
    out = np.where((a == 1.0) | (a == 2.0), 0.0, out)
    return _out(out)


def _series_scaled(nu, z, policy):
    """sum_k (z/2)^(2k) / (k! Gamma(k+nu+1)) * Gamma(nu+1).

    Equals Gamma(nu+1) * I_nu(z) / (z/2)^nu. ``nu > -1`` required.
    """
    q = 0.25 * z * z
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(1, policy.max_terms):
        term = term * q / (k * (k + nu))
        total = total + term
        if np.all(term <= policy.rel_tol * total):
            break
    return total


def _hankel_log(nu, z, policy):
    """log I_nu(z) from the large-argument expansion; z > BESSEL_SWITCH."""
    mu4 = 4.0 * nu * nu
    term = np.ones_like(z)
    total = np.ones_like(z)
    prev = np.full_like(z, np.inf)
    for k in range(1, policy.max_terms):
        term = -term * (mu4 - (2 * k - 1) ** 2) / (k * 8.0 * z)
        size = np.abs(term)
        # asymptotic series: stop at the smallest term
        if np.all(size >= prev):
            break
        total = total + np.where(size < prev, term, 0.0)
        prev = np.minimum(prev, size)
        if np.all(size <= policy.rel_tol * np.abs(total)):
            break
    return z - 0.5 * np.log(2.0 * math.pi * z) + np.log(total)


def _check_nu(nu):
    if nu < -1:
        raise DomainError(f"order nu must be >= -1, got {nu}")
    # I_{-n} = I_n for integer n
    if nu < 0 and float(nu).is_integer():
        return -nu
    return nu


def log_bessel_i(nu, z, policy=DEFAULT_POLICY):
    """log I_nu(z) for real order nu >= -1 and z >= 0."""
    nu = _check_nu(float(nu))
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise DomainError("bessel_i requires z >= 0")
    out = np.empty_like(z)
    big = z > BESSEL_SWITCH
    small = ~big
    if np.any(small):
        zs = z[small]
        with np.errstate(divide="ignore", invalid="ignore"):
            lead = nu * np.log(0.5 * zs) - log_gamma(nu + 1.0)
        lead = np.where(zs == 0, 0.0 if nu == 0 else (-np.inf if nu > 0 else np.inf), lead)
        out[small] = lead + np.log(_series_scaled(nu, zs, policy))
    if np.any(big):
        out[big] = _hankel_log(nu, z[big], policy)
    return _out(out)


def bessel_i(nu, z, policy=DEFAULT_POLICY):
    """Modified Bessel function of the first kind, I_nu(z).

    Parameters
    ----------
    nu : float
        Order, ``nu >= -1``.
    z : float or array_like
        Argument, ``z >= 0``.
    """
    return _out(np.exp(log_bessel_i(nu, z, policy)))


def log_h_drift(delta, mu, x, policy=DEFAULT_POLICY):
    """log of the space-harmonic function turning a killed Bessel process
    of dimension ``delta`` into one with drift ``mu``.

    ``h(x) = (2/(mu x))^(delta/2 - 1) Gamma(delta/2) I_{delta/2-1}(mu x)``
    for ``x > 0`` and ``h(0) = 1``.
    """
    if not delta > 0:
        raise DomainError(f"delta must be > 0, got {delta}")
    if not mu > 0:
        raise DomainError(f"mu must be > 0, got {mu}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("h_drift requires x >= 0")
    nu = 0.5 * delta - 1.0
    z = mu * x
    out = np.empty_like(z)
    big = z > BESSEL_SWITCH
    small = ~big
    if np.any(small):
        # Gamma(nu+1) cancels against the series normalisation
        out[small] = np.log(_series_scaled(nu, z[small], policy))
    if np.any(big):
        zb = z[big]
        out[big] = (
            -nu * np.log(0.5 * zb)
            + log_gamma(nu + 1.0)
            + log_bessel_i(nu, zb, policy)
        )
    return _out(out)


def h_drift(delta, mu, x, policy=DEFAULT_POLICY):
    """The function h_{delta,mu}; overflows to inf only when its log does."""
    with np.errstate(over="ignore"):
        return _out(np.exp(log_h_drift(delta, mu, x, policy)))


# ---------------------------------------------------------------------------
# incomplete gamma


def _gamma_series(a, x, policy):
    # P(a, x) = x^a e^-x / Gamma(a+1) * sum x^n / ((a+1)...(a+n))
    term = np.ones_like(x)
    total = np.ones_like(x)
    for n in range(1, policy.max_terms):
        term = term * x / (a + n)
        total = total + term
        if np.all(term <= policy.rel_tol * total):
            break
    with np.errstate(divide="ignore"):
        logpre = a * np.log(x) - x - log_gamma(a + 1.0)
    return np.exp(logpre) * total


def _gamma_cf(a, x, policy):
    # Q(a, x) via the Legendre continued fraction, modified Lentz
    b = x + 1.0 - a
    c = np.full_like(x, 1.0 / _TINY)
    d = 1.0 / np.where(np.abs(b) < _TINY, _TINY, b)
    h = d.copy()
    for i in range(1, policy.max_terms):
        an = -i * (i - a)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = b + an / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1.0 / d
        delta = d * c
        h = h * delta
        if np.all(np.abs(delta - 1.0) <= policy.rel_tol):
            break
    return np.exp(a * np.log(x) - x - log_gamma(a)) * h


def _inc_gamma(a, x, policy):
    """Return (P, Q) arrays for scalar a > 0 and array x >= 0."""
    if not a > 0:
        raise DomainError(f"a must be > 0, got {a}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("incomplete gamma requires x >= 0")
    p = np.zeros_like(x)
    q = np.ones_like(x)
    use_series = (x > 0) & (x < a + 1.0)
    use_cf = (x >= a + 1.0) & np.isfinite(x)
    if np.any(use_series):
        ps = np.minimum(_gamma_series(a, x[use_series], policy), 1.0)
        p[use_series] = ps
        q[use_series] = 1.0 - ps
    if np.any(use_cf):
        qs = np.minimum(_gamma_cf(a, x[use_cf], policy), 1.0)
        q[use_cf] = qs
        p[use_cf] = 1.0 - qs
    inf = np.isinf(x)
    p[inf], q[inf] = 1.0, 0.0
    return p, q


def reg_inc_gamma_upper(a, x, policy=DEFAULT_POLICY):
    """Q(a, x) = Gamma(a, x) / Gamma(a)."""
    return _out(_inc_gamma(float(a), x, policy)[1])


def reg_inc_gamma_lower(a, x, policy=DEFAULT_POLICY):
    """P(a, x) = 1 - Q(a, x), computed without cancellation in its own regime."""
    return _out(_inc_gamma(float(a), x, policy)[0])


# ---------------------------------------------------------------------------
# incomplete beta


def _beta_cf(a, b, x, policy):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    d = 1.0 / np.where(np.abs(d) < _TINY, _TINY, d)
    h = d.copy()
    for m in range(1, policy.max_terms):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = 1.0 / np.where(np.abs(d) < _TINY, _TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        h = h * d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = 1.0 / np.where(np.abs(d) < _TINY, _TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        delta = d * c
        h = h * delta
        if np.all(np.abs(delta - 1.0) <= policy.rel_tol):
            break
    return h


def _beta_front(a, b, x):
    lbeta = log_gamma(a) + log_gamma(b) - log_gamma(a + b)
    return np.exp(a * np.log(x) + b * np.log1p(-x) - lbeta)


def reg_inc_beta(a, b, x, policy=DEFAULT_POLICY):
    """Regularized incomplete beta function I_x(a, b)."""
    a, b = float(a), float(b)
    if not (a > 0 and b > 0):
        raise DomainError(f"a and b must be > 0, got a={a}, b={b}")
    x = np.asarray(x, dtype=float)
    if np.any(~((x >= 0) & (x <= 1))):
        raise DomainError("reg_inc_beta requires 0 <= x <= 1")
    out = np.where(x >= 1.0, 1.0, 0.0)
    inner = (x > 0) & (x < 1)
    if np.any(inner):
        xi = x[inner]
        # the fraction converges fast below the pivot; reflect above it
        lower = xi < (a + 1.0) / (a + b + 2.0)
        res = np.empty_like(xi)
        if np.any(lower):
            xl = xi[lower]
            res[lower] = _beta_front(a, b, xl) * _beta_cf(a, b, xl, policy) / a
        if np.any(~lower):
            xu = 1.0 - xi[~lower]
            res[~lower] = 1.0 - _beta_front(b, a, xu) * _beta_cf(b, a, xu, policy) / b
        out[inner] = np.clip(res, 0.0, 1.0)
    return _out(out)
