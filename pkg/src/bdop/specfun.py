"""Special functions: log-gamma, Beta, regularized incomplete Beta, normal
pdf/cdf and the (real-index) Bernstein basis.

Everything that exponentiates a large power of ``t`` and ``1 - t`` goes
through the saddle-point decomposition used by Loader for binomial
probabilities: ``stirlerr`` (the remainder of Stirling's series) plus the
deviance term ``bd0``.  That keeps relative accuracy near machine precision
for degrees up to ~1e7, where plain ``lgamma`` differences lose about
``log10(n)`` digits.
"""

import math

import numpy as np
from scipy import special

from .errors import DomainError

__all__ = [
    "ln_gamma",
    "ln_beta",
    "beta_fn",
    "reg_inc_beta",
    "inc_beta_pair",
    "beta_interval_prob",
    "bernstein_basis",
    "beta_pdf",
    "normal_cdf",
    "normal_pdf",
]

_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_CF_EPS = 1e-16
_CF_TINY = 1e-300
_CF_MAXIT = 20000


def ln_gamma(x):
    """Natural log of the Gamma function for ``x > 0``."""
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("ln_gamma requires x > 0")
    out = special.gammaln(x)
    return out if out.ndim else float(out)


def ln_beta(a, b):
    """``ln B(a, b)`` for ``a, b > 0``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(~(a > 0)) or np.any(~(b > 0)):
        raise DomainError("ln_beta requires a, b > 0")
    out = special.betaln(a, b)
    return out if out.ndim else float(out)


def beta_fn(a, b):
    """The Beta function ``B(a, b)``."""
    return np.exp(ln_beta(a, b))


def _stirlerr(x):
    # ln Gamma(x + 1) - [(x + 1/2) ln x - x + ln sqrt(2 pi)], for x > 0
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    big = x > 15.0
    xb = x[big]
    x2 = 1.0 / (xb * xb)
    out[big] = (
        1.0 / 12 - (1.0 / 360 - (1.0 / 1260 - (1.0 / 1680 - x2 / 1188) * x2) * x2) * x2
    ) / xb
    xs = x[~big]
    out[~big] = special.gammaln(xs + 1.0) - (xs + 0.5) * np.log(xs) + xs - _LN_SQRT_2PI
    return out


def _bd0(x, m):
    # x ln(x/m) + m - x, accurate when x ~ m
    x, m = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(m, dtype=float))
    out = np.empty(x.shape)
    d = x - m
    near = np.abs(d) < 0.1 * (x + m)
    xf, mf = x[~near], m[~near]
    out[~near] = special.xlogy(xf, xf / mf) + mf - xf
    if np.any(near):
        xn, dn = x[near], d[near]
        v = dn / (x[near] + m[near])
        s = dn * v
        ej = 2.0 * xn * v
        v2 = v * v
        # |v| < 0.1: at most ~16 terms are ever needed
        for j in range(1, 21):
            ej = ej * v2
            term = ej / (2 * j + 1)
            s = s + term
            if np.all(np.abs(term) <= 1e-17 * np.abs(s)):
                break
        out[near] = s
    return out


def _log_power_terms(a, b, z, zc):
    # ln[ z^a (1-z)^b / B(a,b) ] for 0 < z < 1, with zc = 1 - z supplied exactly
    c = a + b
    return (
        -_bd0(a, c * z)
        - _bd0(b, c * zc)
        + 0.5 * np.log(a * b / c)
        - _LN_SQRT_2PI
        + _stirlerr(c)
        - _stirlerr(a)
        - _stirlerr(b)
    )


def _betacf(a, b, z):
    """Continued fraction for I_z(a,b) (modified Lentz), vectorized."""
    h = np.empty(a.shape)
    idx = np.arange(a.size)
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones(a.shape)
    d = 1.0 - qab * z / qap
    d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
    d = 1.0 / d
    hh = d.copy()
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * z / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _CF_TINY, _CF_TINY, c)
        d = 1.0 / d
        hh *= d * c
        aa = -(a + m) * (qab + m) * z / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _CF_TINY, _CF_TINY, c)
        d = 1.0 / d
        delta = d * c
        hh *= delta
        done = np.abs(delta - 1.0) < _CF_EPS
        if np.any(done):
            h[idx[done]] = hh[done]
            keep = ~done
            if not np.any(keep):
                return h
            idx, a, b, z = idx[keep], a[keep], b[keep], z[keep]
            qab, qap, qam = qab[keep], qap[keep], qam[keep]
            c, d, hh = c[keep], d[keep], hh[keep]
    raise ArithmeticError(
        f"incomplete Beta continued fraction did not converge for {idx.size} argument(s)"
    )


def inc_beta_pair(z, a, b):
    """Return ``(I_z(a,b), 1 - I_z(a,b))``.

    Whichever of the two is the directly computed tail keeps full relative
    accuracy, so differences of tail probabilities should be formed from the
    matching member of the pair.
    """
    z, a, b = np.broadcast_arrays(
        np.asarray(z, dtype=float), np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    )
    if np.any(~(a > 0)) or np.any(~(b > 0)):
        raise DomainError("reg_inc_beta requires a, b > 0")
    if np.any(~((z >= 0) & (z <= 1))):
        raise DomainError("reg_inc_beta requires 0 <= z <= 1")
    lower = np.where(z >= 1.0, 1.0, 0.0)
    upper = np.where(z >= 1.0, 0.0, 1.0)
    inner = (z > 0) & (z < 1)
    if np.any(inner):
        zi, ai, bi = z[inner], a[inner], b[inner]
        swap = zi > ai / (ai + bi)
        # tail argument: (a, b, z) directly or the mirrored (b, a, 1 - z)
        ta = np.where(swap, bi, ai)
        tb = np.where(swap, ai, bi)
        tz = np.where(swap, 1.0 - zi, zi)
        tzc = np.where(swap, zi, 1.0 - zi)
        front = np.exp(_log_power_terms(ta, tb, tz, tzc)) / ta
        tail = np.zeros(zi.shape)
        live = front > 0
        if np.any(live):
            tail[live] = front[live] * _betacf(ta[live], tb[live], tz[live])
        tail = np.minimum(tail, 1.0)
        lo = np.where(swap, 1.0 - tail, tail)
        up = np.where(swap, tail, 1.0 - tail)
        lower[inner] = lo
        upper[inner] = up
    if lower.ndim == 0:
        return float(lower), float(upper)
    return lower, upper


def reg_inc_beta(z, a, b):
    """Regularized incomplete Beta function ``I_z(a, b)``, the Beta(a, b) CDF.

    Evaluated by continued fraction on the side of the mean where it
    converges, with ``I_z(a,b) = 1 - I_{1-z}(b,a)`` above ``a / (a + b)``.
    """
    return inc_beta_pair(z, a, b)[0]


def beta_interval_prob(lo, hi, a, b):
    """``P(lo < B <= hi)`` for ``B ~ Beta(a, b)``, without tail cancellation."""
    lo = np.clip(np.asarray(lo, dtype=float), 0.0, 1.0)
    hi = np.clip(np.asarray(hi, dtype=float), 0.0, 1.0)
    i_lo, q_lo = inc_beta_pair(lo, a, b)
    i_hi, q_hi = inc_beta_pair(hi, a, b)
    mean = np.asarray(a, dtype=float) / (np.asarray(a, dtype=float) + b)
    below = hi <= mean
    above = lo >= mean
    out = np.where(below, i_hi - i_lo, np.where(above, q_lo - q_hi, 1.0 - i_lo - q_hi))
    out = np.maximum(out, 0.0)
    return out if np.ndim(out) else float(out)


def bernstein_basis(n, k, t):
    """Extended Bernstein basis ``p_{n,k}(t)`` for real ``0 <= k <= n``.

    Zero outside ``[0, 1]``.  At the endpoints the continuous limit is used:
    ``p_{n,0}(0) = p_{n,n}(1) = 1`` and every other basis function vanishes
    there (this also applies to fractional ``k``).  ``k`` and ``t``
    broadcast against each other.
    """
    n = float(n)
    if not n >= 1:
        raise DomainError("bernstein_basis requires n >= 1")
    k = np.asarray(k, dtype=float)
    if np.any(~((k >= 0) & (k <= n))):
        raise DomainError("bernstein_basis requires 0 <= k <= n")
    # k-only part of the log, computed before broadcasting against t
    interior_k = (k > 0) & (k < n)
    kk = np.where(interior_k, k, 0.5)
    log_coef = (
        _stirlerr(np.array([n]))[0]
        - _stirlerr(kk)
        - _stirlerr(n - kk)
        + 0.5 * np.log(n / (kk * (n - kk)))
        - _LN_SQRT_2PI
    )
    k, t, log_coef = np.broadcast_arrays(k, np.asarray(t, dtype=float), log_coef)
    out = np.zeros(k.shape)
    out[(t == 0) & (k == 0)] = 1.0
    out[(t == 1) & (k == n)] = 1.0
    inner = (t > 0) & (t < 1)
    left = inner & (k == 0)
    out[left] = np.exp(n * np.log1p(-t[left]))
    right = inner & (k == n)
    out[right] = np.exp(n * np.log(t[right]))
    mid = inner & (k > 0) & (k < n)
    if np.any(mid):
        km, tm = k[mid], t[mid]
        logp = log_coef[mid] - _bd0(km, n * tm) - _bd0(n - km, n * (1.0 - tm))
        out[mid] = np.exp(logp)
    return out if out.ndim else float(out)


def beta_pdf(t, a, b):
    """Density of Beta(a, b) at ``t`` (zero outside [0, 1])."""
    t, a, b = np.broadcast_arrays(
        np.asarray(t, dtype=float), np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    )
    if np.any(~(a > 0)) or np.any(~(b > 0)):
        raise DomainError("beta_pdf requires a, b > 0")
    out = np.zeros(t.shape)
    inner = (t > 0) & (t < 1)
    if np.any(inner):
        ti, ai, bi = t[inner], a[inner], b[inner]
        out[inner] = np.exp(_log_power_terms(ai, bi, ti, 1.0 - ti)) / (ti * (1.0 - ti))
    edge = (t == 0) | (t == 1)
    if np.any(edge):
        te, ae, be = t[edge], a[edge], b[edge]
        with np.errstate(divide="ignore"):
            out[edge] = np.exp(
                special.xlogy(ae - 1.0, te) + special.xlogy(be - 1.0, 1.0 - te) - special.betaln(ae, be)
            )
    return out if out.ndim else float(out)


def _check_variance(variance):
    if np.any(~(np.asarray(variance) > 0)):
        raise DomainError("variance must be positive")


def normal_cdf(z, mean=0.0, variance=1.0):
    """CDF of N(mean, variance) at ``z``."""
    _check_variance(variance)
    out = special.ndtr((np.asarray(z, dtype=float) - mean) / np.sqrt(variance))
    return out if np.ndim(out) else float(out)


def normal_pdf(z, mean=0.0, variance=1.0):
    """Density of N(mean, variance) at ``z``."""
    _check_variance(variance)
    u = (np.asarray(z, dtype=float) - mean) ** 2 / variance
    out = np.exp(-0.5 * u) / np.sqrt(2.0 * np.pi * variance)
    return out if np.ndim(out) else float(out)
