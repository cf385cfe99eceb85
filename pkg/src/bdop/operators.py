"""Bernstein, Bernstein-Durrmeyer, weighted Bernstein-Durrmeyer and Lupas Beta
operators.

All of the integral operators reduce to expectations of ``f`` (or ``f w``)
under Beta laws: ``(n + 1) p_{n,k}(t) dt`` is the Beta(k+1, n-k+1) law and the
Lupas kernel at ``y`` is Beta(ny+1, n(1-y)+1).  :func:`beta_expectation`
evaluates those expectations piece by piece:

* polynomial pieces exactly, as ``sum_j c_j E[B^j; lo < B <= hi]`` with
  ``E[B^j 1{lo<B<=hi}] = m_j(a, b) P(lo < Beta(a+j, b) <= hi)``;
* other pieces by adaptive Gauss-Legendre on the piece's own interval, so no
  panel ever straddles a jump.
"""

import math

import numpy as np

from .errors import DegenerateWeightError, DomainError
from .funcmodel import PiecewiseFunction, PolyPiece
from .quadrature import QuadratureRule, integrate
from .specfun import bernstein_basis, beta_interval_prob, beta_pdf

__all__ = [
    "bernstein_op",
    "durrmeyer_kernel",
    "durrmeyer_op",
    "weighted_durrmeyer_op",
    "lupas_op",
    "lupas_moment",
    "beta_expectation",
    "DENOMINATOR_FLOOR",
]

DENOMINATOR_FLOOR = 1e-300


def _check_point(n, x):
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    if not 0 < x < 1:
        raise DomainError("x must lie in (0, 1)")
    return int(n)


def _as_function(f):
    if isinstance(f, PiecewiseFunction):
        return f
    if np.isscalar(f):
        return PiecewiseFunction.constant(float(f))
    raise TypeError("expected a PiecewiseFunction or a constant")


def _rising_ratio(a, c, j):
    # prod_{i<j} (a + i) / (c + i)
    out = np.ones(np.shape(a))
    for i in range(j):
        out = out * (a + i) / (c + i)
    return out


def beta_expectation(f, a, b, rule=None):
    """``E f(B)`` for ``B ~ Beta(a, b)``, vectorized over arrays ``a``, ``b``."""
    f = _as_function(f)
    a, b = np.broadcast_arrays(np.atleast_1d(np.asarray(a, float)), np.atleast_1d(np.asarray(b, float)))
    total = np.zeros(a.shape)
    for lo, hi, piece in f.intervals():
        if isinstance(piece, PolyPiece):
            for j, c in enumerate(piece.coeffs):
                if c == 0:
                    continue
                mom = _rising_ratio(a, a + b, j)
                total += c * mom * beta_interval_prob(lo, hi, a + j, b)
        else:
            rule = rule or QuadratureRule()
            # start with panels no wider than the narrowest Beta bulk
            spread = np.sqrt(a * b / ((a + b) ** 2 * (a + b + 1)))
            panels = max(rule.panels, min(256, math.ceil((hi - lo) / max(spread.min(), 1e-12))))
            local = QuadratureRule(rule.kind, panels, rule.nodes_per_panel, rule.abs_tol, max(rule.max_panels, 4 * panels))
            total += integrate(
                lambda t, piece=piece: piece(t)[None, :] * beta_pdf(t[None, :], a[:, None], b[:, None]),
                lo,
                hi,
                local,
            )
    return total


def bernstein_op(f, n, x):
    """``B_n(f)(x) = sum_k p_{n,k}(x) f(k/n)``."""
    n = _check_point(n, x)
    f = _as_function(f)
    k = np.arange(n + 1)
    return float(np.sum(bernstein_basis(n, k, x) * f.eval(k / n)))


def durrmeyer_kernel(n, x, t):
    """``K_n(x, t) = (n + 1) sum_k p_{n,k}(x) p_{n,k}(t)``, vectorized over ``t``."""
    n = _check_point(n, x)
    t = np.asarray(t, dtype=float)
    k = np.arange(n + 1)
    px = bernstein_basis(n, k, x)
    pt = bernstein_basis(n, k[:, None], np.atleast_1d(t)[None, :])
    out = (n + 1) * np.sum(px[:, None] * pt, axis=0)
    return out.reshape(t.shape) if t.ndim else float(out[0])


def durrmeyer_op(f, n, x, rule=None):
    """Bernstein-Durrmeyer operator ``M_n(f)(x) = int f(t) K_n(x, t) dt``."""
    n = _check_point(n, x)
    k = np.arange(n + 1)
    coef = beta_expectation(f, k + 1.0, n - k + 1.0, rule)
    return float(np.sum(bernstein_basis(n, k, x) * coef))


def weighted_durrmeyer_op(f, w, n, x, rule=None):
    """Weighted operator ``sum_k p_{n,k}(x) int f p_{n,k} w / int p_{n,k} w``.

    Raises :class:`DegenerateWeightError` when some ``int p_{n,k} w`` falls
    below :data:`DENOMINATOR_FLOOR`.
    """
    n = _check_point(n, x)
    f, w = _as_function(f), _as_function(w)
    if w.min_value() < 0:
        raise DomainError("weight must be non-negative")
    k = np.arange(n + 1)
    a, b = k + 1.0, n - k + 1.0
    den = beta_expectation(w, a, b, rule)
    # int p_{n,k} w = E w(B_{n,k}) / (n + 1)
    small = den / (n + 1) < DENOMINATOR_FLOOR
    if np.any(small):
        bad = k[small]
        raise DegenerateWeightError(
            f"int p_(n,k) w underflows for {bad.size} index(es), first k={bad[0]} (n={n})"
        )
    num = beta_expectation(f * w, a, b, rule)
    return float(np.sum(bernstein_basis(n, k, x) * (num / den)))


def lupas_op(f, n, y, rule=None):
    """Lupas Beta operator: ``E f(B)`` with ``B ~ Beta(ny + 1, n(1 - y) + 1)``."""
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    if not 0 <= y <= 1:
        raise DomainError("y must lie in [0, 1]")
    return float(beta_expectation(f, n * y + 1.0, n * (1.0 - y) + 1.0, rule)[0])


def lupas_moment(n, y, m):
    """``L_n(t^m)(y) = prod_{j<m} (ny + 1 + j) / (n + 2 + j)``."""
    if int(m) != m or m < 0:
        raise DomainError("m must be a non-negative integer")
    out = 1.0
    for j in range(int(m)):
        out *= (n * y + 1 + j) / (n + 2 + j)
    return out
