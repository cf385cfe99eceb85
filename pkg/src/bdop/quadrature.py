"""Composite and adaptive Gauss-Legendre quadrature.

Integrands are vectorized callables ``func(t)`` taking a 1-D array of nodes
and returning an array whose *last* axis runs over the nodes; any leading
axes are integrated simultaneously (e.g. one row per Bernstein index).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureError

__all__ = ["QuadratureRule", "gauss_legendre", "integrate"]

_KINDS = ("gauss-legendre-composite", "adaptive")


@dataclass(frozen=True)
class QuadratureRule:
    """How an integral over an interval is evaluated.

    ``panels`` is the (initial) number of equal panels; ``nodes_per_panel``
    the Gauss-Legendre order per panel.  ``abs_tol`` only matters for the
    adaptive kind, which bisects panels until the local error estimate is
    below its share of the tolerance.
    """

    kind: str = "adaptive"
    panels: int = 8
    nodes_per_panel: int = 16
    abs_tol: float = 1e-12
    max_panels: int = 1 << 15

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown quadrature kind {self.kind!r}")
        if self.panels < 1:
            raise ValueError("panels must be >= 1")
        if not 2 <= self.nodes_per_panel <= 64:
            raise ValueError("nodes_per_panel must lie in [2, 64]")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")


@lru_cache(maxsize=None)
def _leggauss(m):
    nodes, weights = np.polynomial.legendre.leggauss(m)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _batch(func, lo, hi, m):
    # integral over each panel [lo[i], hi[i]]; result shape (..., panels)
    nodes, weights = _leggauss(m)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    t = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    vals = np.asarray(func(t), dtype=float)
    vals = vals.reshape(vals.shape[:-1] + (lo.size, m))
    return (vals @ weights) * half


def gauss_legendre(func, lo, hi, panels=1, nodes_per_panel=16):
    """Composite Gauss-Legendre rule with equal panels on ``[lo, hi]``."""
    edges = np.linspace(lo, hi, panels + 1)
    return _batch(func, edges[:-1], edges[1:], nodes_per_panel).sum(axis=-1)


def _adaptive(func, lo, hi, rule):
    # Local bisection: a panel is accepted once its coarse/bisected estimates
    # agree to within its width-proportional share of abs_tol.
    m = rule.nodes_per_panel
    width = hi - lo
    edges = np.linspace(lo, hi, rule.panels + 1)
    a, b = edges[:-1], edges[1:]
    total = 0.0
    err_total = 0.0
    used = a.size
    while True:
        mid = 0.5 * (a + b)
        coarse = _batch(func, a, b, m)
        fine = _batch(func, a, mid, m) + _batch(func, mid, b, m)
        err = np.abs(fine - coarse)
        if err.ndim > 1:
            err = err.reshape(-1, err.shape[-1]).max(axis=0)
        ok = err <= rule.abs_tol * (b - a) / width
        total = total + fine[..., ok].sum(axis=-1)
        err_total += float(err[ok].sum())
        if ok.all():
            return total, err_total
        bad = ~ok
        used += int(bad.sum())
        if used > rule.max_panels:
            estimate = total + fine[..., bad].sum(axis=-1)
            achieved = err_total + float(err[bad].sum())
            raise QuadratureError(
                f"adaptive quadrature did not reach abs_tol={rule.abs_tol:g} "
                f"(error estimate {achieved:.3g})",
                estimate=estimate,
                error=achieved,
            )
        a = np.concatenate([a[bad], mid[bad]])
        b = np.concatenate([mid[bad], b[bad]])


def integrate(func, lo, hi, rule=None, return_error=False):
    """Integrate ``func`` over ``[lo, hi]`` according to ``rule``.

    The composite kind returns the plain panel sum (its error estimate is the
    difference to the rule with doubled panels).  The adaptive kind raises
    :class:`QuadratureError` when ``max_panels`` is exhausted.
    """
    rule = rule or QuadratureRule()
    if hi <= lo:
        value = np.zeros(np.shape(func(np.array([lo])))[:-1])
        value = value if value.ndim else 0.0
        return (value, 0.0) if return_error else value
    if rule.kind == "gauss-legendre-composite":
        value = gauss_legendre(func, lo, hi, rule.panels, rule.nodes_per_panel)
        if return_error:
            doubled = gauss_legendre(func, lo, hi, 2 * rule.panels, rule.nodes_per_panel)
            return value, float(np.max(np.abs(doubled - value)))
        return value
    value, err = _adaptive(func, lo, hi, rule)
    value = value if np.ndim(value) else float(value)
    return (value, err) if return_error else value
