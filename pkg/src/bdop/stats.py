"""Comparing distributions: CDF wrappers, empirical CDFs, Kolmogorov-Smirnov
distance on a declared grid, and convergence tables.
"""

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CdfFunction",
    "ecdf",
    "ks_distance",
    "dkw_bound",
    "ConvergenceTable",
    "assert_decreasing_trend",
]


class CdfFunction:
    """A cumulative distribution function, tagged ``exact`` or ``empirical``.

    Empirical CDFs carry their jump locations (``jumps``) and can report left
    limits; for exact (continuous) CDFs the left limit is the value.
    """

    def __init__(self, func, kind="exact", jumps=None, left=None):
        if kind not in ("exact", "empirical"):
            raise ValueError(f"unknown CDF kind {kind!r}")
        self._func = func
        self._left = left
        self.kind = kind
        self.jumps = None if jumps is None else np.asarray(jumps, dtype=float)

    def __call__(self, z):
        return self._func(np.asarray(z, dtype=float))

    def left_limit(self, z):
        z = np.asarray(z, dtype=float)
        return self._left(z) if self._left is not None else self(z)

    def _value_and_left(self, z):
        value = self(z)
        return value, (self._left(z) if self._left is not None else value)


def ecdf(samples):
    """Right-continuous empirical CDF of ``samples``."""
    xs = np.sort(np.asarray(samples, dtype=float).ravel())
    if xs.size == 0:
        raise ValueError("ecdf of an empty sample")
    m = xs.size

    def value(z):
        return np.searchsorted(xs, z, side="right") / m

    def left(z):
        return np.searchsorted(xs, z, side="left") / m

    return CdfFunction(value, "empirical", jumps=np.unique(xs), left=left)


def ks_distance(a, b, grid):
    """``max |a - b|`` over ``grid`` and, for empirical CDFs, their jump points.

    At jump points both the values and the left limits are compared, so for a
    step CDF against a continuous one the result is the exact supremum.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty grid")
    d = float(np.max(np.abs(a(grid) - b(grid))))
    for cdf in (a, b):
        if cdf.jumps is not None:
            av, al = a._value_and_left(cdf.jumps)
            bv, bl = b._value_and_left(cdf.jumps)
            d = max(d, float(np.max(np.abs(av - bv))), float(np.max(np.abs(al - bl))))
    return d


def dkw_bound(m, delta=0.01):
    """Dvoretzky-Kiefer-Wolfowitz radius ``sqrt(ln(2/delta) / (2m))``."""
    return math.sqrt(math.log(2.0 / delta) / (2.0 * m))


@dataclass
class ConvergenceTable:
    """Rows of ``(n, distance)`` sorted by ``n``, plus a description of the target.

    ``extra`` maps additional column names to per-row values.
    """

    rows: list
    target_description: str = ""
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        order = sorted(range(len(self.rows)), key=lambda i: self.rows[i][0])
        self.rows = [tuple(self.rows[i]) for i in order]
        self.extra = {k: [v[i] for i in order] for k, v in self.extra.items()}
        if any(r[1] < 0 for r in self.rows):
            raise ValueError("distances must be non-negative")

    @property
    def distances(self):
        return [r[1] for r in self.rows]

    def to_csv(self, names=("n", "distance")):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(names) + list(self.extra))
        for i, (n, dist) in enumerate(self.rows):
            writer.writerow([n, f"{dist:.17g}"] + [f"{v[i]:.17g}" for v in self.extra.values()])
        return buf.getvalue()


def assert_decreasing_trend(table, slack=0.0, floor=0.0):
    """True iff each distance is at most the previous one times ``1 + slack``.

    ``floor`` treats successive distances that are both below it as level
    (round-off at that scale has no trend).
    """
    d = table.distances if isinstance(table, ConvergenceTable) else list(table)
    if len(d) < 2:
        raise ValueError("need at least two rows")
    for prev, cur in zip(d, d[1:]):
        if prev <= floor and cur <= floor:
            continue
        if cur > prev * (1.0 + slack):
            return False
    return True
