"""Piecewise-smooth functions of bounded variation on [0, 1].

A :class:`PiecewiseFunction` is a finite list of open intervals, each carrying
a formula (a polynomial in ``t`` or a closed-form expression), separated by
breakpoints where the function may jump.  One-sided limits at breakpoints are
exact: they are the adjacent formulas evaluated at the breakpoint.

Value convention at a breakpoint: an explicit ``point_values`` entry if
given, otherwise the right limit.  It never affects an integral or a limit.
"""

import math
import re
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import ConfigError, DomainError

__all__ = [
    "PolyPiece",
    "ExprPiece",
    "ProductPiece",
    "JumpData",
    "PiecewiseFunction",
    "parse_piecewise",
]


@dataclass(frozen=True)
class PolyPiece:
    """Polynomial ``c0 + c1 t + c2 t^2 + ...`` in the global variable ``t``."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(float(c) for c in np.atleast_1d(self.coeffs))
        object.__setattr__(self, "coeffs", coeffs or (0.0,))

    def __call__(self, t):
        return P.polyval(np.asarray(t, dtype=float), self.coeffs)

    def critical_points(self, lo, hi):
        if len(self.coeffs) < 3:
            return np.empty(0)
        roots = P.polyroots(P.polyder(self.coeffs))
        roots = roots[np.abs(roots.imag) < 1e-12].real
        return np.sort(roots[(roots > lo) & (roots < hi)])

    def __mul__(self, other):
        if isinstance(other, PolyPiece):
            return PolyPiece(tuple(P.polymul(self.coeffs, other.coeffs)))
        return ProductPiece((self, other))


_EXPR_KINDS = {"exp": np.exp, "sin": np.sin, "cos": np.cos}


@dataclass(frozen=True)
class ExprPiece:
    """``amp * g(rate * t + phase) + offset`` with ``g`` in {exp, sin, cos}."""

    kind: str
    amp: float = 1.0
    rate: float = 1.0
    phase: float = 0.0
    offset: float = 0.0

    def __post_init__(self):
        if self.kind not in _EXPR_KINDS:
            raise ValueError(f"unknown expression kind {self.kind!r}")

    def __call__(self, t):
        g = _EXPR_KINDS[self.kind]
        return self.amp * g(self.rate * np.asarray(t, dtype=float) + self.phase) + self.offset

    def critical_points(self, lo, hi):
        if self.kind == "exp" or self.rate == 0 or self.amp == 0:
            return np.empty(0)
        # extrema of sin at pi/2 + m pi, of cos at m pi (in the inner argument)
        shift = math.pi / 2 if self.kind == "sin" else 0.0
        u_lo, u_hi = sorted((self.rate * lo + self.phase, self.rate * hi + self.phase))
        m = np.arange(math.ceil((u_lo - shift) / math.pi), math.floor((u_hi - shift) / math.pi) + 1)
        t = (shift + m * math.pi - self.phase) / self.rate
        return np.sort(t[(t > lo) & (t < hi)])

    def __mul__(self, other):
        return ProductPiece((self, other))


@dataclass(frozen=True)
class ProductPiece:
    """Pointwise product of pieces (used for ``f * w`` with non-polynomial factors)."""

    factors: tuple

    def __call__(self, t):
        out = np.ones(np.shape(t))
        for g in self.factors:
            out = out * g(t)
        return out

    def critical_points(self, lo, hi):
        # not closed form: a dense grid stands in for the extrema
        return np.linspace(lo, hi, 2049)[1:-1]

    def __mul__(self, other):
        return ProductPiece(self.factors + (other,))


@dataclass(frozen=True)
class JumpData:
    """Left and right limits at a point."""

    left: float
    right: float

    @property
    def ratio(self):
        """``right / left`` (``inf`` when only the left limit vanishes)."""
        if self.left == 0:
            return math.inf if self.right > 0 else math.nan
        return self.right / self.left

    @property
    def jump(self):
        return self.right - self.left


def _as_piece(obj):
    if isinstance(obj, (PolyPiece, ExprPiece, ProductPiece)):
        return obj
    return PolyPiece(tuple(np.atleast_1d(obj)))


@dataclass(frozen=True)
class PiecewiseFunction:
    """Function on [0, 1] given by one formula per open subinterval.

    ``breakpoints`` are strictly increasing points of (0, 1); ``pieces`` has
    one more entry than ``breakpoints``.  Use :meth:`from_intervals` or the
    small constructors (:meth:`constant`, :meth:`polynomial`, :meth:`step`)
    rather than building one directly.
    """

    breakpoints: tuple
    pieces: tuple
    point_values: tuple = field(default=())

    def __post_init__(self):
        bps = tuple(float(b) for b in self.breakpoints)
        if any(not 0 < b < 1 for b in bps):
            raise ValueError("breakpoints must lie in (0, 1)")
        if any(b1 <= b0 for b0, b1 in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        pieces = tuple(_as_piece(p) for p in self.pieces)
        if len(pieces) != len(bps) + 1:
            raise ValueError("need exactly one piece per subinterval")
        pv = dict(self.point_values)
        for b in pv:
            if b not in bps:
                raise ValueError(f"point value given at {b}, which is not a breakpoint")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "point_values", tuple(sorted((float(b), float(v)) for b, v in pv.items())))

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_intervals(cls, intervals, point_values=None):
        """Build from ``[(lo, hi, piece), ...]`` covering [0, 1] in order.

        ``piece`` may be a coefficient sequence (polynomial) or a piece object.
        """
        intervals = sorted(intervals, key=lambda iv: iv[0])
        if not intervals:
            raise ValueError("no intervals given")
        if intervals[0][0] != 0 or intervals[-1][1] != 1:
            raise ValueError("intervals must cover [0, 1]")
        for (lo0, hi0, _), (lo1, _, _) in zip(intervals, intervals[1:]):
            if hi0 != lo1:
                raise ValueError(f"intervals leave a gap or overlap at {hi0} / {lo1}")
        for lo, hi, _ in intervals:
            if not hi > lo:
                raise ValueError(f"empty interval ({lo}, {hi})")
        bps = tuple(iv[1] for iv in intervals[:-1])
        return cls(bps, tuple(iv[2] for iv in intervals), tuple((point_values or {}).items()))

    @classmethod
    def constant(cls, c):
        return cls((), (PolyPiece((c,)),))

    @classmethod
    def polynomial(cls, coeffs):
        return cls((), (PolyPiece(tuple(coeffs)),))

    @classmethod
    def step(cls, at, left=0.0, right=1.0, value=None):
        """``left`` on [0, at), ``right`` on (at, 1]; ``value`` at ``at`` (default right)."""
        pv = () if value is None else ((at, value),)
        return cls((at,), (PolyPiece((left,)), PolyPiece((right,))), pv)

    # -- structure ----------------------------------------------------------

    @property
    def edges(self):
        return (0.0,) + self.breakpoints + (1.0,)

    def intervals(self):
        """``[(lo, hi, piece), ...]`` in increasing order."""
        e = self.edges
        return [(e[i], e[i + 1], p) for i, p in enumerate(self.pieces)]

    @property
    def is_piecewise_polynomial(self):
        return all(isinstance(p, PolyPiece) for p in self.pieces)

    # -- evaluation -----------------------------------------------------------

    def __call__(self, t):
        return self.eval(t)

    def eval(self, t):
        """Value at ``t`` in [0, 1] (breakpoint convention in the module doc)."""
        t = np.asarray(t, dtype=float)
        if np.any(~((t >= 0) & (t <= 1))):
            raise DomainError("PiecewiseFunction is defined on [0, 1]")
        idx = np.searchsorted(np.asarray(self.breakpoints), t, side="right")
        out = np.empty(t.shape)
        for i, piece in enumerate(self.pieces):
            sel = idx == i
            if np.any(sel):
                out[sel] = piece(t[sel])
        for b, v in self.point_values:
            out[t == b] = v
        return out if out.ndim else float(out)

    def one_sided_limits(self, x):
        """Exact ``f(x-)`` and ``f(x+)`` for ``x`` in (0, 1)."""
        if not 0 < x < 1:
            raise DomainError("one-sided limits are taken at interior points")
        i = int(np.searchsorted(np.asarray(self.breakpoints), x, side="left"))
        if i < len(self.breakpoints) and self.breakpoints[i] == x:
            return JumpData(float(self.pieces[i](x)), float(self.pieces[i + 1](x)))
        v = float(self.pieces[i](x))
        return JumpData(v, v)

    def _extreme_points(self):
        # for each interval: endpoints plus interior critical points
        for lo, hi, piece in self.intervals():
            pts = np.concatenate([[lo], piece.critical_points(lo, hi), [hi]])
            yield piece(pts)

    def bound(self):
        """``sup |f|`` over [0, 1] (exact for polynomial and expression pieces)."""
        vals = [np.max(np.abs(v)) for v in self._extreme_points()]
        vals.extend(abs(v) for _, v in self.point_values)
        return float(max(vals))

    def min_value(self):
        """Infimum of the piece formulas over their closed intervals."""
        vals = [np.min(v) for v in self._extreme_points()]
        vals.extend(v for _, v in self.point_values)
        return float(min(vals))

    def total_variation(self):
        """Variation within pieces plus jumps at breakpoints.

        Jumps are counted through the breakpoint value, i.e.
        ``|f(b-) - f(b)| + |f(b) - f(b+)|``.
        """
        tv = sum(float(np.sum(np.abs(np.diff(v)))) for v in self._extreme_points())
        for i, b in enumerate(self.breakpoints):
            lim = self.one_sided_limits(b)
            v = self.eval(b)
            tv += abs(lim.left - v) + abs(v - lim.right)
        return tv

    def __mul__(self, other):
        if not isinstance(other, PiecewiseFunction):
            other = PiecewiseFunction.constant(float(other))
        bps = tuple(sorted(set(self.breakpoints) | set(other.breakpoints)))
        edges = (0.0,) + bps + (1.0,)
        pieces = []
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid = 0.5 * (lo + hi)
            pieces.append(self._piece_at(mid) * other._piece_at(mid))
        explicit = {b for b, _ in self.point_values} | {b for b, _ in other.point_values}
        pv = tuple((b, self.eval(b) * other.eval(b)) for b in sorted(explicit))
        return PiecewiseFunction(bps, tuple(pieces), pv)

    __rmul__ = __mul__

    def _piece_at(self, t):
        return self.pieces[int(np.searchsorted(np.asarray(self.breakpoints), t, side="right"))]


_PIECE_RE = re.compile(r"^piece\(\s*([^,]+)\s*,\s*([^)]+)\s*\)\s*:\s*(.*)$")
_AT_RE = re.compile(r"^at\(\s*([^)]+)\s*\)\s*:\s*(.*)$")


def _number(text, line):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"expected a number, got {text!r}", line) from None


def parse_piecewise(lines):
    """Parse the textual function grammar.

    ``lines`` is an iterable of ``(line_number, text)``.  Recognized forms::

        piece(lo, hi): c0 c1 c2 ...        polynomial c0 + c1 t + c2 t^2 + ...
        piece(lo, hi): sin amp rate phase offset   (also exp, cos; trailing
                                                    parameters optional)
        at(x): v                           value at breakpoint x
    """
    intervals = []
    point_values = {}
    first = None
    for line, text in lines:
        text = text.strip()
        if not text:
            continue
        first = line if first is None else first
        m = _PIECE_RE.match(text)
        if m:
            lo, hi = _number(m.group(1), line), _number(m.group(2), line)
            body = m.group(3).split()
            if not body:
                raise ConfigError("piece has no coefficients", line)
            if body[0] in _EXPR_KINDS:
                params = [_number(b, line) for b in body[1:]]
                if len(params) > 4:
                    raise ConfigError("expression takes at most 4 parameters", line)
                piece = ExprPiece(body[0], *params)
            else:
                piece = PolyPiece(tuple(_number(b, line) for b in body))
            intervals.append((lo, hi, piece))
            continue
        m = _AT_RE.match(text)
        if m:
            point_values[_number(m.group(1), line)] = _number(m.group(2), line)
            continue
        raise ConfigError(f"cannot parse function line {text!r}", line)
    try:
        return PiecewiseFunction.from_intervals(intervals, point_values)
    except ValueError as exc:
        raise ConfigError(str(exc), first) from None
