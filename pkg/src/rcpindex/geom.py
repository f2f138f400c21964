"""Core planar geometry: points, pairs, query ranges, and exact primitives.

Conventions used throughout the package:

* Coordinates are floats and are treated as exact rationals; every comparison
  that could be decided by rounding noise is re-checked exactly.
* A pair of points is always kept in canonical order: the lexicographically
  (x, y)-smaller point first.  Pairs are ordered by squared length, with
  exact tie-breaking by the canonical coordinate tuple, so "the closest pair"
  is a single well-defined pair even for tied distances.
* Query ranges are closed sets; the unbounded side of a three-sided rectangle
  or a quadrant is open at infinity only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence, Union

from ._exact import (
    _EPS_REL,
    cmp_sq_dist,
    line_intersection_x,
    line_value,
    orientation,
    sq_dist_exact,
)


@dataclass(frozen=True, order=True)
class Point:
    x: float
    y: float

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class PointPair:
    """An unordered pair of points stored in canonical lexicographic order."""

    a: Point
    b: Point
    length: float = field(init=False, compare=False)

    def __post_init__(self):
        a, b = self.a, self.b
        if (b.x, b.y) < (a.x, a.y):
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)
        object.__setattr__(self, "length", dist(self.a, self.b))

    def sq_exact(self) -> Fraction:
        return sq_dist_exact(self.a.x, self.a.y, self.b.x, self.b.y)

    def as_tuple(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return (self.a.as_tuple(), self.b.as_tuple())


@dataclass(frozen=True)
class Line:
    """A non-vertical line y = u*x + v."""

    u: float
    v: float

    def value_at(self, x: float) -> float:
        return self.u * x + self.v


@dataclass(frozen=True)
class Wedge:
    """Upward-open wedge of a point pair in the dual plane.

    The wedge of pair (a, b) is the set of dual points of lines lying on or
    below both a and b, i.e. the region on or above both dual lines
    y = a.x * x - a.y and y = b.x * x - b.y.  Lines are stored as (slope,
    shift) with the convention y = slope * x - shift; ``lo`` has the smaller
    slope.  The apex is the exact intersection of the two lines.
    """

    lo: tuple[float, float]
    hi: tuple[float, float]

    def apex_exact(self) -> tuple[Fraction, Fraction]:
        x = line_intersection_x(self.lo[0], self.lo[1], self.hi[0], self.hi[1])
        return (x, line_value(self.lo[0], self.lo[1], x))

    def apex(self) -> Point:
        x, y = self.apex_exact()
        return Point(float(x), float(y))

    def contains(self, q: Point) -> bool:
        return (_point_on_or_above(q.x, q.y, self.lo[0], self.lo[1])
                and _point_on_or_above(q.x, q.y, self.hi[0], self.hi[1]))


@dataclass(frozen=True)
class Quadrant:
    """Closed quadrant; orientation names the direction it opens away from.

    ``SW`` is the set {p : p.x <= vertex.x and p.y <= vertex.y}, and so on.
    """

    orientation: str  # NE, NW, SE, SW
    vertex: Point

    def __post_init__(self):
        if self.orientation not in ("NE", "NW", "SE", "SW"):
            raise ValueError(f"bad quadrant orientation: {self.orientation!r}")


@dataclass(frozen=True)
class VStrip:
    """Closed vertical strip [lo, hi] x R."""

    lo: float
    hi: float


@dataclass(frozen=True)
class HStrip:
    """Closed horizontal strip R x [lo, hi]."""

    lo: float
    hi: float


@dataclass(frozen=True)
class ThreeSided:
    """Three-sided rectangle, unbounded toward ``orientation``.

    down:  [lo, hi] x (-inf, bound]
    up:    [lo, hi] x [bound, +inf)
    left:  (-inf, bound] x [lo, hi]
    right: [bound, +inf) x [lo, hi]
    """

    orientation: str
    lo: float
    hi: float
    bound: float

    def __post_init__(self):
        if self.orientation not in ("down", "up", "left", "right"):
            raise ValueError(f"bad 3-sided orientation: {self.orientation!r}")


@dataclass(frozen=True)
class Rect:
    """Closed axis-parallel rectangle [x1, x2] x [y1, y2]."""

    x1: float
    x2: float
    y1: float
    y2: float


@dataclass(frozen=True)
class Halfplane:
    """Closed halfplane bounded by a non-vertical line."""

    side: str  # above | below
    line: Line

    def __post_init__(self):
        if self.side not in ("above", "below"):
            raise ValueError(f"bad halfplane side: {self.side!r}")


QueryRange = Union[Quadrant, VStrip, HStrip, ThreeSided, Rect, Halfplane]


def dist(a: Point, b: Point) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def canonical_pair(a: Point, b: Point) -> PointPair:
    return PointPair(a, b)


def pair_cmp(p1: PointPair, p2: PointPair) -> int:
    """Total order on pairs: squared length first, canonical tuple second."""
    c = cmp_sq_dist(p1.a.as_tuple(), p1.b.as_tuple(),
                    p2.a.as_tuple(), p2.b.as_tuple())
    if c:
        return c
    t1, t2 = p1.as_tuple(), p2.as_tuple()
    return (t1 > t2) - (t1 < t2)


def sort_pairs(pairs: Iterable[PointPair]) -> list[PointPair]:
    """Sort pairs by (length, canonical order) with exact tie handling."""
    rough = sorted(pairs, key=lambda p: (p.length, p.as_tuple()))
    # Refine runs whose float lengths are too close to trust.
    out: list[PointPair] = []
    i = 0
    while i < len(rough):
        j = i + 1
        si = rough[i].length * rough[i].length
        while j < len(rough):
            sj = rough[j].length * rough[j].length
            if abs(sj - si) > _EPS_REL * (si + sj):
                break
            j += 1
        if j - i > 1:
            out.extend(sorted(rough[i:j], key=cmp_to_key(pair_cmp)))
        else:
            out.append(rough[i])
        i = j
    return out


def _point_on_or_above(px: float, py: float, s: float, t: float) -> bool:
    """Is (px, py) on or above the line y = s*x - t?  Exact."""
    lhs = py
    rhs = s * px - t
    diff = lhs - rhs
    if abs(diff) > _EPS_REL * (abs(lhs) + abs(rhs) + 1e-300):
        return diff > 0
    e = Fraction(py) - (Fraction(s) * Fraction(px) - Fraction(t))
    return e >= 0


def range_contains(rng: QueryRange, p: Point) -> bool:
    """Closed-range membership test, exact on boundaries."""
    if isinstance(rng, Quadrant):
        v = rng.vertex
        if rng.orientation == "SW":
            return p.x <= v.x and p.y <= v.y
        if rng.orientation == "NE":
            return p.x >= v.x and p.y >= v.y
        if rng.orientation == "NW":
            return p.x <= v.x and p.y >= v.y
        return p.x >= v.x and p.y <= v.y
    if isinstance(rng, VStrip):
        return rng.lo <= p.x <= rng.hi
    if isinstance(rng, HStrip):
        return rng.lo <= p.y <= rng.hi
    if isinstance(rng, ThreeSided):
        if rng.orientation == "down":
            return rng.lo <= p.x <= rng.hi and p.y <= rng.bound
        if rng.orientation == "up":
            return rng.lo <= p.x <= rng.hi and p.y >= rng.bound
        if rng.orientation == "left":
            return rng.lo <= p.y <= rng.hi and p.x <= rng.bound
        return rng.lo <= p.y <= rng.hi and p.x >= rng.bound
    if isinstance(rng, Rect):
        return rng.x1 <= p.x <= rng.x2 and rng.y1 <= p.y <= rng.y2
    if isinstance(rng, Halfplane):
        above = _point_on_or_above(p.x, p.y, rng.line.u, -rng.line.v)
        if rng.side == "above":
            return above
        # "below" must admit boundary points too.
        below = not above or _on_line(p, rng.line)
        return below
    raise TypeError(f"unknown range type: {type(rng)!r}")


def _on_line(p: Point, line: Line) -> bool:
    lhs = p.y
    rhs = line.u * p.x + line.v
    if abs(lhs - rhs) > _EPS_REL * (abs(lhs) + abs(rhs) + 1e-300):
        return False
    return Fraction(p.y) == Fraction(line.u) * Fraction(p.x) + Fraction(line.v)


class _Best:
    """Running minimum over point pairs under the exact pair order."""

    __slots__ = ("pair", "_sq")

    def __init__(self):
        self.pair: PointPair | None = None
        self._sq = math.inf

    def offer(self, a: Point, b: Point) -> None:
        dx = a.x - b.x
        dy = a.y - b.y
        sq = dx * dx + dy * dy
        if sq > self._sq * (1.0 + 64.0 * _EPS_REL):
            return
        cand = PointPair(a, b)
        if self.pair is None or pair_cmp(cand, self.pair) < 0:
            self.pair = cand
            self._sq = sq

    def sq_bound(self) -> float:
        return self._sq


def closest_pair_dc(points: Sequence[Point]) -> PointPair | None:
    """Closest pair by divide and conquer, O(n log n).

    Ties in length are broken toward the lexicographically smallest canonical
    pair, so the result is unique.  Returns None for fewer than two points.
    """
    pts = sorted(points, key=lambda p: (p.x, p.y))
    n = len(pts)
    if n < 2:
        return None
    best = _Best()
    _cpdc(pts, 0, n, best)
    return best.pair


def _cpdc(pts: list[Point], lo: int, hi: int, best: _Best) -> list[Point]:
    """Recursive helper; returns pts[lo:hi] sorted by (y, x)."""
    n = hi - lo
    if n <= 16:
        for i in range(lo, hi):
            for j in range(i + 1, hi):
                best.offer(pts[i], pts[j])
        return sorted(pts[lo:hi], key=lambda p: (p.y, p.x))
    mid = (lo + hi) // 2
    xmid = pts[mid].x
    left = _cpdc(pts, lo, mid, best)
    right = _cpdc(pts, mid, hi, best)
    merged = _merge_by_y(left, right)
    # Strip around the split line; guarded float pruning keeps exactness.
    guard = 1.0 + 64.0 * _EPS_REL
    d2 = best.sq_bound() * guard
    strip = [p for p in merged if (p.x - xmid) * (p.x - xmid) <= d2]
    for i, p in enumerate(strip):
        d2 = best.sq_bound() * guard
        for j in range(i + 1, min(i + 9, len(strip))):
            q = strip[j]
            dy = q.y - p.y
            if dy * dy > d2:
                break
            best.offer(p, q)
    return merged


def _merge_by_y(a: list[Point], b: list[Point]) -> list[Point]:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if (a[i].y, a[i].x) <= (b[j].y, b[j].x):
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def closest_pair_brute(points: Sequence[Point]) -> PointPair | None:
    """Quadratic reference closest pair; exact ties like closest_pair_dc."""
    pts = list(points)
    if len(pts) < 2:
        return None
    best = _Best()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            best.offer(pts[i], pts[j])
    return best.pair


def dualize_point(p: Point) -> Line:
    """Dual of point (s, t) is the line y = s*x - t."""
    return Line(p.x, -p.y)


def dualize_line(line: Line) -> Point:
    """Dual of line y = u*x + v is the point (u, -v)."""
    return Point(line.u, -line.v)


def wedge_of_pair(pair: PointPair) -> Wedge:
    """Dual wedge of a pair: all dual points of lines passing on or below
    both endpoints.  Undefined for vertical pairs (equal x)."""
    a, b = pair.a, pair.b
    if a.x == b.x:
        raise ValueError("wedge_of_pair: endpoints share an x-coordinate")
    la = (a.x, a.y)  # y = a.x * x - a.y
    lb = (b.x, b.y)
    if la[0] > lb[0]:
        la, lb = lb, la
    return Wedge(lo=la, hi=lb)


def minimal_range(pair: PointPair, kind: str, orientation: str | None = None) -> QueryRange:
    """Smallest range of the given kind containing both endpoints.

    ``kind`` is one of quadrant, vstrip, hstrip, 3sided, rect; quadrant and
    3sided require an orientation.
    """
    a, b = pair.a, pair.b
    xlo, xhi = min(a.x, b.x), max(a.x, b.x)
    ylo, yhi = min(a.y, b.y), max(a.y, b.y)
    if kind == "quadrant":
        if orientation == "SW":
            return Quadrant("SW", Point(xhi, yhi))
        if orientation == "NE":
            return Quadrant("NE", Point(xlo, ylo))
        if orientation == "NW":
            return Quadrant("NW", Point(xhi, ylo))
        if orientation == "SE":
            return Quadrant("SE", Point(xlo, yhi))
        raise ValueError(f"quadrant needs an orientation, got {orientation!r}")
    if kind == "vstrip":
        return VStrip(xlo, xhi)
    if kind == "hstrip":
        return HStrip(ylo, yhi)
    if kind == "3sided":
        if orientation == "down":
            return ThreeSided("down", xlo, xhi, yhi)
        if orientation == "up":
            return ThreeSided("up", xlo, xhi, ylo)
        if orientation == "left":
            return ThreeSided("left", ylo, yhi, xhi)
        if orientation == "right":
            return ThreeSided("right", ylo, yhi, xlo)
        raise ValueError(f"3sided needs an orientation, got {orientation!r}")
    if kind == "rect":
        return Rect(xlo, xhi, ylo, yhi)
    raise ValueError(f"minimal_range: unknown kind {kind!r}")


def segments_cross(seg1: tuple[Point, Point], seg2: tuple[Point, Point]) -> bool:
    """True iff the closed segments intersect at a point interior to both.

    Touching configurations (shared endpoints, an endpoint lying on the other
    segment) do not count.  Collinear segments cross iff their interiors
    overlap in more than a point.
    """
    p1, q1 = seg1
    p2, q2 = seg2
    o1 = orientation(p1.x, p1.y, q1.x, q1.y, p2.x, p2.y)
    o2 = orientation(p1.x, p1.y, q1.x, q1.y, q2.x, q2.y)
    o3 = orientation(p2.x, p2.y, q2.x, q2.y, p1.x, p1.y)
    o4 = orientation(p2.x, p2.y, q2.x, q2.y, q1.x, q1.y)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and o2 == 0 and o3 == 0 and o4 == 0:
        # All four points collinear: interiors overlap iff the 1-D
        # projections overlap in an interval of positive length.
        if p1.x != q1.x or p2.x != q2.x:
            a1, b1 = sorted((p1.x, q1.x))
            a2, b2 = sorted((p2.x, q2.x))
        else:
            a1, b1 = sorted((p1.y, q1.y))
            a2, b2 = sorted((p2.y, q2.y))
        return max(a1, a2) < min(b1, b2)
    return False
