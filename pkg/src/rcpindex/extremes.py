"""Extreme-point reporting in strips: k topmost/bottommost (or leftmost/
rightmost) points of the dataset inside a query strip.

A segment tree over the strip axis stores, per canonical node, only the k
extreme points each way of the node's subset.  A strip decomposes into
O(log n) canonical nodes, so selecting among their stored extremes answers
the query without touching the rest of the data.

For strips anchored at a fixed line, most points can never be reported:
a point survives only while it stays extreme among everything between it
and the line.  ``candidate_points_filter`` applies that suffix rule, and a
tree built over the filtered set answers all anchored strips exactly.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass

from .geom import HStrip, Point, VStrip


def _extreme_key(axis: str):
    # "v": vertical strips, extremes in y; "h": horizontal strips, extremes in x
    return (lambda p: p.y) if axis == "v" else (lambda p: p.x)


def _strip_key(axis: str):
    return (lambda p: p.x) if axis == "v" else (lambda p: p.y)


def _select(points, k: int, ext, strip):
    """The k highest plus k lowest by ``ext``, deduplicated, highest first."""
    ordered = sorted(points, key=lambda p: (ext(p), strip(p)), reverse=True)
    if len(ordered) <= 2 * k:
        return ordered
    return ordered[:k] + ordered[-k:]


@dataclass
class ExtremeTree:
    """Segment tree of per-node k-extreme subsets."""

    axis: str  # "v" | "h"
    k: int
    pts: list[Point]  # sorted along the strip axis
    keys: list[float]
    ksets: list[list[Point]]  # 1-based heap layout, leaves at [size, 2*size)
    size: int

    def canonical_ksets(self, lo: float, hi: float):
        """K-sets of the canonical nodes covering strip [lo, hi]."""
        left = bisect_left(self.keys, lo) + self.size
        right = bisect_right(self.keys, hi) + self.size
        out = []
        while left < right:
            if left & 1:
                out.append(self.ksets[left])
                left += 1
            if right & 1:
                right -= 1
                out.append(self.ksets[right])
            left >>= 1
            right >>= 1
        return out


def _build_tree(points, k: int, axis: str,
                enforce_distinct: bool = True) -> ExtremeTree:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    strip, ext = _strip_key(axis), _extreme_key(axis)
    pts = sorted(points, key=lambda p: (strip(p), ext(p)))
    if enforce_distinct:
        # distinct coordinate values keep "the k topmost" and the canonical
        # rank ranges unambiguous
        for coord in ("x", "y"):
            vals = sorted(getattr(p, coord) for p in pts)
            for a, b in zip(vals, vals[1:]):
                if a == b:
                    raise ValueError(f"duplicate {coord}-coordinate {a}")
    n = len(pts)
    size = 1
    while size < max(n, 1):
        size *= 2
    ksets: list[list[Point]] = [[] for _ in range(2 * size)]
    for i, p in enumerate(pts):
        ksets[size + i] = [p]
    for u in range(size - 1, 0, -1):
        ksets[u] = _select(ksets[2 * u] + ksets[2 * u + 1], k, ext, strip)
    return ExtremeTree(axis=axis, k=k, pts=pts,
                       keys=[strip(p) for p in pts], ksets=ksets, size=size)


def build_tbep(points, k: int) -> ExtremeTree:
    """Top/bottom extreme points for vertical-strip queries."""
    return _build_tree(points, k, "v")


def build_lrep(points, k: int) -> ExtremeTree:
    """Left/right extreme points for horizontal-strip queries."""
    return _build_tree(points, k, "h")


def query_tbep(tree: ExtremeTree, strip: VStrip | HStrip) -> list[Point]:
    """The k extreme points each way inside the strip, extreme-most first."""
    want = VStrip if tree.axis == "v" else HStrip
    if not isinstance(strip, want):
        raise ValueError(f"axis {tree.axis!r} tree cannot answer "
                         f"{type(strip).__name__} queries")
    gathered: list[Point] = []
    for kset in tree.canonical_ksets(strip.lo, strip.hi):
        gathered.extend(kset)
    return _select(gathered, tree.k, _extreme_key(tree.axis),
                   _strip_key(tree.axis))


def query_lrep(tree: ExtremeTree, strip: HStrip) -> list[Point]:
    return query_tbep(tree, strip)


def candidate_points_filter(points, axis: str, coord: float,
                            k: int) -> list[Point]:
    """Points that can be reported from some strip anchored at the line.

    ``axis`` "v" means the vertical line x = coord (strips are vertical);
    "h" is the symmetric case.  Every anchored strip containing a point
    also contains everything between the point and the line, so a point
    matters only if it is among the k extremes of that span — checked by
    scanning outward from the line with a running order statistic.
    """
    if axis not in ("v", "h"):
        raise ValueError(f"bad axis {axis!r}")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    strip, ext = _strip_key(axis), _extreme_key(axis)
    for p in points:
        if strip(p) == coord:
            raise ValueError(f"point {(p.x, p.y)} lies on the anchor line")
    kept: list[Point] = []
    for side in (lambda p: strip(p) < coord, lambda p: strip(p) > coord):
        group = sorted((p for p in points if side(p)),
                       key=lambda p: (abs(strip(p) - coord), ext(p), strip(p)))
        span: list[float] = []
        for p in group:
            insort(span, ext(p))
            pos = bisect_left(span, ext(p))
            if pos < k or pos >= len(span) - k:
                kept.append(p)
    kept.sort(key=strip)
    return kept
