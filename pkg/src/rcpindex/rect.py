"""Rectangle closest-pair indexes over a two-level range tree.

The skeleton shared by every variant is a balanced primary tree over the
points by x with, at each internal primary node, a secondary tree by y.
A query rectangle R has a splitting node u in the primary tree and a
splitting node v in u's secondary tree; the split lines of u and v cut R
into four sub-rectangles, each of which loses the two sides on the split
lines and becomes a quadrant query against one of four quadrant
closest-pair structures stored at v.  The shortest of those four answers,
phi, is correct unless the true closest pair straddles a split line; such
a pair lives inside a slab of half-width len(phi) around the line
(``CombineState`` carries both slabs), and the variants differ only in how
they resolve the slabs:

* ``RectD1`` queries auxiliary one-dimensional trees whose nodes carry a
  strip index plus a k-extreme tree.  Deterministic O(n log^2 n) space.
* ``RectD2`` stores, at every secondary node, anchored k-extreme trees
  and shortest-segment indexes over the candidate pairs that straddle the
  node's split lines.  Much smaller on typical data, quadratic in the
  worst case.

``build_d`` builds D2 first, compares its measured ``space_units`` against
``n * log2(n)**2`` (with a small-input floor), and rebuilds as D1 when the
data turns out adversarial, so the result never exceeds the D1 budget.
``space_units`` counts one unit per tree node, per point slot in a node's
sorted array, per stored candidate pair, per stored point of an anchored
extreme tree, and per segment or prefix entry of a straddle index; the
per-structure key arrays and overlay levels are linear in those counts
and are represented by them rather than counted again.

D2's slab sub-structures are only attached at secondary nodes whose
canonical subset has at least ``scan_limit`` points; a query whose
splitting node is smaller falls back to a direct closest-pair scan of the
node's slice, which costs O(scan_limit log scan_limit) = O(1) and keeps
the stored extras proportional to the data instead of to the constant k.

Subsets and split sides are defined by rank, with coordinate ties broken
by the other coordinate, so duplicate x or y values need no special
handling anywhere in this module (points must merely be pairwise
distinct).
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .candidates import three_sided_candidates
from .dominance import (DominanceRcp, _require_distinct, build_quadrant_rcp,
                        build_strip_rcp, query_quadrant, query_strip)
from .extremes import (ExtremeTree, _build_tree as _build_extreme_tree,
                       candidate_points_filter, query_tbep)
from .geom import (HStrip, Point, PointPair, Quadrant, Rect, ThreeSided,
                   VStrip, closest_pair_dc, pair_cmp, range_contains)
from .rss import URssStructure, build_u_rss, query_u_rss

#: extreme points kept per side when repairing a slab; the gap between the
#: endpoints of a slab's closest pair never exceeds this many points
ADJACENT_GAP_LIMIT = 100

#: minimum space budget for the adaptive chooser, so tiny inputs always
#: keep the D2 arm (n * log2(n)**2 is smaller than any real structure
#: below roughly this many units)
THRESHOLD_FLOOR = 512

#: smallest secondary-node subset that stores the D2 slab sub-structures;
#: queries splitting at a smaller node scan the node's slice directly
SCAN_LIMIT = 512

# quadrant-structure opening per tree quadrant: each subset stores the
# structure that opens back toward the crossing of the split lines
_QUAD_ORIENT = {"ul": "SE", "ur": "SW", "ll": "NE", "lr": "NW"}


class _SNode:
    """Secondary-tree node over the y-ordered slice [lo, hi) of S(u)."""

    __slots__ = ("lo", "hi", "beta", "lower", "upper", "quads", "anchored",
                 "straddle")

    def __init__(self, lo: int, hi: int):
        self.lo = lo
        self.hi = hi
        self.beta = 0.0
        self.lower: _SNode | None = None
        self.upper: _SNode | None = None
        self.quads: dict[str, DominanceRcp | None] | None = None
        self.anchored: dict[str, ExtremeTree | None] | None = None
        self.straddle: dict[str, URssStructure | None] | None = None


class _PNode:
    """Primary-tree node over the x-ordered slice [lo, hi) of the input."""

    __slots__ = ("lo", "hi", "alpha", "left", "right", "spts", "ykeys",
                 "sroot")

    def __init__(self, lo: int, hi: int):
        self.lo = lo
        self.hi = hi
        self.alpha = 0.0
        self.left: _PNode | None = None
        self.right: _PNode | None = None
        self.spts: list[Point] | None = None
        self.ykeys: list[float] | None = None
        self.sroot: _SNode | None = None


@dataclass
class RangeTree2D:
    """Two-level tree with quadrant structures at secondary nodes."""

    n: int
    k: int
    pts: list[Point]  # sorted by (x, y)
    xkeys: list[float]
    root: _PNode | None
    extras: bool  # whether the D2 slab sub-structures are attached
    scan_limit: int = SCAN_LIMIT
    nodes_primary: int = 0
    nodes_secondary: int = 0


@dataclass
class CombineState:
    """Quadrant answer plus the slabs still to be repaired.

    ``phi`` is the shortest pair found entirely inside one tree quadrant
    of the rectangle (None when every quadrant holds at most one point, in
    which case ``delta`` is infinite and both slab rectangles degenerate
    to the query rectangle itself).  ``r_alpha``/``r_beta`` are the
    intersections of the query rectangle with the vertical/horizontal
    slabs ``p_alpha``/``p_beta`` around the split lines.
    """

    rect: Rect
    alpha: float
    beta: float
    phi: PointPair | None
    delta: float
    p_alpha: VStrip
    p_beta: HStrip
    r_alpha: Rect
    r_beta: Rect
    phi_alpha: PointPair | None = None
    phi_beta: PointPair | None = None
    node: _SNode | None = None
    pnode: _PNode | None = None


def _min_pair(pairs) -> PointPair | None:
    best = None
    for p in pairs:
        if p is not None and (best is None or pair_cmp(p, best) < 0):
            best = p
    return best


def _maybe_quadrant(pts: list[Point], orientation: str) -> DominanceRcp | None:
    return build_quadrant_rcp(pts, orientation) if len(pts) >= 2 else None


def _anchored_tree(pts: list[Point], axis: str, coord: float,
                   k: int) -> ExtremeTree | None:
    """k-extreme tree over the points that can ever be reported from a
    strip anchored at the split line (points on the line always can)."""
    if not pts:
        return None
    strip = (lambda p: p.x) if axis == "v" else (lambda p: p.y)
    kept = [p for p in pts if strip(p) == coord]
    off = [p for p in pts if strip(p) != coord]
    if off:
        kept.extend(candidate_points_filter(off, axis, coord, k))
    return _build_extreme_tree(kept, k, axis, enforce_distinct=False)


def _straddle_rss(pts_side: list[Point], orientation: str,
                  other_half: set[Point]) -> URssStructure | None:
    """Shortest-segment index over the 3-sided candidate pairs of one side
    of a split line that straddle the perpendicular split line."""
    cands = three_sided_candidates(pts_side, orientation)
    cross = [c for c in cands
             if (c.a in other_half) != (c.b in other_half)]
    return build_u_rss(cross, orientation) if cross else None


def build_common_tree(points, k: int = ADJACENT_GAP_LIMIT,
                      extras: bool = False,
                      scan_limit: int = SCAN_LIMIT) -> RangeTree2D:
    """The shared two-level tree.

    With ``extras`` the anchored extreme trees and straddling-pair indexes
    used by the D2 query path are attached at every secondary node holding
    at least ``scan_limit`` points (``scan_limit=0``: at every node).
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    pts = sorted(points, key=lambda p: (p.x, p.y))
    _require_distinct(pts)
    tree = RangeTree2D(n=len(pts), k=k, pts=pts, xkeys=[p.x for p in pts],
                       root=None, extras=extras, scan_limit=scan_limit)
    if pts:
        tree.root = _build_primary(tree, 0, len(pts))
    return tree


def _build_primary(tree: RangeTree2D, lo: int, hi: int) -> _PNode:
    node = _PNode(lo, hi)
    tree.nodes_primary += 1
    if hi - lo == 1:
        node.alpha = tree.pts[lo].x
        return node
    mid = (lo + hi) // 2
    node.alpha = (tree.pts[mid - 1].x + tree.pts[mid].x) / 2.0
    left_half = set(tree.pts[lo:mid])
    node.left = _build_primary(tree, lo, mid)
    node.right = _build_primary(tree, mid, hi)
    spts = sorted(tree.pts[lo:hi], key=lambda p: (p.y, p.x))
    node.spts = spts
    node.ykeys = [p.y for p in spts]
    node.sroot = _build_secondary(tree, spts, 0, len(spts), node.alpha,
                                  left_half)
    return node


def _build_secondary(tree: RangeTree2D, spts: list[Point], lo: int, hi: int,
                     alpha: float, left_half: set[Point]) -> _SNode:
    node = _SNode(lo, hi)
    tree.nodes_secondary += 1
    if hi - lo == 1:
        node.beta = spts[lo].y
        return node
    mid = (lo + hi) // 2
    node.beta = (spts[mid - 1].y + spts[mid].y) / 2.0
    node.lower = _build_secondary(tree, spts, lo, mid, alpha, left_half)
    node.upper = _build_secondary(tree, spts, mid, hi, alpha, left_half)
    below = spts[lo:mid]
    above = spts[mid:hi]
    node.quads = {
        "ul": _maybe_quadrant([p for p in above if p in left_half], "SE"),
        "ur": _maybe_quadrant([p for p in above if p not in left_half], "SW"),
        "ll": _maybe_quadrant([p for p in below if p in left_half], "NE"),
        "lr": _maybe_quadrant([p for p in below if p not in left_half], "NW"),
    }
    if tree.extras and hi - lo >= tree.scan_limit:
        lf = [p for p in spts[lo:hi] if p in left_half]
        rt = [p for p in spts[lo:hi] if p not in left_half]
        below_half = set(below)
        node.anchored = {
            "up": _anchored_tree(above, "v", alpha, tree.k),
            "dn": _anchored_tree(below, "v", alpha, tree.k),
            "lf": _anchored_tree(lf, "h", node.beta, tree.k),
            "rt": _anchored_tree(rt, "h", node.beta, tree.k),
        }
        node.straddle = {
            "up": _straddle_rss(above, "down", left_half),
            "dn": _straddle_rss(below, "up", left_half),
            "lf": _straddle_rss(lf, "right", below_half),
            "rt": _straddle_rss(rt, "left", below_half),
        }
    return node


def _split_primary(tree: RangeTree2D, rect: Rect) -> _PNode | None:
    lo = bisect_left(tree.xkeys, rect.x1)
    hi = bisect_right(tree.xkeys, rect.x2)
    if hi - lo < 2:
        return None  # at most one point in the x-slab
    node = tree.root
    while node.hi - node.lo > 1:
        mid = (node.lo + node.hi) // 2
        if hi <= mid:
            node = node.left
        elif lo >= mid:
            node = node.right
        else:
            return node
    return None


def _split_secondary(pnode: _PNode, rect: Rect) -> _SNode | None:
    lo = bisect_left(pnode.ykeys, rect.y1)
    hi = bisect_right(pnode.ykeys, rect.y2)
    if hi - lo < 2:
        return None
    node = pnode.sroot
    while node.hi - node.lo > 1:
        mid = (node.lo + node.hi) // 2
        if hi <= mid:
            node = node.lower
        elif lo >= mid:
            node = node.upper
        else:
            return node
    return None


def _quad_answers(v: _SNode, r: Rect) -> list[PointPair | None]:
    """The four per-quadrant closest pairs of S(v) clipped to r.

    Each quadrant query drops the two sides of r that lie on (or beyond)
    the split lines; membership of the subset on the far side of a split
    line makes the dropped constraints implicit.
    """
    out = []
    for side, quad in (("ul", Quadrant("SE", Point(r.x1, r.y2))),
                       ("ur", Quadrant("SW", Point(r.x2, r.y2))),
                       ("ll", Quadrant("NE", Point(r.x1, r.y1))),
                       ("lr", Quadrant("NW", Point(r.x2, r.y1)))):
        st = v.quads[side]
        out.append(None if st is None else query_quadrant(st, quad))
    return out


def query_phi(tree: RangeTree2D, rect: Rect) -> CombineState | None:
    """Quadrant-decomposition pass over the common tree.

    Returns None when the splitting nodes certify that the rectangle holds
    at most one point (no closest pair exists); otherwise the combine
    state, whose ``phi`` still ignores pairs straddling the split lines.
    """
    if not isinstance(rect, Rect):
        raise ValueError(f"rectangle query expected, got "
                         f"{type(rect).__name__}")
    if tree.root is None or rect.x1 > rect.x2 or rect.y1 > rect.y2:
        return None
    u = _split_primary(tree, rect)
    if u is None:
        return None
    v = _split_secondary(u, rect)
    if v is None:
        return None
    phi = _min_pair(_quad_answers(v, rect))
    delta = phi.length if phi is not None else math.inf
    alpha, beta = u.alpha, v.beta
    r_alpha = Rect(max(rect.x1, alpha - delta), min(rect.x2, alpha + delta),
                   rect.y1, rect.y2)
    r_beta = Rect(rect.x1, rect.x2,
                  max(rect.y1, beta - delta), min(rect.y2, beta + delta))
    return CombineState(rect=rect, alpha=alpha, beta=beta, phi=phi,
                        delta=delta,
                        p_alpha=VStrip(alpha - delta, alpha + delta),
                        p_beta=HStrip(beta - delta, beta + delta),
                        r_alpha=r_alpha, r_beta=r_beta, node=v, pnode=u)


# ---------------------------------------------------------------------------
# D1: slab repair through auxiliary one-dimensional trees


@dataclass
class _Tree1D:
    """Segment tree over one coordinate; every node holds a strip index
    and a k-extreme tree over its canonical subset."""

    keyed_by: str  # "y" | "x"
    keys: list[float]
    size: int
    counts: list[int]
    strips: list[DominanceRcp | None]
    extremes: list[ExtremeTree | None]


def _build_tree1d(points: list[Point], keyed_by: str, k: int) -> _Tree1D:
    if keyed_by == "y":
        pts = sorted(points, key=lambda p: (p.y, p.x))
        keys = [p.y for p in pts]
        axis = "v"  # answers vertical strips, extremes in y
    else:
        pts = sorted(points, key=lambda p: (p.x, p.y))
        keys = [p.x for p in pts]
        axis = "h"
    n = len(pts)
    size = 1
    while size < max(n, 1):
        size *= 2
    counts = [0] * (2 * size)
    lo_arr = [0] * (2 * size)
    hi_arr = [0] * (2 * size)
    for i in range(size, 2 * size):
        lo_arr[i] = min(i - size, n)
        hi_arr[i] = min(i - size + 1, n)
    for u in range(size - 1, 0, -1):
        lo_arr[u] = lo_arr[2 * u]
        hi_arr[u] = hi_arr[2 * u + 1]
    strips: list[DominanceRcp | None] = [None] * (2 * size)
    extremes: list[ExtremeTree | None] = [None] * (2 * size)
    for u in range(1, 2 * size):
        sub = pts[lo_arr[u]:hi_arr[u]]
        counts[u] = len(sub)
        if len(sub) >= 2:
            strips[u] = build_strip_rcp(sub, axis)
        if sub:
            extremes[u] = _build_extreme_tree(sub, k, axis,
                                              enforce_distinct=False)
    return _Tree1D(keyed_by=keyed_by, keys=keys, size=size, counts=counts,
                   strips=strips, extremes=extremes)


def _canonical_nodes(t: _Tree1D, lo: float, hi: float) -> list[int]:
    left = bisect_left(t.keys, lo) + t.size
    right = bisect_right(t.keys, hi) + t.size
    out = []
    while left < right:
        if left & 1:
            out.append(left)
            left += 1
        if right & 1:
            right -= 1
            out.append(right)
        left >>= 1
        right >>= 1
    return out


def _slab_repair_1d(t: _Tree1D, slab: Rect) -> PointPair | None:
    """Closest pair inside a slab rectangle.

    The slab decomposes into canonical nodes along the keyed coordinate;
    pairs inside one node come from its strip index, pairs spanning nodes
    have few points between their endpoints and therefore show up among
    the k extremes each node reports for the perpendicular strip.
    """
    if t.keyed_by == "y":
        nodes = _canonical_nodes(t, slab.y1, slab.y2)
        strip = VStrip(slab.x1, slab.x2)
    else:
        nodes = _canonical_nodes(t, slab.x1, slab.x2)
        strip = HStrip(slab.y1, slab.y2)
    best = None
    gathered: list[Point] = []
    for idx in nodes:
        st = t.strips[idx]
        if st is not None:
            r = query_strip(st, strip)
            if r is not None and (best is None or pair_cmp(r, best) < 0):
                best = r
        et = t.extremes[idx]
        if et is not None:
            gathered.extend(query_tbep(et, strip))
    spanning = closest_pair_dc(gathered)
    if spanning is not None and (best is None
                                 or pair_cmp(spanning, best) < 0):
        best = spanning
    return best


@dataclass
class RectD1:
    """Worst-case variant: common tree plus two auxiliary 1D trees."""

    tree: RangeTree2D
    by_y: _Tree1D
    by_x: _Tree1D
    k: int

    @property
    def n(self) -> int:
        return self.tree.n


def build_d1(points, k: int = ADJACENT_GAP_LIMIT) -> RectD1:
    tree = build_common_tree(points, k, extras=False)
    return RectD1(tree=tree, by_y=_build_tree1d(tree.pts, "y", k),
                  by_x=_build_tree1d(tree.pts, "x", k), k=k)


def query_d1(structure: RectD1, rect: Rect) -> PointPair | None:
    """Closest pair of the indexed set inside the rectangle."""
    cs = query_phi(structure.tree, rect)
    if cs is None:
        return None
    cs.phi_alpha = _slab_repair_1d(structure.by_y, cs.r_alpha)
    cs.phi_beta = _slab_repair_1d(structure.by_x, cs.r_beta)
    return _min_pair([cs.phi, cs.phi_alpha, cs.phi_beta])


# ---------------------------------------------------------------------------
# D2: slab repair from the sub-structures stored at the splitting node


def _near_extremes(tree: ExtremeTree | None, strip, clip: Rect,
                   k: int, low_side: bool) -> list[Point]:
    """The k reported points nearest the split line, clipped to the slab
    rectangle (reported points beyond the slab's far side are dropped;
    clipping keeps the nearest ones intact)."""
    if tree is None:
        return []
    pts = [p for p in query_tbep(tree, strip) if range_contains(clip, p)]
    if tree.axis == "v":
        pts.sort(key=lambda p: (p.y, p.x))
    else:
        pts.sort(key=lambda p: (p.x, p.y))
    return pts[:k] if low_side else pts[-k:]


def _repair_alpha(v: _SNode, cs: CombineState, k: int) -> PointPair | None:
    ra = cs.r_alpha
    strip = VStrip(ra.x1, ra.x2)
    up = _near_extremes(v.anchored["up"], strip, ra, k, low_side=True)
    dn = _near_extremes(v.anchored["dn"], strip, ra, k, low_side=False)
    answers = [closest_pair_dc(up + dn)]
    answers.extend(_quad_answers(v, ra))
    if v.straddle["up"] is not None:
        answers.append(query_u_rss(v.straddle["up"],
                                   ThreeSided("down", ra.x1, ra.x2, ra.y2)))
    if v.straddle["dn"] is not None:
        answers.append(query_u_rss(v.straddle["dn"],
                                   ThreeSided("up", ra.x1, ra.x2, ra.y1)))
    return _min_pair(answers)


def _repair_beta(v: _SNode, cs: CombineState, k: int) -> PointPair | None:
    rb = cs.r_beta
    strip = HStrip(rb.y1, rb.y2)
    lf = _near_extremes(v.anchored["lf"], strip, rb, k, low_side=False)
    rt = _near_extremes(v.anchored["rt"], strip, rb, k, low_side=True)
    answers = [closest_pair_dc(lf + rt)]
    answers.extend(_quad_answers(v, rb))
    if v.straddle["lf"] is not None:
        answers.append(query_u_rss(v.straddle["lf"],
                                   ThreeSided("right", rb.y1, rb.y2, rb.x1)))
    if v.straddle["rt"] is not None:
        answers.append(query_u_rss(v.straddle["rt"],
                                   ThreeSided("left", rb.y1, rb.y2, rb.x2)))
    return _min_pair(answers)


@dataclass
class RectD2:
    """Average-case variant: everything hangs off the common tree."""

    tree: RangeTree2D
    k: int

    @property
    def n(self) -> int:
        return self.tree.n


def build_d2(points, k: int = ADJACENT_GAP_LIMIT,
             scan_limit: int = SCAN_LIMIT) -> RectD2:
    return RectD2(tree=build_common_tree(points, k, extras=True,
                                         scan_limit=scan_limit), k=k)


def query_d2(structure: RectD2, rect: Rect) -> PointPair | None:
    """Closest pair of the indexed set inside the rectangle."""
    cs = query_phi(structure.tree, rect)
    if cs is None:
        return None
    v = cs.node
    if v.hi - v.lo < structure.tree.scan_limit:
        # the splitting node is below the sub-structure cutoff: its slice
        # contains every point of the rectangle, so scan it directly
        inside = [p for p in cs.pnode.spts[v.lo:v.hi]
                  if range_contains(rect, p)]
        return closest_pair_dc(inside)
    cs.phi_alpha = _repair_alpha(v, cs, structure.k)
    cs.phi_beta = _repair_beta(v, cs, structure.k)
    return _min_pair([cs.phi, cs.phi_alpha, cs.phi_beta])


# ---------------------------------------------------------------------------
# adaptive chooser


def d_threshold(n: int) -> float:
    """Space budget separating the two arms: n * log2(n)^2 units,
    floored at THRESHOLD_FLOOR so tiny inputs keep the D2 arm."""
    if n < 2:
        return float(THRESHOLD_FLOOR)
    return max(float(THRESHOLD_FLOOR), n * math.log2(n) ** 2)


@dataclass
class RectD:
    """Adaptive index: the D2 arm unless its measured space crossed the
    budget during construction, in which case only the D1 arm is kept."""

    choice: str  # "d1" | "d2"
    structure: RectD1 | RectD2
    n: int
    threshold: float
    d2_units: int
    k: int


def build_d(points, k: int = ADJACENT_GAP_LIMIT,
            scan_limit: int = SCAN_LIMIT) -> RectD:
    d2 = build_d2(points, k, scan_limit)
    units = space_units(d2)
    thr = d_threshold(d2.n)
    if units >= thr:
        d1 = build_d1(d2.tree.pts, k)
        return RectD(choice="d1", structure=d1, n=d1.n, threshold=thr,
                     d2_units=units, k=k)
    return RectD(choice="d2", structure=d2, n=d2.n, threshold=thr,
                 d2_units=units, k=k)


def query_d(structure: RectD, rect: Rect) -> PointPair | None:
    if structure.choice == "d1":
        return query_d1(structure.structure, rect)
    return query_d2(structure.structure, rect)


# ---------------------------------------------------------------------------
# space accounting and reports


def _units_dominance(st: DominanceRcp | None) -> int:
    return 0 if st is None else st.m


def _units_extreme(t: ExtremeTree | None) -> int:
    return 0 if t is None else len(t.pts)


def _units_urss(r: URssStructure | None) -> int:
    return 0 if r is None else r.space_units()


def _units_snode(v: _SNode) -> int:
    total = 1
    if v.lower is None:
        return total
    total += sum(_units_dominance(st) for st in v.quads.values())
    if v.anchored is not None:
        total += sum(_units_extreme(t) for t in v.anchored.values())
    if v.straddle is not None:
        total += sum(_units_urss(r) for r in v.straddle.values())
    return total + _units_snode(v.lower) + _units_snode(v.upper)


def _units_pnode(u: _PNode) -> int:
    total = 1
    if u.left is None:
        return total
    total += len(u.spts)  # the node's y-sorted array
    total += _units_snode(u.sroot)
    return total + _units_pnode(u.left) + _units_pnode(u.right)


def _units_tree1d(t: _Tree1D) -> int:
    total = 0
    for idx in range(1, 2 * t.size):
        if t.counts[idx]:
            total += 1
            total += _units_dominance(t.strips[idx])
            total += _units_extreme(t.extremes[idx])
    return total


def space_units(structure) -> int:
    """Deterministic space accounting shared by every rectangle variant.

    The convention counts what each structure stores, once:

    * one unit per input point and per primary/secondary tree node;
    * one unit per point slot in a primary node's y-sorted array;
    * one unit per candidate pair stored by a quadrant or strip index;
    * one unit per point stored by an anchored or canonical extreme tree;
    * one unit per segment and per prefix entry of a straddle index.

    Auxiliary arrays whose length is a fixed multiple of those counts
    (bisection keys, dominance overlay levels, extreme-tree k-lists) are
    represented by the counts and not charged again, so the number
    reflects how the structure scales rather than per-implementation
    constant factors.  The straddle indexes keep one dominance structure
    per prefix of their segment list — the term that grows quadratically
    on adversarial inputs — and are charged in full.
    """
    if isinstance(structure, RangeTree2D):
        base = structure.n
        return base + (_units_pnode(structure.root) if structure.root else 0)
    if isinstance(structure, RectD2):
        return space_units(structure.tree)
    if isinstance(structure, RectD1):
        return (space_units(structure.tree) + _units_tree1d(structure.by_y)
                + _units_tree1d(structure.by_x))
    if isinstance(structure, RectD):
        return space_units(structure.structure)
    raise TypeError(f"no space accounting for {type(structure).__name__}")


def _tree_stats(tree: RangeTree2D) -> dict:
    per_level: list[int] = []
    counters = {"quad_structures": 0, "quad_entries": 0,
                "anchored_trees": 0, "anchored_points": 0,
                "straddle_indexes": 0, "straddle_segments": 0,
                "straddle_prefix_entries": 0}

    def walk_s(v: _SNode) -> None:
        if v.lower is None:
            return
        for st in v.quads.values():
            if st is not None:
                counters["quad_structures"] += 1
                counters["quad_entries"] += st.m
        if v.anchored is not None:
            for t in v.anchored.values():
                if t is not None:
                    counters["anchored_trees"] += 1
                    counters["anchored_points"] += len(t.pts)
        if v.straddle is not None:
            for r in v.straddle.values():
                if r is not None:
                    counters["straddle_indexes"] += 1
                    counters["straddle_segments"] += r.m
                    counters["straddle_prefix_entries"] += (
                        r.space_units() - r.m)
        walk_s(v.lower)
        walk_s(v.upper)

    def walk_p(u: _PNode, depth: int) -> None:
        while len(per_level) <= depth:
            per_level.append(0)
        per_level[depth] += 1
        if u.left is None:
            return
        walk_s(u.sroot)
        walk_p(u.left, depth + 1)
        walk_p(u.right, depth + 1)

    if tree.root is not None:
        walk_p(tree.root, 0)
    return {"n": tree.n, "k": tree.k, "extras": tree.extras,
            "scan_limit": tree.scan_limit,
            "primary_nodes": tree.nodes_primary,
            "secondary_nodes": tree.nodes_secondary,
            "primary_nodes_per_level": per_level,
            **counters, "space_units": space_units(tree)}


def stats(structure) -> dict:
    """JSON-serializable report on node counts and sub-structure sizes."""
    if isinstance(structure, RangeTree2D):
        return {"kind": "common-tree", **_tree_stats(structure)}
    if isinstance(structure, RectD2):
        return {"kind": "rect-d2", **_tree_stats(structure.tree)}
    if isinstance(structure, RectD1):
        return {"kind": "rect-d1", **_tree_stats(structure.tree),
                "aux_tree_units": {"by_y": _units_tree1d(structure.by_y),
                                   "by_x": _units_tree1d(structure.by_x)},
                "space_units": space_units(structure)}
    if isinstance(structure, RectD):
        inner = stats(structure.structure)
        return {"kind": "rect-d", "choice": structure.choice,
                "threshold": structure.threshold,
                "d2_units": structure.d2_units, **{k: v
                for k, v in inner.items() if k != "kind"}}
    raise TypeError(f"no stats for {type(structure).__name__}")
