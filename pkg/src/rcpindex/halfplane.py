"""Halfplane closest-pair index and shortest-contained-segment structure.

Both structures live in the dual plane: a non-vertical line maps to a point
and a point to a line, so "halfplane H contains both endpoints" becomes
"the dual point of H's boundary lies in the pair's wedge".  Walking pairs
in increasing length order and overlaying their wedges, a pair stays a
candidate exactly when its wedge is not already covered — the overlay
returns a witness halfplane proving some query is answered by the new pair.
Queries then reduce to min-index point location among the wedges.

The upward-open wedge machinery serves halfplanes above their boundary
line; halfplanes below are handled by the same construction on the point
set reflected across the x-axis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .candidates import all_pairs_sorted
from .geom import (
    Halfplane,
    Point,
    PointPair,
    dualize_line,
    range_contains,
    segments_cross,
    sort_pairs,
    wedge_of_pair,
)
from .subdiv import WedgeOverlay

#: documented constant for the candidate-count bound m <= c * n
CANDIDATE_FACTOR = 3
#: documented constant for the subdivision size bound |overlay| <= C * m
COMPLEXITY_FACTOR = 16

#: largest pair count for which builds verify non-crossing by default
_AUTO_CROSS_CHECK = 600

#: smallest input size for which the superset walk prefilters pairs
_PREFILTER_MIN_N = 24

#: relative safety margin: only clearly-strict comparisons may discard
_MARGIN = 1e-9


def _reflect(p: Point) -> Point:
    return Point(p.x, -p.y)


def _reflect_pair(pair: PointPair) -> PointPair:
    return PointPair(_reflect(pair.a), _reflect(pair.b))


def _require_distinct_x(points) -> None:
    seen = {}
    for p in points:
        if p.x in seen:
            if seen[p.x] == p.y:
                raise ValueError(f"duplicate point {(p.x, p.y)}")
            raise ValueError(
                f"points {(p.x, seen[p.x])} and {(p.x, p.y)} share an "
                "x-coordinate; shear the input first")
        seen[p.x] = p.y


def _dual_query_point(side: str, line) -> Point:
    # "above y=ux+v" holds both endpoints iff the dual point (u, -v) is in
    # the pair's wedge; the reflected construction for "below" flips both.
    q = dualize_line(line)
    return q if side == "above" else Point(-q.x, -q.y)


def _prefilter_superset(pts, pairs):
    """Drop pairs that provably cannot be candidates for "above" halfplanes.

    A point c strictly between a and b in x and on or above their chord lies
    in every closed upward halfplane containing both; if c is also strictly
    closer than |ab| to each endpoint, the pair can never be the closest one
    of such a halfplane.  All discarding comparisons carry a strict relative
    margin, so borderline pairs fall through to the exact overlay test.
    """
    xs = np.array([p.x for p in pts])
    ys = np.array([p.y for p in pts])
    if not pairs:
        return []
    lo_first = [((p.a, p.b) if p.a.x < p.b.x else (p.b, p.a)) for p in pairs]
    lox = np.array([a.x for a, _ in lo_first])
    loy = np.array([a.y for a, _ in lo_first])
    hix = np.array([b.x for _, b in lo_first])
    hiy = np.array([b.y for _, b in lo_first])
    thr = np.array([p.length for p in pairs]) ** 2 * (1.0 - _MARGIN)
    keep = np.empty(len(pairs), dtype=bool)
    chunk = max(1, (1 << 22) // max(len(pts), 1))
    for s in range(0, len(pairs), chunk):
        e = slice(s, s + chunk)
        clox, cloy = lox[e, None], loy[e, None]
        chix, chiy = hix[e, None], hiy[e, None]
        # strict x-betweenness also rules out the pair's own endpoints
        killers = (xs > clox) & (xs < chix)
        cross = (chix - clox) * (ys - cloy) - (xs - clox) * (chiy - cloy)
        scale = (chix - clox) * (np.abs(ys) + np.abs(cloy)) + \
            np.abs(xs - clox) * (np.abs(chiy) + np.abs(cloy)) + 1e-300
        killers &= cross > _MARGIN * scale
        killers &= (xs - clox) ** 2 + (ys - cloy) ** 2 < thr[e, None]
        killers &= (xs - chix) ** 2 + (ys - chiy) ** 2 < thr[e, None]
        keep[e] = ~killers.any(axis=1)
    return keep.tolist()


def _check_non_crossing(pairs, what: str) -> None:
    segs = [(p.a, p.b) for p in pairs]
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if segments_cross(segs[i], segs[j]):
                raise AssertionError(
                    f"{what} cross: {segs[i]} and {segs[j]}")


@dataclass
class HalfplaneIndex:
    """Candidate pairs of one halfplane side plus their wedge overlay."""

    side: str  # "above" | "below"
    pairs: list[PointPair]  # accepted candidates, length-sorted
    overlay: WedgeOverlay
    n: int
    superset_size: int

    @property
    def m(self) -> int:
        return len(self.pairs)

    @property
    def rejected(self) -> int:
        return self.superset_size - len(self.pairs)

    def space_units(self) -> int:
        return self.n + len(self.pairs) + self.overlay.complexity_counts.total()

    def stats(self) -> dict:
        return {
            "side": self.side,
            "n": self.n,
            "superset_size": self.superset_size,
            "candidates": self.m,
            "rejected": self.rejected,
            "overlay": self.overlay.complexity(),
            "growth_max": max(self.overlay.growth, default=0),
        }


def build_halfplane_rcp(points, side: str = "above", superset=None,
                        overlay_mode: str = "bisect",
                        verify_non_crossing: bool | None = None,
                        ) -> HalfplaneIndex:
    """Build the index for closed halfplanes on one side of their boundary.

    ``superset`` may supply a length-sorted list of pairs known to contain
    every candidate (for structured inputs with small supersets); by default
    all pairs are walked.  ``verify_non_crossing`` re-checks the accepted
    candidates pairwise; default on only for small candidate counts.
    """
    if side not in ("above", "below"):
        raise ValueError(f"bad halfplane side {side!r}")
    pts = list(points)
    _require_distinct_x(pts)
    prefilter = superset is None and len(pts) >= _PREFILTER_MIN_N
    if superset is None:
        superset = all_pairs_sorted(pts)
    else:
        superset = list(superset)
    if side == "below":
        work_pts = [_reflect(p) for p in pts]
        work_pairs = [_reflect_pair(psi) for psi in superset]
    else:
        work_pts, work_pairs = pts, superset
    keep = (_prefilter_superset(work_pts, work_pairs) if prefilter
            else [True] * len(superset))
    overlay = WedgeOverlay(mode=overlay_mode)
    accepted: list[PointPair] = []
    for psi, pair, ok in zip(superset, work_pairs, keep):
        if ok and overlay.insert(wedge_of_pair(pair)) is not None:
            accepted.append(psi)
    n = len(pts)
    m = len(accepted)
    assert m <= CANDIDATE_FACTOR * max(n, 1), \
        "halfplane candidate count exceeded the linear bound"
    assert overlay.complexity_counts.total() <= COMPLEXITY_FACTOR * max(m, 1), \
        "wedge overlay size exceeded the linear bound"
    if verify_non_crossing is None:
        verify_non_crossing = m <= _AUTO_CROSS_CHECK
    if verify_non_crossing:
        _check_non_crossing(accepted, "accepted candidate pairs")
    return HalfplaneIndex(side=side, pairs=accepted, overlay=overlay,
                          n=n, superset_size=len(superset))


def query_halfplane(index: HalfplaneIndex, h: Halfplane) -> PointPair | None:
    """Closest pair of the indexed set inside the closed halfplane."""
    if h.side != index.side:
        raise ValueError(
            f"index answers {index.side!r} halfplanes, got {h.side!r}")
    label = index.overlay.locate(_dual_query_point(index.side, h.line))
    return None if label is None else index.pairs[label]


# -- shortest contained segment ----------------------------------------------


@dataclass
class HRss:
    """Shortest-contained-segment structure over non-crossing segments.

    One wedge overlay per halfplane side; a segment lies in a halfplane iff
    the dual point of the boundary lies in the segment's wedge, so the
    shortest contained segment is again a min-index location, with segments
    whose wedge is covered by shorter ones dropped at build time.
    """

    segments: list[PointPair]  # length-sorted input
    above_pairs: list[PointPair]
    above_overlay: WedgeOverlay
    below_pairs: list[PointPair]
    below_overlay: WedgeOverlay

    def space_units(self) -> int:
        return (len(self.segments)
                + len(self.above_pairs) + len(self.below_pairs)
                + self.above_overlay.complexity_counts.total()
                + self.below_overlay.complexity_counts.total())


def _as_pair(seg) -> PointPair:
    if isinstance(seg, PointPair):
        return seg
    a, b = seg
    return PointPair(a, b)


def build_h_rss(segments, validate: bool | None = None,
                overlay_mode: str = "bisect") -> HRss:
    """Build the structure; ``validate`` controls the quadratic
    non-crossing precondition check (default on for small inputs)."""
    segs = [_as_pair(s) for s in segments]
    for s in segs:
        if s.a.x == s.b.x:
            raise ValueError(
                f"vertical or degenerate segment {s.as_tuple()}; shear the "
                "input first")
    if validate is None:
        validate = len(segs) <= 2048
    if validate:
        raw = [(s.a, s.b) for s in segs]
        for i in range(len(raw)):
            for j in range(i + 1, len(raw)):
                if segments_cross(raw[i], raw[j]):
                    raise ValueError(
                        f"segments cross: {segs[i].as_tuple()} and "
                        f"{segs[j].as_tuple()}")
    segs = sort_pairs(segs)
    above_overlay = WedgeOverlay(mode=overlay_mode)
    below_overlay = WedgeOverlay(mode=overlay_mode)
    above_pairs: list[PointPair] = []
    below_pairs: list[PointPair] = []
    for s in segs:
        if above_overlay.insert(wedge_of_pair(s)) is not None:
            above_pairs.append(s)
        if below_overlay.insert(wedge_of_pair(_reflect_pair(s))) is not None:
            below_pairs.append(s)
    return HRss(segments=segs, above_pairs=above_pairs,
                above_overlay=above_overlay, below_pairs=below_pairs,
                below_overlay=below_overlay)


def query_h_rss(structure: HRss, h: Halfplane) -> PointPair | None:
    """Shortest segment entirely inside the closed halfplane."""
    if h.side == "above":
        overlay, pairs = structure.above_overlay, structure.above_pairs
    else:
        overlay, pairs = structure.below_overlay, structure.below_pairs
    label = overlay.locate(_dual_query_point(h.side, h.line))
    return None if label is None else pairs[label]


def h_rss_scan(segments, h: Halfplane) -> PointPair | None:
    """Reference scan: shortest segment with both endpoints in ``h``."""
    inside = [s for s in (_as_pair(x) for x in segments)
              if range_contains(h, s.a) and range_contains(h, s.b)]
    ordered = sort_pairs(inside)
    return ordered[0] if ordered else None
