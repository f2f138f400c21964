"""Quadrant and strip closest-pair indexes backed by dominance location.

Both families admit inclusion-minimal ranges, so the closest pair of any
query range is the minimum-index candidate whose minimal range the query
contains.  Mapping each candidate pair to the extreme corner of its minimal
range turns that test into point dominance: a query quadrant with vertex q
contains the pair iff q dominates the corner, and a strip [x1, x2] contains
it iff the point (x1, x2) lies in a fixed quadrant of the (left, right)
corner.  Candidates sorted by the exact length order then reduce queries to
min-index quadrant location over the corners.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections.abc import Sequence

from .candidates import quadrant_candidates, strip_candidates
from .geom import (
    HStrip,
    Point,
    PointPair,
    Quadrant,
    VStrip,
    minimal_range,
)
from .subdiv import QuadrantOverlay

# Opening of the corner quadrant a query vertex must dominate into, per
# query-family opening.
_OVERLAY_FOR_QUERY = {"SW": "NE", "NE": "SW", "NW": "SE", "SE": "NW"}

#: documented constant for the quadrant candidate-count bound m <= c * n
QUADRANT_ENTRY_FACTOR = 3


@dataclass(frozen=True)
class KeyedEntry:
    """A candidate mapped to the extreme corner of its minimal range."""

    key: Point
    payload: PointPair
    length: float


@dataclass
class DominanceRcp:
    """A built index: length-sorted entries plus a corner overlay."""

    kind: str  # "quadrant" | "strip" | "keyed"
    orientation: str  # opening of the stored corner quadrants
    entries: list[KeyedEntry]
    overlay: QuadrantOverlay
    n: int
    axis: str | None = None
    query_orientation: str | None = None

    @property
    def m(self) -> int:
        return len(self.entries)

    def space_units(self) -> int:
        return self.n + len(self.entries) + self.overlay.space_units

    def locate(self, q: Point) -> KeyedEntry | None:
        i = self.overlay.locate(q)
        return None if i is None else self.entries[i]


def _require_distinct(points: Sequence[Point]) -> None:
    seen = set()
    for p in points:
        t = (p.x, p.y)
        if t in seen:
            raise ValueError(f"duplicate point {t}")
        seen.add(t)


def _build(entries: list[KeyedEntry], orientation: str, kind: str, n: int,
           axis: str | None = None,
           query_orientation: str | None = None) -> DominanceRcp:
    overlay = QuadrantOverlay([e.key for e in entries], orientation)
    return DominanceRcp(kind=kind, orientation=orientation, entries=entries,
                        overlay=overlay, n=n, axis=axis,
                        query_orientation=query_orientation)


def build_quadrant_rcp(points: Sequence[Point], orientation: str,
                       candidates: Sequence[PointPair] | None = None,
                       ) -> DominanceRcp:
    """Index answering closest-pair queries over quadrants of one opening.

    ``candidates`` overrides the built-in enumeration (it must be the exact
    candidate set of the family, sorted by the global length order).
    """
    if orientation not in _OVERLAY_FOR_QUERY:
        raise ValueError(f"bad quadrant orientation {orientation!r}")
    pts = list(points)
    _require_distinct(pts)
    pairs = (quadrant_candidates(pts, orientation)
             if candidates is None else list(candidates))
    assert len(pairs) <= QUADRANT_ENTRY_FACTOR * max(len(pts), 1), \
        "quadrant candidate count exceeded the linear bound"
    entries = [
        KeyedEntry(key=minimal_range(phi, "quadrant", orientation).vertex,
                   payload=phi, length=phi.length)
        for phi in pairs
    ]
    return _build(entries, _OVERLAY_FOR_QUERY[orientation], "quadrant",
                  len(pts), query_orientation=orientation)


def query_quadrant(structure: DominanceRcp, q: Quadrant) -> PointPair | None:
    """Closest pair of the indexed set inside the query quadrant."""
    if structure.kind != "quadrant":
        raise ValueError(f"not a quadrant index: {structure.kind!r}")
    if q.orientation != structure.query_orientation:
        raise ValueError(
            f"query opens {q.orientation!r} but the index answers "
            f"{structure.query_orientation!r}")
    e = structure.locate(q.vertex)
    return None if e is None else e.payload


def build_strip_rcp(points: Sequence[Point], axis: str = "v",
                    candidates: Sequence[PointPair] | None = None,
                    ) -> DominanceRcp:
    """Index answering closest-pair queries over axis-parallel strips.

    A pair with extent [l, r] is inside strip [x1, x2] iff (x1, x2) lies in
    the northwest quadrant of (l, r), so corners go into an NW overlay.
    """
    if axis not in ("v", "h"):
        raise ValueError(f"bad strip axis {axis!r}")
    pts = list(points)
    _require_distinct(pts)
    pairs = (strip_candidates(pts, axis)
             if candidates is None else list(candidates))
    kind = "vstrip" if axis == "v" else "hstrip"
    entries = []
    for phi in pairs:
        rng = minimal_range(phi, kind)
        entries.append(KeyedEntry(key=Point(rng.lo, rng.hi), payload=phi,
                                  length=phi.length))
    return _build(entries, "NW", "strip", len(pts), axis=axis)


def query_strip(structure: DominanceRcp,
                strip: VStrip | HStrip) -> PointPair | None:
    """Closest pair of the indexed set inside the query strip."""
    if structure.kind != "strip":
        raise ValueError(f"not a strip index: {structure.kind!r}")
    want = VStrip if structure.axis == "v" else HStrip
    if not isinstance(strip, want):
        raise ValueError(f"axis {structure.axis!r} index cannot answer "
                         f"{type(strip).__name__} queries")
    e = structure.locate(Point(strip.lo, strip.hi))
    return None if e is None else e.payload


def build_keyed_min_length(entries: Sequence[KeyedEntry],
                           orientation: str) -> DominanceRcp:
    """Generic min-length dominance index over pre-keyed entries.

    Entries must be sorted by length ascending (ties in any fixed order);
    the query returns the payload of the minimum-index entry whose key
    quadrant of the given opening contains the query point.
    """
    entries = list(entries)
    for a, b in zip(entries, entries[1:]):
        if b.length < a.length:
            raise ValueError("entries must be sorted by length")
    return _build(entries, orientation, "keyed", len(entries))


def query_keyed(structure: DominanceRcp, q: Point) -> PointPair | None:
    """Payload of the shortest entry whose key quadrant contains ``q``."""
    if structure.kind != "keyed":
        raise ValueError(f"not a keyed index: {structure.kind!r}")
    e = structure.locate(q)
    return None if e is None else e.payload
