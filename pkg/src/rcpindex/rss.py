"""Shortest segment fully contained in a 3-sided rectangle query.

A segment fits in, say, a downward query [x1, x2] x (-inf, y] exactly when
its higher endpoint stays at or below y and its x-extent fits the strip
[x1, x2].  Ordering segments by that blocking coordinate, the segments
satisfying the unbounded side form a prefix; a per-prefix keyed structure
then answers the strip part by dominance, so a query is one binary search
plus one strip lookup.  Space is quadratic in the segment count — this is
a small-set building block.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import cmp_to_key

from .geom import Point, PointPair, ThreeSided, pair_cmp, range_contains
from .dominance import (
    DominanceRcp,
    KeyedEntry,
    build_keyed_min_length,
    query_keyed,
)

_ORIENTATIONS = ("down", "up", "left", "right")


def _as_pair(seg) -> PointPair:
    if isinstance(seg, PointPair):
        return seg
    a, b = seg
    return PointPair(a, b)


def _block_key(orientation: str, s: PointPair) -> float:
    # coordinate that must clear the bounded side, signed so that eligible
    # segments always form an ascending-key prefix
    if orientation == "down":
        return max(s.a.y, s.b.y)
    if orientation == "up":
        return -min(s.a.y, s.b.y)
    if orientation == "left":
        return max(s.a.x, s.b.x)
    return -min(s.a.x, s.b.x)


def _extent(orientation: str, s: PointPair) -> tuple[float, float]:
    if orientation in ("down", "up"):
        return (min(s.a.x, s.b.x), max(s.a.x, s.b.x))
    return (min(s.a.y, s.b.y), max(s.a.y, s.b.y))


@dataclass
class URssStructure:
    """Blocking-coordinate keys plus one strip structure per prefix."""

    orientation: str
    segments: list[PointPair]  # sorted by (blocking key, length, endpoints)
    keys: list[float]
    prefixes: list[DominanceRcp]  # prefixes[i] covers segments[: i + 1]

    @property
    def m(self) -> int:
        return len(self.segments)

    def space_units(self) -> int:
        return self.m + sum(p.m for p in self.prefixes)


def build_u_rss(segments, orientation: str = "down") -> URssStructure:
    if orientation not in _ORIENTATIONS:
        raise ValueError(f"bad 3-sided orientation {orientation!r}")
    segs = [_as_pair(s) for s in segments]
    segs.sort(key=cmp_to_key(pair_cmp))
    segs.sort(key=lambda s: _block_key(orientation, s))  # stable: ties stay
    prefixes = []
    for i in range(1, len(segs) + 1):
        entries = sorted(segs[:i], key=cmp_to_key(pair_cmp))
        keyed = [KeyedEntry(Point(*_extent(orientation, s)), s, s.length)
                 for s in entries]
        prefixes.append(build_keyed_min_length(keyed, "NW"))
    return URssStructure(orientation=orientation, segments=segs,
                         keys=[_block_key(orientation, s) for s in segs],
                         prefixes=prefixes)


def query_u_rss(structure: URssStructure, u: ThreeSided) -> PointPair | None:
    """Shortest stored segment fully inside the 3-sided range."""
    if u.orientation != structure.orientation:
        raise ValueError(
            f"structure answers {structure.orientation!r} ranges, got "
            f"{u.orientation!r}")
    sign = 1.0 if u.orientation in ("down", "left") else -1.0
    i = bisect_right(structure.keys, sign * u.bound)
    if i == 0:
        return None
    return query_keyed(structure.prefixes[i - 1], Point(u.lo, u.hi))


def u_rss_scan(segments, u: ThreeSided) -> PointPair | None:
    """Reference scan: shortest segment with both endpoints in ``u``."""
    inside = [s for s in (_as_pair(x) for x in segments)
              if range_contains(u, s.a) and range_contains(u, s.b)]
    if not inside:
        return None
    return min(inside, key=cmp_to_key(pair_cmp))
