"""Brute-force ground truth for range closest-pair structures.

Everything here is deliberately simple and quadratic-or-worse: these
functions define what the index structures are tested against, so they favor
obviousness over speed.  All boundary decisions are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._exact import orientation
from .geom import (
    Point,
    PointPair,
    QueryRange,
    closest_pair_dc,
    minimal_range,
    range_contains,
    segments_cross,
    sort_pairs,
)

#: Hard cap for the halfplane subset enumeration (O(n^3) work).
ORACLE_LIMIT = 64

# Space tags name a family of query ranges.  Composite tags (Q, P, U, H)
# take the union of candidates over their orientations.
_SPACES: dict[str, list[tuple[str, str | None]]] = {
    "Q^SW": [("quadrant", "SW")],
    "Q^NE": [("quadrant", "NE")],
    "Q^NW": [("quadrant", "NW")],
    "Q^SE": [("quadrant", "SE")],
    "Q": [("quadrant", o) for o in ("SW", "NE", "NW", "SE")],
    "P^v": [("vstrip", None)],
    "P^h": [("hstrip", None)],
    "P": [("vstrip", None), ("hstrip", None)],
    "U^down": [("3sided", "down")],
    "U^up": [("3sided", "up")],
    "U^left": [("3sided", "left")],
    "U^right": [("3sided", "right")],
    "U": [("3sided", o) for o in ("down", "up", "left", "right")],
    "R": [("rect", None)],
    "H^up": [("halfplane", "up")],
    "H^down": [("halfplane", "down")],
    "H": [("halfplane", "up"), ("halfplane", "down")],
}

_TAG_ALIASES = {"U↓": "U^down", "U↑": "U^up", "U←": "U^left", "U→": "U^right",
                "H↑": "H^up", "H↓": "H^down"}


def normalize_space(tag: str) -> str:
    tag = _TAG_ALIASES.get(tag, tag)
    if tag not in _SPACES:
        raise ValueError(f"unknown query space {tag!r}")
    return tag


@dataclass(frozen=True)
class CandidateSet:
    """Candidate pairs of a point set for one query space, sorted by
    (length, canonical order) ascending."""

    space: str
    pairs: tuple[PointPair, ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def as_tuples(self):
        return [p.as_tuple() for p in self.pairs]


def bf_range_closest_pair(points: Sequence[Point], rng: QueryRange) -> PointPair | None:
    """Closest pair among the points inside the range, by filtering."""
    inside = [p for p in points if range_contains(rng, p)]
    return closest_pair_dc(inside)


def _require_distinct(points: Sequence[Point]) -> None:
    seen = set()
    for p in points:
        t = (p.x, p.y)
        if t in seen:
            raise ValueError(f"duplicate point {t}")
        seen.add(t)


def enumerate_candidates(points: Sequence[Point], space: str) -> CandidateSet:
    """All pairs that are the closest pair of S restricted to some range.

    For orthogonal spaces a pair is a candidate iff it is the closest pair of
    S intersected with its own minimal range — the minimal range is contained
    in every range of the family containing the pair.  For halfplane spaces
    candidacy is decided over all realizable halfplane subsets.
    """
    _require_distinct(points)
    tag = normalize_space(space)
    pts = list(points)
    found: dict[tuple, PointPair] = {}
    for kind, orient in _SPACES[tag]:
        if kind == "halfplane":
            for sub in realizable_halfplane_subsets(pts, side=orient):
                if len(sub) < 2:
                    continue
                cp = closest_pair_dc(list(sub))
                found[cp.as_tuple()] = cp
        else:
            for i in range(len(pts)):
                for j in range(i + 1, len(pts)):
                    phi = PointPair(pts[i], pts[j])
                    rng = minimal_range(phi, kind, orient)
                    inside = [p for p in pts if range_contains(rng, p)]
                    if closest_pair_dc(inside) == phi:
                        found[phi.as_tuple()] = phi
    pairs = sort_pairs(found.values())
    if tag in ("H", "H^up", "H^down"):
        _assert_non_crossing(pairs)
    return CandidateSet(space=tag, pairs=tuple(pairs))


def _assert_non_crossing(pairs: list[PointPair]) -> None:
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            assert not segments_cross((pairs[i].a, pairs[i].b),
                                      (pairs[j].a, pairs[j].b)), \
                f"halfplane candidates cross: {pairs[i]} x {pairs[j]}"


def enumerate_crossing_candidates(points: Sequence[Point], space: str,
                                  line: tuple[str, float]) -> CandidateSet:
    """Candidates whose endpoints lie strictly on opposite sides of an
    axis-parallel line ``(axis, coord)`` with axis 'x' or 'y'."""
    axis, coord = line
    if axis not in ("x", "y"):
        raise ValueError(f"bad axis {axis!r}")
    base = enumerate_candidates(points, space)
    key = (lambda p: p.x) if axis == "x" else (lambda p: p.y)
    crossing = [phi for phi in base.pairs
                if min(key(phi.a), key(phi.b)) < coord < max(key(phi.a), key(phi.b))]
    return CandidateSet(space=base.space, pairs=tuple(crossing))


def kappa(points: Sequence[Point]) -> float:
    """Closest-pair distance of the whole set."""
    if len(points) < 2:
        raise ValueError("kappa needs at least two points")
    return closest_pair_dc(points).length


# ---------------------------------------------------------------------------
# Halfplane subset enumeration
# ---------------------------------------------------------------------------

def realizable_halfplane_subsets(points: Sequence[Point], side: str = "up",
                                 verify: bool | None = None) -> set[frozenset[Point]]:
    """The exact family { S ∩ H : H a closed halfplane of the given side }.

    Subsets are generated from symbolically perturbed lines through point
    pairs: for each line, shifting toward/away from the halfplane keeps or
    drops all on-line points, and rotating around an on-line pivot keeps the
    pivot plus the on-line points on one side of it.  Steep near-vertical
    lines through a single point are included as well.  No numeric epsilon is
    involved; membership is decided by exact orientation predicates.

    With ``verify`` (default: automatic for small inputs) every emitted
    subset is independently checked to be linearly separable from its
    complement.
    """
    if side not in ("up", "down"):
        raise ValueError(f"bad halfplane side {side!r}")
    pts = list(points)
    if len(pts) > ORACLE_LIMIT:
        raise ValueError(f"halfplane subset oracle capped at {ORACLE_LIMIT} points")
    _require_distinct(pts)
    if side == "down":
        flipped = [Point(p.x, -p.y) for p in pts]
        subs = realizable_halfplane_subsets(flipped, side="up", verify=verify)
        return {frozenset(Point(p.x, -p.y) for p in sub) for sub in subs}

    subs: set[frozenset[Point]] = {frozenset(), frozenset(pts)}

    # Near-vertical lines through a single point: everything strictly to one
    # side, plus the same-x points at or above the pivot.
    for a in pts:
        col = [p for p in pts if p.x == a.x and p.y >= a.y]
        subs.add(frozenset([p for p in pts if p.x < a.x] + col))
        subs.add(frozenset([p for p in pts if p.x > a.x] + col))

    for ai in range(len(pts)):
        a = pts[ai]
        for bi in range(len(pts)):
            if bi == ai:
                continue
            b = pts[bi]
            if a.x == b.x:
                continue  # vertical: handled by the single-point case above
            lpt, rpt = (a, b) if a.x < b.x else (b, a)
            above, on = [], []
            for p in pts:
                o = orientation(lpt.x, lpt.y, rpt.x, rpt.y, p.x, p.y)
                if o > 0:
                    above.append(p)
                elif o == 0:
                    on.append(p)
            subs.add(frozenset(above + on))      # shifted toward the halfplane
            subs.add(frozenset(above))           # shifted away
            # Rotations around pivot a: increasing the slope lifts the
            # on-line points left of the pivot, decreasing it the right ones.
            subs.add(frozenset(above + [a] + [q for q in on if q.x < a.x]))
            subs.add(frozenset(above + [a] + [q for q in on if q.x > a.x]))

    if verify is None:
        verify = len(pts) <= 16
    if verify:
        all_pts = frozenset(pts)
        for sub in subs:
            comp = all_pts - sub
            assert is_up_separable(sub, comp), \
                f"constructed subset not separable: {sorted(sub)}"
    return subs


def is_up_separable(above: Iterable[Point], below: Iterable[Point]) -> bool:
    """Exact test: is there a non-vertical line with ``above`` on or above it
    and ``below`` strictly below it?

    Separability holds iff f(u) = min_above(y - u*x) - max_below(y - u*x) is
    positive somewhere.  f is concave and piecewise linear with breakpoints
    at pairwise slopes, so it suffices to evaluate f at every pairwise slope
    and on both unbounded end pieces.
    """
    T = list(above)
    C = list(below)
    if not T or not C:
        return True

    def f(u: Fraction) -> Fraction:
        ft = min(Fraction(t.y) - u * Fraction(t.x) for t in T)
        fc = max(Fraction(s.y) - u * Fraction(s.x) for s in C)
        return ft - fc

    everything = T + C
    slopes = set()
    for i in range(len(everything)):
        for j in range(i + 1, len(everything)):
            p, q = everything[i], everything[j]
            if p.x != q.x:
                slopes.add(Fraction(Fraction(p.y) - Fraction(q.y),
                                    Fraction(p.x) - Fraction(q.x)))
    if not slopes:
        slopes = {Fraction(0)}
    for u in slopes:
        if f(u) > 0:
            return True
    lo, hi = min(slopes), max(slopes)
    # Unbounded end pieces: f is linear there, so two samples decide whether
    # it increases without bound.
    if f(lo - 1) > 0 or f(hi + 1) > 0:
        return True
    if f(lo - 2) > f(lo - 1) or f(hi + 2) > f(hi + 1):
        return True
    return False
