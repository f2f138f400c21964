import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rcpindex.geom import HStrip, Point, PointPair, Quadrant, VStrip
from rcpindex.oracle import bf_range_closest_pair
from rcpindex.dominance import (
    KeyedEntry,
    build_keyed_min_length,
    build_quadrant_rcp,
    build_strip_rcp,
    query_keyed,
    query_quadrant,
    query_strip,
)

P = Point

coords = st.integers(0, 5)
point_sets = st.lists(
    st.tuples(coords, coords), min_size=1, max_size=12, unique=True,
).map(lambda ts: [P(float(x), float(y)) for x, y in ts])


def pair(a, b):
    return PointPair(P(*a), P(*b))


# -- quadrant index -----------------------------------------------------------


def test_quadrant_three_points():
    s = [P(1, 1), P(2, 2), P(4, 1)]
    idx = build_quadrant_rcp(s, "SW")
    assert [(e.key.as_tuple(), e.payload) for e in idx.entries] == [
        ((2, 2), pair((1, 1), (2, 2))),
        ((4, 1), pair((1, 1), (4, 1))),
    ]
    assert query_quadrant(idx, Quadrant("SW", P(4, 2))) == pair((1, 1), (2, 2))
    assert query_quadrant(idx, Quadrant("SW", P(4, 1))) == pair((1, 1), (4, 1))
    assert query_quadrant(idx, Quadrant("SW", P(0, 0))) is None


def test_quadrant_singleton_set_is_empty_index():
    idx = build_quadrant_rcp([P(5, 5)], "SW")
    assert idx.m == 0
    assert query_quadrant(idx, Quadrant("SW", P(100, 100))) is None


def test_quadrant_collinear_points_keep_one_entry():
    idx = build_quadrant_rcp([P(0, 0), P(1, 0), P(3, 0)], "SW")
    assert [e.payload for e in idx.entries] == [pair((0, 0), (1, 0))]


def test_quadrant_rejects_duplicates():
    with pytest.raises(ValueError, match="duplicate"):
        build_quadrant_rcp([P(1, 1), P(1, 1)], "SW")


def test_quadrant_rejects_mismatched_query_orientation():
    idx = build_quadrant_rcp([P(0, 0), P(1, 1)], "SW")
    with pytest.raises(ValueError, match="opens"):
        query_quadrant(idx, Quadrant("NE", P(0, 0)))


def test_quadrant_rejects_bad_orientation():
    with pytest.raises(ValueError):
        build_quadrant_rcp([P(0, 0)], "up")


def test_quadrant_entry_count_is_linear():
    rng_pts = [P((i * 7919) % 257, (i * 104729) % 263) for i in range(200)]
    for orientation in ("SW", "NE", "NW", "SE"):
        idx = build_quadrant_rcp(rng_pts, orientation)
        assert idx.m <= 3 * len(rng_pts)


@settings(max_examples=120, deadline=None)
@given(point_sets, st.tuples(st.integers(-1, 6), st.integers(-1, 6)),
       st.sampled_from(["SW", "NE", "NW", "SE"]))
def test_quadrant_matches_oracle(pts, vertex, orientation):
    idx = build_quadrant_rcp(pts, orientation)
    q = Quadrant(orientation, P(float(vertex[0]), float(vertex[1])))
    assert query_quadrant(idx, q) == bf_range_closest_pair(pts, q)


# -- strip index --------------------------------------------------------------


def test_strip_examples():
    s = [P(0, 0), P(1, 5), P(2, 1)]
    idx = build_strip_rcp(s, "v")
    assert query_strip(idx, VStrip(0, 2)) == pair((0, 0), (2, 1))
    assert query_strip(idx, VStrip(0, 1)) == pair((0, 0), (1, 5))
    assert query_strip(idx, VStrip(3, 4)) is None


def test_strip_empty_and_degenerate_queries():
    idx = build_strip_rcp([P(0, 0), P(1, 5), P(2, 1)], "v")
    assert query_strip(idx, VStrip(2, 0)) is None  # inverted interval
    assert query_strip(idx, VStrip(0.5, 0.5)) is None  # nobody at x=0.5
    assert query_strip(idx, VStrip(1, 1)) is None  # one point only


def test_strip_horizontal_axis():
    s = [P(0, 0), P(5, 1), P(1, 2)]
    idx = build_strip_rcp(s, "h")
    assert query_strip(idx, HStrip(0, 2)) == pair((0, 0), (1, 2))
    assert query_strip(idx, HStrip(0, 1)) == pair((0, 0), (5, 1))


def test_strip_rejects_wrong_query_type():
    idx = build_strip_rcp([P(0, 0), P(1, 1)], "v")
    with pytest.raises(ValueError, match="HStrip"):
        query_strip(idx, HStrip(0, 1))


def test_strip_rejects_bad_axis():
    with pytest.raises(ValueError):
        build_strip_rcp([P(0, 0)], "x")


@settings(max_examples=120, deadline=None)
@given(point_sets, st.tuples(st.integers(-1, 6), st.integers(-1, 6)),
       st.sampled_from(["v", "h"]))
def test_strip_matches_oracle(pts, bounds, axis):
    idx = build_strip_rcp(pts, axis)
    lo, hi = sorted(float(b) for b in bounds)
    q = VStrip(lo, hi) if axis == "v" else HStrip(lo, hi)
    assert query_strip(idx, q) == bf_range_closest_pair(pts, q)


# -- generic keyed index ------------------------------------------------------


def keyed_segments():
    return [
        KeyedEntry(P(0, 1), pair((0, 0), (1, 0)), 1.0),
        KeyedEntry(P(0, 3), pair((0, 2), (3, 2)), 3.0),
    ]


def test_keyed_segment_lookup():
    idx = build_keyed_min_length(keyed_segments(), "NW")
    assert query_keyed(idx, P(-1, 4)) == pair((0, 0), (1, 0))
    assert query_keyed(idx, P(2, 4)) is None


def test_keyed_empty():
    idx = build_keyed_min_length([], "NW")
    assert query_keyed(idx, P(0, 0)) is None


def test_keyed_requires_sorted_lengths():
    entries = keyed_segments()[::-1]
    with pytest.raises(ValueError, match="sorted"):
        build_keyed_min_length(entries, "NW")


def test_kind_checks_cross_structure():
    quad = build_quadrant_rcp([P(0, 0), P(1, 1)], "SW")
    strip = build_strip_rcp([P(0, 0), P(1, 1)], "v")
    with pytest.raises(ValueError):
        query_strip(quad, VStrip(0, 1))
    with pytest.raises(ValueError):
        query_quadrant(strip, Quadrant("SW", P(0, 0)))
    with pytest.raises(ValueError):
        query_keyed(strip, P(0, 0))


def test_space_units_accounts_entries_and_overlay():
    pts = [P(float(i), float((i * 13) % 7)) for i in range(40)]
    idx = build_quadrant_rcp(pts, "SW")
    assert idx.space_units() >= idx.n + idx.m
