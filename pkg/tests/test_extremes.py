import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rcpindex.geom import HStrip, Point, VStrip
from rcpindex.extremes import (
    build_lrep,
    build_tbep,
    candidate_points_filter,
    query_lrep,
    query_tbep,
)

P = Point


def scan_extremes(pts, lo, hi, k, strip_key, ext_key):
    inside = sorted((p for p in pts if lo <= strip_key(p) <= hi),
                    key=ext_key, reverse=True)
    if len(inside) <= 2 * k:
        return inside
    return inside[:k] + inside[-k:]


def distinct_point_sets(max_size=30):
    return st.lists(st.integers(0, 400), min_size=0, max_size=max_size,
                    unique=True).flatmap(
        lambda xs: st.lists(st.integers(0, 400), min_size=len(xs),
                            max_size=len(xs), unique=True).map(
            lambda ys: [P(float(x), float(y)) for x, y in zip(xs, ys)]))


def test_root_stores_global_extremes():
    t = build_tbep([P(0, 0), P(1, 5), P(2, 1), P(3, 4)], 1)
    assert [p.as_tuple() for p in t.ksets[1]] == [(1, 5), (0, 0)]


def test_node_covering_right_half():
    t = build_tbep([P(0, 0), P(1, 5), P(2, 1), P(3, 4)], 1)
    assert [p.as_tuple() for p in t.ksets[3]] == [(3, 4), (2, 1)]


def test_saturated_k_keeps_whole_subsets():
    pts = [P(0, 0), P(1, 5), P(2, 1), P(3, 4)]
    t = build_tbep(pts, 10)
    assert sorted(p.as_tuple() for p in t.ksets[1]) == \
        sorted(p.as_tuple() for p in pts)


def test_query_examples():
    t = build_tbep([P(0, 0), P(1, 5), P(2, 1), P(3, 4)], 1)
    assert [p.as_tuple() for p in query_tbep(t, VStrip(0, 3))] == \
        [(1, 5), (0, 0)]
    assert [p.as_tuple() for p in query_tbep(t, VStrip(2, 3))] == \
        [(3, 4), (2, 1)]
    assert query_tbep(t, VStrip(5, 6)) == []


def test_build_rejects_duplicate_coordinates_and_bad_k():
    with pytest.raises(ValueError, match="x-coordinate"):
        build_tbep([P(0, 0), P(0, 1)], 1)
    with pytest.raises(ValueError, match="y-coordinate"):
        build_tbep([P(0, 1), P(2, 1)], 1)
    with pytest.raises(ValueError, match="positive"):
        build_tbep([P(0, 0)], 0)


def test_query_rejects_wrong_strip_type():
    t = build_tbep([P(0, 0), P(1, 1)], 1)
    with pytest.raises(ValueError, match="HStrip"):
        query_tbep(t, HStrip(0, 1))


@settings(max_examples=100, deadline=None)
@given(distinct_point_sets(), st.integers(1, 4),
       st.tuples(st.integers(-20, 420), st.integers(-20, 420)))
def test_tbep_matches_scan(pts, k, bounds):
    lo, hi = sorted(float(b) for b in bounds)
    t = build_tbep(pts, k)
    got = query_tbep(t, VStrip(lo, hi))
    assert got == scan_extremes(pts, lo, hi, k,
                                lambda p: p.x, lambda p: p.y)


@settings(max_examples=60, deadline=None)
@given(distinct_point_sets(), st.integers(1, 3),
       st.tuples(st.integers(-20, 420), st.integers(-20, 420)))
def test_lrep_matches_scan(pts, k, bounds):
    lo, hi = sorted(float(b) for b in bounds)
    t = build_lrep(pts, k)
    got = query_lrep(t, HStrip(lo, hi))
    assert got == scan_extremes(pts, lo, hi, k,
                                lambda p: p.y, lambda p: p.x)


# -- anchored-strip filter ----------------------------------------------------


def test_filter_drops_shadowed_point():
    pts = [P(0, 2), P(1, 1), P(2, 3)]
    psi = candidate_points_filter(pts, "v", 5.0, 1)
    assert [p.as_tuple() for p in psi] == [(1, 1), (2, 3)]


def test_filter_saturation_and_singleton():
    pts = [P(0, 2), P(1, 1), P(2, 3)]
    assert len(candidate_points_filter(pts, "v", 5.0, 5)) == 3
    assert candidate_points_filter([P(1, 1)], "v", 5.0, 1) == [P(1, 1)]


def test_filter_rejects_on_line_points():
    with pytest.raises(ValueError, match="anchor"):
        candidate_points_filter([P(5, 1)], "v", 5.0, 1)


def test_filter_handles_both_sides():
    pts = [P(0, 2), P(1, 1), P(8, 0), P(9, 9)]
    psi = candidate_points_filter(pts, "v", 5.0, 1)
    assert set(p.as_tuple() for p in psi) >= {(1, 1), (8, 0), (9, 9)}


@settings(max_examples=80, deadline=None)
@given(distinct_point_sets(max_size=24), st.integers(1, 3),
       st.integers(-10, 410))
def test_filter_preserves_anchored_answers(pts, k, anchor):
    coord = float(anchor) + 0.5
    psi = candidate_points_filter(pts, "v", coord, k)
    t_full = build_tbep(pts, k)
    t_psi = build_tbep(psi, k)
    rng = random.Random(anchor * 131 + len(pts))
    for _ in range(6):
        lo = rng.uniform(-20, coord)
        hi = rng.uniform(coord, 420)
        assert query_tbep(t_full, VStrip(lo, hi)) == \
            query_tbep(t_psi, VStrip(lo, hi))
