import json
import math
import random
from functools import cmp_to_key

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rcpindex.geom import Point, Rect, VStrip, pair_cmp
from rcpindex.oracle import bf_range_closest_pair
from rcpindex.rect import (
    SCAN_LIMIT,
    THRESHOLD_FLOOR,
    build_common_tree,
    build_d,
    build_d1,
    build_d2,
    d_threshold,
    query_d,
    query_d1,
    query_d2,
    query_phi,
    space_units,
    stats,
    _repair_alpha,
    _repair_beta,
)

P = Point

coords = st.integers(0, 5)
grid_sets = st.lists(
    st.tuples(coords, coords), min_size=2, max_size=12, unique=True,
).map(lambda ts: [P(float(x), float(y)) for x, y in ts])


def uniform(n, seed):
    rng = random.Random(seed)
    return [P(rng.random(), rng.random()) for _ in range(n)]


def endpoints(pair):
    return {(pair.a.x, pair.a.y), (pair.b.x, pair.b.y)}


def interleaved_columns(n):
    """Two nearly-vertical columns whose cross-column gaps shrink with
    height, so every height-adjacent pair is the closest pair of some
    3-sided prefix and straddles the split between the columns."""
    rng = random.Random(n)
    pts = []
    y = 0.0
    for i in range(n):
        x = 0.45 if i % 2 == 0 else 0.55
        pts.append(P(x + rng.uniform(-1e-4, 1e-4), y))
        y += 0.2 - 0.1 * (i / n)
    return pts


FOUR = [P(0, 0), P(2, 0), P(0, 3), P(10, 10)]


# -- frozen examples ----------------------------------------------------------


@pytest.mark.parametrize("build,query", [(build_d1, query_d1),
                                         (build_d2, query_d2),
                                         (build_d, query_d)])
def test_four_point_examples(build, query):
    idx = build(FOUR)
    got = query(idx, Rect(-1, 3, -1, 4))
    assert endpoints(got) == {(0.0, 0.0), (2.0, 0.0)}
    assert got.length == 2.0
    got = query(idx, Rect(-1, 11, -1, 11))  # all points: global closest pair
    assert endpoints(got) == {(0.0, 0.0), (2.0, 0.0)}
    assert query(idx, Rect(9, 11, 9, 11)) is None  # single point inside
    assert query(idx, Rect(100, 200, 100, 200)) is None  # disjoint


def test_four_point_combine_state_goes_through_empty_quadrants():
    tree = build_common_tree(FOUR)
    cs = query_phi(tree, Rect(-1, 3, -1, 4))
    assert cs.alpha == 1.0
    assert cs.beta == 1.5
    # every tree quadrant of this rectangle holds one point, so phi is
    # undefined and both slab rectangles widen to the full rectangle
    assert cs.phi is None
    assert math.isinf(cs.delta)
    assert cs.r_alpha == cs.rect
    assert cs.r_beta == cs.rect


def test_combine_state_slab_rectangles_clip_to_query():
    pts = uniform(64, 3)
    tree = build_common_tree(pts)
    rng = random.Random(4)
    for _ in range(40):
        xs = sorted(rng.random() for _ in range(2))
        ys = sorted(rng.random() for _ in range(2))
        r = Rect(xs[0], xs[1], ys[0], ys[1])
        cs = query_phi(tree, r)
        if cs is None or cs.phi is None:
            continue
        d = cs.delta
        assert cs.r_alpha == Rect(max(r.x1, cs.alpha - d),
                                  min(r.x2, cs.alpha + d), r.y1, r.y2)
        assert cs.r_beta == Rect(r.x1, r.x2, max(r.y1, cs.beta - d),
                                 min(r.y2, cs.beta + d))


def test_two_point_tree_shape():
    tree = build_common_tree([P(0, 0), P(5, 1)])
    assert tree.nodes_primary == 3  # root plus two leaves
    root = tree.root
    assert (root.lo, root.hi) == (0, 2)
    assert root.sroot.hi - root.sroot.lo == 2
    assert root.left.spts is None  # leaves carry no secondary tree


def test_grid_secondary_subsets_match_rank_scan():
    pts = [P(float(x), float(y)) for x in range(4) for y in range(2)]
    tree = build_common_tree(pts)

    def walk_secondary(spts, node):
        assert spts[node.lo:node.hi] == sorted(
            spts[node.lo:node.hi], key=lambda p: (p.y, p.x))
        if node.lower is not None:
            walk_secondary(spts, node.lower)
            walk_secondary(spts, node.upper)

    def walk_primary(node):
        canon = tree.pts[node.lo:node.hi]
        assert canon == sorted(canon, key=lambda p: (p.x, p.y))
        if node.left is None:
            return
        assert node.spts == sorted(canon, key=lambda p: (p.y, p.x))
        walk_secondary(node.spts, node.sroot)
        walk_primary(node.left)
        walk_primary(node.right)

    walk_primary(tree.root)


def test_build_rejects_duplicate_points():
    with pytest.raises(ValueError, match="duplicate"):
        build_common_tree([P(1, 1), P(1, 1)])


def test_build_rejects_nonpositive_k():
    with pytest.raises(ValueError, match="positive"):
        build_common_tree([P(0, 0), P(1, 1)], k=0)


def test_query_rejects_non_rectangle():
    tree = build_common_tree(FOUR)
    with pytest.raises(ValueError, match="rectangle"):
        query_phi(tree, VStrip(0, 1))


def test_empty_and_degenerate_inputs():
    assert space_units(build_common_tree([])) == 0
    assert query_d2(build_d2([]), Rect(0, 1, 0, 1)) is None
    idx = build_d2([P(0, 0), P(1, 0), P(1, 1)])
    assert query_d2(idx, Rect(2, 1, 0, 1)) is None  # inverted rectangle
    # zero-height rectangle degenerates to a segment range
    assert endpoints(query_d2(idx, Rect(-1, 2, 0, 0))) == {(0.0, 0.0),
                                                          (1.0, 0.0)}


# -- oracle equivalence -------------------------------------------------------


@settings(max_examples=120, deadline=None)
@given(grid_sets, st.tuples(st.integers(-1, 6), st.integers(-1, 6)),
       st.tuples(st.integers(-1, 6), st.integers(-1, 6)))
def test_adaptive_index_matches_oracle_on_grids(pts, xs, ys):
    idx = build_d(pts)
    r = Rect(min(xs), max(xs), min(ys), max(ys))
    assert query_d(idx, r) == bf_range_closest_pair(pts, r)


def test_variants_agree_with_oracle_and_each_other():
    rng = random.Random(20260823)
    for trial in range(30):
        if trial % 2:
            n = rng.randint(2, 28)
            seen = set()
            while len(seen) < n:
                seen.add((rng.randint(0, 5), rng.randint(0, 5)))
            pts = [P(float(x), float(y)) for x, y in seen]
        else:
            n = rng.randint(2, 64)
            pts = [P(rng.uniform(0, 10), rng.uniform(0, 10))
                   for _ in range(n)]
        d1 = build_d1(pts)
        d2_scan = build_d2(pts)  # below SCAN_LIMIT: queries scan
        d2_full = build_d2(pts, scan_limit=0)  # sub-structures everywhere
        dd = build_d(pts)
        for _ in range(6):
            xs = sorted(rng.uniform(-1, 11) for _ in range(2))
            ys = sorted(rng.uniform(-1, 11) for _ in range(2))
            r = Rect(xs[0], xs[1], ys[0], ys[1])
            want = bf_range_closest_pair(pts, r)
            assert query_d1(d1, r) == want
            assert query_d2(d2_scan, r) == want
            assert query_d2(d2_full, r) == want
            assert query_d(dd, r) == want


def test_scan_and_structure_paths_agree_past_cutoff():
    pts = uniform(700, 11)  # root secondary tree exceeds SCAN_LIMIT
    assert 700 > SCAN_LIMIT
    d2 = build_d2(pts)
    rng = random.Random(12)
    for _ in range(25):
        xs = sorted(rng.uniform(0, 1) for _ in range(2))
        ys = sorted(rng.uniform(0, 1) for _ in range(2))
        r = Rect(min(xs[0], 0.05), max(xs[1], 0.95), ys[0], ys[1])
        assert query_d2(d2, r) == bf_range_closest_pair(pts, r)


# -- the slab answers cover the straddling pairs ------------------------------


def test_true_pair_is_one_of_phi_phi_alpha_phi_beta():
    pts = uniform(64, 21)
    d2 = build_d2(pts, scan_limit=0)
    rng = random.Random(22)
    hit_repairs = 0
    for _ in range(200):
        xs = sorted(rng.random() for _ in range(2))
        ys = sorted(rng.random() for _ in range(2))
        r = Rect(xs[0], xs[1], ys[0], ys[1])
        want = bf_range_closest_pair(pts, r)
        cs = query_phi(d2.tree, r)
        if cs is None:
            assert want is None
            continue
        phi_alpha = _repair_alpha(cs.node, cs, d2.k)
        phi_beta = _repair_beta(cs.node, cs, d2.k)
        best = min((p for p in (cs.phi, phi_alpha, phi_beta)
                    if p is not None), key=cmp_to_key(pair_cmp),
                   default=None)
        assert best == want
        if want is not None and want != cs.phi:
            hit_repairs += 1
    assert hit_repairs > 0  # the slab repairs actually decided some queries


def test_slab_closest_pair_endpoints_are_near_adjacent():
    pts = uniform(128, 31)
    tree = build_common_tree(pts)
    rng = random.Random(32)
    for _ in range(250):
        xs = sorted(rng.random() for _ in range(2))
        ys = sorted(rng.random() for _ in range(2))
        cs = query_phi(tree, Rect(xs[0], xs[1], ys[0], ys[1]))
        if cs is None:
            continue
        phi_a = bf_range_closest_pair(pts, cs.r_alpha)
        if phi_a is not None:
            inside = sorted((p for p in pts if cs.r_alpha.x1 <= p.x
                             <= cs.r_alpha.x2 and cs.r_alpha.y1 <= p.y
                             <= cs.r_alpha.y2), key=lambda p: (p.y, p.x))
            gap = abs(inside.index(phi_a.a) - inside.index(phi_a.b))
            assert gap <= 100
        phi_b = bf_range_closest_pair(pts, cs.r_beta)
        if phi_b is not None:
            inside = sorted((p for p in pts if cs.r_beta.x1 <= p.x
                             <= cs.r_beta.x2 and cs.r_beta.y1 <= p.y
                             <= cs.r_beta.y2), key=lambda p: (p.x, p.y))
            gap = abs(inside.index(phi_b.a) - inside.index(phi_b.b))
            assert gap <= 100


# -- the adaptive chooser and space accounting --------------------------------


def test_threshold_formula():
    assert d_threshold(2) == THRESHOLD_FLOOR
    assert d_threshold(4096) == 4096 * 144.0
    assert d_threshold(1024) < d_threshold(2048) < d_threshold(4096)


def test_tiny_inputs_choose_d2():
    idx = build_d([P(0, 0), P(3, 4)])
    assert idx.choice == "d2"
    assert endpoints(query_d(idx, Rect(-1, 4, -1, 5))) == {(0.0, 0.0),
                                                          (3.0, 4.0)}


def test_uniform_data_chooses_d2():
    idx = build_d(uniform(1024, 41))
    assert idx.choice == "d2"
    assert idx.d2_units < idx.threshold


def test_clustered_columns_choose_d1_and_stay_correct():
    pts = interleaved_columns(512)
    idx = build_d(pts)
    assert idx.choice == "d1"
    assert idx.d2_units >= idx.threshold
    rng = random.Random(51)
    for _ in range(12):
        xs = sorted(rng.uniform(0.3, 0.7) for _ in range(2))
        ys = sorted(rng.uniform(-5.0, 90.0) for _ in range(2))
        r = Rect(xs[0], xs[1], ys[0], ys[1])
        assert query_d(idx, r) == bf_range_closest_pair(pts, r)


def test_kept_structure_fits_worst_case_budget():
    for n, seed in ((256, 61), (512, 62)):
        idx = build_d(uniform(n, seed))
        assert space_units(idx) <= 4 * n * math.log2(n) ** 2
    cols = build_d(interleaved_columns(512))
    assert space_units(cols) <= 4 * 512 * math.log2(512) ** 2


def test_doubling_uniform_data_roughly_doubles_d2_units():
    small = space_units(build_d2(uniform(512, 71)))
    big = space_units(build_d2(uniform(1024, 72)))
    assert 1.6 < big / small < 3.2


def test_d2_units_track_n_log_n():
    ratios = []
    for n, seed in ((256, 81), (1024, 82)):
        u = space_units(build_d2(uniform(n, seed)))
        ratios.append(u / (n * math.log2(n)))
    assert max(ratios) / min(ratios) < 4


def test_stats_reports_are_json_serializable():
    idx = build_d(uniform(96, 91))
    report = json.loads(json.dumps(stats(idx)))
    assert report["kind"] == "rect-d"
    assert report["choice"] == "d2"
    assert report["d2_units"] == space_units(idx)
    assert report["n"] == 96
    assert report["primary_nodes"] == stats(build_common_tree(
        uniform(96, 91)))["primary_nodes"]
    d1_report = stats(build_d1(uniform(32, 92)))
    assert d1_report["kind"] == "rect-d1"
    assert set(d1_report["aux_tree_units"]) == {"by_y", "by_x"}
