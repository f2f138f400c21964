"""Release acceptance suite: one test per numbered criterion.

Every test prints a single ``criterion N: PASS/FAIL`` line (visible with
``pytest -s``, and in captured output otherwise); the pytest verdict per
test mirrors it.  The suite is much heavier than the unit tests — the
latency and adaptive-choice criteria build million-point structures — so
expect a total runtime around an hour on one core.

Criteria with a stated wall-clock budget assert it; the scaling criteria
use the pre-registered max/min ratio band of the experiments module.
"""

import math
import random
import time
from contextlib import contextmanager

import pytest

from rcpindex.candidates import three_sided_candidates
from rcpindex.dominance import (
    build_quadrant_rcp,
    build_strip_rcp,
    query_quadrant,
    query_strip,
)
from rcpindex.experiments import (
    RATIO_BAND,
    ExperimentConfig,
    bench,
    gen_interleaved_columns,
    gen_uniform,
    run_candidate_count_experiment,
    run_crossing_moment_experiment,
    run_kappa_experiment,
    run_psi_filter_experiment,
    trial_rng,
    _disjoint_segments,
)
from rcpindex.geom import (
    Halfplane,
    HStrip,
    Line,
    Point,
    PointPair,
    Quadrant,
    Rect,
    ThreeSided,
    VStrip,
)
from rcpindex.halfplane import (
    COMPLEXITY_FACTOR,
    build_h_rss,
    build_halfplane_rcp,
    h_rss_scan,
    query_h_rss,
    query_halfplane,
)
from rcpindex.oracle import bf_range_closest_pair, enumerate_candidates
from rcpindex.rect import (
    build_common_tree,
    build_d,
    build_d1,
    build_d2,
    query_d,
    query_d1,
    query_d2,
    query_phi,
    space_units,
)
from rcpindex.rss import build_u_rss, query_u_rss
from rcpindex.storage import load_index, save_index

pytestmark = pytest.mark.acceptance

P = Point
UNIT = Rect(0.0, 1.0, 0.0, 1.0)


@contextmanager
def criterion(num, label):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"\ncriterion {num}: FAIL - {label}", flush=True)
        raise
    dt = time.perf_counter() - t0
    print(f"\ncriterion {num}: PASS - {label} ({dt:.0f}s)", flush=True)


def uniform(n, seed):
    rng = random.Random(seed)
    return [P(rng.random(), rng.random()) for _ in range(n)]


# -- criterion 1: exhaustive equivalence on small grid datasets ---------------


def _grid_dataset(rng, n):
    cells = rng.sample(range(36), n)
    return [P(float(c % 6), float(c // 6)) for c in cells]


def _grid_coord(rng):
    # half-integer coordinates fall strictly between grid lines; integer
    # ones land exactly on data points and exercise closed-boundary ties
    if rng.random() < 0.6:
        return rng.randrange(-1, 6) + 0.5
    return float(rng.randrange(0, 6))


def _check_all_query_types(pts, rng):
    quadrants = {o: build_quadrant_rcp(pts, o) for o in ("SW", "NE", "NW", "SE")}
    strips = {a: build_strip_rcp(pts, a) for a in ("v", "h")}
    rss = {
        o: build_u_rss(three_sided_candidates(pts, o), o)
        for o in ("down", "up", "left", "right")
    }
    d1 = build_d1(pts)
    d2 = build_d2(pts)
    distinct_x = len({p.x for p in pts}) == len(pts)
    if distinct_x:
        halves = {s: build_halfplane_rcp(pts, s) for s in ("above", "below")}
    else:
        with pytest.raises(ValueError, match="x-coordinate"):
            build_halfplane_rcp(pts, "above")
        halves = {}

    for orient, st in quadrants.items():
        for _ in range(5):
            q = Quadrant(orient, P(_grid_coord(rng), _grid_coord(rng)))
            assert query_quadrant(st, q) == bf_range_closest_pair(pts, q)
    for axis, st in strips.items():
        for _ in range(4):
            lo, hi = sorted(_grid_coord(rng) for _ in range(2))
            s = VStrip(lo, hi) if axis == "v" else HStrip(lo, hi)
            assert query_strip(st, s) == bf_range_closest_pair(pts, s)
    for orient, st in rss.items():
        for _ in range(3):
            lo, hi = sorted(_grid_coord(rng) for _ in range(2))
            u = ThreeSided(orient, lo, hi, _grid_coord(rng))
            assert query_u_rss(st, u) == bf_range_closest_pair(pts, u)
    for _ in range(5):
        x1, x2 = sorted(_grid_coord(rng) for _ in range(2))
        y1, y2 = sorted(_grid_coord(rng) for _ in range(2))
        r = Rect(x1, x2, y1, y2)
        want = bf_range_closest_pair(pts, r)
        assert query_d1(d1, r) == want
        assert query_d2(d2, r) == want
    for side, st in halves.items():
        for _ in range(6):
            if rng.random() < 0.5:
                line = Line(float(rng.randrange(-2, 3)), float(rng.randrange(-8, 9)))
            else:
                line = Line(rng.uniform(-3.0, 3.0), rng.uniform(-8.0, 8.0))
            h = Halfplane(side, line)
            assert query_halfplane(st, h) == bf_range_closest_pair(pts, h)


def test_c01_small_grid_exhaustive_equivalence():
    with criterion(1, "all query types equal the filtering oracle on "
                      "500 sampled 6x6-grid datasets per n <= 8, under 2 min"):
        t0 = time.perf_counter()
        rng = random.Random(61)
        for n in range(1, 9):
            for _ in range(500):
                _check_all_query_types(_grid_dataset(rng, n), rng)
        assert time.perf_counter() - t0 < 120.0


# -- criterion 2: randomized equivalence at n = 64 ----------------------------


def test_c02_random_instance_equivalence():
    with criterion(2, "10^3 random (dataset, query) instances per structure "
                      "kind at n = 64 with zero mismatches, under 2 min"):
        t0 = time.perf_counter()
        mismatches = 0
        for seed in range(50):
            rng = random.Random(200 + seed)
            pts = uniform(64, rng.random())
            quadrants = {o: build_quadrant_rcp(pts, o)
                         for o in ("SW", "NE", "NW", "SE")}
            strips = {a: build_strip_rcp(pts, a) for a in ("v", "h")}
            rss = {o: build_u_rss(three_sided_candidates(pts, o), o)
                   for o in ("down", "up", "left", "right")}
            d = build_d(pts)
            halves = {s: build_halfplane_rcp(pts, s) for s in ("above", "below")}
            for _ in range(20):
                orient = rng.choice(("SW", "NE", "NW", "SE"))
                q = Quadrant(orient, P(rng.uniform(-0.1, 1.1), rng.uniform(-0.1, 1.1)))
                mismatches += query_quadrant(quadrants[orient], q) \
                    != bf_range_closest_pair(pts, q)

                axis = rng.choice(("v", "h"))
                lo, hi = sorted(rng.uniform(-0.05, 1.05) for _ in range(2))
                s = VStrip(lo, hi) if axis == "v" else HStrip(lo, hi)
                mismatches += query_strip(strips[axis], s) \
                    != bf_range_closest_pair(pts, s)

                orient = rng.choice(("down", "up", "left", "right"))
                lo, hi = sorted(rng.uniform(-0.05, 1.05) for _ in range(2))
                u = ThreeSided(orient, lo, hi, rng.uniform(-0.05, 1.05))
                mismatches += query_u_rss(rss[orient], u) \
                    != bf_range_closest_pair(pts, u)

                x1, x2 = sorted(rng.uniform(-0.05, 1.05) for _ in range(2))
                y1, y2 = sorted(rng.uniform(-0.05, 1.05) for _ in range(2))
                r = Rect(x1, x2, y1, y2)
                mismatches += query_d(d, r) != bf_range_closest_pair(pts, r)

                side = rng.choice(("above", "below"))
                h = Halfplane(side, Line(rng.uniform(-3, 3), rng.uniform(-1, 2)))
                mismatches += query_halfplane(halves[side], h) \
                    != bf_range_closest_pair(pts, h)
        assert mismatches == 0
        assert time.perf_counter() - t0 < 120.0


# -- criterion 3: halfplane candidate soundness vs the oracle -----------------


def test_c03_halfplane_candidate_soundness():
    with criterion(3, "build-time accepted halfplane candidates equal the "
                      "realizable-subset oracle for n <= 12, 200 seeds"):
        for seed in range(200):
            rng = random.Random(300 + seed)
            n = rng.randint(2, 12)
            pts = [P(rng.random(), rng.random()) for _ in range(n)]
            for side, tag in (("above", "H^up"), ("below", "H^down")):
                got = {phi.as_tuple()
                       for phi in build_halfplane_rcp(pts, side).pairs}
                want = set(enumerate_candidates(pts, tag).as_tuples())
                assert got == want, (seed, side)


# -- criterion 4: worst-case complexity counters ------------------------------


def test_c04_complexity_counters():
    with criterion(4, "quadrant entries <= 3n; halfplane m <= 3n, overlay "
                      "<= 16m, per-insertion growth <= 16; 100 builds, n = 512"):
        n = 512
        orients = ("SW", "NE", "NW", "SE")
        for t in range(100):
            pts = gen_uniform(UNIT, n, trial_rng(4, n, t))
            st = build_quadrant_rcp(pts, orients[t % 4])
            assert st.m <= 3 * n
            idx = build_halfplane_rcp(pts, "above" if t % 2 == 0 else "below")
            assert idx.m <= 3 * n
            assert idx.overlay.complexity_counts.total() <= COMPLEXITY_FACTOR * idx.m
            assert max(idx.overlay.growth, default=0) <= COMPLEXITY_FACTOR
            del st, idx


# -- criterion 5: slab repairs only ever need near-adjacent ranks -------------


def test_c05_slab_rank_gap_bound():
    with criterion(5, "across 10^4 random rectangle queries at n = 256 the "
                      "slab closest pair always has rank gap <= 100"):
        pts = uniform(256, 5)
        tree = build_common_tree(pts)
        rng = random.Random(55)
        checked = 0
        for _ in range(10_000):
            x1, x2 = sorted(rng.random() for _ in range(2))
            y1, y2 = sorted(rng.random() for _ in range(2))
            cs = query_phi(tree, Rect(x1, x2, y1, y2))
            if cs is None:
                continue
            phi_a = bf_range_closest_pair(pts, cs.r_alpha)
            if phi_a is not None:
                inside = sorted(
                    (p for p in pts
                     if cs.r_alpha.x1 <= p.x <= cs.r_alpha.x2
                     and cs.r_alpha.y1 <= p.y <= cs.r_alpha.y2),
                    key=lambda p: (p.y, p.x))
                assert abs(inside.index(phi_a.a) - inside.index(phi_a.b)) <= 100
                checked += 1
            phi_b = bf_range_closest_pair(pts, cs.r_beta)
            if phi_b is not None:
                inside = sorted(
                    (p for p in pts
                     if cs.r_beta.x1 <= p.x <= cs.r_beta.x2
                     and cs.r_beta.y1 <= p.y <= cs.r_beta.y2),
                    key=lambda p: (p.x, p.y))
                assert abs(inside.index(phi_b.a) - inside.index(phi_b.b)) <= 100
                checked += 1
        assert checked > 5000  # the bound was actually exercised


# -- criterion 6: average-case scaling bands ----------------------------------


def test_c06_average_case_scaling_bands():
    with criterion(6, "candidate counts, crossing moments, kappa, and the "
                      f"anchored filter stay in a max/min <= {RATIO_BAND:g} "
                      "band, 50 trials per size, under 15 min"):
        t0 = time.perf_counter()
        reports = [
            run_candidate_count_experiment("Q", ExperimentConfig(
                "quadrant-count", sizes=(64, 128, 256, 512, 1024, 2048, 4096),
                trials=50, seed=6, oracle_cutoff=0)),
            run_candidate_count_experiment("U", ExperimentConfig(
                "3sided-count", sizes=(64, 128, 256, 512, 1024),
                trials=50, seed=6, oracle_cutoff=0)),
            run_candidate_count_experiment("H", ExperimentConfig(
                "halfplane-count", sizes=(32, 64, 128, 256),
                trials=50, seed=6, oracle_cutoff=0)),
            run_crossing_moment_experiment(ExperimentConfig(
                "crossing-moments", sizes=(64, 128, 256, 512, 1024),
                trials=50, seed=6)),
            run_kappa_experiment(ExperimentConfig(
                "kappa", sizes=(32, 64, 128, 256, 512, 1024),
                trials=50, seed=6)),
            run_psi_filter_experiment(ExperimentConfig(
                "anchored-filter", sizes=(64, 256, 1024, 4096),
                trials=50, seed=6, k=1)),
        ]
        for report in reports:
            assert report.passed, (report.name, report.verdicts, report.fitted)
        assert time.perf_counter() - t0 < 900.0


# -- criterion 7: the adaptive rectangle structure picks the right arm --------

# fixed, documented constant for the worst-case space ceiling of the
# combined structure: space_units(D) <= _SPACE_C * n * log2(n)^2
_SPACE_C = 4


def _d_space_budget(n):
    return _SPACE_C * n * math.log2(n) ** 2


def test_c07_adaptive_rect_choice_and_space():
    with criterion(7, "adaptive rectangle structure: fast arm on >= 90% of "
                      "uniform builds, compact arm on the clustered dataset, "
                      f"space <= {_SPACE_C}n log2^2 n always"):
        n = 4096
        rng = random.Random(77)
        fast = 0
        for t in range(20):
            pts = gen_uniform(UNIT, n, trial_rng(7, n, t))
            d = build_d(pts)
            assert space_units(d.structure) <= _d_space_budget(n)
            fast += d.choice == "d2"
            for _ in range(3):
                x1, x2 = sorted(rng.random() for _ in range(2))
                y1, y2 = sorted(rng.random() for _ in range(2))
                r = Rect(x1, x2, y1, y2)
                assert query_d(d, r) == bf_range_closest_pair(pts, r)
            del d
        assert fast >= 18, f"fast arm chosen only {fast}/20 times"

        pts = gen_interleaved_columns(n, seed=7, block=2048)
        d = build_d(pts)
        assert d.choice == "d1"
        assert d.d2_units >= d.threshold
        assert space_units(d.structure) <= _d_space_budget(n)
        for _ in range(5):
            x1, x2 = sorted(rng.uniform(0.0, 1.0) for _ in range(2))
            lo = min(p.y for p in pts)
            hi = max(p.y for p in pts)
            y1, y2 = sorted(rng.uniform(lo, hi) for _ in range(2))
            r = Rect(x1, x2, y1, y2)
            assert query_d(d, r) == bf_range_closest_pair(pts, r)
        del d


# -- criterion 8: shortest-contained-segment structure ------------------------


def _cell_segments(rng, m):
    """m segments in disjoint cells of an 8x8 partition: non-crossing by
    construction but with arbitrary directions."""
    segs = []
    for c in rng.sample(range(64), m):
        cx, cy = (c % 8) / 8.0, (c // 8) / 8.0
        a = P(cx + 0.01 + 0.105 * rng.random(), cy + 0.01 + 0.105 * rng.random())
        b = P(cx + 0.01 + 0.105 * rng.random(), cy + 0.01 + 0.105 * rng.random())
        while abs(a.x - b.x) < 1e-6:
            b = P(cx + 0.01 + 0.105 * rng.random(), b.y)
        segs.append(PointPair(a, b))
    return segs


def test_c08_h_rss_correctness_and_build_scaling():
    with criterion(8, "halfplane shortest-segment queries equal the scan on "
                      "10^3 random non-crossing sets; doubling to 10^5 "
                      "segments grows build time < 2.5x"):
        for seed in range(1000):
            rng = random.Random(800 + seed)
            segs = _cell_segments(rng, rng.randint(1, 64))
            st = build_h_rss(segs)
            for _ in range(5):
                side = rng.choice(("above", "below"))
                h = Halfplane(side, Line(rng.uniform(-3, 3), rng.uniform(-1, 2)))
                assert query_h_rss(st, h) == h_rss_scan(segs, h)

        timings = []
        for m in (50_000, 100_000):
            segs = _disjoint_segments(m, trial_rng(8, m, 0))
            t0 = time.process_time()
            st = build_h_rss(segs)
            timings.append(time.process_time() - t0)
            del st, segs
        assert timings[1] / timings[0] < 2.5, timings


# -- criterion 9: query latency stays flat from 2^10 to 2^20 ------------------


def test_c09_query_latency_growth():
    with criterion(9, "median query latency at n = 2^20 is <= 4x the median "
                      "at n = 2^10 for quadrant, strip, and halfplane"):
        for kind in ("quadrant", "strip", "halfplane"):
            report = bench(kind, ExperimentConfig(
                f"latency-{kind}", sizes=(1 << 10, 1 << 20), trials=3000,
                seed=9))
            med = {row["size"]: row["median_latency_s"] for row in report.rows}
            assert med[1 << 20] <= 4.0 * med[1 << 10], (kind, med)


# -- criterion 10: save/load round trips --------------------------------------


def test_c10_serialization_round_trip(tmp_path):
    with criterion(10, "every structure kind answers identically after an "
                       "on-disk round trip"):
        rng = random.Random(10)
        pts = uniform(48, 10)
        segs = _cell_segments(rng, 32)

        def roundtrip(kind, structure):
            path = tmp_path / f"{kind}.rcp"
            save_index(path, kind, structure)
            got_kind, loaded = load_index(path)
            assert got_kind == kind
            return loaded

        st = build_quadrant_rcp(pts, "SW")
        lo = roundtrip("quadrant", st)
        assert lo.m == st.m
        for _ in range(20):
            q = Quadrant("SW", P(rng.random(), rng.random()))
            assert query_quadrant(lo, q) == query_quadrant(st, q)

        st = build_strip_rcp(pts, "v")
        lo = roundtrip("strip", st)
        for _ in range(20):
            a, b = sorted(rng.random() for _ in range(2))
            assert query_strip(lo, VStrip(a, b)) == query_strip(st, VStrip(a, b))

        rects = []
        for _ in range(20):
            x1, x2 = sorted(rng.random() for _ in range(2))
            y1, y2 = sorted(rng.random() for _ in range(2))
            rects.append(Rect(x1, x2, y1, y2))
        for kind, build, query in (("rect-d1", build_d1, query_d1),
                                   ("rect-d2", build_d2, query_d2),
                                   ("rect-d", build_d, query_d)):
            st = build(pts)
            lo = roundtrip(kind, st)
            assert space_units(lo if kind != "rect-d" else lo.structure) \
                == space_units(st if kind != "rect-d" else st.structure)
            for r in rects:
                assert query(lo, r) == query(st, r)

        for kind, side in (("halfplane-up", "above"), ("halfplane-down", "below")):
            st = build_halfplane_rcp(pts, side)
            lo = roundtrip(kind, st)
            assert lo.m == st.m
            assert lo.overlay.complexity_counts == st.overlay.complexity_counts
            for _ in range(20):
                h = Halfplane(side, Line(rng.uniform(-3, 3), rng.uniform(-1, 2)))
                assert query_halfplane(lo, h) == query_halfplane(st, h)

        st = build_u_rss(segs, "down")
        lo = roundtrip("u-rss", st)
        for _ in range(20):
            a, b = sorted(rng.random() for _ in range(2))
            u = ThreeSided("down", a, b, rng.random())
            assert query_u_rss(lo, u) == query_u_rss(st, u)

        st = build_h_rss(segs)
        lo = roundtrip("h-rss", st)
        for _ in range(20):
            side = rng.choice(("above", "below"))
            h = Halfplane(side, Line(rng.uniform(-3, 3), rng.uniform(-1, 2)))
            assert query_h_rss(lo, h) == query_h_rss(st, h)
