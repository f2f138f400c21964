"""Seeded Monte-Carlo experiments over the candidate-pair machinery.

Each statistical runner estimates an average-case quantity on random
datasets — closest-pair moments, candidate-set sizes, membership
probabilities, anchored-filter sizes, overlay growth — and judges it
against the growth rate it is expected to track.  Verdicts are ratio-band
checks fixed up front, not fitted to the data: mean(n) / bound(n) is
computed over the configured size grid and the spread max/min must stay
within ``RATIO_BAND``.  A wrong growth rate shows up as a drifting ratio,
while unknown leading constants cancel; runs whose means are zero at every
size pass trivially, but a mix of zero and non-zero means fails.

Randomness comes from numpy's Philox counter-based generator.  Trial t at
size n of an experiment seeded s draws from the stream keyed
``(s, n * 2**32 + t)``, so every trial owns an independent stream, trials
can run in any order (or concurrently) without changing results, and each
report is reproducible from (config, seed) alone — except the wall-clock
fields of :func:`bench`, which measure the machine, not the structures.
"""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import integrate

from .candidates import (
    crossing_filter,
    quadrant_candidates,
    strip_candidates,
    three_sided_candidates,
    convex_chain_halfplane_candidates,
)
from .dominance import build_quadrant_rcp, build_strip_rcp, query_quadrant, query_strip
from .extremes import candidate_points_filter
from .geom import Halfplane, Line, Point, PointPair, Quadrant, Rect, ThreeSided, VStrip
from .halfplane import COMPLEXITY_FACTOR, build_halfplane_rcp, build_h_rss, query_h_rss, query_halfplane
from .oracle import enumerate_candidates, kappa, normalize_space
from . import rect as rect_index
from .rss import build_u_rss, query_u_rss

#: Pre-registered verdict band: the spread max/min of mean/bound ratios
#: across the size grid may not exceed this.
RATIO_BAND = 4.0

#: Per-insertion overlay growth limit checked by the growth experiment.
GROWTH_LIMIT = COMPLEXITY_FACTOR


# ---------------------------------------------------------------------------
# RNG streams and dataset generators
# ---------------------------------------------------------------------------

def trial_rng(seed: int, size: int, trial: int) -> np.random.Generator:
    """The Philox stream for one trial: key ``(seed, size * 2**32 + trial)``.

    Counter-based, so streams are independent by construction and any
    subset of trials can be regenerated without running the others.
    """
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed out of range: {seed}")
    if not 0 <= size < 2**32 or not 0 <= trial < 2**32:
        raise ValueError(f"stream index out of range: size={size} trial={trial}")
    return np.random.Generator(np.random.Philox(key=[seed, (size << 32) | trial]))


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return trial_rng(int(seed), 0, 0)


def _as_rect(rect) -> Rect:
    if isinstance(rect, Rect):
        return rect
    x1, x2, y1, y2 = rect
    return Rect(float(x1), float(x2), float(y1), float(y2))


def gen_uniform(rect, n: int, seed) -> list[Point]:
    """n points drawn independently and uniformly from the rectangle.

    ``seed`` may be an integer (opens stream 0 of that seed) or an already
    positioned ``numpy.random.Generator``.  Degenerate rectangles are fine:
    a zero-width rectangle samples a vertical segment.
    """
    r = _as_rect(rect)
    if r.x1 > r.x2 or r.y1 > r.y2:
        raise ValueError(f"malformed sampling rectangle {r}")
    if n < 0:
        raise ValueError(f"negative sample size {n}")
    rng = _as_rng(seed)
    xs = r.x1 + rng.random(n) * (r.x2 - r.x1)
    ys = r.y1 + rng.random(n) * (r.y2 - r.y1)
    return [Point(float(x), float(y)) for x, y in zip(xs, ys)]


def gen_aligned(segments, seed) -> list[Point]:
    """One uniform point per segment, in segment order.

    Segments are ``((ax, ay), (bx, by))`` end-point pairs (``PointPair``
    also accepted).  Points on an axis-parallel segment inherit the shared
    coordinate exactly: the draw interpolates from endpoint a, so a zero
    extent contributes exactly zero.
    """
    ends = []
    for seg in segments:
        if isinstance(seg, PointPair):
            ends.append((seg.a.as_tuple(), seg.b.as_tuple()))
        else:
            (ax, ay), (bx, by) = seg
            ends.append(((float(ax), float(ay)), (float(bx), float(by))))
    rng = _as_rng(seed)
    ts = rng.random(len(ends))
    return [Point(ax + t * (bx - ax), ay + t * (by - ay))
            for ((ax, ay), (bx, by)), t in zip(ends, ts)]


def unit_vertical_segments(n: int, length: float = 1.0) -> list[tuple]:
    """The canonical aligned family: vertical unit-spaced segments
    {x = i} x [0, length] for i = 1..n, sorted left to right."""
    if length <= 0:
        raise ValueError(f"segment length must be positive, got {length}")
    return [((float(i), 0.0), (float(i), float(length))) for i in range(1, n + 1)]


def gen_convex_chain(n: int) -> list[Point]:
    """n points on a strictly convex arc (a parabola over (0, 1)).

    Deterministic.  Distinct x-coordinates and strict convexity make the
    chain candidate sweep applicable, so halfplane indexes over this
    family build without the all-pairs superset.
    """
    pts = []
    for i in range(n):
        x = (i + 1) / (n + 1)
        pts.append(Point(x, x * x))
    return pts


def gen_interleaved_columns(n: int, seed: int = 0, block: int | None = None) -> list[Point]:
    """Clustered dataset that drives the crossing-candidate storage of the
    extras-bearing rectangle structure to quadratic size.

    The first ``block`` points (default: all n) alternate between two
    near-vertical columns at x = 0.45 and x = 0.55; the vertical gap
    shrinks with height, so every height-adjacent cross-column pair is the
    closest pair of some downward prefix and straddles the gap between the
    columns.  Prefix stores over those candidates grow quadratically.
    Remaining points are uniform filler placed to the upper right, far
    from the columns and from each other relative to the column gaps.
    """
    if block is None:
        block = n
    if not 0 <= block <= n:
        raise ValueError(f"block size {block} out of range for n={n}")
    rng = _as_rng(seed)
    pts = []
    y = 0.0
    for i in range(block):
        x = 0.45 if i % 2 == 0 else 0.55
        pts.append(Point(x + float(rng.uniform(-1e-4, 1e-4)), y))
        y += 0.2 - 0.1 * (i / max(block, 1))
    top = max(y, 1.0)
    for _ in range(n - block):
        pts.append(Point(0.7 + 0.3 * float(rng.random()),
                         top * (1.0 + float(rng.random()))))
    return pts


# ---------------------------------------------------------------------------
# Config, report, verdict helpers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    """What to run: size grid, trial count, moment exponent, seed.

    ``rect`` is the sampling region for uniform draws (may be degenerate);
    the aligned-segment experiments use the canonical vertical family of
    ``unit_vertical_segments`` with height ``segment_length``.  ``k`` is
    the extreme-point count of the anchored filter and ``oracle_cutoff``
    the largest size the candidate-count experiment still verifies by
    exhaustive enumeration (quadratic-or-worse; lower it for big grids).
    """

    name: str
    sizes: tuple[int, ...]
    trials: int = 50
    p: float = 2.0
    seed: int = 0
    rect: tuple[float, float, float, float] = (0.0, 1.0, 0.0, 1.0)
    segment_length: float = 1.0
    k: int = 1
    oracle_cutoff: int = 256

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))
        object.__setattr__(self, "rect", tuple(float(v) for v in self.rect))
        if not self.sizes:
            raise ValueError("sizes must not be empty")
        if any(n < 0 for n in self.sizes):
            raise ValueError(f"negative size in {self.sizes}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")
        x1, x2, y1, y2 = self.rect
        if x1 > x2 or y1 > y2:
            raise ValueError(f"malformed sampling rectangle {self.rect}")


@dataclass
class ExperimentReport:
    """Per-size rows plus fitted constants and pass/fail verdicts.

    Everything except ``runtime_s`` (and the latency columns of bench
    rows) is a pure function of (config, seed).
    """

    name: str
    config: ExperimentConfig
    rows: list[dict] = field(default_factory=list)
    fitted: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    runtime_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self, indent: int = 2) -> str:
        payload = {
            "name": self.name,
            "config": asdict(self.config),
            "rows": self.rows,
            "fitted": self.fitted,
            "verdicts": self.verdicts,
            "passed": self.passed,
            "runtime_s": self.runtime_s,
        }
        return json.dumps(payload, indent=indent)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(self.rows[0].keys()))
        writer.writeheader()
        writer.writerows(self.rows)
        return buf.getvalue()


def band_verdict(ratios) -> tuple[float, bool]:
    """(spread, ok) of the max/min ratio spread against RATIO_BAND."""
    ratios = list(ratios)
    positive = [r for r in ratios if r > 0.0]
    if not positive:
        return 0.0, True
    if len(positive) != len(ratios):
        return math.inf, False
    spread = max(positive) / min(positive)
    return spread, spread <= RATIO_BAND


def _log2(n: int) -> float:
    return math.log2(n) if n >= 2 else 1.0


def _require_pair_sizes(config: ExperimentConfig) -> None:
    if any(n < 2 for n in config.sizes):
        raise ValueError(f"every size must be at least 2, got {config.sizes}")


def _mean_var(samples: list[float]) -> tuple[float, float]:
    mean = statistics.fmean(samples)
    var = statistics.variance(samples) if len(samples) > 1 else 0.0
    return mean, var


# ---------------------------------------------------------------------------
# Closest-pair moment of a uniform sample
# ---------------------------------------------------------------------------

def mean_pair_distance_power(rect, p: float) -> float:
    """E[|U - V|^p] for two independent uniform points of the rectangle,
    by numeric integration of the coordinate-difference densities."""
    r = _as_rect(rect)
    w, h = r.x2 - r.x1, r.y2 - r.y1
    if w == 0.0 and h == 0.0:
        return 0.0
    if min(w, h) == 0.0:
        ell = max(w, h)
        val, _ = integrate.quad(
            lambda t: t ** p * 2.0 * (ell - t) / ell ** 2, 0.0, ell)
        return val
    val, _ = integrate.dblquad(
        lambda v, u: ((u * u + v * v) ** (p / 2.0)
                      * 4.0 * (w - u) * (h - v) / (w * h) ** 2),
        0.0, w, 0.0, h)
    return val


def run_kappa_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Estimate E[kappa^p] for uniform samples of the configured rectangle.

    kappa is the closest-pair distance.  With side lengths d <= D the
    comparison bound at size m is ``max(D / m**2, sqrt(d * D) / m) ** p``;
    a degenerate rectangle reduces it to the segment form (length/m^2)^p.
    When size 2 is on the grid, the sample mean is additionally checked
    against the numerically integrated two-point moment (tolerance: five
    standard errors plus 5%).
    """
    if config.p <= 1.0:
        raise ValueError(f"moment exponent must exceed 1, got {config.p}")
    _require_pair_sizes(config)
    r = _as_rect(config.rect)
    short, long_ = sorted((r.x2 - r.x1, r.y2 - r.y1))
    if long_ <= 0.0:
        raise ValueError("sampling region must have positive extent")
    t0 = time.perf_counter()
    rows = []
    for m in config.sizes:
        samples = []
        for t in range(config.trials):
            pts = gen_uniform(r, m, trial_rng(config.seed, m, t))
            samples.append(kappa(pts) ** config.p)
        mean, var = _mean_var(samples)
        bound = max(long_ / m ** 2, math.sqrt(short * long_) / m) ** config.p
        rows.append({"size": m, "trials": config.trials, "mean": mean,
                     "variance": var, "bound": bound, "ratio": mean / bound})
    spread, ok = band_verdict(row["ratio"] for row in rows)
    fitted = {"ratio_spread": spread,
              "c_low": min(row["ratio"] for row in rows),
              "c_high": max(row["ratio"] for row in rows)}
    verdicts = {"ratio_band": ok}
    for row in rows:
        if row["size"] == 2:
            ref = mean_pair_distance_power(r, config.p)
            tol = 5.0 * math.sqrt(row["variance"] / row["trials"]) + 0.05 * ref
            fitted["two_point_reference"] = ref
            verdicts["two_point_reference"] = abs(row["mean"] - ref) <= tol
    return ExperimentReport("kappa", config, rows, fitted, verdicts,
                            time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Candidate-set sizes
# ---------------------------------------------------------------------------

# Structure-route enumerators per composite space tag.  Each entry names the
# sweeps whose outputs are unioned; the oracle route goes through exhaustive
# enumeration instead and must agree (the two routes are checked against
# each other in the test suite at small sizes).
_ROUTES = {
    "Q": [("quadrant", o) for o in ("SW", "NE", "NW", "SE")],
    "Q^SW": [("quadrant", "SW")], "Q^NE": [("quadrant", "NE")],
    "Q^NW": [("quadrant", "NW")], "Q^SE": [("quadrant", "SE")],
    "P": [("strip", "v"), ("strip", "h")],
    "P^v": [("strip", "v")], "P^h": [("strip", "h")],
    "U": [("3sided", o) for o in ("down", "up", "left", "right")],
    "U^down": [("3sided", "down")], "U^up": [("3sided", "up")],
    "U^left": [("3sided", "left")], "U^right": [("3sided", "right")],
    "H": [("halfplane", "above"), ("halfplane", "below")],
    "H^up": [("halfplane", "above")], "H^down": [("halfplane", "below")],
}

# Growth-rate comparison per space family: corner and halfplane families
# stay polylogarithmic on uniform data, strip-like families are linear.
_COUNT_BOUNDS = {
    "Q": lambda n: _log2(n) ** 2,
    "P": lambda n: float(n),
    "U": lambda n: float(n),
    "H": lambda n: _log2(n) ** 2,
}


def structure_candidate_count(points, space: str) -> int:
    """|Phi(S, space)| via the production sweeps/builds (union over the
    orientations the composite tag covers)."""
    tag = normalize_space(space)
    if tag not in _ROUTES:
        raise ValueError(f"no structure route for space {space!r}")
    seen = set()
    for kind, orient in _ROUTES[tag]:
        if kind == "quadrant":
            pairs = quadrant_candidates(points, orient)
        elif kind == "strip":
            pairs = strip_candidates(points, orient)
        elif kind == "3sided":
            pairs = three_sided_candidates(points, orient)
        else:
            pairs = build_halfplane_rcp(points, orient).pairs
        seen.update(pair.as_tuple() for pair in pairs)
    return len(seen)


def run_candidate_count_experiment(space: str, config: ExperimentConfig) -> ExperimentReport:
    """Mean candidate-set size against its expected growth rate.

    Sizes up to ``config.oracle_cutoff`` are counted by the exhaustive
    enumerator, larger ones by the production sweeps; both routes count
    the same set, so mixing them across the grid is sound.
    """
    _require_pair_sizes(config)
    tag = normalize_space(space)
    if tag not in _ROUTES:
        raise ValueError(f"no structure route for space {space!r}")
    bound_fn = _COUNT_BOUNDS[tag[0]]
    r = _as_rect(config.rect)
    t0 = time.perf_counter()
    rows = []
    for n in config.sizes:
        route = "oracle" if n <= config.oracle_cutoff else "structure"
        samples = []
        for t in range(config.trials):
            pts = gen_uniform(r, n, trial_rng(config.seed, n, t))
            if route == "oracle":
                samples.append(float(len(enumerate_candidates(pts, tag))))
            else:
                samples.append(float(structure_candidate_count(pts, tag)))
        mean, var = _mean_var(samples)
        bound = bound_fn(n)
        rows.append({"size": n, "trials": config.trials, "route": route,
                     "mean": mean, "variance": var, "bound": bound,
                     "ratio": mean / bound})
    spread, ok = band_verdict(row["ratio"] for row in rows)
    fitted = {"ratio_spread": spread,
              "c_low": min(row["ratio"] for row in rows),
              "c_high": max(row["ratio"] for row in rows)}
    return ExperimentReport(f"candidate-count-{tag}", config, rows,
                            fitted, {"ratio_band": ok},
                            time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Membership probability of one aligned pair
# ---------------------------------------------------------------------------

def run_pairprob_experiment(config: ExperimentConfig, i: int, j: int,
                            orientation: str = "down") -> ExperimentReport:
    """Probability that the aligned pair (a_i, a_j) is a candidate.

    Points are drawn on the canonical vertical segments 1..n (1-based
    indices, so every size must be at least j); membership is tested
    against the 3-sided candidate set of the given orientation.  Only
    points between the two segments matter, so the probability does not
    depend on n: the verdict checks the per-size estimates agree within
    binomial noise (four standard errors plus 0.01 — fixed up front), and
    the fitted constant relates the probability to (1 + ln d) / d**2 for
    segment distance d = j - i.
    """
    _require_pair_sizes(config)
    if not 1 <= i < j:
        raise ValueError(f"need 1 <= i < j, got i={i} j={j}")
    if any(n < j for n in config.sizes):
        raise ValueError(f"every size must reach segment j={j}, got {config.sizes}")
    d = j - i
    bound = (1.0 + math.log(d)) / d ** 2
    t0 = time.perf_counter()
    rows = []
    for n in config.sizes:
        segs = unit_vertical_segments(n, config.segment_length)
        hits = 0
        for t in range(config.trials):
            pts = gen_aligned(segs, trial_rng(config.seed, n, t))
            target = PointPair(pts[i - 1], pts[j - 1]).as_tuple()
            phi = three_sided_candidates(pts, orientation)
            if any(pair.as_tuple() == target for pair in phi):
                hits += 1
        prob = hits / config.trials
        rows.append({"size": n, "trials": config.trials, "hits": hits,
                     "probability": prob, "bound": bound,
                     "ratio": prob / bound})
    probs = [row["probability"] for row in rows]
    center = statistics.fmean(probs)
    noise = 4.0 * math.sqrt(max(center * (1.0 - center), 0.0) / config.trials) + 0.01
    stable = all(abs(p - center) <= noise for p in probs)
    fitted = {"c": max(row["ratio"] for row in rows),
              "mean_probability": center, "noise_allowance": noise}
    return ExperimentReport(f"pairprob-{i}-{j}", config, rows, fitted,
                            {"stable_across_sizes": stable},
                            time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Crossing-candidate moments
# ---------------------------------------------------------------------------

def run_crossing_moment_experiment(config: ExperimentConfig,
                                   line: float | None = None) -> ExperimentReport:
    """First and second moment of the crossing-candidate count.

    Aligned datasets on the canonical vertical segments; the splitting
    line defaults to the middle of the family (x = floor(n/2) + 1/2) and
    the candidate set is the downward 3-sided family restricted to pairs
    straddling the line.  Moments are compared to log2(n)^2 and
    log2(n)^4; the sample mean can never exceed the root of the sample
    second moment, which is asserted per size as a sanity check.
    """
    _require_pair_sizes(config)
    t0 = time.perf_counter()
    rows = []
    for n in config.sizes:
        segs = unit_vertical_segments(n, config.segment_length)
        split = (n // 2) + 0.5 if line is None else float(line)
        counts = []
        for t in range(config.trials):
            pts = gen_aligned(segs, trial_rng(config.seed, n, t))
            phi = three_sided_candidates(pts, "down")
            counts.append(float(len(crossing_filter(phi, "x", split))))
        mean, var = _mean_var(counts)
        second = statistics.fmean(c * c for c in counts)
        assert mean <= math.sqrt(second) + 1e-9, "sample moments inconsistent"
        rows.append({"size": n, "trials": config.trials, "line": split,
                     "mean": mean, "variance": var, "second_moment": second,
                     "bound": _log2(n) ** 2, "second_bound": _log2(n) ** 4,
                     "ratio": mean / _log2(n) ** 2,
                     "second_ratio": second / _log2(n) ** 4})
    spread1, ok1 = band_verdict(row["ratio"] for row in rows)
    spread2, ok2 = band_verdict(row["second_ratio"] for row in rows)
    fitted = {"ratio_spread": spread1, "second_ratio_spread": spread2}
    verdicts = {"first_moment_band": ok1, "second_moment_band": ok2}
    return ExperimentReport("crossing-moment", config, rows, fitted, verdicts,
                            time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Anchored filter size
# ---------------------------------------------------------------------------

def run_psi_filter_experiment(config: ExperimentConfig,
                              coord: float | None = None) -> ExperimentReport:
    """Mean size of the anchored candidate-point filter against k*log2(n).

    Uniform samples of the configured rectangle, filtered for vertical
    strips anchored at x = coord (default: the middle of the rectangle,
    which splits the sample; an outside anchor makes the dataset
    one-sided).
    """
    _require_pair_sizes(config)
    r = _as_rect(config.rect)
    anchor = (r.x1 + r.x2) / 2.0 if coord is None else float(coord)
    t0 = time.perf_counter()
    rows = []
    for n in config.sizes:
        samples = []
        for t in range(config.trials):
            pts = gen_uniform(r, n, trial_rng(config.seed, n, t))
            samples.append(float(len(candidate_points_filter(
                pts, "v", anchor, config.k))))
        mean, var = _mean_var(samples)
        bound = config.k * _log2(n)
        rows.append({"size": n, "trials": config.trials, "mean": mean,
                     "variance": var, "bound": bound, "ratio": mean / bound})
    spread, ok = band_verdict(row["ratio"] for row in rows)
    fitted = {"ratio_spread": spread,
              "c_high": max(row["ratio"] for row in rows)}
    return ExperimentReport("psi-filter", config, rows, fitted,
                            {"ratio_band": ok}, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Halfplane overlay growth
# ---------------------------------------------------------------------------

def run_growth_experiment(config: ExperimentConfig,
                          points_fn=None) -> ExperimentReport:
    """Per-insertion wedge-overlay growth and final overlay size.

    Builds the above-halfplane index over random datasets (``points_fn(n,
    rng)`` overrides the uniform default) and records the worst single
    insertion's complexity growth plus the overlay-to-candidate size
    ratio.  Both must stay within GROWTH_LIMIT — hard limits rather than
    bands, since the claim is a constant, not a rate.
    """
    _require_pair_sizes(config)
    r = _as_rect(config.rect)
    make = points_fn if points_fn is not None else (
        lambda n, rng: gen_uniform(r, n, rng))
    t0 = time.perf_counter()
    rows = []
    for n in config.sizes:
        worst = 0
        ratios = []
        for t in range(config.trials):
            pts = make(n, trial_rng(config.seed, n, t))
            index = build_halfplane_rcp(pts, "above")
            worst = max(worst, max(index.overlay.growth, default=0))
            ratios.append(index.overlay.complexity_counts.total()
                          / max(index.m, 1))
        rows.append({"size": n, "trials": config.trials, "max_growth": worst,
                     "mean_complexity_ratio": statistics.fmean(ratios)})
    verdicts = {
        "growth_limit": all(row["max_growth"] <= GROWTH_LIMIT for row in rows),
        "complexity_ratio": all(row["mean_complexity_ratio"] <= GROWTH_LIMIT
                                for row in rows),
    }
    fitted = {"max_growth": max(row["max_growth"] for row in rows),
              "max_complexity_ratio": max(row["mean_complexity_ratio"]
                                          for row in rows)}
    return ExperimentReport("growth", config, rows, fitted, verdicts,
                            time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Benchmarks
# ---------------------------------------------------------------------------

def _bench_quadrant(n, rng):
    pts = gen_uniform(Rect(0.0, 1.0, 0.0, 1.0), n, rng)
    st = build_quadrant_rcp(pts, "SW")
    gen = lambda: Quadrant("SW", Point(float(rng.random()), float(rng.random())))
    return st, st.space_units(), gen, query_quadrant


def _bench_strip(n, rng):
    pts = gen_uniform(Rect(0.0, 1.0, 0.0, 1.0), n, rng)
    st = build_strip_rcp(pts, "v")
    def gen():
        a, b = sorted(rng.random(2))
        return VStrip(float(a), float(b))
    return st, st.space_units(), gen, query_strip


def _bench_rect(builder, querier):
    def make(n, rng):
        pts = gen_uniform(Rect(0.0, 1.0, 0.0, 1.0), n, rng)
        st = builder(pts)
        def gen():
            a, b = sorted(rng.random(2))
            c, d = sorted(rng.random(2))
            return Rect(float(a), float(b), float(c), float(d))
        return st, rect_index.space_units(st), gen, querier
    return make


def _bench_halfplane(n, rng):
    pts = gen_convex_chain(n)
    superset = convex_chain_halfplane_candidates(pts, "up")
    st = build_halfplane_rcp(pts, "above", superset=superset)
    def gen():
        a, b = sorted(rng.random(2))
        return Halfplane("above", Line(float(a + b), float(-a * b)))
    return st, st.space_units(), gen, query_halfplane


def _disjoint_segments(n, rng):
    ys = rng.random(n)
    return [PointPair(Point(2.0 * i, float(y)), Point(2.0 * i + 1.0, float(y)))
            for i, y in enumerate(ys)]


def _bench_u_rss(n, rng):
    segs = _disjoint_segments(n, rng)
    st = build_u_rss(segs, "down")
    def gen():
        a, b = sorted(2.0 * n * rng.random(2))
        return ThreeSided("down", float(a), float(b), float(rng.random()))
    return st, st.space_units(), gen, query_u_rss


def _bench_h_rss(n, rng):
    segs = _disjoint_segments(n, rng)
    st = build_h_rss(segs)
    gen = lambda: Halfplane("above", Line(0.0, float(rng.random())))
    return st, st.space_units(), gen, query_h_rss


_BENCH_KINDS = {
    "quadrant": _bench_quadrant,
    "strip": _bench_strip,
    "rect-d1": _bench_rect(rect_index.build_d1, rect_index.query_d1),
    "rect-d2": _bench_rect(rect_index.build_d2, rect_index.query_d2),
    "rect-d": _bench_rect(rect_index.build_d, rect_index.query_d),
    "halfplane": _bench_halfplane,
    "u-rss": _bench_u_rss,
    "h-rss": _bench_h_rss,
}


def bench(kind: str, config: ExperimentConfig) -> ExperimentReport:
    """Build time, space units, and query latency across the size grid.

    One build per size; ``config.trials`` queries against it, latencies
    reported as median and p99.  Input families: uniform unit-square
    points for the point indexes, a convex chain for the halfplane index
    (whose generic superset is quadratic), x-disjoint horizontal segments
    for the segment structures.  A size of zero emits an all-zero row
    without building anything.
    """
    if kind not in _BENCH_KINDS:
        raise ValueError(f"unknown bench kind {kind!r}; "
                         f"have {sorted(_BENCH_KINDS)}")
    make = _BENCH_KINDS[kind]
    t0 = time.perf_counter()
    rows = []
    for n in config.sizes:
        if n == 0:
            rows.append({"size": 0, "build_s": 0.0, "space_units": 0,
                         "queries": 0, "median_latency_s": 0.0,
                         "p99_latency_s": 0.0})
            continue
        rng = trial_rng(config.seed, n, 0)
        t_build = time.perf_counter()
        st, units, gen, run = make(n, rng)
        build_s = time.perf_counter() - t_build
        queries = [gen() for _ in range(config.trials)]
        lat = []
        for q in queries:
            t_q = time.perf_counter()
            run(st, q)
            lat.append(time.perf_counter() - t_q)
        lat.sort()
        rows.append({"size": n, "build_s": build_s, "space_units": units,
                     "queries": len(lat),
                     "median_latency_s": statistics.median(lat),
                     "p99_latency_s": lat[min(len(lat) - 1,
                                              int(0.99 * len(lat)))]})
    return ExperimentReport(f"bench-{kind}", config, rows, {},
                            {"completed": True}, time.perf_counter() - t0)
