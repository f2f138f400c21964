"""Command-line surface: dataset generation, builds, queries, checks,
experiments, and benchmarks.

Datasets are CSV text, one ``x,y`` point (or ``x1,y1,x2,y2`` segment) per
line, ``#`` comments allowed; floats are written with shortest
round-trip formatting.  Indexes are binary files with a checksum (see
``storage``); the build bundles the input alongside the structure so
queries that need raw points — the vertical-boundary halfplane fallback —
can be served from the same file.

Exit codes: 0 success, 1 verdict failure (a check or experiment did not
pass), 2 input/usage error.  ``RCP_SEED`` provides the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import rect as rect_index
from .dominance import (
    build_quadrant_rcp,
    build_strip_rcp,
    query_quadrant,
    query_strip,
)
from .experiments import (
    ExperimentConfig,
    bench,
    gen_aligned,
    gen_uniform,
    run_candidate_count_experiment,
    run_crossing_moment_experiment,
    run_growth_experiment,
    run_kappa_experiment,
    run_pairprob_experiment,
    run_psi_filter_experiment,
    trial_rng,
)
from .geom import (
    Halfplane,
    HStrip,
    Line,
    Point,
    PointPair,
    Quadrant,
    Rect,
    ThreeSided,
    VStrip,
    closest_pair_dc,
)
from .halfplane import build_h_rss, build_halfplane_rcp, query_h_rss, query_halfplane
from .candidates import three_sided_candidates
from .oracle import bf_range_closest_pair
from .rss import build_u_rss, query_u_rss
from .storage import load_index, save_index

_SPACE_WORDS = {"quadrant": "Q", "strip": "P", "3sided": "U", "halfplane": "H"}


# ---------------------------------------------------------------------------
# Dataset text format
# ---------------------------------------------------------------------------

def _write_rows(out, header: str, rows) -> None:
    lines = [f"# {header}"]
    lines += [",".join(repr(float(v)) for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _data_rows(path) -> list[tuple[float, ...]]:
    rows = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append(tuple(float(f) for f in line.split(",")))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: bad row {line!r}: {exc}") from None
    return rows


def read_points(path) -> list[Point]:
    pts = []
    for row in _data_rows(path):
        if len(row) != 2:
            raise ValueError(f"{path}: point rows need 2 fields, got {len(row)}")
        pts.append(Point(*row))
    return pts


def read_segments(path) -> list[PointPair]:
    segs = []
    for row in _data_rows(path):
        if len(row) != 4:
            raise ValueError(f"{path}: segment rows need 4 fields, got {len(row)}")
        x1, y1, x2, y2 = row
        segs.append(PointPair(Point(x1, y1), Point(x2, y2)))
    return segs


def _parse_shape(shape: str):
    """'WxH' -> sampling rectangle; 'aligned:A..BxC..D' -> vertical unit
    segments at integer x = A..B with y spanning C..D."""
    if shape.startswith("aligned:"):
        body = shape[len("aligned:"):]
        try:
            xpart, ypart = body.split("x")
            a, b = (int(s) for s in xpart.split(".."))
            c, d = (float(s) for s in ypart.split(".."))
        except ValueError:
            raise ValueError(f"bad aligned shape {shape!r}; "
                             "expected aligned:A..BxC..D") from None
        if a > b or c > d:
            raise ValueError(f"empty aligned shape {shape!r}")
        return "aligned", [((float(i), c), (float(i), d)) for i in range(a, b + 1)]
    try:
        w, h = (float(s) for s in shape.split("x"))
    except ValueError:
        raise ValueError(f"bad shape {shape!r}; expected WxH or "
                         "aligned:A..BxC..D") from None
    if w < 0 or h < 0:
        raise ValueError(f"negative shape {shape!r}")
    return "rect", (0.0, w, 0.0, h)


def cmd_gen(args) -> int:
    kind, spec = _parse_shape(args.shape)
    if kind == "aligned":
        if args.n is not None and args.n != len(spec):
            raise ValueError(f"-n {args.n} contradicts {len(spec)} aligned segments")
        pts = gen_aligned(spec, args.seed)
    else:
        if args.n is None:
            raise ValueError("-n is required for rectangle shapes")
        pts = gen_uniform(spec, args.n, args.seed)
    header = f"rcpindex dataset shape={args.shape} n={len(pts)} seed={args.seed}"
    _write_rows(args.out, header, ((p.x, p.y) for p in pts))
    return 0


# ---------------------------------------------------------------------------
# Builds
# ---------------------------------------------------------------------------

BUILD_KINDS = ("quadrant", "strip", "rect-d1", "rect-d2", "rect-d",
               "halfplane-up", "halfplane-down", "u-rss", "h-rss")

_SEGMENT_KINDS = {"u-rss", "h-rss"}


def _build_structure(kind: str, args, data):
    if kind == "quadrant":
        return build_quadrant_rcp(data, args.orientation)
    if kind == "strip":
        return build_strip_rcp(data, args.axis)
    if kind == "rect-d1":
        return rect_index.build_d1(data, k=args.k)
    if kind == "rect-d2":
        return rect_index.build_d2(data, k=args.k)
    if kind == "rect-d":
        return rect_index.build_d(data, k=args.k)
    if kind == "halfplane-up":
        return build_halfplane_rcp(data, "above")
    if kind == "halfplane-down":
        return build_halfplane_rcp(data, "below")
    if kind == "u-rss":
        return build_u_rss(data, args.orientation3)
    return build_h_rss(data)


def _describe(kind: str, st, n_input: int) -> dict:
    if kind in ("quadrant", "strip"):
        return {"kind": kind, "n": st.n, "entries": st.m,
                "space_units": st.space_units()}
    if kind.startswith("rect-"):
        info = rect_index.stats(st)
        info.update({"kind": kind, "space_units": rect_index.space_units(st)})
        return info
    if kind.startswith("halfplane-"):
        info = st.stats()
        info.update({"kind": kind, "space_units": st.space_units()})
        return info
    if kind == "u-rss":
        return {"kind": kind, "segments": st.m,
                "space_units": st.space_units()}
    return {"kind": kind, "segments": len(st.segments),
            "above_pairs": len(st.above_pairs),
            "below_pairs": len(st.below_pairs),
            "space_units": st.space_units(), "n": n_input}


def cmd_build(args) -> int:
    kind = args.structure
    if kind in _SEGMENT_KINDS:
        data = read_segments(args.input)
    else:
        data = read_points(args.input)
    st = _build_structure(kind, args, data)
    bundle = {"kind": kind, "data": data, "structure": st}
    save_index(args.out, kind, bundle)
    print(json.dumps(_describe(kind, st, len(data))))
    return 0


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------

def _parse_query(obj: dict):
    qtype = obj.get("type")
    if qtype == "quadrant":
        return Quadrant(obj["orientation"], Point(float(obj["x"]), float(obj["y"])))
    if qtype == "strip":
        cls = VStrip if obj.get("axis", "v") == "v" else HStrip
        return cls(float(obj["lo"]), float(obj["hi"]))
    if qtype == "3sided":
        return ThreeSided(obj["orientation"], float(obj["lo"]),
                          float(obj["hi"]), float(obj["bound"]))
    if qtype == "rect":
        return Rect(float(obj["x1"]), float(obj["x2"]),
                    float(obj["y1"]), float(obj["y2"]))
    if qtype == "halfplane":
        side = obj["side"]
        if side in ("left", "right"):
            return ("vertical-halfplane", side, float(obj["x"]))
        return Halfplane(side, Line(float(obj["u"]), float(obj["v"])))
    raise ValueError(f"unknown query type {qtype!r}")


_QUERY_FN = {
    "quadrant": (query_quadrant, Quadrant),
    "strip": (query_strip, (VStrip, HStrip)),
    "rect-d1": (rect_index.query_d1, Rect),
    "rect-d2": (rect_index.query_d2, Rect),
    "rect-d": (rect_index.query_d, Rect),
    "halfplane-up": (query_halfplane, Halfplane),
    "halfplane-down": (query_halfplane, Halfplane),
    "u-rss": (query_u_rss, ThreeSided),
    "h-rss": (query_h_rss, Halfplane),
}


def _answer(pair, extra=None) -> dict:
    if pair is None:
        out = {"pair": None}
    else:
        out = {"pair": [[pair.a.x, pair.a.y], [pair.b.x, pair.b.y]],
               "length": pair.length}
    if extra:
        out.update(extra)
    return out


def _run_query(kind: str, bundle: dict, q) -> dict:
    if isinstance(q, tuple) and q[0] == "vertical-halfplane":
        # Vertical boundaries have no dual point; serve from the raw points.
        if not kind.startswith("halfplane-"):
            raise ValueError(f"{kind} index cannot answer halfplane queries")
        _, side, x = q
        pts = bundle["data"]
        inside = [p for p in pts if (p.x <= x if side == "left" else p.x >= x)]
        return _answer(closest_pair_dc(inside), {"served_by": "oracle"})
    fn, accepts = _QUERY_FN[kind]
    if not isinstance(q, accepts):
        raise ValueError(f"{kind} index cannot answer "
                         f"{type(q).__name__} queries")
    return _answer(fn(bundle["structure"], q))


def cmd_query(args) -> int:
    kind, bundle = load_index(args.index)
    if kind not in _QUERY_FN:
        raise ValueError(f"{args.index}: unknown structure kind {kind!r}")
    out_lines = []
    with open(args.queries) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            try:
                q = _parse_query(json.loads(line))
                result = _run_query(kind, bundle, q)
            except Exception as exc:  # per-line errors must not stop the run
                result = {"error": f"line {lineno}: {exc}"}
            out_lines.append(json.dumps(result))
    text = "\n".join(out_lines) + ("\n" if out_lines else "")
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return 0


# ---------------------------------------------------------------------------
# Oracle cross-checks
# ---------------------------------------------------------------------------

def _check_case(space: str, pts: list[Point], rng):
    """Build the structure for one dataset and return (query, answer)."""
    lo_q = lambda: float(rng.random() * 1.2 - 0.1)
    if space == "quadrant":
        st = build_quadrant_rcp(pts, "SW")
        q = Quadrant("SW", Point(lo_q(), lo_q()))
        return q, query_quadrant(st, q)
    if space == "strip":
        st = build_strip_rcp(pts, "v")
        a, b = sorted((lo_q(), lo_q()))
        q = VStrip(a, b)
        return q, query_strip(st, q)
    if space == "3sided":
        st = build_u_rss(three_sided_candidates(pts, "down"), "down")
        a, b = sorted((lo_q(), lo_q()))
        q = ThreeSided("down", a, b, lo_q())
        return q, query_u_rss(st, q)
    if space == "rect":
        st = rect_index.build_d(pts)
        a, b = sorted((lo_q(), lo_q()))
        c, d = sorted((lo_q(), lo_q()))
        q = Rect(a, b, c, d)
        return q, rect_index.query_d(st, q)
    if space == "halfplane":
        side = "above" if rng.random() < 0.5 else "below"
        st = build_halfplane_rcp(pts, side)
        q = Halfplane(side, Line(float(rng.random() * 6 - 3),
                                 float(rng.random() * 3 - 1)))
        return q, query_halfplane(st, q)
    raise ValueError(f"unknown check space {space!r}; "
                     f"have quadrant, strip, 3sided, rect, halfplane")


def _query_json(q) -> dict:
    if isinstance(q, Quadrant):
        return {"type": "quadrant", "orientation": q.orientation,
                "x": q.vertex.x, "y": q.vertex.y}
    if isinstance(q, (VStrip, HStrip)):
        return {"type": "strip", "axis": "v" if isinstance(q, VStrip) else "h",
                "lo": q.lo, "hi": q.hi}
    if isinstance(q, ThreeSided):
        return {"type": "3sided", "orientation": q.orientation,
                "lo": q.lo, "hi": q.hi, "bound": q.bound}
    if isinstance(q, Rect):
        return {"type": "rect", "x1": q.x1, "x2": q.x2, "y1": q.y1, "y2": q.y2}
    return {"type": "halfplane", "side": q.side, "u": q.line.u, "v": q.line.v}


def _minimize(space: str, pts: list[Point], q) -> list[Point]:
    """Greedily drop points while the structure still disagrees with the
    brute-force answer for this query."""
    def mismatch(sub):
        try:
            _, got = _check_case_fixed(space, sub, q)
        except Exception:
            return False
        return got != bf_range_closest_pair(sub, q)

    keep = list(pts)
    shrunk = True
    while shrunk:
        shrunk = False
        for i in range(len(keep)):
            trial = keep[:i] + keep[i + 1:]
            if mismatch(trial):
                keep = trial
                shrunk = True
                break
    return keep


def _check_case_fixed(space: str, pts: list[Point], q):
    if space == "quadrant":
        return q, query_quadrant(build_quadrant_rcp(pts, "SW"), q)
    if space == "strip":
        return q, query_strip(build_strip_rcp(pts, "v"), q)
    if space == "3sided":
        return q, query_u_rss(
            build_u_rss(three_sided_candidates(pts, "down"), "down"), q)
    if space == "rect":
        return q, rect_index.query_d(rect_index.build_d(pts), q)
    return q, query_halfplane(build_halfplane_rcp(pts, q.side), q)


def cmd_check(args) -> int:
    if args.trials == 0:
        print("warning: trials=0, vacuous pass", file=sys.stderr)
        return 0
    for t in range(args.trials):
        rng = trial_rng(args.seed, args.n, t)
        pts = gen_uniform((0.0, 1.0, 0.0, 1.0), args.n, rng)
        q, got = _check_case(args.space, pts, rng)
        want = bf_range_closest_pair(pts, q)
        if got != want:
            small = _minimize(args.space, pts, q)
            repro = {
                "space": args.space, "trial": t, "seed": args.seed,
                "query": _query_json(q),
                "points": [[p.x, p.y] for p in small],
                "expected": _answer(bf_range_closest_pair(small, q)),
                "got": _answer(_check_case_fixed(args.space, small, q)[1]),
            }
            print(f"mismatch at trial {t}; minimized repro follows",
                  file=sys.stderr)
            print(json.dumps(repro, indent=2), file=sys.stderr)
            return 1
    print(f"check {args.space}: {args.trials} trials ok (n={args.n})")
    return 0


# ---------------------------------------------------------------------------
# Experiments and benchmarks
# ---------------------------------------------------------------------------

def _experiment_config(args, name: str) -> ExperimentConfig:
    fields = {}
    if args.config is not None:
        fields.update(json.loads(Path(args.config).read_text()))
    if args.n is not None:
        fields["sizes"] = [int(s) for s in args.n.split(",")]
    if args.trials is not None:
        fields["trials"] = args.trials
    if args.seed is not None:
        fields["seed"] = args.seed
    if args.p is not None:
        fields["p"] = args.p
    if args.k is not None:
        fields["k"] = args.k
    if args.rect is not None:
        kind, spec = _parse_shape(args.rect)
        if kind != "rect":
            raise ValueError(f"--rect wants WxH, got {args.rect!r}")
        fields["rect"] = spec
    if args.oracle_cutoff is not None:
        fields["oracle_cutoff"] = args.oracle_cutoff
    fields.setdefault("sizes", (64, 256, 1024))
    fields.setdefault("seed", _env_seed())
    fields.pop("name", None)
    return ExperimentConfig(name=name, **fields)


def _emit_report(report, args) -> None:
    if args.json is not None:
        Path(args.json).write_text(report.to_json() + "\n")
    if args.csv is not None:
        Path(args.csv).write_text(report.to_csv())
    if args.json is None and args.csv is None:
        print(report.to_json())


def cmd_experiment(args) -> int:
    cfg = _experiment_config(args, args.id)
    if args.id == "kappa":
        report = run_kappa_experiment(cfg)
    elif args.id == "candidates":
        space = _SPACE_WORDS.get(args.space, args.space)
        report = run_candidate_count_experiment(space, cfg)
    elif args.id == "pairprob":
        if args.i is None or args.j is None:
            raise ValueError("pairprob needs --i and --j")
        report = run_pairprob_experiment(cfg, args.i, args.j)
    elif args.id == "crossing":
        report = run_crossing_moment_experiment(cfg, line=args.line)
    elif args.id == "psi":
        report = run_psi_filter_experiment(cfg, coord=args.coord)
    elif args.id == "growth":
        report = run_growth_experiment(cfg)
    else:
        raise ValueError(f"unknown experiment {args.id!r}")
    _emit_report(report, args)
    return 0 if report.passed else 1


def cmd_bench(args) -> int:
    cfg = _experiment_config(args, f"bench-{args.kind}")
    report = bench(args.kind, cfg)
    if args.json is None and args.csv is None:
        sys.stdout.write(report.to_csv())
    else:
        _emit_report(report, args)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _env_seed() -> int:
    return int(os.environ.get("RCP_SEED", "0"))


def _add_experiment_flags(sp) -> None:
    sp.add_argument("--config", help="JSON file with ExperimentConfig fields")
    sp.add_argument("--n", help="comma-separated size grid")
    sp.add_argument("--trials", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--p", type=float)
    sp.add_argument("--k", type=int)
    sp.add_argument("--rect", help="sampling rectangle as WxH")
    sp.add_argument("--oracle-cutoff", type=int, dest="oracle_cutoff")
    sp.add_argument("--json", help="write the JSON report here")
    sp.add_argument("--csv", help="write the CSV rows here")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rcpindex",
        description="Range closest-pair indexes: generate, build, query, "
                    "check, experiment, bench.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gen", help="write a random dataset as CSV")
    sp.add_argument("--shape", required=True,
                    help="WxH rectangle or aligned:A..BxC..D segments")
    sp.add_argument("-n", type=int, default=None)
    sp.add_argument("--seed", type=int, default=_env_seed())
    sp.add_argument("-o", "--out", default=None)
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("build", help="build an index from a dataset")
    sp.add_argument("structure", choices=BUILD_KINDS)
    sp.add_argument("input", help="points CSV (segments CSV for *-rss kinds)")
    sp.add_argument("-o", "--out", required=True)
    sp.add_argument("--orientation", default="SW",
                    help="quadrant opening (quadrant kind)")
    sp.add_argument("--axis", default="v", help="strip axis (strip kind)")
    sp.add_argument("--orientation3", default="down",
                    help="3-sided opening (u-rss kind)")
    sp.add_argument("--k", type=int, default=rect_index.ADJACENT_GAP_LIMIT,
                    help="near-extreme count for the rect structures")
    sp.set_defaults(fn=cmd_build)

    sp = sub.add_parser("query", help="answer JSONL queries from an index")
    sp.add_argument("index")
    sp.add_argument("queries", help="JSONL query file")
    sp.add_argument("-o", "--out", default=None)
    sp.set_defaults(fn=cmd_query)

    sp = sub.add_parser("check", help="randomized oracle cross-check")
    sp.add_argument("--space", required=True,
                    help="quadrant | strip | 3sided | rect | halfplane")
    sp.add_argument("--n", type=int, default=48)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=_env_seed())
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("experiment", help="run a statistical experiment")
    sp.add_argument("id", help="kappa | candidates | pairprob | crossing "
                               "| psi | growth")
    sp.add_argument("--space", default="Q",
                    help="space for the candidates experiment")
    sp.add_argument("--i", type=int, default=None)
    sp.add_argument("--j", type=int, default=None)
    sp.add_argument("--line", type=float, default=None)
    sp.add_argument("--coord", type=float, default=None)
    _add_experiment_flags(sp)
    sp.set_defaults(fn=cmd_experiment)

    sp = sub.add_parser("bench", help="measure build/query performance")
    sp.add_argument("kind")
    _add_experiment_flags(sp)
    sp.set_defaults(fn=cmd_bench)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
