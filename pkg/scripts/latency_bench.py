"""Benchmark build time, space, and query latency across structure kinds.

Writes one CSV per kind (size, build_s, space_units, queries,
median_latency_s, p99_latency_s).  The default grid stops at 2^17; pass
--big to extend to 2^20 (the strip build alone then takes ~15 min and
peaks above 3 GB).
"""

import argparse
import pathlib

from rcpindex.experiments import ExperimentConfig, bench

KINDS = ("quadrant", "strip", "rect-d1", "rect-d2", "rect-d",
         "halfplane", "u-rss", "h-rss")
#: the rectangle builds are quadratic-preprocessing desk structures; keep
#: their grids small enough to finish over a coffee
SIZE_CAP = {"rect-d1": 1 << 12, "rect-d2": 1 << 12, "rect-d": 1 << 12}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results", help="report directory")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--queries", type=int, default=2000)
    ap.add_argument("--big", action="store_true",
                    help="extend the grid to n = 2^20")
    ap.add_argument("--kinds", nargs="*", default=list(KINDS))
    args = ap.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    top = 20 if args.big else 17
    for kind in args.kinds:
        sizes = [1 << k for k in range(10, top + 1, 2)
                 if (1 << k) <= SIZE_CAP.get(kind, 1 << top)]
        report = bench(kind, ExperimentConfig(
            f"bench-{kind}", sizes=tuple(sizes), trials=args.queries,
            seed=args.seed))
        (out / f"bench-{kind}.csv").write_text(report.to_csv())
        for row in report.rows:
            print(f"{kind:10s} n={row['size']:>8}  build {row['build_s']:8.2f}s  "
                  f"units {row['space_units']:>10}  "
                  f"median {row['median_latency_s'] * 1e6:7.1f}us  "
                  f"p99 {row['p99_latency_s'] * 1e6:7.1f}us")


if __name__ == "__main__":
    main()
