"""Survey which arm the adaptive rectangle structure picks.

Builds the combined structure on uniform datasets (one per seed) and on
the clustered two-column dataset, and prints the measured space of the
fast arm against the n*log2(n)^2 switching threshold.
"""

import argparse

from rcpindex.experiments import gen_interleaved_columns, gen_uniform, trial_rng
from rcpindex.geom import Rect
from rcpindex.rect import build_d, space_units


def survey(tag, points):
    d = build_d(points)
    print(f"{tag:24s} n={d.n:>6}  choice={d.choice}  "
          f"d2_units={d.d2_units:>9}  threshold={d.threshold:>11.0f}  "
          f"kept_units={space_units(d.structure):>9}")
    return d.choice


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=4096)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--block", type=int, default=None,
                    help="clustered-block size (default n//2)")
    args = ap.parse_args()

    unit = Rect(0.0, 1.0, 0.0, 1.0)
    picks = [survey(f"uniform seed={s}",
                    gen_uniform(unit, args.n, trial_rng(0, args.n, s)))
             for s in range(args.seeds)]
    print(f"uniform: fast arm in {picks.count('d2')}/{len(picks)} builds")
    survey("interleaved columns",
           gen_interleaved_columns(args.n, block=args.block))


if __name__ == "__main__":
    main()
