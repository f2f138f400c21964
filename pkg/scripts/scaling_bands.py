"""Run the average-case scaling experiments and write their reports.

Each experiment normalizes a measured quantity (candidate counts, crossing
moments, closest-pair distance, anchored-filter survivors) by its predicted
growth rate and checks the normalized means stay inside the pre-registered
max/min ratio band.  Reports land in --out as JSON plus a CSV of rows.
"""

import argparse
import pathlib

from rcpindex.experiments import (
    ExperimentConfig,
    run_candidate_count_experiment,
    run_crossing_moment_experiment,
    run_kappa_experiment,
    run_psi_filter_experiment,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results", help="report directory")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=50)
    args = ap.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    def cfg(name, sizes, **kw):
        return ExperimentConfig(name, sizes=sizes, trials=args.trials,
                                seed=args.seed, **kw)

    runs = [
        lambda: run_candidate_count_experiment("Q", cfg(
            "quadrant-count", (64, 128, 256, 512, 1024, 2048, 4096),
            oracle_cutoff=0)),
        lambda: run_candidate_count_experiment("U", cfg(
            "3sided-count", (64, 128, 256, 512, 1024), oracle_cutoff=0)),
        lambda: run_candidate_count_experiment("H", cfg(
            "halfplane-count", (32, 64, 128, 256), oracle_cutoff=0)),
        lambda: run_crossing_moment_experiment(cfg(
            "crossing-moments", (64, 128, 256, 512, 1024))),
        lambda: run_kappa_experiment(cfg(
            "kappa", (2, 32, 64, 128, 256, 512, 1024))),
        lambda: run_psi_filter_experiment(cfg(
            "anchored-filter", (64, 256, 1024, 4096), k=1)),
    ]
    failures = 0
    for run in runs:
        report = run()
        (out / f"{report.name}.json").write_text(report.to_json())
        (out / f"{report.name}.csv").write_text(report.to_csv())
        status = "ok" if report.passed else "FAILED"
        failures += not report.passed
        print(f"{report.name}: {status}  "
              f"({report.runtime_s:.1f}s, verdicts {report.verdicts})")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
