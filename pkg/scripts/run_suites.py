"""Run every verification suite and print a summary table; optionally keep the reports."""
import argparse
import os
import sys

from heckelab.verify import SUITES, SuiteConfig, default_jobs, run_suite


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--max-rank", type=int, default=3)
    ap.add_argument("--jobs", type=int, default=default_jobs())
    ap.add_argument("--outdir", help="write one report JSON per suite here")
    args = ap.parse_args(argv)
    if args.outdir:
        os.makedirs(args.outdir, exist_ok=True)
    print(f"{'suite':20s} {'passed':>8s} {'failed':>7s} {'skipped':>8s} {'deviat.':>8s} {'oracle':>8s} {'time[s]':>8s}")
    bad = 0
    for name in SUITES:
        rep = run_suite(SuiteConfig(name, seed=args.seed, max_rank=args.max_rank, jobs=args.jobs, timing=True))
        s = rep.summary
        bad += s["failed"] + s["oracle_failures"]
        print(f"{name:20s} {s['passed']:8d} {s['failed']:7d} {s['skipped']:8d} {s['deviations']:8d} "
              f"{s['oracle_checked']:8d} {s['wall_time_s']:8.1f}")
        if args.outdir:
            with open(os.path.join(args.outdir, f"{name}.json"), "w", encoding="utf-8") as fh:
                fh.write(rep.dumps() + "\n")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
