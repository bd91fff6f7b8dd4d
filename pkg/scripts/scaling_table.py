"""Separator scaling tables for both generator families, written as CSV.

    python scripts/scaling_table.py --outdir runs/ [--eps 0.1] [--workers 4]
"""

import argparse
from pathlib import Path

from seplab.separator import separator_experiment, write_csv
from seplab.suite import COORD_RANGE, GRID_KS, SEGMENT_SEEDS, SEGMENT_SIZES


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", default="runs")
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    jobs = {
        "segments": (SEGMENT_SIZES, SEGMENT_SEEDS),
        "grid": (GRID_KS, (0,)),
    }
    for family, (sizes, seeds) in jobs.items():
        rows = separator_experiment(family, sizes, seeds, args.eps, COORD_RANGE, args.workers)
        with open(out / f"{family}.csv", "w", newline="") as fh:
            write_csv(rows, fh)
        worst = max(r["ratio"] for r in rows)
        print(f"{family}: {len(rows)} rows, max |S|/(sqrt(m) log2(m+2)) = {worst:.4f}")


if __name__ == "__main__":
    main()
