"""Run the desk-scale suite once and print the constants to freeze in seplab/calibration.py.

    python scripts/calibrate.py [--out suite.csv]
"""

import argparse
import csv
import dataclasses
import math
import time

from seplab.suite import instances, run_instance

# slack over the observed extreme before rounding to 2 significant figures
HEADROOM = 1.1


def round_up(x: float, digits: int = 2) -> float:
    if x <= 0:
        return x
    scale = 10 ** (digits - 1 - math.floor(math.log10(x)))
    return math.ceil(x * scale) / scale


def round_down(x: float, digits: int = 2) -> float:
    scale = 10 ** (digits - 1 - math.floor(math.log10(x)))
    return math.floor(x * scale) / scale


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", help="per-instance CSV")
    args = ap.parse_args()
    rows = []
    t0 = time.perf_counter()
    for fam, size, seed in instances():
        r = run_instance(fam, size, seed)
        rows.append(r)
        print(f"{fam:8s} size={size:3d} seed={seed:2d} n={r.n:3d} m={r.m:5d} "
              f"chain={r.chain_ratio:.4f} sep={r.sep_size:3d} ratio={r.sep_ratio:.4f} "
              f"low={r.lower_ratio:.4f} spread*log={r.spread_log_ratio:.4f} "
              f"cut={r.cut_seconds:.1f}s sep={r.sep_seconds:.1f}s", flush=True)
    seg = [r for r in rows if r.family == "segments"]
    print(f"total {time.perf_counter() - t0:.1f}s")
    fits = {
        "ROUNDING_KAPPA": (max(r.chain_ratio for r in seg), "max"),
        "SEPARATOR_KAPPA": (max(r.sep_ratio for r in rows), "max"),
        "LOWER_BOUND_C": (min(r.lower_ratio for r in rows), "min"),
        "SPREAD_C": (min(r.spread_log_ratio for r in rows), "min"),
    }
    for name, (x, kind) in fits.items():
        frozen = round_up(x * HEADROOM) if kind == "max" else round_down(x / HEADROOM)
        print(f"{name} = {frozen}  # observed {kind} {x:.6f}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            names = [f.name for f in dataclasses.fields(rows[0])]
            w.writerow(names)
            for r in rows:
                w.writerow([getattr(r, k) for k in names])


if __name__ == "__main__":
    main()
