"""Command-line entry point: ``seplab <subcommand> ...``.

Exit status is 0 on success, 1 on bad input or usage, 2 on internal or
convergence failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .congestion import ConvergenceError, vcong_mwu
from .cutfinder import best_sparse_cut
from .drawing import verify_conflict_bound, verify_lower_bound
from .graph import InputError, components, induced_subgraph, validate_separator
from .io import load_graph, load_representation, save_graph, save_representation
from .separator import build_separator, make_instance, separator_experiment, write_csv

log = logging.getLogger("seplab")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def parse_seeds(text: str) -> list:
    """``"1..10"`` (inclusive) or ``"1,4,9"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise InputError(f"empty seed range {part}")
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise InputError("no seeds given")
    return out


def parse_sizes(text: str) -> list:
    sizes = [int(x) for x in text.split(",") if x.strip()]
    if not sizes or any(s < 1 for s in sizes):
        raise InputError(f"bad sizes {text!r}")
    return sizes


def _eps(text: str) -> float:
    v = float(text)
    if not (0 < v <= 0.5):
        raise argparse.ArgumentTypeError(f"eps must lie in (0, 0.5], got {v}")
    return v


def thread_cap() -> int:
    raw = os.environ.get("SEPLAB_THREADS", "0")
    try:
        k = int(raw)
    except ValueError:
        raise InputError(f"SEPLAB_THREADS must be an integer, got {raw!r}") from None
    return k if k > 0 else (os.cpu_count() or 1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="seplab", description="Balanced separators in string graphs via vertex congestion.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a string graph and its representation")
    gen.add_argument("--family", choices=["segments", "grid"], required=True)
    gen.add_argument("--n", type=int, default=50, help="segment count (segments)")
    gen.add_argument("--k", type=int, default=3, help="grid size (grid)")
    gen.add_argument("--coord-range", type=int, default=1000)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="graph JSON path")
    gen.add_argument("--rep-out", help="representation JSON path (default: <out>.rep.json)")

    def common(sp, seed=True):
        sp.add_argument("--in", dest="inp", required=True, help="graph JSON")
        sp.add_argument("--eps", type=_eps, default=0.1)
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write JSON here instead of stdout")

    common(sub.add_parser("vcong", help="certified vertex-congestion bracket"))
    common(sub.add_parser("cut", help="sparse vertex cut"))
    common(sub.add_parser("separate", help="balanced separator"))
    v1 = sub.add_parser("verify-lemma1", help="conflict-count bound and congestion lower bound")
    common(v1)
    v1.add_argument("--trials", type=int, default=200)
    v1.add_argument("--rep", help="representation JSON; marks the graph as a string graph")
    v1.add_argument("--largest-component", action="store_true", help="restrict to the largest component")

    ex = sub.add_parser("experiment", help="separator scaling table (CSV)")
    ex.add_argument("--family", choices=["segments", "grid"], required=True)
    ex.add_argument("--sizes", required=True, help="comma list; n for segments, k for grid")
    ex.add_argument("--seeds", default="1", help="a..b inclusive or comma list")
    ex.add_argument("--eps", type=_eps, default=0.1)
    ex.add_argument("--coord-range", type=int, default=1000)
    ex.add_argument("--out", required=True, help="CSV path")
    return p


def _emit(obj, out):
    text = json.dumps(obj, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_gen(a):
    size = a.n if a.family == "segments" else a.k
    rep, g = make_instance(a.family, size, a.seed, a.coord_range)
    save_graph(g, a.out)
    rep_out = a.rep_out or str(Path(a.out).with_suffix("")) + ".rep.json"
    save_representation(rep, rep_out)
    log.info("wrote %s (n=%d, m=%d) and %s", a.out, g.n, g.m, rep_out)


def _cmd_vcong(a):
    g = load_graph(a.inp)
    br = vcong_mwu(g, a.eps, a.seed)
    _emit(
        {
            "vcong_lb": br.lower,
            "vcong_ub": br.upper,
            "s": br.weighting.s.tolist(),
            "max_congestion_vertex": br.profile.argmax,
        },
        a.out,
    )


def _cmd_cut(a):
    g = load_graph(a.inp)
    rep = best_sparse_cut(g, a.eps, a.seed)
    p = rep.partition
    _emit({"A": sorted(p.A), "B": sorted(p.B), "S": sorted(p.S), "sparsity": rep.sparsity}, a.out)


def _cmd_separate(a):
    g = load_graph(a.inp)
    run = build_separator(g, a.eps, a.seed)
    ok, report = validate_separator(g, run.separator)
    _emit(
        {
            "S": sorted(run.separator.S),
            "parts": [sorted(c) for c in run.separator.parts],
            "sep_size": run.size,
            "rounds": len(run.rounds),
            "valid": ok,
            "violations": report,
            "timing": {"runtime_ms": run.runtime_ms},
        },
        a.out,
    )
    if not ok:
        raise RuntimeError(f"separator failed validation: {report[:3]}")


def _cmd_verify(a):
    g = load_graph(a.inp)
    is_string = False
    if a.rep:
        load_representation(a.rep, expected=g)
        is_string = True
    if a.largest_component:
        g, _, _ = induced_subgraph(g, components(g)[0])
    if not g.is_connected():
        raise InputError("graph is disconnected (use --largest-component)")
    br = vcong_mwu(g, a.eps, a.seed)
    conf = verify_conflict_bound(g, a.eps, a.trials, a.seed, bracket=br)
    out = conf.to_json()
    out["holds"] = conf.holds
    if is_string:
        lb = verify_lower_bound(g, True, a.eps, a.seed, bracket=br)
        out["lower_bound"] = lb.to_json()
    _emit(out, a.out)


def _cmd_experiment(a):
    rows = separator_experiment(
        a.family, parse_sizes(a.sizes), parse_seeds(a.seeds), a.eps, a.coord_range, workers=thread_cap()
    )
    with open(a.out, "w", newline="") as fh:
        write_csv(rows, fh)


COMMANDS = {
    "gen": _cmd_gen,
    "vcong": _cmd_vcong,
    "cut": _cmd_cut,
    "separate": _cmd_separate,
    "verify-lemma1": _cmd_verify,
    "experiment": _cmd_experiment,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"seplab: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        COMMANDS[args.cmd](args)
    except (InputError, ValueError, OSError) as exc:
        print(f"seplab: error: {exc}", file=sys.stderr)
        return 1
    except ConvergenceError as exc:
        print(f"seplab: convergence failure: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"seplab: internal error: {exc!r}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
