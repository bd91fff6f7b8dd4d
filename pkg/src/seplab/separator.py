"""Balanced separators by repeatedly cutting the largest oversized component."""

from __future__ import annotations

import csv
import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .congestion import vcong_mwu
from .cutfinder import NoSparseCut, best_sparse_cut
from .geometry import gen_grid_strings, gen_random_segments
from .graph import Graph, InputError, Separator, balance_limit, components, induced_subgraph, validate_separator

log = logging.getLogger(__name__)

CSV_COLUMNS = ["n", "m", "sep_size", "ratio", "vcong_lb", "vcong_ub", "rounds", "runtime_ms", "seed"]


@dataclass
class Round:
    component_size: int
    sparsity: float | None
    added: tuple
    method: str
    vcong_lower: float | None = None
    vcong_upper: float | None = None


@dataclass
class SeparatorRun:
    separator: Separator
    rounds: list = field(default_factory=list)
    runtime_ms: float = 0.0

    @property
    def size(self) -> int:
        return len(self.separator.S)


def _peel_vertex(h: Graph) -> int:
    """Highest-degree vertex (lowest id on ties); used when no sparse cut exists."""
    deg = [len(a) for a in h.adjacency]
    return max(range(h.n), key=lambda v: (deg[v], -v))


def build_separator(g: Graph, eps: float = 0.1, seed: int = 0) -> SeparatorRun:
    """Cut the largest component above floor(2n/3) until none remains.

    Round ``r`` calls the sparse-cut pipeline with seed ``seed + r`` on the
    induced subgraph of the component. Components without any valid
    partition (cliques) and a lone oversized vertex (only when n = 1) are
    handled by moving one vertex into the separator instead.
    """
    t0 = time.perf_counter()
    limit = balance_limit(g.n)
    S = set()
    active = [frozenset(c) for c in components(g)]
    rounds = []
    while True:
        active.sort(key=lambda c: (-len(c), min(c)))
        if not active or len(active[0]) <= limit:
            break
        comp = active.pop(0)
        h, new_to_old, _ = induced_subgraph(g, comp)
        rseed = seed + len(rounds)
        rec = None
        if h.n >= 2:
            try:
                rep = best_sparse_cut(h, eps, rseed)
                p = rep.partition
                added = tuple(sorted(new_to_old[v] for v in p.S))
                pieces = [p.A, p.B]
                rec = Round(h.n, rep.sparsity, added, rep.method, rep.vcong_lower, rep.vcong_upper)
            except NoSparseCut:
                pass
        if rec is None:
            v = _peel_vertex(h)
            added = (new_to_old[v],)
            pieces = [set(range(h.n)) - {v}]
            rec = Round(h.n, None, added, "peel")
        S.update(added)
        for piece in pieces:
            if not piece:
                continue
            sub, sub_map, _ = induced_subgraph(h, piece)
            for c in components(sub):
                active.append(frozenset(new_to_old[sub_map[v]] for v in c))
        rounds.append(rec)
        log.debug("round %d: component %d -> +%d", len(rounds), h.n, len(added))
    sep = Separator.of(S, components(g, S))
    return SeparatorRun(sep, rounds, (time.perf_counter() - t0) * 1000)


def make_instance(family: str, size: int, seed: int, coord_range: int = 1000):
    """(representation, graph) for a named generator family."""
    if family in ("segments", "random_segments"):
        return gen_random_segments(size, coord_range, seed)
    if family in ("grid", "grid_strings"):
        return gen_grid_strings(size)
    raise InputError(f"unknown family {family!r}")


def separator_ratio(sep_size: int, m: int) -> float:
    """|S| / (sqrt(m) * log2(m + 2)); 0 for edgeless graphs."""
    if m == 0:
        return 0.0
    return sep_size / (math.sqrt(m) * math.log2(m + 2))


def experiment_row(family: str, size: int, seed: int, eps: float, coord_range: int = 1000) -> dict:
    _, g = make_instance(family, size, seed, coord_range)
    t0 = time.perf_counter()
    run = build_separator(g, eps, seed)
    ok, report = validate_separator(g, run.separator)
    if not ok:
        raise RuntimeError(f"invalid separator for {family} size={size} seed={seed}: {report[:3]}")
    lb = ub = float("nan")
    if run.rounds and run.rounds[0].vcong_lower is not None:
        lb, ub = run.rounds[0].vcong_lower, run.rounds[0].vcong_upper
    else:
        big = components(g)[0]
        if len(big) >= 2:
            h, _, _ = induced_subgraph(g, big)
            br = vcong_mwu(h, eps, seed)
            lb, ub = br.lower, br.upper
    return {
        "n": g.n,
        "m": g.m,
        "sep_size": run.size,
        "ratio": separator_ratio(run.size, g.m),
        "vcong_lb": lb,
        "vcong_ub": ub,
        "rounds": len(run.rounds),
        "runtime_ms": (time.perf_counter() - t0) * 1000,
        "seed": seed,
    }


def separator_experiment(family: str, sizes, seeds, eps: float = 0.1, coord_range: int = 1000, workers: int = 1) -> list:
    """One row per (size, seed), in that order; see CSV_COLUMNS.

    The bracket columns describe the largest component of the instance.
    """
    sizes, seeds = list(sizes), list(seeds)
    if not sizes or not seeds:
        raise InputError("sizes and seeds must be nonempty")
    cells = [(family, size, seed, eps, coord_range) for size in sizes for seed in seeds]
    if workers <= 1:
        return [experiment_row(*c) for c in cells]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(experiment_row, *zip(*cells)))


def _fmt(v):
    if isinstance(v, float):
        return "nan" if np.isnan(v) else repr(round(v, 10))
    return str(v)


def write_csv(rows: list, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in CSV_COLUMNS])
