"""The desk-scale string-graph suite and the per-instance measurements taken on it."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .congestion import vcong_mwu
from .cutfinder import best_sparse_cut, bourgain_line
from .drawing import verify_conflict_bound, verify_lower_bound
from .graph import components, induced_subgraph, validate_separator
from .separator import build_separator, make_instance, separator_ratio

SEGMENT_SIZES = (20, 40, 80, 160)
SEGMENT_SEEDS = tuple(range(1, 11))
GRID_KS = tuple(range(3, 13))
COORD_RANGE = 1000
EPS = 0.1
TRIALS = 200


def instances(families=("segments", "grid")):
    if "segments" in families:
        for n in SEGMENT_SIZES:
            for seed in SEGMENT_SEEDS:
                yield "segments", n, seed
    if "grid" in families:
        for k in GRID_KS:
            yield "grid", k, 0


@dataclass
class InstanceResult:
    family: str
    size: int
    seed: int
    n: int
    m: int
    # largest component, where the congestion and cut checks run
    comp_n: int
    comp_m: int
    vcong_lower: float
    vcong_upper: float
    cut_sparsity: float
    cut_seconds: float
    spread_ratio: float
    lipschitz: float
    sep_size: int
    sep_valid: bool
    sep_ratio: float
    sep_seconds: float
    mean_conflicts: float
    conflict_bound: float
    lower_ratio: float

    @property
    def chain_ratio(self) -> float:
        """sparsity * vcong_lower / log2(n) on the cut component."""
        return self.cut_sparsity * self.vcong_lower / math.log2(self.comp_n)

    @property
    def spread_log_ratio(self) -> float:
        """spread / pair-sum scaled by log2(n)."""
        return self.spread_ratio * math.log2(self.comp_n)


def run_instance(family: str, size: int, seed: int, eps: float = EPS, trials: int = TRIALS) -> InstanceResult:
    _, g = make_instance(family, size, seed, COORD_RANGE)
    h, _, _ = induced_subgraph(g, components(g)[0])

    t0 = time.perf_counter()
    br = vcong_mwu(h, eps, seed)
    cut = best_sparse_cut(h, eps, seed, bracket=br)
    cut_seconds = time.perf_counter() - t0
    emb = bourgain_line(h, br.weighting, seed)

    t0 = time.perf_counter()
    run = build_separator(g, eps, seed)
    sep_seconds = time.perf_counter() - t0
    ok, _ = validate_separator(g, run.separator)

    conf = verify_conflict_bound(h, eps, trials, seed, bracket=br)
    low = verify_lower_bound(h, True, eps, seed, bracket=br)
    return InstanceResult(
        family, size, seed, g.n, g.m, h.n, h.m,
        br.lower, br.upper, cut.sparsity, cut_seconds,
        emb.spread / emb.pair_sum, emb.lipschitz_certificate,
        run.size, ok, separator_ratio(run.size, g.m), sep_seconds,
        conf.mean_conflicts, conf.bound, low.ratio,
    )
