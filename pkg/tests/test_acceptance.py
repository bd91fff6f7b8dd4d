"""Acceptance criteria, one test each; a pass/fail line per criterion is printed in the summary."""

import math
import time

import numpy as np
import pytest
import scipy.sparse as sp
from scipy.sparse.csgraph import dijkstra

from seplab.calibration import LOWER_BOUND_C, ROUNDING_KAPPA, SEPARATOR_KAPPA, SPREAD_C
from seplab.congestion import Flow, congestion_of, dual_objective, vcong_exact, vcong_mwu
from seplab.drawing import PathSample, count_conflicts
from seplab.graph import complete_graph, cycle_graph, path_graph, random_graph, star_graph
from seplab.suite import instances, run_instance

from cli_support import check_determinism
from conftest import record_criterion

pytestmark = pytest.mark.acceptance


@pytest.fixture(scope="session")
def suite():
    """Every suite instance measured once (largest component for cut and congestion checks)."""
    return [run_instance(*inst) for inst in instances()]


def label(r):
    return f"{r.family}-{r.size}-s{r.seed}"


def test_exact_oracle_on_analytic_values():
    cases = {
        "P3": (path_graph(3), 2.0),
        "K3": (complete_graph(3), 1.0),
        "K4": (complete_graph(4), 1.5),
        "K1,3": (star_graph(3), 4.5),
        "C4": (cycle_graph(4), 2.0),
    }
    bad = []
    slowest = 0.0
    for name, (g, want) in cases.items():
        t0 = time.perf_counter()
        got, _ = vcong_exact(g)
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        if abs(got - want) > 1e-7 or dt >= 5:
            bad.append(f"{name}={got} in {dt:.2f}s")
    ok = not bad
    record_criterion(1, "exact oracle matches analytic values", ok, f"slowest {slowest:.3f}s" if ok else "; ".join(bad))
    assert ok, bad


def small_connected_graphs(count=50):
    out = []
    for seed in range(count):
        rng = np.random.default_rng(seed)
        while True:
            n = int(rng.integers(3, 9))
            g = random_graph(n, float(rng.uniform(0.3, 0.8)), rng)
            if g.is_connected():
                out.append(g)
                break
    return out


def test_solver_brackets_exact_value():
    t0 = time.perf_counter()
    bad = []
    for i, g in enumerate(small_connected_graphs()):
        exact, _ = vcong_exact(g)
        br = vcong_mwu(g, eps=0.1, seed=i)
        inside = br.lower - 1e-9 <= exact <= br.upper + 1e-9
        tight = 0.9 * exact - 1e-9 <= br.lower and br.upper <= 1.1 * exact + 1e-9
        if not (inside and tight):
            bad.append((i, exact, br.lower, br.upper))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    record_criterion(2, "solver brackets exact value within 10%", ok, f"50 graphs in {dt:.1f}s, {len(bad)} misses")
    assert ok, (bad, dt)


def random_simple_paths(g, u, v, rng, k):
    """Up to k distinct simple u-v paths: shortest paths under random positive edge lengths."""
    found = set()
    e = g.edge_array
    for _ in range(k):
        w = rng.random(g.m) + 1e-3
        m = sp.coo_matrix((np.r_[w, w], (np.r_[e[:, 0], e[:, 1]], np.r_[e[:, 1], e[:, 0]])), shape=(g.n, g.n)).tocsr()
        _, pred = dijkstra(m, indices=u, return_predecessors=True)
        p = [v]
        while p[-1] != u:
            p.append(int(pred[p[-1]]))
        found.add(tuple(reversed(p)))
    return sorted(found)


def test_weak_duality_on_random_pairs():
    rng = np.random.default_rng(2024)
    worst = math.inf
    checked = 0
    while checked < 1000:
        n = int(rng.integers(2, 13))
        g = random_graph(n, float(rng.uniform(0.2, 0.9)), rng)
        if not g.is_connected():
            continue
        paths = {}
        for u in range(n):
            for v in range(u + 1, n):
                cands = random_simple_paths(g, u, v, rng, 3)
                w = rng.dirichlet(np.ones(len(cands)))
                paths[(u, v)] = list(zip(cands, w.tolist()))
        f = Flow(n, paths)
        f.validate(g)
        s = rng.exponential(size=n) * (rng.random(n) < 0.8)
        if s.sum() == 0:
            s[rng.integers(n)] = 1.0
        total, pairs = dual_objective(g, s)
        worst = min(worst, congestion_of(g, f).max_congestion - pairs / total)
        checked += 1
    ok = worst >= -1e-9
    record_criterion(3, "weak duality on 1000 random pairs", ok, f"min slack {worst:.3g}")
    assert ok


def test_embeddings_are_lipschitz(suite):
    worst = max(r.lipschitz for r in suite)
    ok = worst <= 1 + 1e-9
    record_criterion(4, "line embeddings are 1-Lipschitz", ok, f"max certificate {worst:.15f} over {len(suite)} instances")
    assert ok


def test_rounding_quality(suite):
    seg = [r for r in suite if r.family == "segments"]
    assert len(seg) == 40
    bad = [label(r) for r in seg if not (r.cut_sparsity <= ROUNDING_KAPPA * math.log2(r.comp_n) / r.vcong_lower)]
    slow = [label(r) for r in seg if r.cut_seconds >= 60]
    ok = not bad and not slow
    worst = max(r.chain_ratio for r in seg)
    record_criterion(
        5, "sparse cut within kappa log2(n) / vcong_lb", ok,
        f"max ratio {worst:.4f} vs kappa {ROUNDING_KAPPA}, slowest {max(r.cut_seconds for r in seg):.1f}s",
    )
    assert ok, (bad, slow)


def test_separator_size_scaling(suite):
    invalid = [label(r) for r in suite if not r.sep_valid]
    over = [label(r) for r in suite if r.sep_ratio > SEPARATOR_KAPPA]
    total = sum(r.sep_seconds for r in suite)
    ok = not invalid and not over and total < 600
    record_criterion(
        6, "valid separators with |S| / (sqrt(m) log2(m+2)) <= kappa_sep", ok,
        f"max ratio {max(r.sep_ratio for r in suite):.4f} vs {SEPARATOR_KAPPA}, total {total:.0f}s",
    )
    assert ok, (invalid, over, total)


def test_conflict_bound(suite):
    p3 = count_conflicts(path_graph(3), PathSample({(0, 1): (0, 1), (0, 2): (0, 1, 2), (1, 2): (1, 2)}, 0))
    k4 = count_conflicts(complete_graph(4), PathSample({(u, v): (u, v) for u in range(4) for v in range(u + 1, 4)}, 0))
    broken = [label(r) for r in suite if r.conflict_bound - r.mean_conflicts < 0]
    ok = p3 == 3 and k4 == 15 and not broken
    worst = max(r.mean_conflicts / r.conflict_bound for r in suite)
    record_criterion(7, "mean conflicts <= 4(m+n)C^2", ok, f"P3={p3} K4={k4}, max mean/bound {worst:.3f}")
    assert ok, broken


def test_congestion_lower_bound(suite):
    low = min(r.lower_ratio for r in suite)
    ok = LOWER_BOUND_C > 0 and low >= LOWER_BOUND_C
    record_criterion(8, "vcong_lb sqrt(m) / n^2 >= c_fit", ok, f"min ratio {low:.4f} vs c_fit {LOWER_BOUND_C}")
    assert ok


def test_cli_determinism(tmp_path):
    results = check_determinism(tmp_path)
    ok = all(results.values())
    record_criterion(9, "CLI output is reproducible", ok, ", ".join(f"{k}={'same' if v else 'DIFF'}" for k, v in results.items()))
    assert ok, results


def test_embedding_spread_regression(suite):
    # not a numbered criterion: the line embedding keeps a fixed share of the pair-distance sum
    low = min(r.spread_log_ratio for r in suite)
    assert low >= SPREAD_C
