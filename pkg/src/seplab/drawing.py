"""Combinatorial simulation of the random drawing of K_V along flow paths.

One path per vertex pair is drawn from the flow. Two drawn K_V edges can
only cross if some vertex of one path equals or is adjacent to some vertex
of the other; those pairs are counted exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .congestion import CongestionBracket, Flow, RoutingMixture, congestion_of, vcong_mwu
from .graph import Graph, InputError


@dataclass
class PathSample:
    paths: dict
    seed: int


def _pairs(n: int):
    iu, ju = np.triu_indices(n, 1)
    return iu, ju


def _mixture_indices(f: RoutingMixture, rng: np.random.Generator) -> np.ndarray:
    k = f.n * (f.n - 1) // 2
    return rng.choice(len(f.weights), size=k, p=f.weights)


def sample_paths(g: Graph, f, seed: int) -> PathSample:
    """Independent draw of one path per pair, with probability equal to its flow."""
    rng = np.random.default_rng(seed)
    out = {}
    if isinstance(f, RoutingMixture):
        idx = _mixture_indices(f, rng)
        for j, u, v in zip(idx.tolist(), *(a.tolist() for a in _pairs(f.n))):
            out[(u, v)] = f.path(j, u, v)
        return PathSample(out, seed)
    for pair in sorted(f.paths):
        entries = f.paths[pair]
        w = np.array([x for _, x in entries], dtype=float)
        j = rng.choice(len(entries), p=w / w.sum())
        out[pair] = tuple(entries[j][0])
    return PathSample(out, seed)


@numba.njit(cache=True)
def _count_all_pairs(n, inner_bits, hood_bits, hood):
    """Conflicting pairs when row q is the path of the q-th pair u < v in triu order.

    Path q > p avoids N[p] only if both its endpoints lie outside N[p], so
    only pairs drawn from the complement of N[p] are inspected; all other
    later pairs conflict with p outright.
    """
    k = n * (n - 1) // 2
    words = inner_bits.shape[1]
    outside = np.empty(n, dtype=np.int64)
    conflicts = 0
    p = 0
    for u in range(n):
        for v in range(u + 1, n):
            z = 0
            for w in range(u + 1, n):
                if not hood[p, w]:
                    outside[z] = w
                    z += 1
            clear = 0
            for i in range(z):
                a = outside[i]
                base = a * n - a * (a + 1) // 2 - a - 1
                for j in range(i + 1, z):
                    q = base + outside[j]
                    x = np.uint64(0)
                    for t in range(words):
                        x |= inner_bits[q, t] & hood_bits[p, t]
                    clear += x == 0
            conflicts += k - 1 - p - clear
            p += 1
    return conflicts


def _pack(rows: np.ndarray) -> np.ndarray:
    k, n = rows.shape
    words = max(1, (n + 63) // 64)
    padded = np.zeros((k, words * 64), dtype=bool)
    padded[:, :n] = rows
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64)


def _hood(g: Graph, members: np.ndarray) -> np.ndarray:
    """Closed neighbourhood rows: N[P] for each path row."""
    closed = g.dense_adjacency().astype(np.float32)
    np.fill_diagonal(closed, 1.0)
    return (members.astype(np.float32) @ closed) > 0


def _count_from_members(g: Graph, members: np.ndarray) -> int:
    """Conflicts among arbitrary path rows (direct pairwise check)."""
    hits = (_hood(g, members).astype(np.float32) @ members.T.astype(np.float32)) > 0
    return int(np.triu(hits, 1).sum())


def _count_complete(g: Graph, members: np.ndarray) -> int:
    """Conflicts when ``members`` has one row per pair u < v in triu order."""
    U, V = _pairs(g.n)
    rows = np.arange(len(U))
    inner = members.copy()
    inner[rows, U] = False
    inner[rows, V] = False
    hood = _hood(g, members)
    return int(_count_all_pairs(g.n, _pack(inner), _pack(hood), hood))


def count_conflicts(g: Graph, ps: PathSample) -> int:
    """Number of unordered pairs of sampled paths that share or join vertices."""
    keys = sorted(ps.paths)
    members = np.zeros((len(keys), g.n), dtype=bool)
    for i, key in enumerate(keys):
        members[i, list(ps.paths[key])] = True
    if len(keys) == g.n * (g.n - 1) // 2 and keys == list(zip(*(a.tolist() for a in _pairs(g.n)))):
        return _count_complete(g, members)
    return _count_from_members(g, members)


def _mixture_members(f: RoutingMixture, rng: np.random.Generator) -> np.ndarray:
    """Vertex-membership rows of one sampled path per pair (same draw as sample_paths)."""
    idx = _mixture_indices(f, rng)
    U, V = _pairs(f.n)
    preds = np.stack(f.preds)
    members = np.zeros((len(U), f.n), dtype=bool)
    rows = np.arange(len(U))
    cur = V.copy()
    members[rows, cur] = True
    live = cur != U
    while live.any():
        r = rows[live]
        cur[r] = preds[idx[r], U[r], cur[r]]
        members[r, cur[r]] = True
        live = cur != U
    return members


@dataclass
class ConflictReport:
    mean_conflicts: float
    bound: float
    congestion: float
    trials: int
    counts: list

    @property
    def margin(self) -> float:
        return self.bound - self.mean_conflicts

    @property
    def holds(self) -> bool:
        return self.margin >= 0

    def to_json(self) -> dict:
        return {
            "mean_conflicts": self.mean_conflicts,
            "bound": self.bound,
            "congestion": self.congestion,
            "trials": self.trials,
            "margin": self.margin,
        }


def conflict_bound(g: Graph, congestion: float) -> float:
    """4 (m + n) C^2."""
    return 4.0 * (g.m + g.n) * congestion**2


def verify_conflict_bound(
    g: Graph, eps: float = 0.1, trials: int = 200, seed: int = 0, bracket: CongestionBracket | None = None
) -> ConflictReport:
    """Mean conflict count over ``trials`` samples versus 4 (m + n) C^2.

    ``C`` is the sampled flow's own maximum congestion. Trial ``t`` uses
    seed ``seed + t``.
    """
    if trials < 1:
        raise InputError("trials must be positive")
    if bracket is None:
        bracket = vcong_mwu(g, eps, seed)
    f = bracket.flow
    C = congestion_of(g, f).max_congestion
    counts = []
    for t in range(trials):
        rng = np.random.default_rng(seed + t)
        counts.append(_count_complete(g, _mixture_members(f, rng)))
    return ConflictReport(float(np.mean(counts)), conflict_bound(g, C), C, trials, counts)


def verify_flow_conflicts(g: Graph, f: Flow, trials: int, seed: int = 0) -> ConflictReport:
    """Same check for an explicit flow (used with exact-oracle flows)."""
    C = congestion_of(g, f).max_congestion
    counts = [count_conflicts(g, sample_paths(g, f, seed + t)) for t in range(trials)]
    return ConflictReport(float(np.mean(counts)), conflict_bound(g, C), C, trials, counts)


@dataclass
class LowerBoundReport:
    n: int
    m: int
    vcong_lower: float
    vcong_upper: float

    @property
    def ratio(self) -> float:
        """vcong_lower * sqrt(m) / n^2."""
        return self.vcong_lower * math.sqrt(self.m) / self.n**2

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "vcong_lb": self.vcong_lower, "vcong_ub": self.vcong_upper, "ratio": self.ratio}


def verify_lower_bound(
    g: Graph, is_string: bool, eps: float = 0.1, seed: int = 0, bracket: CongestionBracket | None = None
) -> LowerBoundReport:
    """Certified vcong lower bound scaled by sqrt(m) / n^2; string graphs only."""
    if not is_string:
        raise InputError("the congestion lower bound is claimed for string graphs only")
    if bracket is None:
        bracket = vcong_mwu(g, eps, seed)
    return LowerBoundReport(g.n, g.m, bracket.lower, bracket.upper)
