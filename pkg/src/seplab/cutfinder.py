"""Line embeddings of the dual pseudometric and sweep rounding to sparse vertex cuts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import breadth_first_order, maximum_flow

from .congestion import CongestionBracket, VertexWeighting, vcong_mwu
from .graph import Graph, InputError, Partition


class NoSparseCut(InputError):
    """No partition with A and B both nonempty exists along the sweep."""


@dataclass
class LineEmbedding:
    f: np.ndarray
    lipschitz_certificate: float
    spread: float = 0.0
    pair_sum: float = 0.0
    anchor: tuple = ()


@dataclass
class SparsityReport:
    partition: Partition
    sparsity: float
    threshold: float
    position: int = 0
    method: str = ""
    vcong_lower: float | None = None
    vcong_upper: float | None = None
    spread_ratio: float | None = None

    @property
    def chain_ratio(self) -> float | None:
        """sparsity * vcong_lower / log2(n): the quantity bounded by the calibration constant."""
        if self.vcong_lower is None:
            return None
        n = len(self.partition.A) + len(self.partition.B) + len(self.partition.S)
        return self.sparsity * self.vcong_lower / math.log2(n)


def sparsity(p: Partition) -> Fraction:
    """|S| / (|A u S| * |B u S|), exactly."""
    if not p.A or not p.B:
        raise InputError("sparsity needs A and B nonempty")
    k = len(p.S)
    return Fraction(k, (len(p.A) + k) * (len(p.B) + k))


def spread(f: np.ndarray) -> float:
    """sum over pairs of |f(u) - f(v)|, in O(n log n)."""
    x = np.sort(np.asarray(f, dtype=float))
    n = len(x)
    return float(x @ (2 * np.arange(n) - n + 1))


def lipschitz_certificate(g: Graph, f: np.ndarray, dist: np.ndarray) -> float:
    """max over edges of |f(u) - f(v)| / d(u, v), with 0/0 read as 0."""
    if g.m == 0:
        return 0.0
    e = g.edge_array
    df = np.abs(f[e[:, 0]] - f[e[:, 1]])
    d = dist[e[:, 0], e[:, 1]]
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(df == 0, 0.0, df / d)
    return float(r.max())


def bourgain_schedule(n: int) -> tuple[list, int]:
    """Subset sizes 2^i for i = 0..ceil(log2 n) and the number of draws per size."""
    top = math.ceil(math.log2(n)) if n > 1 else 0
    sizes = [min(2**i, n) for i in range(top + 1)]
    draws = max(4, math.ceil(2 * math.log2(n))) if n > 1 else 4
    return sizes, draws


def bourgain_line(g: Graph, s: VertexWeighting, seed: int = 0, dist: np.ndarray | None = None) -> LineEmbedding:
    """Best distance-to-random-subset coordinate, by total pairwise spread.

    Every candidate ``v -> d_s(v, T)`` is 1-Lipschitz for d_s.
    """
    if dist is None:
        dist = s.distances(g)
    n = g.n
    rng = np.random.default_rng(seed)
    sizes, draws = bourgain_schedule(n)
    best_f, best_spread, best_T = None, -1.0, ()
    for size in sizes:
        for _ in range(draws):
            T = np.sort(rng.choice(n, size=size, replace=False))
            f = dist[T].min(axis=0)
            sp_ = spread(f)
            if sp_ > best_spread:
                best_f, best_spread, best_T = f, sp_, tuple(T.tolist())
    pair_sum = float(dist[np.triu_indices(n, 1)].sum())
    cert = lipschitz_certificate(g, best_f, dist)
    return LineEmbedding(best_f, cert, best_spread, pair_sum, best_T)


# ---------------------------------------------------------------------------
# sweep rounding


class _CutNetwork:
    """Vertex-split network: v_in = v, v_out = n + v, source 2n, sink 2n + 1."""

    def __init__(self, g: Graph):
        n = g.n
        self.n = n
        self.big = n + 1
        e = g.edge_array
        v = np.arange(n)
        self.rows = np.concatenate([v, n + e[:, 0], n + e[:, 1]])
        self.cols = np.concatenate([v, e[:, 1], e[:, 0]])
        self.caps = np.concatenate([np.ones(n, dtype=np.int64), np.full(2 * len(e), self.big)])

    def min_cuts(self, left, right, anchors=()) -> list:
        """Minimum vertex cuts between `left` and `right`, source- and sink-closest."""
        n, big = self.n, self.big
        src, snk = 2 * n, 2 * n + 1
        caps = self.caps.copy()
        for a in anchors:
            caps[a] = big
        rows = np.concatenate([self.rows, np.full(len(left), src), n + np.asarray(right)])
        cols = np.concatenate([self.cols, np.asarray(left), np.full(len(right), snk)])
        data = np.concatenate([caps, np.full(len(left) + len(right), big)])
        cap = sp.csr_matrix((data.astype(np.int32), (rows, cols)), shape=(2 * n + 2, 2 * n + 2))
        res = maximum_flow(cap, src, snk, method="dinic")
        if res.flow_value >= big:
            return []
        resid = (cap - res.flow).tocsr()
        resid.data[resid.data < 0] = 0
        resid.eliminate_zeros()
        fwd = np.zeros(2 * n + 2, dtype=bool)
        fwd[breadth_first_order(resid, src, directed=True, return_predecessors=False)] = True
        bwd = np.zeros(2 * n + 2, dtype=bool)
        bwd[breadth_first_order(resid.T.tocsr(), snk, directed=True, return_predecessors=False)] = True
        near_src = [v for v in range(n) if fwd[v] and not fwd[n + v]]
        near_snk = [v for v in range(n) if bwd[n + v] and not bwd[v]]
        return [near_src, near_snk]


def _crossing_endpoints(g: Graph, left: set):
    lside, rside = set(), set()
    for u, v in g.edges:
        if (u in left) != (v in left):
            a, b = (u, v) if u in left else (v, u)
            lside.add(a)
            rside.add(b)
    return lside, rside


def sweep_round(g: Graph, emb) -> SparsityReport:
    """Minimum-sparsity partition over all prefix thresholds of the sorted embedding.

    At each threshold the prefix L and suffix R are separated by the
    cheapest of: minimum vertex cuts (closest to either side, with and
    without the two extreme vertices pinned to their sides) and the naive
    cuts made of all L- or all R-endpoints of crossing edges. Candidates
    with A or B empty are discarded.
    """
    f = np.asarray(emb.f if isinstance(emb, LineEmbedding) else emb, dtype=float)
    n = g.n
    if n < 2 or np.all(f == f[0]):
        raise InputError("embedding has no spread")
    order = np.lexsort((np.arange(n), f))
    net = _CutNetwork(g)
    best = None
    for k in range(1, n):
        left = order[:k].tolist()
        right = order[k:].tolist()
        lset = set(left)
        cands = []
        for cut in net.min_cuts(left, right):
            cands.append(("mincut", cut))
        for cut in net.min_cuts(left, right, anchors=(order[0], order[-1])):
            cands.append(("anchored", cut))
        lcut, rcut = _crossing_endpoints(g, lset)
        cands.append(("naive-left", lcut))
        cands.append(("naive-right", rcut))
        for method, cut in cands:
            S = set(cut)
            A = lset - S
            B = set(right) - S
            if not A or not B:
                continue
            p = Partition.of(A, B, S)
            q = sparsity(p)
            if best is None or q < best[0]:
                thr = (f[order[k - 1]] + f[order[k]]) / 2
                best = (q, p, float(thr), k, method)
    if best is None:
        raise NoSparseCut("no threshold yields a partition with A and B nonempty")
    q, p, thr, k, method = best
    return SparsityReport(p, float(q), thr, k, method)


def best_sparse_cut(
    g: Graph, eps: float = 0.1, seed: int = 0, bracket: CongestionBracket | None = None
) -> SparsityReport:
    """Dual weighting -> line embedding -> sweep, on a connected graph.

    A precomputed ``bracket`` for ``g`` may be passed to skip the solver.
    """
    if g.n < 2:
        raise InputError("need at least 2 vertices")
    if bracket is None:
        bracket = vcong_mwu(g, eps, seed)
    emb = bourgain_line(g, bracket.weighting, seed)
    rep = sweep_round(g, emb)
    rep.vcong_lower = bracket.lower
    rep.vcong_upper = bracket.upper
    rep.spread_ratio = emb.spread / emb.pair_sum if emb.pair_sum > 0 else None
    return rep
