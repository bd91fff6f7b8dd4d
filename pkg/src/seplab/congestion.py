"""All-pair unit-demand vertex congestion: exact LP oracle, approximate solver, duals.

Conventions shared by every function here:

* a path through ``w`` loads ``w`` by its weight when ``w`` is internal and
  by half its weight when ``w`` is an endpoint;
* a vertex weighting ``s`` gives edge ``{u, v}`` length ``(s[u] + s[v]) / 2``,
  so the length of a path equals the sum of ``s`` over its vertices with the
  two endpoints counted half. Pricing a path and loading a path therefore
  use the same coefficients and weak duality holds exactly:
  ``max_w cong(w) >= sum_{pairs} d_s(u, v) / sum_w s(w)`` for every flow.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog
from scipy.sparse.csgraph import dijkstra

from .graph import Graph, InputError

log = logging.getLogger(__name__)

FLOW_TOL = 1e-9


class ConvergenceError(RuntimeError):
    """The approximate solver hit its round cap; carries the best bracket found."""

    def __init__(self, message, lower, upper, weighting=None, flow=None):
        super().__init__(f"{message} (best bracket [{lower:.6g}, {upper:.6g}])")
        self.lower = lower
        self.upper = upper
        self.weighting = weighting
        self.flow = flow


class DegenerateWeighting(ValueError):
    """A weighting whose pair-distance sum is zero cannot be normalized."""


@dataclass
class Flow:
    """Explicit path flow: ``paths[(u, v)]`` (u < v) lists ``(path, weight)``."""

    n: int
    paths: dict

    def validate(self, g: Graph, tol: float = FLOW_TOL):
        if self.n != g.n:
            raise InputError(f"flow is for n={self.n}, graph has n={g.n}")
        for u in range(g.n):
            for v in range(u + 1, g.n):
                entries = self.paths.get((u, v))
                if not entries:
                    raise InputError(f"no flow for pair ({u}, {v})")
                total = 0.0
                for path, w in entries:
                    _check_path(g, path, u, v)
                    if w < -tol or w > 1 + tol:
                        raise InputError(f"path weight {w} outside [0, 1] for pair ({u}, {v})")
                    total += w
                if abs(total - 1.0) > tol:
                    raise InputError(f"pair ({u}, {v}) carries {total}, not 1")


def _check_path(g: Graph, path, u: int, v: int):
    if len(path) < 2 or {path[0], path[-1]} != {u, v}:
        raise InputError(f"path {path} does not join {u} and {v}")
    if len(set(path)) != len(path):
        raise InputError(f"path {path} is not simple")
    for a, b in zip(path, path[1:]):
        if not (0 <= a < g.n and 0 <= b < g.n) or not g.has_edge(a, b):
            raise InputError(f"path {path} uses non-edge ({a}, {b})")


@dataclass
class RoutingMixture:
    """Convex combination of single-path routings.

    Routing ``j`` sends every pair ``u < v`` along the path to ``v`` in the
    shortest-path tree rooted at ``u`` stored in ``preds[j]``. Picking a
    routing index with probability ``weights[j]`` independently per pair
    draws each pair's path with exactly its flow value.
    """

    n: int
    preds: list
    weights: np.ndarray
    loads: np.ndarray = field(repr=False)

    def path(self, j: int, u: int, v: int) -> tuple:
        pred = self.preds[j][u]
        out = [v]
        while out[-1] != u:
            out.append(int(pred[out[-1]]))
        return tuple(reversed(out))

    @cached_property
    def paths(self) -> dict:
        out = {}
        for u in range(self.n):
            for v in range(u + 1, self.n):
                acc = {}
                for j, w in enumerate(self.weights):
                    p = self.path(j, u, v)
                    acc[p] = acc.get(p, 0.0) + float(w)
                out[(u, v)] = sorted(acc.items())
        return out

    def to_flow(self) -> Flow:
        return Flow(self.n, self.paths)

    def validate(self, g: Graph, tol: float = FLOW_TOL):
        self.to_flow().validate(g, tol)


@dataclass
class CongestionProfile:
    values: np.ndarray

    @property
    def max_congestion(self) -> float:
        return float(self.values.max()) if len(self.values) else 0.0

    @property
    def argmax(self) -> int:
        return int(np.argmax(self.values))


@dataclass
class VertexWeighting:
    s: np.ndarray

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)
        if np.any(self.s < 0) or not np.all(np.isfinite(self.s)):
            raise InputError("vertex weights must be finite and nonnegative")

    def edge_lengths(self, g: Graph) -> np.ndarray:
        e = g.edge_array
        return (self.s[e[:, 0]] + self.s[e[:, 1]]) / 2

    def distances(self, g: Graph) -> np.ndarray:
        """All-pairs d_s as a dense (n, n) array."""
        return dijkstra(g.weighted_csr(self.edge_lengths(g)), directed=False)


def congestion_of(g: Graph, f) -> CongestionProfile:
    """Evaluate cong(w) for every vertex under flow ``f``."""
    if isinstance(f, RoutingMixture):
        return CongestionProfile(f.weights @ f.loads)
    cong = np.zeros(g.n)
    for (u, v), entries in f.paths.items():
        for path, w in entries:
            _check_path(g, path, u, v)
            cong[list(path[1:-1])] += w
            cong[path[0]] += w / 2
            cong[path[-1]] += w / 2
    return CongestionProfile(cong)


def _pair_sum(d: np.ndarray) -> float:
    return float(d[np.triu_indices(len(d), 1)].sum())


def dual_objective(g: Graph, s) -> tuple[float, float]:
    """Return ``(sum_v s(v), sum_{pairs} d_s(u, v))``."""
    if not g.is_connected():
        raise InputError("graph is disconnected")
    w = s if isinstance(s, VertexWeighting) else VertexWeighting(s)
    return float(w.s.sum()), _pair_sum(w.distances(g))


def normalized_weighting(g: Graph, s) -> VertexWeighting:
    """Rescale ``s`` so its pair-distance sum is 1; then ``1 / sum(s)`` is a vcong lower bound."""
    total, pairs = dual_objective(g, s)
    if pairs <= 0:
        raise DegenerateWeighting("pair-distance sum is zero; weighting cannot be rescaled")
    w = s.s if isinstance(s, VertexWeighting) else np.asarray(s, dtype=float)
    return VertexWeighting(w / pairs)


def dual_bound(g: Graph, s) -> float:
    """Weak-duality lower bound ``sum d_s / sum s`` on vcong(g)."""
    total, pairs = dual_objective(g, s)
    if total <= 0:
        raise DegenerateWeighting("weighting is identically zero")
    return pairs / total


# ---------------------------------------------------------------------------
# exact oracle


def simple_paths(g: Graph, u: int, v: int) -> list:
    """All simple u-v paths, in lexicographic order."""
    out = []
    stack = [u]
    on = [False] * g.n
    on[u] = True

    def walk(x):
        if x == v:
            out.append(tuple(stack))
            return
        for y in g.adjacency[x]:
            if not on[y]:
                on[y] = True
                stack.append(y)
                walk(y)
                stack.pop()
                on[y] = False

    walk(u)
    return out


def vcong_exact(g: Graph, max_n: int = 8) -> tuple[float, Flow]:
    """Solve the path-based min-max congestion LP over all simple paths.

    Returns the optimum and an optimal flow. Exponential in n; refuses
    graphs with more than ``max_n`` vertices.
    """
    if g.n > max_n:
        raise InputError(f"n={g.n} exceeds exact-oracle cap {max_n}")
    if not g.is_connected():
        raise InputError("graph is disconnected; some pair has no path")
    n = g.n
    if n < 2:
        return 0.0, Flow(n, {})
    pairs, all_paths = [], []
    for u in range(n):
        for v in range(u + 1, n):
            pairs.append((u, v))
            all_paths.append(simple_paths(g, u, v))
    npaths = sum(len(p) for p in all_paths)
    # columns: one per path, then t
    eq_r, eq_c, ub_r, ub_c, ub_v = [], [], [], [], []
    col = 0
    for k, plist in enumerate(all_paths):
        for path in plist:
            eq_r.append(k)
            eq_c.append(col)
            for w in path[1:-1]:
                ub_r.append(w)
                ub_c.append(col)
                ub_v.append(1.0)
            for w in (path[0], path[-1]):
                ub_r.append(w)
                ub_c.append(col)
                ub_v.append(0.5)
            col += 1
    ub_r += list(range(n))
    ub_c += [npaths] * n
    ub_v += [-1.0] * n
    A_ub = sp.csr_matrix((ub_v, (ub_r, ub_c)), shape=(n, npaths + 1))
    A_eq = sp.csr_matrix((np.ones(len(eq_r)), (eq_r, eq_c)), shape=(len(pairs), npaths + 1))
    c = np.zeros(npaths + 1)
    c[-1] = 1.0
    res = linprog(
        c, A_ub=A_ub, b_ub=np.zeros(n), A_eq=A_eq, b_eq=np.ones(len(pairs)),
        bounds=[(0, None)] * npaths + [(None, None)], method="highs",
        options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
    )
    if res.status != 0:
        raise RuntimeError(f"exact LP failed: {res.message}")
    x = res.x[:npaths]
    paths, col = {}, 0
    for pair, plist in zip(pairs, all_paths):
        xs = np.clip(x[col:col + len(plist)], 0.0, None)
        xs = xs / xs.sum()
        paths[pair] = [(p, float(w)) for p, w in zip(plist, xs) if w > 1e-12]
        total = sum(w for _, w in paths[pair])
        paths[pair] = [(p, w / total) for p, w in paths[pair]]
        col += len(plist)
    return float(res.x[-1]), Flow(n, paths)


# ---------------------------------------------------------------------------
# approximate solver


def routing_loads(dist: np.ndarray, pred: np.ndarray) -> np.ndarray:
    """Vertex loads of routing every pair u < v along the shortest-path tree of u.

    Requires strictly positive edge lengths so that every child is farther
    from the root than its parent.
    """
    n = len(dist)
    rows = np.arange(n)
    order = np.argsort(-dist, axis=1, kind="stable")
    # below[u, w]: number of targets v > u in the subtree of w (tree of u)
    below = (rows[None, :] > rows[:, None]).astype(float)
    for k in range(n - 1):
        nodes = order[:, k]
        par = pred[rows, nodes]
        ok = par >= 0
        below[rows[ok], par[ok]] += below[rows[ok], nodes[ok]]
    internal = below.sum(axis=0) - np.diag(below) - rows
    return internal + (n - 1) / 2


@dataclass
class CongestionBracket:
    """Result of :func:`vcong_mwu`: ``lower <= vcong(g) <= upper``."""

    upper: float
    flow: RoutingMixture
    weighting: VertexWeighting
    lower: float
    rounds: int

    def __iter__(self):
        return iter((self.upper, self.flow, self.weighting, self.lower))

    @property
    def profile(self) -> CongestionProfile:
        return CongestionProfile(self.flow.weights @ self.flow.loads)


# Multiplicative-weights temperature: vertex length ~ exp(TEMPERATURE * load / max load).
TEMPERATURE = 5.0
# Share of the best certified weighting mixed into the master-LP duals.
STABILIZATION = 0.7


def _master(columns: np.ndarray):
    """min t over convex combinations of routing load vectors; returns (t, lambda, vertex duals)."""
    J, n = columns.shape
    c = np.zeros(J + 1)
    c[-1] = 1.0
    A_ub = np.hstack([columns.T, -np.ones((n, 1))])
    A_eq = np.zeros((1, J + 1))
    A_eq[0, :J] = 1.0
    res = linprog(
        c, A_ub=A_ub, b_ub=np.zeros(n), A_eq=A_eq, b_eq=[1.0],
        bounds=[(0, None)] * J + [(None, None)], method="highs",
    )
    if res.status != 0:
        raise RuntimeError(f"master LP failed: {res.message}")
    lam = np.clip(res.x[:J], 0.0, None)
    lam /= lam.sum()
    duals = np.clip(-res.ineqlin.marginals, 0.0, None)
    return lam, duals


def vcong_mwu(g: Graph, eps: float = 0.1, seed: int = 0, max_rounds: int | None = None) -> CongestionBracket:
    """Certified (1 + eps)-bracket on vcong(g).

    Each round prices shortest-path routings under two vertex length
    functions: multiplicative weights exponential in the current vertex
    loads, and the duals of a small LP that re-mixes all routings found so
    far (stabilized towards the best certificate). The primal side is the
    LP's mixture of routings; the dual side is the best weak-duality
    bound seen. Stops once ``upper <= (1 + eps) * lower``.

    The solver is deterministic; ``seed`` is accepted for interface
    symmetry with the randomized stages and does not change the result.
    """
    if not (0 < eps <= 0.5):
        raise InputError(f"eps must lie in (0, 0.5], got {eps}")
    if g.n < 2:
        raise InputError("need at least 2 vertices")
    if not g.is_connected():
        raise InputError("graph is disconnected; all-pair flow is infeasible")
    n = g.n
    if max_rounds is None:
        max_rounds = max(50, math.ceil(math.log(n + 1) / eps**2))
    iu = np.triu_indices(n, 1)
    e = g.edge_array

    preds, cols = [], []
    best_lb, best_s = 0.0, None

    def price(s):
        nonlocal best_lb, best_s
        s = s / s.sum()
        # tiny uniform length keeps every edge positive and favors fewer hops on ties
        s = s + 1e-9 / n
        csr = g.weighted_csr((s[e[:, 0]] + s[e[:, 1]]) / 2)
        dist, pred = dijkstra(csr, directed=False, return_predecessors=True)
        lb = float(dist[iu].sum() / s.sum())
        if lb > best_lb:
            best_lb, best_s = lb, s
        preds.append(pred.astype(np.int32))
        cols.append(routing_loads(dist, pred))

    price(np.ones(n))
    lam = np.ones(1)
    ub = float(cols[0].max())
    for rnd in range(1, max_rounds + 1):
        lam, duals = _master(np.array(cols))
        loads = lam @ np.array(cols)
        ub = float(loads.max())
        if ub <= (1 + eps) * best_lb:
            return _bracket(g, preds, cols, lam, best_s, ub, rnd)
        z = TEMPERATURE * loads / ub
        price(np.exp(z - z.max()))
        if duals.sum() > 0:
            price(STABILIZATION * best_s + (1 - STABILIZATION) * duals / duals.sum())
    br = _bracket(g, preds, cols, lam, best_s, ub, max_rounds)
    raise ConvergenceError(
        f"no (1+{eps})-bracket within {max_rounds} rounds", br.lower, br.upper, br.weighting, br.flow
    )


def _bracket(g, preds, cols, lam, best_s, ub, rounds) -> CongestionBracket:
    keep = np.flatnonzero(lam > 1e-12)
    w = lam[keep] / lam[keep].sum()
    loads = np.array(cols)[keep]
    flow = RoutingMixture(g.n, [preds[j] for j in keep], w, loads)
    weighting = normalized_weighting(g, best_s)
    return CongestionBracket(float((w @ loads).max()), flow, weighting, 1.0 / float(weighting.s.sum()), rounds)
