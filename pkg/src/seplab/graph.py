"""Undirected simple graphs on dense ids, partitions and balanced separators."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np
import scipy.sparse as sp

# |V_1|, |V_2| <= BALANCE * n for a separator.
BALANCE = (2, 3)


class InputError(ValueError):
    """Malformed or out-of-range input."""


def balance_limit(n: int) -> int:
    """Largest component size a balanced separator may leave: floor(2n/3)."""
    return (BALANCE[0] * n) // BALANCE[1]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"negative vertex count {self.n}")
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise InputError(f"edge {e} is not a normalized pair u < v < n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Graph":
        """Build a graph, rejecting self-loops, duplicates and bad ids."""
        seen = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge [{u}, {v}] out of range for n={n}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise InputError(f"duplicate edge [{key[0]}, {key[1]}]")
            seen.add(key)
        return cls(n, frozenset(seen))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple:
        nbrs = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    @cached_property
    def edge_array(self) -> np.ndarray:
        if not self.edges:
            return np.zeros((0, 2), dtype=np.int64)
        return np.array(self.sorted_edges(), dtype=np.int64)

    def dense_adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        e = self.edge_array
        a[e[:, 0], e[:, 1]] = True
        a[e[:, 1], e[:, 0]] = True
        return a

    def weighted_csr(self, weights: np.ndarray) -> sp.csr_matrix:
        """Symmetric CSR with the given per-edge weights (aligned with edge_array).

        Zero weights stay as explicit entries so shortest-path routines
        treat them as zero-length edges rather than missing ones.
        """
        e = self.edge_array
        w = np.asarray(weights, dtype=float)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        data = np.concatenate([w, w])
        return sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def is_connected(self) -> bool:
        return self.n <= 1 or len(components(self)) == 1


@dataclass(frozen=True)
class Partition:
    A: frozenset
    B: frozenset
    S: frozenset

    @classmethod
    def of(cls, A, B, S) -> "Partition":
        return cls(frozenset(A), frozenset(B), frozenset(S))


@dataclass(frozen=True)
class Separator:
    S: frozenset
    parts: tuple

    @classmethod
    def of(cls, S, parts) -> "Separator":
        return cls(frozenset(S), tuple(frozenset(p) for p in parts))


def _sorted_components(groups: list) -> list:
    return sorted(groups, key=lambda c: (-len(c), min(c)))


def components(g: Graph, removed: Iterable = ()) -> list:
    """Connected components of g minus `removed`, largest first (ties by min id)."""
    gone = set(removed)
    seen = [False] * g.n
    out = []
    for start in range(g.n):
        if seen[start] or start in gone:
            continue
        seen[start] = True
        stack = [start]
        comp = {start}
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if not seen[w] and w not in gone:
                    seen[w] = True
                    comp.add(w)
                    stack.append(w)
        out.append(comp)
    return _sorted_components(out)


def _check_ids(g: Graph, vertices: Iterable, what: str):
    for v in vertices:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < g.n):
            raise InputError(f"{what}: vertex id {v!r} out of range for n={g.n}")


def validate_partition(g: Graph, p: Partition) -> tuple[bool, list]:
    """Check disjointness, coverage and absence of A-B edges.

    Returns ``(ok, violations)`` where each violation is a short string
    naming the offending vertex or edge.
    """
    _check_ids(g, p.A, "A")
    _check_ids(g, p.B, "B")
    _check_ids(g, p.S, "S")
    report = []
    for (a, x), (b, y) in ((("A", p.A), ("B", p.B)), (("A", p.A), ("S", p.S)), (("B", p.B), ("S", p.S))):
        for v in sorted(x & y):
            report.append(f"vertex {v} in both {a} and {b}")
    covered = p.A | p.B | p.S
    for v in range(g.n):
        if v not in covered:
            report.append(f"vertex {v} not covered")
    for u, v in g.sorted_edges():
        if (u in p.A and v in p.B) or (u in p.B and v in p.A):
            report.append(f"edge [{u}, {v}] joins A and B")
    return not report, report


def validate_separator(g: Graph, s: Separator) -> tuple[bool, list]:
    """Check that every component of g - S has at most floor(2n/3) vertices.

    The stored ``parts`` are also cross-checked against the actual
    components so that an edge between two parts is reported.
    """
    _check_ids(g, s.S, "S")
    limit = balance_limit(g.n)
    comps = components(g, s.S)
    report = []
    for c in comps:
        if len(c) > limit:
            report.append(f"component of size {len(c)} exceeds {limit} (contains vertex {min(c)})")
    owner = {}
    for i, part in enumerate(s.parts):
        for v in part:
            owner[v] = i
    for u, v in g.sorted_edges():
        if u in owner and v in owner and owner[u] != owner[v]:
            report.append(f"edge [{u}, {v}] joins parts {owner[u]} and {owner[v]}")
    return not report, report


def induced_subgraph(g: Graph, keep: Iterable) -> tuple[Graph, list, dict]:
    """Subgraph induced by `keep`, relabelled to 0..k-1 in increasing old-id order.

    Returns ``(h, new_to_old, old_to_new)``.
    """
    new_to_old = sorted(set(keep))
    _check_ids(g, new_to_old, "keep")
    old_to_new = {v: i for i, v in enumerate(new_to_old)}
    edges = set()
    for u, v in g.edges:
        if u in old_to_new and v in old_to_new:
            a, b = old_to_new[u], old_to_new[v]
            edges.add((a, b) if a < b else (b, a))
    return Graph(len(new_to_old), frozenset(edges)), new_to_old, old_to_new


# Small named families used throughout the tests and examples.

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))
