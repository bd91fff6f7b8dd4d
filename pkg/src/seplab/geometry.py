"""Polyline string representations and their exact intersection graphs.

All predicates run on integers. The vectorized path uses int64, so
coordinates are limited to ``|x|, |y| <= COORD_LIMIT``: differences then
fit in 31 bits and every orientation determinant in 62 bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, InputError

COORD_LIMIT = 2**29


@dataclass(frozen=True)
class Polyline:
    points: tuple

    def __post_init__(self):
        pts = tuple((int(x), int(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise InputError("polyline needs at least 2 points")
        for p, q in zip(pts, pts[1:]):
            if p == q:
                raise InputError(f"zero-length segment at {p}")
        for x, y in pts:
            if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
                raise InputError(f"coordinate ({x}, {y}) exceeds exact range +/-{COORD_LIMIT}")

    def segments(self):
        return list(zip(self.points, self.points[1:]))

    def translated(self, dx: int, dy: int) -> "Polyline":
        return Polyline(tuple((x + dx, y + dy) for x, y in self.points))


@dataclass(frozen=True)
class StringRepresentation:
    curves: tuple

    @property
    def n(self) -> int:
        return len(self.curves)


def _orient(a, b, c) -> int:
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def _on_box(a, b, c) -> bool:
    # c collinear with a-b; is it inside the bounding box?
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def segments_intersect(s1, s2) -> bool:
    """Closed-segment intersection test (touching and overlap count)."""
    (p1, p2), (q1, q2) = s1, s2
    for x, y in (p1, p2, q1, q2):
        if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
            raise InputError(f"coordinate ({x}, {y}) exceeds exact range +/-{COORD_LIMIT}")
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return (
        (d1 == 0 and _on_box(q1, q2, p1))
        or (d2 == 0 and _on_box(q1, q2, p2))
        or (d3 == 0 and _on_box(p1, p2, q1))
        or (d4 == 0 and _on_box(p1, p2, q2))
    )


def _orient_vec(ax, ay, bx, by, cx, cy):
    return np.sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def _on_box_vec(ax, ay, bx, by, cx, cy):
    return (
        (np.minimum(ax, bx) <= cx) & (cx <= np.maximum(ax, bx))
        & (np.minimum(ay, by) <= cy) & (cy <= np.maximum(ay, by))
    )


def _intersect_many(P, Q) -> np.ndarray:
    """Row-wise closed intersection of segment arrays P, Q of shape (k, 4)."""
    p1x, p1y, p2x, p2y = P.T
    q1x, q1y, q2x, q2y = Q.T
    d1 = _orient_vec(q1x, q1y, q2x, q2y, p1x, p1y)
    d2 = _orient_vec(q1x, q1y, q2x, q2y, p2x, p2y)
    d3 = _orient_vec(p1x, p1y, p2x, p2y, q1x, q1y)
    d4 = _orient_vec(p1x, p1y, p2x, p2y, q2x, q2y)
    proper = (d1 * d2 < 0) & (d3 * d4 < 0)
    touch = (
        ((d1 == 0) & _on_box_vec(q1x, q1y, q2x, q2y, p1x, p1y))
        | ((d2 == 0) & _on_box_vec(q1x, q1y, q2x, q2y, p2x, p2y))
        | ((d3 == 0) & _on_box_vec(p1x, p1y, p2x, p2y, q1x, q1y))
        | ((d4 == 0) & _on_box_vec(p1x, p1y, p2x, p2y, q2x, q2y))
    )
    return proper | touch


def intersection_graph(rep) -> Graph:
    """Edge {u, v} iff some segment of curve u meets some segment of curve v."""
    curves = rep.curves if isinstance(rep, StringRepresentation) else tuple(rep)
    segs, owner = [], []
    for i, c in enumerate(curves):
        for (a, b) in c.segments():
            segs.append((a[0], a[1], b[0], b[1]))
            owner.append(i)
    n = len(curves)
    if not segs:
        return Graph(n)
    S = np.array(segs, dtype=np.int64)
    if np.abs(S).max() > COORD_LIMIT:
        raise InputError(f"coordinates exceed exact range +/-{COORD_LIMIT}")
    owner = np.array(owner, dtype=np.int64)
    edges = set()
    chunk = 4096
    k = len(S)
    for start in range(0, k, chunk):
        rows = np.arange(start, min(start + chunk, k))
        ii, jj = np.meshgrid(rows, np.arange(k), indexing="ij")
        ii, jj = ii.ravel(), jj.ravel()
        keep = owner[ii] < owner[jj]
        ii, jj = ii[keep], jj[keep]
        hit = _intersect_many(S[ii], S[jj])
        for u, v in zip(owner[ii[hit]].tolist(), owner[jj[hit]].tolist()):
            edges.add((u, v))
    return Graph(n, frozenset(edges))


def gen_random_segments(n: int, coord_range: int, seed: int) -> tuple[StringRepresentation, Graph]:
    """n segments with endpoints uniform on {0..coord_range-1}^2; degenerate ones are redrawn."""
    if n < 1 or coord_range < 4:
        raise InputError("need n >= 1 and coord_range >= 4")
    rng = np.random.default_rng(seed)
    curves = []
    while len(curves) < n:
        x1, y1, x2, y2 = rng.integers(0, coord_range, size=4).tolist()
        if (x1, y1) == (x2, y2):
            continue
        curves.append(Polyline(((x1, y1), (x2, y2))))
    rep = StringRepresentation(tuple(curves))
    return rep, intersection_graph(rep)


def gen_grid_strings(k: int) -> tuple[StringRepresentation, Graph]:
    """k horizontal and k vertical unit-spaced segments; realizes K_{k,k}.

    Horizontals get ids 0..k-1, verticals k..2k-1.
    """
    if k < 1:
        raise InputError("need k >= 1")
    horiz = [Polyline(((0, i), (k + 1, i))) for i in range(1, k + 1)]
    vert = [Polyline(((j, 0), (j, k + 1))) for j in range(1, k + 1)]
    rep = StringRepresentation(tuple(horiz + vert))
    return rep, intersection_graph(rep)
