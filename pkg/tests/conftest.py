import numpy as np
import pytest

from seplab.graph import Graph, random_graph


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def connected_random_graphs(count, n_max, seed=0, p=0.45):
    """First ``count`` connected G(n, p) draws with 3 <= n <= n_max."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(3, n_max + 1))
        g = random_graph(n, p, rng)
        if g.is_connected():
            out.append(g)
    return out


def brute_force_sparsity(g: Graph):
    """Minimum |S|/(|A+S||B+S|) over every labelling of V into A, B, S with A, B nonempty and no A-B edge."""
    from fractions import Fraction
    from itertools import product

    best = None
    for labels in product(range(3), repeat=g.n):
        a = labels.count(0)
        b = labels.count(1)
        if a == 0 or b == 0:
            continue
        if any({labels[u], labels[v]} == {0, 1} for u, v in g.edges):
            continue
        s = g.n - a - b
        val = Fraction(s, (a + s) * (b + s))
        if best is None or val < best:
            best = val
    return best


CRITERIA = {}


def record_criterion(number: int, name: str, ok: bool, detail: str = ""):
    CRITERIA[number] = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else "")


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[k])
