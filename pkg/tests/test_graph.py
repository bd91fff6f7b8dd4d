import pytest
from hypothesis import given
from hypothesis import strategies as st

from seplab.graph import (
    Graph,
    InputError,
    Partition,
    Separator,
    balance_limit,
    complete_graph,
    components,
    induced_subgraph,
    path_graph,
    validate_partition,
    validate_separator,
)


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


def test_components_of_small_graphs():
    assert components(path_graph(3)) == [{0, 1, 2}]
    assert components(Graph.from_edges(3, [])) == [{0}, {1}, {2}]
    assert components(Graph.from_edges(4, [(0, 1), (2, 3)])) == [{0, 1}, {2, 3}]


def test_components_respect_removed_vertices():
    assert components(path_graph(5), removed={2}) == [{0, 1}, {3, 4}]


def test_validate_partition_examples():
    p3 = path_graph(3)
    assert validate_partition(p3, Partition.of({0}, {2}, {1}))[0]
    ok, report = validate_partition(p3, Partition.of({0}, {1, 2}, set()))
    assert not ok and any("0" in r and "1" in r for r in report)
    assert validate_partition(complete_graph(3), Partition.of({0}, set(), {1, 2}))[0]


def test_validate_partition_rejects_bad_ids():
    with pytest.raises(InputError):
        validate_partition(path_graph(3), Partition.of({0}, {7}, {1}))


def test_validate_separator_examples():
    p9 = path_graph(9)
    assert validate_separator(p9, Separator.of({4}, components(p9, {4})))[0]
    assert not validate_separator(p9, Separator.of({1}, components(p9, {1})))[0]
    k4 = complete_graph(4)
    assert validate_separator(k4, Separator.of({0, 1, 2}, [{3}]))[0]


def test_validate_separator_flags_edge_between_parts():
    p3 = path_graph(3)
    ok, _ = validate_separator(p3, Separator.of(set(), [{0}, {1, 2}]))
    assert not ok


def test_induced_subgraph_examples():
    h, new_to_old, _ = induced_subgraph(complete_graph(3), {0, 1})
    assert h.n == 2 and h.edges == {(0, 1)} and new_to_old == [0, 1]
    h, new_to_old, old_to_new = induced_subgraph(path_graph(4), {0, 2, 3})
    assert h.m == 1
    (u, v), = h.edges
    assert {new_to_old[u], new_to_old[v]} == {2, 3}
    assert old_to_new == {0: 0, 2: 1, 3: 2}


def test_from_edges_errors():
    with pytest.raises(InputError, match="self-loop at vertex 2"):
        Graph.from_edges(3, [(2, 2)])
    with pytest.raises(InputError, match="duplicate edge"):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(InputError):
        Graph.from_edges(3, [(0, 3)])


def test_balance_limit():
    assert [balance_limit(n) for n in (1, 2, 3, 9, 10)] == [0, 1, 2, 6, 6]


@given(graphs())
def test_components_cover_vertices_once(g):
    comps = components(g)
    assert sum(len(c) for c in comps) == g.n
    assert set().union(*comps) == set(range(g.n))
    sizes = [len(c) for c in comps]
    assert sizes == sorted(sizes, reverse=True)


@given(graphs(), st.data())
def test_components_after_removal_form_valid_partition(g, data):
    removed = data.draw(st.sets(st.integers(0, g.n - 1)))
    comps = components(g, removed)
    if len(comps) >= 2:
        p = Partition.of(comps[0], set().union(*comps[1:]), removed)
        assert validate_partition(g, p)[0]


@given(graphs(), st.data())
def test_induced_subgraph_preserves_adjacency(g, data):
    keep = data.draw(st.sets(st.integers(0, g.n - 1)))
    h, new_to_old, old_to_new = induced_subgraph(g, keep)
    assert h.n == len(keep)
    assert sorted(new_to_old) == sorted(keep)
    for u in keep:
        for v in keep:
            if u < v:
                assert g.has_edge(u, v) == h.has_edge(old_to_new[u], old_to_new[v])


@given(graphs())
def test_induced_subgraph_on_all_vertices_is_identity(g):
    h, new_to_old, _ = induced_subgraph(g, range(g.n))
    assert h == g and new_to_old == list(range(g.n))
