import json

import pytest

from seplab.geometry import gen_grid_strings, gen_random_segments
from seplab.graph import InputError
from seplab.io import (
    first_mismatch,
    graph_from_json,
    load_graph,
    load_representation,
    save_graph,
    save_representation,
)


def test_graph_round_trip(tmp_path):
    for rep, g in (gen_random_segments(30, 100, 4), gen_grid_strings(4)):
        save_graph(g, tmp_path / "g.json")
        assert load_graph(tmp_path / "g.json") == g
        save_representation(rep, tmp_path / "r.json")
        rep2, g2 = load_representation(tmp_path / "r.json", expected=g)
        assert rep2 == rep and g2 == g


def test_self_loop_named(tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"n": 3, "edges": [[0, 1], [2, 2]]}))
    with pytest.raises(InputError, match="self-loop at vertex 2"):
        load_graph(p)


def test_duplicate_edge_named(tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"n": 3, "edges": [[0, 1], [1, 0]]}))
    with pytest.raises(InputError, match=r"duplicate edge \[0, 1\]"):
        load_graph(p)


@pytest.mark.parametrize("text", ["{", "[]", '{"n": 2}', '{"n": -1, "edges": []}', '{"n": 2, "edges": [[0]]}'])
def test_malformed_graph_files(tmp_path, text):
    p = tmp_path / "g.json"
    p.write_text(text)
    with pytest.raises(InputError):
        load_graph(p)


def test_representation_mismatch_names_first_pair(tmp_path):
    rep, g = gen_grid_strings(3)
    save_representation(rep, tmp_path / "r.json")
    wrong = graph_from_json({"n": 6, "edges": [list(e) for e in sorted(g.edges) if e != (0, 4)]})
    with pytest.raises(InputError, match=r"mismatch at pair \[0, 4\] \(edge only in representation\)"):
        load_representation(tmp_path / "r.json", expected=wrong)
    assert first_mismatch(g, wrong) == (0, 4)


def test_bad_curve_record(tmp_path):
    p = tmp_path / "r.json"
    p.write_text(json.dumps({"curves": [[[0, 0], [0, 0]]]}))
    with pytest.raises(InputError, match="curve 0"):
        load_representation(p)
