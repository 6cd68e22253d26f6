import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_maximal_cliques
from qualex.corpus import Application
from qualex.graph import (
    CoQualGraph,
    build_graph,
    clique_size_histogram,
    co_qualification_matrix,
    export_graph,
    maximal_cliques,
    qualified_sets,
    top_hubs,
)


def app(serial, person, code, outcome="qualified", role="full"):
    return Application(serial, (person, "X", ""), code, role, outcome)


def test_qualified_sets_merge_roles_and_keep_empty_disciplines():
    apps = [
        app(1, "a", "01/A1", role="full"),
        app(2, "a", "01/A2", role="associate"),
        app(3, "b", "01/A1", outcome="not_qualified"),
        app(4, "c", "03/B1", outcome="unknown"),
    ]
    sets = qualified_sets(apps)
    assert sets["01/A1"] == {("a", "X", "")}
    assert sets["01/A2"] == {("a", "X", "")}
    assert sets["03/B1"] == set()


def test_matrix_jaccard_values():
    apps = [
        app(1, "a", "01/A1"),
        app(2, "a", "01/A2"),
        app(3, "b", "01/A1"),
        app(4, "b", "01/A2"),
        app(5, "c", "01/A1"),
        app(6, "d", "03/B1"),
    ]
    matrix = co_qualification_matrix(apps)
    assert matrix.disciplines == ("01/A1", "01/A2", "03/B1")
    assert matrix.strength("01/A1", "01/A2") == pytest.approx(2 / 3)
    assert matrix.strength("01/A1", "03/B1") == 0.0
    assert np.allclose(matrix.m, matrix.m.T)
    assert np.all(np.diag(matrix.m) == 0)


def test_matrix_empty_union_is_zero():
    apps = [
        app(1, "a", "01/A1", outcome="not_qualified"),
        app(2, "b", "01/A2", outcome="not_qualified"),
    ]
    matrix = co_qualification_matrix(apps)
    assert matrix.strength("01/A1", "01/A2") == 0.0


def test_build_graph_edges_degrees_and_isolates():
    apps = [
        app(1, "a", "01/A1"),
        app(2, "a", "01/A2"),
        app(3, "b", "01/A2"),
        app(4, "b", "03/B1"),
    ]
    g = build_graph(co_qualification_matrix(apps))
    codes = [c for c, _, _ in g.nodes]
    assert codes == ["01/A1", "01/A2", "03/B1"]
    assert [(a, b) for a, b, _ in g.edges] == [("01/A1", "01/A2"), ("01/A2", "03/B1")]
    degrees = {c: d for c, _, d in g.nodes}
    assert degrees == {"01/A1": 1, "01/A2": 2, "03/B1": 1}
    assert sum(degrees.values()) == 2 * len(g.edges)
    # widen the universe: extra nodes appear isolated
    g_full = build_graph(co_qualification_matrix(apps), all_disciplines=["05/E2"])
    assert ("05/E2", 5, 0) in g_full.nodes
    assert len(g_full.edges) == len(g.edges)


def test_top_hubs_orders_by_degree_then_code():
    nodes = (("01/A1", 1, 2), ("01/A2", 1, 3), ("03/B1", 3, 3), ("05/E2", 5, 0))
    g = CoQualGraph(nodes, ())
    assert top_hubs(g, 3) == [("01/A2", 3), ("03/B1", 3), ("01/A1", 2)]


def random_graph(rng, n, p):
    codes = [f"{k:02d}/A1" for k in range(1, n + 1)]
    nodes = []
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((codes[i], codes[j], 1.0))
    degree = {c: 0 for c in codes}
    for a, b, _ in edges:
        degree[a] += 1
        degree[b] += 1
    nodes = tuple((c, int(c[:2]), degree[c]) for c in codes)
    return CoQualGraph(nodes, tuple(edges))


def test_cliques_match_brute_force_on_random_graphs():
    rng = np.random.default_rng(77)
    for _ in range(60):
        n = int(rng.integers(1, 11))
        g = random_graph(rng, n, float(rng.uniform(0.1, 0.9)))
        ours = maximal_cliques(g)
        oracle = brute_maximal_cliques([c for c, _, _ in g.nodes], g.adjacency())
        assert ours == oracle


def test_cliques_sorted_and_cover_isolates():
    g = CoQualGraph(
        (("01/A1", 1, 1), ("01/A2", 1, 1), ("03/B1", 3, 0)),
        (("01/A1", "01/A2", 0.5),),
    )
    cliques = maximal_cliques(g)
    assert cliques == [("01/A1", "01/A2"), ("03/B1",)]
    assert clique_size_histogram(cliques) == {1: 1, 2: 1}


def test_clique_sizes_are_decreasing_then_lexicographic():
    rng = np.random.default_rng(8)
    g = random_graph(rng, 9, 0.5)
    cliques = maximal_cliques(g)
    keys = [(-len(c), c) for c in cliques]
    assert keys == sorted(keys)


# ---------------------------------------------------------------------------
# exports

@pytest.fixture
def small_graph():
    return CoQualGraph(
        (("01/A1", 1, 1), ("01/A2", 1, 1), ("03/B1", 3, 0)),
        (("01/A1", "01/A2", 0.25),),
    )


def test_graphml_is_wellformed_and_complete(small_graph, tmp_path):
    path = tmp_path / "g.graphml"
    export_graph(small_graph, "graphml", path)
    root = ET.parse(path).getroot()
    ns = "{http://graphml.graphdrawing.org/xmlns}"
    nodes = root.findall(f".//{ns}node")
    edges = root.findall(f".//{ns}edge")
    assert [n.get("id") for n in nodes] == ["01/A1", "01/A2", "03/B1"]
    assert len(edges) == 1
    assert edges[0].get("source") == "01/A1"
    weight = edges[0].find(f"{ns}data").text
    assert float(weight) == 0.25


def test_dot_output(small_graph, tmp_path):
    path = tmp_path / "g.dot"
    export_graph(small_graph, "dot", path)
    text = path.read_text()
    assert text.startswith("graph")
    assert '"01/A1" -- "01/A2"' in text
    assert 'weight=0.25' in text
    assert text.count('"03/B1"') == 1  # node line only, no edges


def test_edge_csv_output(small_graph, tmp_path):
    path = tmp_path / "g.csv"
    export_graph(small_graph, "edge_csv", path)
    assert path.read_text() == "i,j,weight\n01/A1,01/A2,0.25\n"


def test_export_unknown_format(small_graph, tmp_path):
    with pytest.raises(ValueError):
        export_graph(small_graph, "gexf", tmp_path / "g.gexf")
