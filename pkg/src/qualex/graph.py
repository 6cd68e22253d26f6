"""Co-qualification graph over disciplines.

Two disciplines are tied when people qualified in both.  The tie
strength is the Jaccard fraction |qualified in both| / |qualified in
either|, qualification in either role counting once.  The weighted
graph built from nonzero strengths supports degree hubs, maximal clique
enumeration, and export to GraphML, DOT or edge CSV.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .util import fmt

__all__ = [
    "CoQualMatrix",
    "CoQualGraph",
    "qualified_sets",
    "co_qualification_matrix",
    "build_graph",
    "top_hubs",
    "maximal_cliques",
    "clique_size_histogram",
    "export_graph",
]


@dataclass(frozen=True)
class CoQualMatrix:
    """Symmetric strength matrix over the disciplines seen in the corpus.

    The diagonal is not meaningful and is fixed at 0.
    """

    disciplines: tuple
    m: np.ndarray

    def strength(self, code_a: str, code_b: str) -> float:
        i = self.disciplines.index(code_a)
        j = self.disciplines.index(code_b)
        return float(self.m[i, j])


@dataclass(frozen=True)
class CoQualGraph:
    """Weighted undirected graph: nodes carry (code, area_id, degree)."""

    nodes: tuple  # of (code, area_id, degree)
    edges: tuple  # of (code_i, code_j, weight), i < j lexicographically

    def adjacency(self) -> dict:
        adj = {code: set() for code, _, _ in self.nodes}
        for a, b, _ in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


def qualified_sets(applications) -> dict:
    """Applicant-key sets of who qualified in each discipline, any role."""
    sets: dict = {}
    for app in applications:
        sets.setdefault(app.discipline, set())
        if app.outcome == "qualified":
            sets[app.discipline].add(app.applicant_key)
    return sets


def co_qualification_matrix(applications) -> CoQualMatrix:
    """Pairwise co-qualification strengths for all disciplines present.

    Strength is |qualified in both| / |qualified in either|; a pair
    whose union is empty has strength 0.
    """
    sets = qualified_sets(applications)
    codes = tuple(sorted(sets))
    n = len(codes)
    m = np.zeros((n, n))
    for i in range(n):
        qi = sets[codes[i]]
        for j in range(i + 1, n):
            qj = sets[codes[j]]
            union = len(qi | qj)
            if union:
                m[i, j] = m[j, i] = len(qi & qj) / union
    return CoQualMatrix(codes, m)


def build_graph(matrix: CoQualMatrix, all_disciplines=None) -> CoQualGraph:
    """Graph with an edge wherever the strength is positive.

    By default the node set is the matrix's disciplines, i.e. those
    appearing in the corpus; pass the full reference table's codes as
    `all_disciplines` to keep the remaining ones as isolated nodes.
    """
    codes = list(matrix.disciplines)
    if all_disciplines is not None:
        codes = sorted(set(codes) | set(all_disciplines))
    index = {c: k for k, c in enumerate(matrix.disciplines)}
    edges = []
    degree = {c: 0 for c in codes}
    for i, a in enumerate(matrix.disciplines):
        for b in matrix.disciplines[i + 1 :]:
            w = matrix.m[index[a], index[b]]
            if w > 0:
                edges.append((a, b, float(w)))
                degree[a] += 1
                degree[b] += 1
    nodes = tuple((c, int(c[:2]), degree[c]) for c in codes)
    return CoQualGraph(nodes, tuple(edges))


def top_hubs(g: CoQualGraph, n=10):
    """The n highest-degree disciplines, ties broken by code."""
    ranked = sorted(g.nodes, key=lambda node: (-node[2], node[0]))
    return [(code, deg) for code, _, deg in ranked[:n]]


def maximal_cliques(g: CoQualGraph):
    """All maximal cliques, by decreasing size then lexicographically.

    Pivoting Bron-Kerbosch: each recursion picks the candidate with the
    most neighbours still in P and only branches on the non-neighbours
    of that pivot.  An isolated node forms a singleton maximal clique.
    """
    adj = g.adjacency()
    cliques = []

    def expand(r, p, x):
        if not p and not x:
            cliques.append(tuple(sorted(r)))
            return
        pivot = max(sorted(p | x), key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(adj), set())
    cliques.sort(key=lambda c: (-len(c), c))
    return cliques


def clique_size_histogram(cliques) -> dict:
    counts: dict = {}
    for clique in cliques:
        counts[len(clique)] = counts.get(len(clique), 0) + 1
    return dict(sorted(counts.items()))


def export_graph(g: CoQualGraph, format, path):
    """Write the graph as graphml, dot, or edge_csv.

    Nodes carry their area and degree plus a degree-proportional size
    hint; edges carry the co-qualification strength.
    """
    if format == "graphml":
        _write_graphml(g, path)
    elif format == "dot":
        _write_dot(g, path)
    elif format == "edge_csv":
        _write_edge_csv(g, path)
    else:
        raise ValueError(f"unknown graph format {format!r}")


def _node_size(degree: int) -> float:
    return 10.0 + 2.0 * degree


def _write_graphml(g, path):
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="d0" for="node" attr.name="area_id" attr.type="int"/>',
        '  <key id="d1" for="node" attr.name="degree" attr.type="int"/>',
        '  <key id="d2" for="node" attr.name="size" attr.type="double"/>',
        '  <key id="d3" for="edge" attr.name="weight" attr.type="double"/>',
        '  <graph id="G" edgedefault="undirected">',
    ]
    for code, area, degree in g.nodes:
        lines.append(f'    <node id="{escape(code)}">')
        lines.append(f'      <data key="d0">{area}</data>')
        lines.append(f'      <data key="d1">{degree}</data>')
        lines.append(f'      <data key="d2">{fmt(_node_size(degree))}</data>')
        lines.append("    </node>")
    for k, (a, b, w) in enumerate(g.edges):
        lines.append(
            f'    <edge id="e{k}" source="{escape(a)}" target="{escape(b)}">'
        )
        lines.append(f'      <data key="d3">{fmt(w)}</data>')
        lines.append("    </edge>")
    lines.append("  </graph>")
    lines.append("</graphml>")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_dot(g, path):
    lines = ["graph coqualification {", "  node [shape=circle];"]
    for code, area, degree in g.nodes:
        size = _node_size(degree) / 20.0
        lines.append(
            f'  "{code}" [area={area} degree={degree} width={fmt(size)}];'
        )
    for a, b, w in g.edges:
        lines.append(f'  "{a}" -- "{b}" [weight={fmt(w)} penwidth={fmt(1.0 + 4.0 * w)}];')
    lines.append("}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_edge_csv(g, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("i,j,weight\n")
        for a, b, w in g.edges:
            fh.write(f"{a},{b},{fmt(w)}\n")
