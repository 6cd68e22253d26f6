"""
The co-qualification graph of disciplines
=========================================

People qualified in several disciplines tie those disciplines together.
This demo builds the weighted graph from a synthetic corpus, finds its
hubs and maximal cliques, and writes DOT/GraphML files for rendering.
"""

import tempfile
from pathlib import Path

from qualex.graph import (
    build_graph,
    clique_size_histogram,
    co_qualification_matrix,
    export_graph,
    maximal_cliques,
    top_hubs,
)
from qualex.synth import SynthParams, generate_corpus

# a high multi-application rate creates plenty of overlap
corpus = generate_corpus(
    SynthParams(n_applications=600, n_disciplines=15, seed=8, multi_apply_rate=0.5)
)

# ---------------------------------------------------------------------------
# 1. pairwise strengths: |qualified in both| / |qualified in either|

matrix = co_qualification_matrix(corpus.applications.values())
codes = matrix.disciplines
print(f"{len(codes)} disciplines in the corpus")
strongest = max(
    ((a, b, matrix.strength(a, b)) for i, a in enumerate(codes) for b in codes[i + 1:]),
    key=lambda t: t[2],
)
print(f"strongest tie: {strongest[0]} -- {strongest[1]} at {strongest[2]:.3f}")

# ---------------------------------------------------------------------------
# 2. the graph, its hubs, its cliques

g = build_graph(matrix)
print(f"graph: {len(g.nodes)} nodes, {len(g.edges)} edges")

print("\nhubs (highest degree = most 'general' disciplines):")
for code, degree in top_hubs(g, 5):
    print(f"  {code}: degree {degree}")

cliques = maximal_cliques(g)
print(f"\n{len(cliques)} maximal cliques; sizes {clique_size_histogram(cliques)}")
for clique in cliques[:3]:
    print(f"  {' + '.join(clique)}")

# ---------------------------------------------------------------------------
# 3. exports for graphviz and network tools

outdir = Path(tempfile.mkdtemp(prefix="coqual_"))
for fmt, name in (("dot", "graph.dot"), ("graphml", "graph.graphml"), ("edge_csv", "edges.csv")):
    export_graph(g, fmt, outdir / name)
    print(f"wrote {outdir / name}")
print("render with: dot -Tsvg graph.dot -o graph.svg")
