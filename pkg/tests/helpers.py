"""Hypothesis strategies and small independent oracles shared by the tests."""
from itertools import combinations

from hypothesis import strategies as st

from rainbowtile.graph import Digraph, EdgeColouredGraph, Graph


@st.composite
def coloured_graphs(draw, min_n=0, max_n=8, max_colours=None):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    kept = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    q = max_colours or max(1, len(pairs))
    cols = draw(st.lists(st.integers(0, q - 1), min_size=len(pairs), max_size=len(pairs)))
    return EdgeColouredGraph(n, [(u, v, c) for (u, v), k, c in zip(pairs, kept, cols) if k])


@st.composite
def digraphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    ordered = [(u, v) for u in range(n) for v in range(n) if u != v]
    kept = draw(st.lists(st.booleans(), min_size=len(ordered), max_size=len(ordered)))
    return Digraph(n, [a for a, k in zip(ordered, kept) if k])


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    kept = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, k in zip(pairs, kept) if k])


def colour_degree_by_hand(g, v):
    return len({c for a, b, c in g.coloured_edges() if v in (a, b)})


def triangles_by_hand(g):
    """Rainbow triangles found from the edge list alone."""
    col = {(a, b): c for a, b, c in g.coloured_edges()}
    out = []
    for a, b, c in combinations(range(g.n), 3):
        es = [(a, b), (a, c), (b, c)]
        if all(e in col for e in es) and len({col[e] for e in es}) == 3:
            out.append((a, b, c))
    return out


def all_digraphs(n):
    """Every labelled digraph on n vertices (4^C(n,2) of them)."""
    pairs = list(combinations(range(n), 2))
    for code in range(4 ** len(pairs)):
        arcs = []
        for i, (u, v) in enumerate(pairs):
            k = (code >> (2 * i)) & 3
            if k & 1:
                arcs.append((u, v))
            if k & 2:
                arcs.append((v, u))
        yield Digraph(n, arcs)


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)
