from itertools import combinations

import pytest
from hypothesis import given, settings

from helpers import coloured_graphs, colour_degree_by_hand, digraphs
from rainbowtile.constructions import (build_monochromatic_complete, build_prop15,
                                       build_proper_bipartite, build_rainbow_complete,
                                       complete_digraph, directed_cycle)
from rainbowtile.convert import J3_ARCS
from rainbowtile.graph import (Digraph, EdgeColouredGraph, Graph, blowup, critical_subgraph,
                               degree_profile, double_edge_graph, induced_check,
                               min_colour_degree)


class TestConstruction:
    def test_rejects_loops_duplicates_and_range(self):
        with pytest.raises(ValueError):
            EdgeColouredGraph(3, [(0, 0, 1)])
        with pytest.raises(ValueError):
            EdgeColouredGraph(3, [(0, 1, 1), (1, 0, 2)])
        with pytest.raises(ValueError):
            EdgeColouredGraph(3, [(0, 3, 1)])
        with pytest.raises(ValueError):
            Digraph(2, [(0, 1), (0, 1)])

    def test_mapping_input(self):
        g = EdgeColouredGraph(3, {(0, 1): 5, (2, 1): 7})
        assert g.colour(1, 2) == 7
        assert g.coloured_edges() == [(0, 1, 5), (1, 2, 7)]

    def test_antiparallel_arcs_allowed(self):
        d = Digraph(2, [(0, 1), (1, 0)])
        assert d.has_arc(0, 1) and d.has_arc(1, 0)


class TestDegreeProfile:
    def test_rainbow_k4(self):
        p = degree_profile(build_rainbow_complete(4))
        assert p.colour_degree == (3, 3, 3, 3)
        assert p.min_colour_degree == 3

    def test_proper_k33(self):
        p = degree_profile(build_proper_bipartite(6))
        assert p.min_colour_degree == 3
        assert p.colour_degree == p.degree

    def test_three_part_13_3(self):
        assert degree_profile(build_prop15(13, 3)).min_colour_degree == 6

    def test_empty_graph(self):
        p = degree_profile(EdgeColouredGraph(0))
        assert p.min_colour_degree == 0 and p.max_degree == 0

    @given(coloured_graphs())
    def test_degree_chain(self, g):
        p = degree_profile(g)
        for v in range(g.n):
            assert 0 <= p.colour_degree[v] <= p.degree[v] <= max(g.n - 1, 0)
            assert p.colour_degree[v] == colour_degree_by_hand(g, v)


class TestInducedCheck:
    def test_rainbow_triangle(self):
        c = induced_check(build_rainbow_complete(3), {0, 1, 2})
        assert c.complete and c.rainbow and c.kind == "rainbow"

    def test_triangle_sharing_colour(self):
        g = EdgeColouredGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 2)])
        c = induced_check(g, [0, 1, 2])
        assert c.complete and c.kind == "neither"

    def test_proper_c4(self):
        g = EdgeColouredGraph(4, [(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 0, 2)])
        c = induced_check(g, range(4))
        assert c.kind == "proper" and not c.complete

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            induced_check(build_rainbow_complete(3), [0, 5])


class TestCriticalSubgraph:
    def test_rainbow_k4_unchanged(self):
        g = build_rainbow_complete(4)
        assert critical_subgraph(g) == g

    def test_monochromatic_triangle_keeps_a_path(self):
        h = critical_subgraph(build_monochromatic_complete(3))
        assert h.num_edges() == 2
        assert min_colour_degree(h) == 1

    def test_fixed_point(self):
        h = critical_subgraph(build_prop15(13, 3))
        assert critical_subgraph(h) == h

    @settings(max_examples=60)
    @given(coloured_graphs(max_n=7, max_colours=4))
    def test_edge_minimal_and_star_forests(self, g):
        h = critical_subgraph(g)
        delta = min_colour_degree(g)
        assert min_colour_degree(h) == delta
        assert set(h.edges) <= set(g.edges)
        for u, v in h.edges:
            rest = {e: h.colour(*e) for e in h.edges if e != (u, v)}
            assert min_colour_degree(EdgeColouredGraph(g.n, rest)) < delta
        # each colour class: no monochromatic triangle, no monochromatic P4
        for u, v, c in h.coloured_edges():
            same_u = [w for w, cw in h.neighbours(u).items() if cw == c and w != v]
            same_v = [w for w, cw in h.neighbours(v).items() if cw == c and w != u]
            assert not (same_u and same_v)


class TestBlowup:
    def test_edge_becomes_k33(self):
        k2 = EdgeColouredGraph(2, [(0, 1, 9)])
        b = blowup(k2, 3)
        assert b.num_edges() == 9
        assert all(b.has_edge(i, j) for i in range(3) for j in range(3, 6))
        assert b.colours() == {9}

    def test_identity(self):
        g = build_prop15(13, 3)
        assert blowup(g, 1) == g

    def test_arc_blowup(self):
        b = blowup(Digraph(2, [(0, 1)]), 2)
        assert b.arcs == frozenset({(0, 2), (0, 3), (1, 2), (1, 3)})

    def test_overflow(self):
        with pytest.raises(OverflowError):
            blowup(build_rainbow_complete(5), 10, limit=20)

    def test_rainbow_blowup_not_rainbow(self):
        b = blowup(build_rainbow_complete(3), 2)
        assert not induced_check(b, [0, 2, 4, 3]).rainbow

    @settings(max_examples=40)
    @given(coloured_graphs(max_n=5))
    def test_blowup_composes(self, g):
        for s in (1, 2, 3):
            for t in (1, 2, 3):
                assert blowup(blowup(g, s), t) == blowup(g, s * t)


class TestDoubleEdgeGraph:
    def test_complete_digraph(self):
        assert double_edge_graph(complete_digraph(3)) == Graph(3, combinations(range(3), 2))

    def test_directed_cycle(self):
        assert double_edge_graph(directed_cycle(3)).num_edges() == 0

    def test_j3(self):
        assert double_edge_graph(Digraph(3, J3_ARCS)).edges == frozenset({(1, 2)})

    @given(digraphs())
    def test_subgraph_of_base(self, d):
        base = set(d.base_edges())
        dbl = double_edge_graph(d).edges
        assert dbl <= base
        only_double = all((v, u) in d.arcs for u, v in d.arcs)
        assert (dbl == base) == only_double
