from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from helpers import triangles_by_hand
from rainbowtile.constructions import (ConstructionError, build_prop15, build_prop16,
                                       build_proper_bipartite, build_proper_multipartite,
                                       build_rainbow_complete, prop15_parts, prop16_parts,
                                       random_coloured, random_digraph, valid_prop15_params)
from rainbowtile.graph import degree_profile, is_properly_coloured, min_colour_degree
from rainbowtile.rainbow import iter_rainbow_cliques
from rainbowtile.tiling import has_perfect_rainbow_tiling


class TestTwoClassConstruction:
    def test_13_3_sizes(self):
        p = prop15_parts(13, 3)
        assert (len(p.x), len(p.y), len(p.z)) == (6, 3, 4)
        assert min_colour_degree(build_prop15(13, 3)) == 6

    def test_15_4_sizes(self):
        p = prop15_parts(15, 4)
        assert (len(p.x), len(p.y), len(p.z)) == (6, 5, 4)
        assert min_colour_degree(build_prop15(15, 4)) == 8

    @pytest.mark.parametrize("n,k", [(13, 1), (13, 5), (14, 3), (9, 3)])
    def test_invalid_parameters(self, n, k):
        with pytest.raises(ConstructionError):
            build_prop15(n, k)

    def test_valid_grid_matches_formula(self):
        grid = valid_prop15_params(30)
        assert (13, 3) in grid and (15, 4) in grid
        for n, k in grid:
            assert 7 * (min_colour_degree(build_prop15(n, k)) + 1) == n + 12 * k

    @pytest.mark.parametrize("n,k", [(n, k) for n, k in valid_prop15_params(21)])
    def test_rainbow_triangles_through_x_use_two_y(self, n, k):
        g = build_prop15(n, k)
        p = prop15_parts(n, k)
        for t in triangles_by_hand(g):
            if any(v in p.x for v in t):
                assert sum(v in p.y for v in t) == 2

    def test_x_halves_have_no_internal_edges(self):
        g = build_prop15(13, 3)
        a, b = prop15_parts(13, 3).x_classes
        assert not any(g.has_edge(u, v) for u, v in combinations(a, 2))
        assert not any(g.has_edge(u, v) for u, v in combinations(b, 2))


class TestManyClassConstruction:
    @pytest.mark.parametrize("r,m,n,dc", [(3, 3, 21, 14), (4, 4, 56, 43), (3, 6, 42, 29)])
    def test_sizes_and_colour_degree(self, r, m, n, dc):
        g = build_prop16(r, m)
        assert g.n == n
        assert min_colour_degree(g) == dc

    def test_rainbow_triangles_through_x_use_two_y(self):
        g = build_prop16(3, 3)
        p = prop16_parts(3, 3)
        for t in iter_rainbow_cliques(g, 3):
            if any(v in p.x for v in t):
                assert sum(v in p.y for v in t) == 2

    @pytest.mark.parametrize("r,m", [(2, 2), (3, 4), (4, 0)])
    def test_invalid(self, r, m):
        with pytest.raises(ConstructionError):
            build_prop16(r, m)


class TestSmallFamilies:
    @pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
    def test_proper_bipartite(self, n):
        g = build_proper_bipartite(n)
        assert is_properly_coloured(g)
        assert min_colour_degree(g) == n // 2
        assert g.num_edges() == (n // 2) ** 2
        assert triangles_by_hand(g) == []

    def test_proper_bipartite_odd(self):
        with pytest.raises(ConstructionError):
            build_proper_bipartite(5)

    def test_rainbow_complete(self):
        assert build_rainbow_complete(1).num_edges() == 0
        assert triangles_by_hand(build_rainbow_complete(3)) == [(0, 1, 2)]
        res = has_perfect_rainbow_tiling(build_rainbow_complete(6), 3)
        assert res.status == "yes" and len(res.witness.parts) == 2

    @pytest.mark.parametrize("r,size", [(3, 3), (3, 4), (4, 3)])
    def test_proper_multipartite(self, r, size):
        g = build_proper_multipartite(r, size)
        assert is_properly_coloured(g)
        assert g.num_edges() == size * size * r * (r - 1) // 2


class TestRandom:
    def test_injective_full_is_rainbow(self):
        g = random_coloured(6, 1.0, 15, seed=3, injective=True)
        assert g.num_edges() == 15 and len(g.colours()) == 15

    def test_zero_probability(self):
        assert random_coloured(8, 0.0, 4, seed=1).num_edges() == 0

    @given(st.integers(0, 2**32), st.integers(1, 12))
    def test_seeded_determinism(self, seed, n):
        assert random_coloured(n, 0.5, 3, seed) == random_coloured(n, 0.5, 3, seed)
        assert random_digraph(n, 0.3, seed, min(2, n - 1)) == random_digraph(n, 0.3, seed, min(2, n - 1))

    @given(st.integers(0, 2**32), st.integers(2, 10), st.floats(0, 1))
    def test_min_out_repair_is_monotone(self, seed, n, p):
        prev = None
        for k in range(n):
            d = random_digraph(n, p, seed, k)
            assert d.min_out_degree() >= k
            if prev is not None:
                assert prev.arcs <= d.arcs
            prev = d

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            random_coloured(4, 1.5, 2, 0)
        with pytest.raises(ValueError):
            random_digraph(4, 0.5, 0, min_out=4)

    def test_profile_of_random(self):
        g = random_coloured(10, 0.7, 5, seed=42)
        p = degree_profile(g)
        assert all(dc <= 5 for dc in p.colour_degree)
