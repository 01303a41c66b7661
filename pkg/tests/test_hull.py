import random
from fractions import Fraction as F
from itertools import combinations, permutations

import pytest
from hypothesis import assume, given, settings, strategies as st

from polysect.geometry import matrix_rank
from polysect.hull import (
    DegenerateInput,
    brute_force_facets,
    det2,
    det3,
    det4,
    facet_normal,
    hull_full_dim,
    int_rank,
)

import helpers


def permanent_det(m):
    """Independent determinant by signed permutation expansion."""
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = 1
        for i in range(n):
            term *= m[i][perm[i]]
        total += sign * term
    return total


ints = st.integers(min_value=-6, max_value=6)


class TestDeterminants:
    def test_known_values(self):
        assert det2(((1, 2), (3, 4))) == -2
        assert det3(((1, 0, 0), (0, 1, 0), (0, 0, 1))) == 1
        assert det4(((2, 0, 0, 0), (0, 3, 0, 0), (0, 0, 4, 0), (0, 0, 0, 5))) == 120

    @given(st.tuples(*[st.tuples(ints, ints, ints)] * 3))
    def test_det3_matches_permutation_expansion(self, m):
        assert det3(m) == permanent_det(m)

    @settings(max_examples=60)
    @given(st.tuples(*[st.tuples(ints, ints, ints, ints)] * 4))
    def test_det4_matches_permutation_expansion(self, m):
        assert det4(m) == permanent_det(m)


class TestIntRank:
    @settings(max_examples=60)
    @given(st.lists(st.tuples(ints, ints, ints), min_size=1, max_size=5))
    def test_matches_rational_rank(self, rows):
        lifted = [tuple(F(x) for x in r) for r in rows]
        assert int_rank(rows) == matrix_rank(lifted)


class TestFacetNormal:
    @given(st.tuples(ints, ints, ints), st.tuples(ints, ints, ints))
    def test_orthogonal_to_spanning_diffs(self, a, b):
        assume(int_rank([a, b]) == 2)
        n = facet_normal([a, b], 3)
        assert any(x != 0 for x in n)
        assert sum(x * y for x, y in zip(n, a)) == 0
        assert sum(x * y for x, y in zip(n, b)) == 0

    @settings(max_examples=40)
    @given(st.lists(st.tuples(ints, ints, ints, ints), min_size=3, max_size=3))
    def test_orthogonal_in_dim_four(self, diffs):
        assume(int_rank(diffs) == 3)
        n = facet_normal(diffs, 4)
        assert any(x != 0 for x in n)
        for d in diffs:
            assert sum(x * y for x, y in zip(n, d)) == 0


def facets_as_set(facets):
    return {(n, c) for n, c, _ in facets}


class TestHullAgainstBruteForce:
    def test_square_with_clutter(self):
        pts = [(0, 0), (4, 0), (4, 4), (0, 4), (2, 2), (1, 0), (0, 0)]
        out = hull_full_dim(pts)
        assert sorted(pts[i] for i in out.vertex_indices) == [
            (0, 0),
            (0, 4),
            (4, 0),
            (4, 4),
        ]
        assert facets_as_set(out.facets) == set(brute_force_facets(pts))

    def test_cube_and_octahedron(self):
        cube = [(x, y, z) for x in (0, 2) for y in (0, 2) for z in (0, 2)]
        out = hull_full_dim(cube)
        assert len(out.vertex_indices) == 8
        assert len(out.facets) == 6
        assert facets_as_set(out.facets) == set(brute_force_facets(cube))

        octa = [
            (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1),
        ]
        out = hull_full_dim(octa)
        assert len(out.vertex_indices) == 6
        assert len(out.facets) == 8
        assert facets_as_set(out.facets) == set(brute_force_facets(octa))

    def test_four_dimensional_cross_polytope(self):
        pts = []
        for i in range(4):
            for s in (1, -1):
                v = [0, 0, 0, 0]
                v[i] = s
                pts.append(tuple(v))
        out = hull_full_dim(pts)
        assert len(out.vertex_indices) == 8
        assert len(out.facets) == 16
        assert facets_as_set(out.facets) == set(brute_force_facets(pts))

    def test_degenerate_input_rejected(self):
        with pytest.raises(DegenerateInput):
            hull_full_dim([(0, 0), (1, 1), (2, 2), (3, 3)])

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.tuples(ints, ints), min_size=3, max_size=10))
    def test_random_plane_sets_match_oracle(self, pts):
        assume(int_rank([tuple(a - b for a, b in zip(p, pts[0])) for p in pts]) == 2)
        out = hull_full_dim(pts)
        assert facets_as_set(out.facets) == set(brute_force_facets(pts))
        for n, c, _ in out.facets:
            assert all(sum(x * y for x, y in zip(n, p)) <= c for p in pts)
        for i in out.vertex_indices:
            assert helpers.is_extreme_oracle(
                [tuple(F(x) for x in p) for p in pts],
                tuple(F(x) for x in pts[i]),
            )

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.tuples(ints, ints, ints), min_size=4, max_size=9))
    def test_random_space_sets_match_oracle(self, pts):
        assume(int_rank([tuple(a - b for a, b in zip(p, pts[0])) for p in pts]) == 3)
        out = hull_full_dim(pts)
        assert facets_as_set(out.facets) == set(brute_force_facets(pts))
        for n, c, _ in out.facets:
            assert all(sum(x * y for x, y in zip(n, p)) <= c for p in pts)

    def test_insertion_order_does_not_change_answer(self):
        rng = random.Random(7)
        pts = [(rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(12)]
        base = hull_full_dim(pts)
        base_facets = facets_as_set(base.facets)
        base_verts = sorted(pts[i] for i in base.vertex_indices)
        for seed in range(5):
            shuffled = pts[:]
            random.Random(seed).shuffle(shuffled)
            out = hull_full_dim(shuffled)
            assert facets_as_set(out.facets) == base_facets
            assert sorted(shuffled[i] for i in out.vertex_indices) == base_verts
