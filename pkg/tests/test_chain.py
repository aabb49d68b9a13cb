import json
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import invariant_factors

from khicone import linalg, oracles
from khicone.chain import (CompositionMismatch, ConeReport, GradedMap, GradedModule,
                           GradingShiftError, cone, matrix_from_json, matrix_to_json,
                           octahedral_verify, rank, smith_normal_form, triangle_dims_consistent)
from khicone.selftest import brute_exactness, check_snf, random_unimodular


def flat(n):
    return GradedModule((0,) * n)


matrices = st.integers(0, 7).flatmap(
    lambda r: st.integers(0, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)))


class TestRank:
    def test_trivial(self):
        assert rank(GradedMap.zero(flat(5))) == 0
        assert rank(GradedMap.identity(flat(5))) == 5

    @settings(max_examples=200)
    @given(matrices)
    def test_matches_sympy(self, m):
        expected = sympy.Matrix(m).rank() if m and m[0] else 0
        assert rank(m) == expected == oracles.naive_rank(m)

    def test_rational_entries(self):
        m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]
        assert rank(m) == 1
        assert rank([[Fraction(1, 2), 0], [0, Fraction(-7, 3)]]) == 2

    def test_f2(self):
        assert rank([[2, 0], [0, 2]], "f2") == 0
        assert rank([[1, 1], [1, 1]], "f2") == 1
        assert rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]], "f2") == 2
        assert rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 3

    @settings(max_examples=100)
    @given(matrices)
    def test_transpose_invariant(self, m):
        assert rank(m) == (rank(linalg.transpose(m)) if m and m[0] else 0)


class TestSmith:
    def test_examples(self):
        assert smith_normal_form([[2]])[0] == [2]
        assert smith_normal_form([[1, 0, 0], [0, 6, 0], [0, 0, 4]])[0] == [1, 2, 12]
        assert smith_normal_form([[0, 0, 0], [0, 0, 0]])[0] == [0, 0]

    def test_diag_example_agrees_with_sympy(self):
        m = [[1, 0, 0], [0, 6, 0], [0, 0, 4]]
        assert [int(x) for x in invariant_factors(sympy.Matrix(m))] == [1, 2, 12]
        assert check_snf(m) == []

    @settings(max_examples=150)
    @given(matrices.filter(lambda m: m and m[0]))
    def test_properties(self, m):
        assert check_snf(m) == []
        divisors = smith_normal_form(m)[0]
        nonzero = [d for d in divisors if d]
        expected = [int(x) for x in invariant_factors(sympy.Matrix(m)) if x]
        assert nonzero == expected
        rng = random.Random(len(m) * 31 + len(m[0]))
        mixed = linalg.matmul(linalg.matmul(random_unimodular(rng, len(m)), m),
                              random_unimodular(rng, len(m[0])))
        assert smith_normal_form(mixed)[0] == divisors

    def test_rejects_fractions(self):
        with pytest.raises(ValueError):
            smith_normal_form([[Fraction(1, 2)]])


class TestGradedMap:
    def test_shift_checked(self):
        v = GradedModule((1, 0, -1))
        GradedMap(v, v, [[0, 0, 0], [1, 0, 0], [0, 1, 0]], -1)
        with pytest.raises(GradingShiftError):
            GradedMap(v, v, [[0, 0, 0], [1, 0, 0], [0, 0, 1]], -1)

    @settings(max_examples=100)
    @given(st.lists(st.integers(-3, 3), min_size=1, max_size=6), st.integers(-2, 2),
           st.integers(0, 35), st.integers(0, 35))
    def test_any_violating_entry_rejected(self, grads, shift, i, j):
        v = GradedModule(tuple(grads))
        r, c = i % v.dim, j % v.dim
        m = linalg.zeros(v.dim, v.dim)
        m[r][c] = 1
        if grads[r] == grads[c] + shift:
            assert GradedMap(v, v, m, shift).grading_shifts() == {shift}
        else:
            with pytest.raises(GradingShiftError):
                GradedMap(v, v, m, shift)

    def test_shape_checked(self):
        with pytest.raises(ValueError):
            GradedMap(flat(2), flat(3), [[1, 0]])

    def test_sum_of_different_shifts_is_mixed(self):
        v = GradedModule((1, 0, -1))
        up = GradedMap(v, v, [[0, 1, 0], [0, 0, 1], [0, 0, 0]], 1)
        down = up.transpose()
        assert down.shift == -1
        assert (up + down).shift == "mixed"
        assert (up + up).shift == 1

    def test_json_round_trip(self):
        v = GradedModule((2, 0))
        f = GradedMap(v, GradedModule((1,)), [[Fraction(-3, 4), 5]])
        data = f.to_json()
        assert data["matrix"] == {"rows": 1, "cols": 2, "entries": [[0, 0, "-3/4"], [0, 1, "5/1"]]}
        assert data["domain"] == {"gradings": [2, 0]}
        assert GradedMap.from_json(json.loads(json.dumps(data))) == f
        assert matrix_from_json(matrix_to_json([[0, 0]])) == [[0, 0]]


class TestCone:
    @pytest.mark.parametrize("n", [0, 1, 4, 7])
    def test_zero_and_identity(self, n):
        assert cone(GradedMap.zero(flat(n))).dim_homology == 2 * n
        assert cone(GradedMap.identity(flat(n))).dim_homology == 0

    def test_twice_identity_over_integers(self):
        rep = cone(GradedMap(flat(2), flat(2), [[2, 0], [0, 2]]), "integer")
        assert rep.dim_homology == 0
        assert rep.torsion_summands == (2, 2)
        assert rep.rank == 2

    def test_rational_has_no_torsion(self):
        assert cone(GradedMap(flat(2), flat(2), [[2, 0], [0, 2]])).torsion_summands == ()

    def test_graded_breakdown_homogeneous(self):
        v = GradedModule((1, 0, -1))
        down = GradedMap(v, v, [[0, 0, 0], [1, 0, 0], [0, 0, 0]], -1)
        rep = cone(down)
        assert rep.graded_kernel_dims == {0: 1, -1: 1}
        assert rep.graded_cokernel_dims == {1: 1, -1: 1}

    def test_graded_breakdown_filtration_for_mixed(self):
        # f(e1) = e0, f(e-1) = e0 : kernel spanned by e0 and e1 - e-1
        v = GradedModule((1, 0, -1))
        f = GradedMap(v, v, [[0, 0, 0], [1, 0, 1], [0, 0, 0]])
        rep = cone(f)
        assert rep.graded_kernel_dims == {1: 1, 0: 1}
        assert rep.graded_cokernel_dims == {1: 1, -1: 1}

    def test_report_json_round_trip(self):
        rep = cone(GradedMap(GradedModule((1, 0)), GradedModule((0, 0)), [[1, 2], [3, 4]]), "integer")
        assert ConeReport.from_json(json.loads(json.dumps(rep.to_json()))) == rep

    def test_unknown_ring(self):
        with pytest.raises(ValueError):
            cone(GradedMap.zero(flat(1)), "complex")

    @settings(max_examples=150)
    @given(matrices)
    def test_dimension_law_against_explicit_complex(self, m):
        rows = len(m)
        cols = len(m[0]) if m else 0
        f = GradedMap(flat(cols), flat(rows), m if cols else linalg.zeros(rows, 0))
        rep = cone(f)
        oracle = oracles.explicit_cone_homology(f.matrix, cols, rows)
        assert rep.dim_homology == oracle[0] + oracle[1]
        assert rep.dim_homology == cols + rows - 2 * rep.rank
        integer = cone(f, "integer")
        assert len(integer.torsion_summands) <= integer.rank

    @settings(max_examples=100)
    @given(matrices)
    def test_integer_two_f_law(self, m):
        rows = len(m)
        cols = len(m[0]) if m else 0
        f = GradedMap(flat(cols), flat(rows), linalg.scale(2, m) if cols else linalg.zeros(rows, 0))
        rep = cone(f, "integer")
        r = oracles.naive_rank(m) if cols and rows else 0
        assert len([d for d in rep.torsion_summands if d % 2 == 0]) == r
        divisors = smith_normal_form(m)[0] if cols and rows else []
        if all(d in (0, 1) for d in divisors):
            assert rep.torsion_summands == (2,) * r


class TestOctahedral:
    def test_zero_maps(self):
        one = flat(1)
        rep = octahedral_verify(GradedMap.zero(one), GradedMap.zero(one))
        assert rep.cone_dims == (2, 2, 2)
        assert rep.exact

    @pytest.mark.parametrize("n", [0, 1, 3, 6])
    def test_identities(self, n):
        rep = octahedral_verify(GradedMap.identity(flat(n)), GradedMap.identity(flat(n)))
        assert rep.cone_dims == (0, 0, 0)
        assert rep.exact

    def test_mismatch(self):
        with pytest.raises(CompositionMismatch):
            octahedral_verify(GradedMap.zero(flat(2), flat(3)), GradedMap.zero(flat(2)))

    def test_connecting_ranks_example(self):
        # f = inclusion Q -> Q^2, g = projection onto the other coordinate
        f = GradedMap(flat(1), flat(2), [[1], [0]])
        g = GradedMap(flat(2), flat(1), [[0, 1]])
        rep = octahedral_verify(f, g)
        assert rep.exact
        assert rep.cone_dims == (1, 2, 1)
        # g∘f = 0, so ker(gf) = Q and coker(gf) = Q
        assert rep.sequence_dims == (0, 1, 1, 1, 1, 0)

    def test_random_4_5_3(self):
        rng = random.Random(7)
        for _ in range(200):
            fm = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(5)]
            gm = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(3)]
            f, g = GradedMap(flat(4), flat(5), fm), GradedMap(flat(5), flat(3), gm)
            assert octahedral_verify(f, g).exact
            assert brute_exactness(f, g)

    def test_six_term_sequence_for_zero_maps(self):
        from khicone import chain
        f = GradedMap(flat(1), flat(1), [[0]])
        g = GradedMap(flat(1), flat(1), [[0]])
        dims, maps = chain.octahedral_maps(f, g)
        assert dims == (1, 1, 1, 1, 1, 1)
        assert [rank(m) for m in maps] == [1, 0, 1, 0, 1]


class TestTriangle:
    def test_examples(self):
        assert triangle_dims_consistent(1, 2, 1)
        assert not triangle_dims_consistent(0, 0, 1)
        assert not triangle_dims_consistent(5, 1, 1)

    def test_exhaustive_against_rank_search(self):
        for a in range(9):
            for b in range(9):
                for c in range(9):
                    assert triangle_dims_consistent(a, b, c) == oracles.triangle_exists(a, b, c), (a, b, c)

    def test_negative(self):
        with pytest.raises(ValueError):
            triangle_dims_consistent(-1, 0, 1)
