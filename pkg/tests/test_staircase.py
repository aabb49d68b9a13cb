import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from khicone import oracles
from khicone.chain import rank
from khicone.laurent import StaircaseSpec
from khicone.selftest import all_specs, random_nonzero_rational
from khicone.staircase import (Arrow, Staircase, ZeroScalar, build_staircase, check_staircase,
                               cone_map, extract_d1, isharp_dim)

specs = st.lists(st.integers(1, 4), max_size=10).map(
    lambda steps: StaircaseSpec(tuple([0] + [sum(steps[:i + 1]) for i in range(len(steps))])))


def entries(m):
    return {(r, c): v for r, row in enumerate(m.matrix) for c, v in enumerate(row) if v}


class TestBuild:
    def test_trefoil(self):
        s = build_staircase(StaircaseSpec((0, 1)))
        assert s.vertices == (1, 0, -1)
        assert s.arrows == (Arrow(0, 1, 1, "-"), Arrow(2, 1, 1, "+"))

    def test_unknot(self):
        s = build_staircase(StaircaseSpec((0,)))
        assert s.vertices == (0,) and s.arrows == ()

    def test_t34(self):
        s = build_staircase(StaircaseSpec((0, 2, 3)))
        assert s.vertices == (3, 2, 0, -2, -3)
        assert [a.length for a in s.arrows] == [1, 2, 2, 1]
        assert [a.sign for a in s.arrows] == ["-", "+", "-", "+"]

    @given(specs)
    def test_invariants(self, spec):
        s = build_staircase(spec)
        check_staircase(s)
        assert s.dim == 2 * spec.k + 1
        assert Staircase.from_json(json.loads(json.dumps(s.to_json()))) == s

    def test_unicode_minus_accepted(self):
        assert Arrow.from_json({"from": 0, "to": 1, "length": 1, "sign": "−"}).sign == "-"

    def test_tampered_json_rejected(self):
        data = build_staircase(StaircaseSpec((0, 2, 3))).to_json()
        data["arrows"][1]["length"] = 1
        with pytest.raises(AssertionError):
            Staircase.from_json(data)


class TestD1:
    def test_trefoil(self):
        d1p, d1m = extract_d1(build_staircase(StaircaseSpec((0, 1))))
        assert (d1p.shift, d1m.shift) == (1, -1)
        # rows and columns are indexed by gradings (1, 0, -1)
        assert entries(d1m) == {(1, 0): 1}
        assert entries(d1p) == {(1, 2): 1}

    def test_unknot_zero(self):
        d1p, d1m = extract_d1(build_staircase(StaircaseSpec((0,))))
        assert d1p.is_zero() and d1m.is_zero()

    def test_t34_drops_long_arrows(self):
        d1p, d1m = extract_d1(build_staircase(StaircaseSpec((0, 2, 3))))
        assert entries(d1m) == {(1, 0): 1}
        assert entries(d1p) == {(3, 4): 1}

    @given(specs)
    def test_matches_independent_zigzag(self, spec):
        d1p, d1m = extract_d1(build_staircase(spec))
        assert [list(r) for r in (d1p + d1m).matrix] == oracles.zigzag_matrix(spec.exponents)


class TestIsharp:
    @pytest.mark.parametrize("exponents, rank_, dim", [((0, 1), 1, 4), ((0,), 0, 2), ((0, 1, 2), 2, 6),
                                                       ((0, 2, 3), 2, 6)])
    def test_examples(self, exponents, rank_, dim):
        rep = isharp_dim(StaircaseSpec(exponents))
        assert rep.rank == rank_ and rep.dim_homology == dim

    def test_zero_scalar(self):
        with pytest.raises(ZeroScalar):
            cone_map(StaircaseSpec((0, 1)), 0, 1)
        with pytest.raises(ZeroScalar):
            cone_map(StaircaseSpec((0, 1)), 1, Fraction(0))

    @settings(max_examples=50)
    @given(specs, st.integers(0, 2 ** 32))
    def test_scalar_invariance(self, spec, seed):
        rnd = random.Random(seed)
        base = isharp_dim(spec).rank
        for _ in range(10):
            cp, cm = random_nonzero_rational(rnd), random_nonzero_rational(rnd)
            assert isharp_dim(spec, cp, cm).rank == base

    def test_rank_is_path_matching_for_all_small_specs(self):
        for spec in all_specs(6, 2):
            rep = isharp_dim(spec)
            assert rep.rank == oracles.path_matching_rank(spec.exponents)
            assert rep.rank == oracles.naive_rank(cone_map(spec).matrix)
            assert (rep.rank > 0) == oracles.has_unit_step(spec.exponents)
            assert 2 * (2 * spec.k + 1) == rep.dim_homology + 2 * rep.rank

    def test_two_bridge_torus_family(self):
        for j in range(1, 21):
            spec = StaircaseSpec(tuple(range(j + 1)))
            assert isharp_dim(spec).dim_homology == 2 * j + 2
            assert rank(cone_map(spec, Fraction(3, 7), -5)) == j

    def test_unequal_scalars_change_matrix_not_rank(self):
        spec = StaircaseSpec((0, 1, 2))
        a, b = cone_map(spec), cone_map(spec, 2, Fraction(-1, 3))
        assert a.matrix != b.matrix and rank(a) == rank(b)


def test_random_specs_via_seeded_rng():
    rng = random.Random(3)
    for _ in range(20):
        ex = [0]
        for _ in range(rng.randint(0, 10)):
            ex.append(ex[-1] + rng.randint(1, 3))
        check_staircase(build_staircase(StaircaseSpec(tuple(ex))))
