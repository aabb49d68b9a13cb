"""Acceptance gate: one test per criterion, summarised by ``conftest.py``."""

import random
import time
from fractions import Fraction
from math import gcd

import pytest

from khicone import oracles
from khicone.chain import (GradedMap, GradedModule, compose, cone, octahedral_verify, rank,
                           triangle_dims_consistent)
from khicone.hf_model import HFStaircase, conjecture16_model_check, f2_doubling_check, hfk_sharp
from khicone.laurent import StaircaseSpec, lspace_decompose, torus_knot_alexander
from khicone.report import build_report, parse_line
from khicone.selftest import (all_specs, brute_exactness, module_of, paired_sample, random_map,
                              random_nonzero_rational, random_profile, random_spec, sample_pair)
from khicone.staircase import build_staircase, cone_map, extract_d1, isharp_dim
from khicone.torsion import (TORSION_PROVED, PreconditionFailed, certify_torsion, common_pair_scalar,
                             counting_lemma_check)

SEED = 20241016


def criterion(n, title):
    return pytest.mark.criterion(n, title)


@criterion(1, "trefoil end-to-end")
def test_criterion_01_trefoil_end_to_end():
    start = time.perf_counter()
    r = build_report(parse_line("torus 2 3"))
    elapsed = time.perf_counter() - start
    assert r["dim_khi"] == 3
    assert r["graded_khi"] == [[1, 1], [0, 1], [-1, 1]]
    assert r["rank"] == 1
    assert r["dim_isharp"] == 4
    assert elapsed < 1.0, elapsed


@criterion(2, "trefoil torsion certificate")
def test_criterion_02_trefoil_certificate():
    s = build_staircase(StaircaseSpec((0, 1)))
    d1p, d1m = extract_d1(s)
    cert = certify_torsion(s.module, d1p, d1m)
    assert cert.verdict == TORSION_PROVED
    assert cert.f2_lower_bound == 6 and cert.dim_isharp_C == 4
    by_claim = {line.claim: line for line in cert.ledger}
    assert by_claim["2*3 = 4 + 2*1"].holds()
    assert by_claim["6 > 4"].holds()
    cert.check()


@criterion(3, "surgery-triangle arithmetic")
def test_criterion_03_triangle_arithmetic():
    for n in range(1, 11):
        assert triangle_dims_consistent(n, n + 1, 1)
        assert oracles.triangle_exists(n, n + 1, 1)
    assert not triangle_dims_consistent(0, 0, 1)


@criterion(4, "T(2,2j+1) family")
def test_criterion_04_two_strand_torus_family():
    start = time.perf_counter()
    for j in range(1, 21):
        spec = lspace_decompose(torus_knot_alexander(2, 2 * j + 1))
        rep = isharp_dim(spec)
        brute = oracles.naive_rank(oracles.zigzag_matrix(spec.exponents))
        assert rep.rank == brute == j
        assert rep.dim_homology == 2 * spec.k + 1 + 2 * spec.k + 1 - 2 * brute == 2 * j + 2
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, elapsed


@criterion(5, "scalar invariance")
def test_criterion_05_scalar_invariance():
    rng = random.Random(SEED)
    specs = [random_spec(rng, max_k=10) for _ in range(20)]
    for spec in specs:
        base = oracles.naive_rank(cone_map(spec).matrix)
        for _ in range(100):
            cp, cm = random_nonzero_rational(rng), random_nonzero_rational(rng)
            assert rank(cone_map(spec, cp, cm)) == base, (spec, cp, cm)


@criterion(6, "cone-dimension oracle equivalence")
def test_criterion_06_cone_oracle():
    rng = random.Random(SEED)
    for i in range(500):
        f = random_map(rng, max_dim=12)
        rep = cone(f, "rational")
        h = oracles.explicit_cone_homology(f.matrix, f.domain.dim, f.codomain.dim)
        assert rep.dim_homology == h[0] + h[1], i


@criterion(7, "octahedral exactness")
def test_criterion_07_octahedral():
    rng = random.Random(SEED)

    def integer_map(a, b):
        return GradedMap(GradedModule((0,) * a), GradedModule((0,) * b),
                         [[rng.randint(-3, 3) for _ in range(a)] for _ in range(b)])

    for i in range(200):
        a, b, c = (rng.randint(0, 10) for _ in range(3))
        f, g = integer_map(a, b), integer_map(b, c)
        if rng.random() < 0.5:
            f = f.scaled(Fraction(rng.randint(1, 5), rng.randint(1, 5)))
        assert octahedral_verify(f, g).exact, i
        assert brute_exactness(f, g), i


@criterion(8, "integer torsion law")
def test_criterion_08_integer_torsion_law():
    # step sizes above 2 give the same matrices as step 2, so this covers every k <= 12 pattern
    count = 0
    for spec in all_specs(12, 2):
        hf = HFStaircase.from_spec(spec)
        r = rank(hf.total)
        assert hfk_sharp(hf).torsion_summands == (2,) * r, spec
        assert f2_doubling_check(hf)
        count += 1
    assert count == 2 ** 13 - 1


@criterion(9, "counting-lemma suite")
def test_criterion_09_counting_lemma():
    rng = random.Random(SEED)
    full = nontrivial = 0
    for i in range(300):
        if i % 2:
            profile, module, delta, delta_lambda, _ = paired_sample(rng)
        else:
            profile = random_profile(rng, gap=rng.random() < 0.6)
            module = module_of(profile)
            delta, delta_lambda, _ = sample_pair(rng, module)
        assert compose(delta, delta_lambda).is_zero(), i
        assert module.dim - rank(delta) >= rank(delta_lambda), i
        try:
            rep = counting_lemma_check(module, delta, delta_lambda, profile.g)
        except PreconditionFailed:
            continue
        assert rep.ker_delta_A >= rep.rank_delta_lambda_A, i
        if common_pair_scalar(delta, delta_lambda) is not None:
            full += 1
            nontrivial += rep.rank_delta_A > 0
            assert rep.cone_dim >= module.dim + 2 * profile.at(profile.g) + 1, (i, rep.to_json())
    assert full >= 100 and nontrivial >= 30, (full, nontrivial)


@criterion(10, "HF and instanton model agreement")
def test_criterion_10_model_agreement():
    pairs = [(p, q) for p in range(2, 51) for q in range(p + 1, 51) if gcd(p, q) == 1 and p * q <= 100]
    assert pairs
    for p, q in pairs:
        spec = lspace_decompose(torus_knot_alexander(p, q))
        rep = conjecture16_model_check(spec)
        assert rep.equal, (p, q)
        assert rep.instanton.dim_homology == rep.heegaard_floer.dim_homology
