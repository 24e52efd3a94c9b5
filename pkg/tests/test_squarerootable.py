"""Square-rootability witnesses, their verification, and the witness census."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from salemcensus.config import CensusBudgetError, RunConfig
from salemcensus.polynomials import IntPoly, PalindromicPoly, compose_square
from salemcensus.salem import record_from_minimal_poly
from salemcensus.squarerootable import (
    SqrtDecomposition,
    enumerate_square_rootable,
    enumerate_witnesses_for_alpha,
    expand_mixed_product,
    find_decompositions,
    identity_polynomial,
    is_square_rootable,
    salem_value,
    square_free_part,
    verify_decomposition,
)

GOLDEN = IntPoly.of(1, -3, 1)
FOUR_PREIMAGE = IntPoly.of(1, -56, -157, -228, -247, -228, -157, -56, 1)
NOT_SQ_DEGREE_SIX = IntPoly.of(1, 0, -1, -1, -1, 0, 1)


def P(*coeffs):
    return IntPoly.of(*coeffs)


@pytest.fixture(scope="module")
def golden_record():
    return record_from_minimal_poly(GOLDEN)


@pytest.fixture(scope="module")
def golden_witness(golden_record, cfg):
    witnesses = find_decompositions(golden_record, cfg)
    assert len(witnesses) == 1
    return witnesses[0]


class TestSquareFreePart:
    def test_examples(self):
        assert square_free_part(12) == (3, 2)
        assert square_free_part(1) == (1, 1)
        assert square_free_part(78) == (78, 1)
        assert square_free_part(360) == (10, 6)

    def test_invalid(self):
        with pytest.raises(ValueError):
            square_free_part(0)

    @given(st.integers(1, 10**6))
    @settings(max_examples=300)
    def test_reconstruction(self, n):
        s, k = square_free_part(n)
        assert s * k * k == n
        assert square_free_part(s) == (s, 1)


class TestGoldenWitness:
    def test_unique_decomposition(self, golden_witness):
        assert golden_witness.alpha == 5
        assert golden_witness.even_part == P(1, 1)
        assert golden_witness.odd_part == P(-1)

    def test_identity_expansion(self, golden_witness):
        assert identity_polynomial(5, P(1, 1), P(-1)) == GOLDEN
        # q(x)q(-x) = (x^2 - sqrt5 x + 1)(x^2 + sqrt5 x + 1) = x^4 - 3x^2 + 1
        assert expand_mixed_product(golden_witness) == compose_square(GOLDEN)

    def test_verifies(self, golden_witness):
        result = verify_decomposition(golden_witness)
        assert result.ok and result.failed_clause is None

    def test_phi_is_golden_ratio_squared(self, golden_witness):
        value = salem_value(golden_witness)
        assert float(value) == pytest.approx((1 + 5**0.5) ** 2 / 4, abs=1e-12)

    def test_phi_is_root_of_source(self, golden_witness):
        value = float(salem_value(golden_witness))
        assert abs(GOLDEN.evaluate(Fraction(value).limit_denominator(10**14))) < 1e-9


@pytest.fixture(scope="module")
def four_preimage_witnesses(cfg):
    record = record_from_minimal_poly(FOUR_PREIMAGE)
    return find_decompositions(record, cfg)


class TestFourPreimageExample:
    @pytest.fixture
    def witnesses(self, four_preimage_witnesses):
        return four_preimage_witnesses

    def test_exactly_four_alphas(self, witnesses):
        assert sorted(w.alpha for w in witnesses) == [2, 6, 26, 78]

    def test_all_verify(self, witnesses):
        for w in witnesses:
            assert verify_decomposition(w)

    def test_identical_phi_values(self, witnesses):
        values = {str(salem_value(w)) for w in witnesses}
        assert len(values) == 1


class TestVerifyClauses:
    def test_perturbed_alpha_fails_identity(self, golden_witness):
        bad = SqrtDecomposition(10, golden_witness.even_part, golden_witness.odd_part, golden_witness.source)
        result = verify_decomposition(bad)
        assert not result.ok and result.failed_clause == "identity"

    def test_zero_odd_part(self, golden_witness):
        bad = SqrtDecomposition(5, golden_witness.even_part, P(), golden_witness.source)
        result = verify_decomposition(bad)
        assert result.failed_clause == "nonzero-odd-part"

    def test_alpha_with_square_divisor(self, golden_witness):
        bad = SqrtDecomposition(20, golden_witness.even_part, golden_witness.odd_part, golden_witness.source)
        assert verify_decomposition(bad).failed_clause == "alpha-squarefree"

    def test_sign_flip_fails_root_condition(self, golden_witness):
        bad = SqrtDecomposition(5, golden_witness.even_part, P(1), golden_witness.source)
        assert verify_decomposition(bad).failed_clause == "root-sign"

    def test_non_palindromic_even_part(self):
        # identity would even hold, but A is not monic-palindromic of degree m
        src = PalindromicPoly(P(1, -7, 13, -7, 1))
        bad = SqrtDecomposition(3, P(2, 1), P(-1), src)
        assert verify_decomposition(bad).failed_clause == "palindromic"

    def test_cyclotomic_source_fails_salem_clause(self):
        # (y^2 + y + 1)^2 - y (1 + y)^2 reproduces 1 + y + y^2 + y^3 + y^4 exactly,
        # but that source is cyclotomic, not Salem
        src = PalindromicPoly(P(1, 1, 1, 1, 1))
        d = SqrtDecomposition(1, P(1, 1, 1), P(-1, -1), src)
        assert identity_polynomial(1, P(1, 1, 1), P(1, 1)) == src.inner
        assert verify_decomposition(d).failed_clause == "source-salem"


class TestIsSquareRootable:
    def test_golden(self, golden_record, cfg):
        assert is_square_rootable(golden_record, cfg)

    def test_every_degree_two_record(self, cfg):
        from salemcensus.salem import enumerate_salem

        for record in enumerate_salem(1, 12, cfg):
            assert is_square_rootable(record, cfg)

    def test_degree_six_counterexample(self, cfg):
        record = record_from_minimal_poly(NOT_SQ_DEGREE_SIX)
        assert not is_square_rootable(record, cfg)

    def test_quartic_example_agrees_with_census(self, cfg):
        p = P(1, -3, -3, -3, 1)
        record = record_from_minimal_poly(p)
        decision = is_square_rootable(record, cfg)
        lam = record.approx_lambda()
        census = enumerate_square_rootable(2, math.ceil(lam) + 1, cfg)
        in_census = any(g.min_poly.inner == p for g, _ in census)
        assert decision == in_census


class TestWitnessesForAlpha:
    def test_contains_golden_witness(self, cfg):
        witnesses = enumerate_witnesses_for_alpha(1, 5, 2, cfg)
        assert [(w.alpha, w.even_part.coeffs, w.odd_part.coeffs) for w in witnesses] == [
            (5, (1, 1), (-1,))
        ]

    def test_small_radius_empty(self, cfg):
        assert enumerate_witnesses_for_alpha(1, 3, 1.1, cfg) == []

    def test_alpha_beyond_ceiling_empty(self, cfg):
        # odd coefficient bound is binom(2,1)*R = 4, so alpha > 16 kills B
        assert enumerate_witnesses_for_alpha(1, 17, 2, cfg) == []

    def test_rejects_non_squarefree_alpha(self, cfg):
        with pytest.raises(ValueError):
            enumerate_witnesses_for_alpha(1, 4, 2, cfg)


@pytest.fixture(scope="module")
def census_2_10(cfg):
    return enumerate_square_rootable(2, 10, cfg)


class TestCensus:

    def test_degree_two_groups(self, cfg):
        groups = enumerate_square_rootable(1, 10, cfg)
        assert len(groups) == 8
        assert all(len(ws) == 1 for _, ws in groups)
        # alpha is the square-free part of t + 2 for x^2 - t x + 1
        alphas = {g.min_poly.inner.coeffs[1]: ws[0].alpha for g, ws in groups}
        assert alphas == {-3: 5, -4: 6, -5: 7, -6: 2, -7: 1, -8: 10, -9: 11, -10: 3}

    def test_groups_subset_of_full_census(self, census_2_10, cfg):
        from salemcensus.salem import enumerate_salem

        all_polys = {r.min_poly.inner.coeffs for r in enumerate_salem(2, 10, cfg)}
        assert {g.min_poly.inner.coeffs for g, _ in census_2_10} <= all_polys

    def test_preimage_size_law(self, census_2_10):
        for _, witnesses in census_2_10:
            assert 1 <= len(witnesses) <= 16

    def test_real_polynomial_determines_alpha(self, census_2_10):
        # identical real q-coefficients force identical witnesses
        seen = {}
        for _, witnesses in census_2_10:
            for w in witnesses:
                vec = w.real_coefficient_key()
                if vec in seen:
                    assert seen[vec] == w.key()
                seen[vec] = w.key()

    def test_product_law_per_witness(self, census_2_10):
        for g, witnesses in census_2_10:
            target = compose_square(g.min_poly.inner)
            for w in witnesses:
                assert expand_mixed_product(w) == target

    def test_all_witnesses_verify(self, census_2_10):
        for _, witnesses in census_2_10:
            for w in witnesses:
                assert verify_decomposition(w)

    def test_cross_pipeline_small(self, cfg):
        from salemcensus.salem import enumerate_salem

        census = {g.min_poly.inner.coeffs for g, _ in enumerate_square_rootable(1, 20, cfg)}
        oracle = {
            r.min_poly.inner.coeffs
            for r in enumerate_salem(1, 20, cfg)
            if is_square_rootable(r, cfg)
        }
        assert census == oracle

    def test_budget_guard(self):
        tight = RunConfig(shards=1, budget=1000)
        with pytest.raises(CensusBudgetError):
            enumerate_square_rootable(2, 50, tight)

    def test_invalid_args(self, cfg):
        with pytest.raises(ValueError):
            enumerate_square_rootable(0, 5, cfg)
        with pytest.raises(ValueError):
            enumerate_square_rootable(1, Fraction(1), cfg)
