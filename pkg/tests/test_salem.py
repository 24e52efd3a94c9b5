"""Salem recognition and the exhaustive degree-2m census."""

from fractions import Fraction

import pytest

from salemcensus.config import CensusBudgetError, RunConfig
from salemcensus.polynomials import (
    IntPoly,
    PalindromicPoly,
    count_real_roots_in,
    trace_transform,
)
from salemcensus.salem import (
    Kind,
    classify,
    coeff_box,
    cyclotomic,
    cyclotomic_factor,
    enumerate_salem,
    is_irreducible,
    record_from_minimal_poly,
)

LEHMER = IntPoly.of(1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1)


def P(*coeffs):
    return IntPoly.of(*coeffs)


class TestClassify:
    def test_golden_salem(self):
        result = classify(P(1, -3, 1))
        assert result.kind is Kind.SALEM
        assert result.record.m == 1
        assert result.record.approx_lambda() == pytest.approx(2.618033988749895, abs=1e-10)

    def test_cyclotomic(self):
        result = classify(P(1, 1, 1))
        assert result.kind is Kind.CYCLOTOMIC
        assert result.cyclotomic_order == 3

    def test_reducible_quartic(self):
        # x^4 - 3x^2 + 1 = (x^2 - x - 1)(x^2 + x - 1)
        assert classify(P(1, 0, -3, 0, 1)).kind is Kind.REDUCIBLE_OR_OTHER

    def test_non_palindromic(self):
        assert classify(P(-2, 0, 0, 1)).kind is Kind.REDUCIBLE_OR_OTHER

    def test_lehmer(self):
        result = classify(LEHMER)
        assert result.kind is Kind.SALEM
        assert result.record.m == 5
        assert result.record.approx_lambda() == pytest.approx(1.17628081825992, abs=1e-10)

    def test_rejects_non_monic(self):
        with pytest.raises(ValueError):
            classify(P(1, 0, 2))

    def test_rejects_degree_one(self):
        with pytest.raises(ValueError):
            classify(P(-2, 1))

    def test_repeated_factor_is_other(self):
        assert classify(P(1, 2, 1)).kind is Kind.REDUCIBLE_OR_OTHER

    def test_root_at_one_is_other(self):
        # palindromic with p(1) = 0
        assert classify(P(1, -2, 2, -2, 1)).kind in (Kind.REDUCIBLE_OR_OTHER,)


class TestIrreducibility:
    def test_quadratic(self):
        assert is_irreducible(P(1, -3, 1))

    def test_reducible_quartic(self):
        assert not is_irreducible(P(1, 0, -3, 0, 1))

    def test_lehmer(self):
        assert is_irreducible(LEHMER)

    def test_rational_root(self):
        assert not is_irreducible(P(-6, 11, -6, 1))

    def test_repeated_factor(self):
        assert not is_irreducible(P(1, 2, 1))

    def test_degree_cap(self):
        with pytest.raises(ValueError):
            is_irreducible(P(*([1] + [0] * 24 + [1])))

    def test_linear(self):
        assert is_irreducible(P(5, 1))


class TestCyclotomic:
    def test_first_twelve(self):
        known = {
            1: P(-1, 1),
            2: P(1, 1),
            3: P(1, 1, 1),
            4: P(1, 0, 1),
            5: P(1, 1, 1, 1, 1),
            6: P(1, -1, 1),
            12: P(1, 0, -1, 0, 1),
        }
        for d, poly in known.items():
            assert cyclotomic(d) == poly

    def test_factor_found(self):
        assert cyclotomic_factor(P(1, 1, 1), 6) == (3, P(1, 1, 1))

    def test_factor_absent_for_salem(self):
        assert cyclotomic_factor(P(1, -3, 1), 12) is None

    def test_smallest_order_wins(self):
        # x^4 - 1 is divisible by x - 1 first
        d, poly = cyclotomic_factor(P(-1, 0, 0, 0, 1), 4)
        assert d == 1 and poly == P(-1, 1)

    def test_bad_order(self):
        with pytest.raises(ValueError):
            cyclotomic_factor(P(1, 1), 0)


class TestCoeffBox:
    def test_degree_two(self):
        assert coeff_box(1, 10).bounds == (20,)

    def test_degree_four(self):
        assert coeff_box(2, 10).bounds == (40, 60)

    def test_degenerate_bound(self):
        box = coeff_box(2, 1)
        assert box.bounds == (4, 6)
        assert box.candidate_count() == 9 * 13

    def test_fractional_bound_rounds_up(self):
        assert coeff_box(1, Fraction(21, 2)).bounds == (21,)


def _brute_force_quartic_census(Q):
    """Independent oracle: filter the raw coefficient box through classify."""
    box = coeff_box(2, Q)
    hi = Fraction(Q) + Fraction(1, Q)
    found = set()
    for p1 in range(-box.bounds[0], box.bounds[0] + 1):
        for p2 in range(-box.bounds[1], box.bounds[1] + 1):
            p = P(1, p1, p2, p1, 1)
            if p.evaluate(1) >= 0 or p.evaluate(-1) <= 0:
                continue
            result = classify(p)
            if result.kind is not Kind.SALEM:
                continue
            trace = trace_transform(PalindromicPoly(p)).inner
            if count_real_roots_in(trace, 2, hi) == 1:
                found.add(p.coeffs)
    return found


class TestEnumerate:
    def test_degree_two_up_to_ten(self, cfg):
        records = enumerate_salem(1, 10, cfg)
        assert [r.min_poly.inner.coeffs for r in records] == [
            (1, -t, 1) for t in range(3, 11)
        ]
        lams = [r.approx_lambda() for r in records]
        assert lams == sorted(lams)
        assert lams[0] == pytest.approx(2.618033988749895, abs=1e-10)
        assert lams[-1] == pytest.approx(9.898979485566356, abs=1e-10)

    def test_empty_below_smallest(self, cfg):
        assert enumerate_salem(1, 2, cfg) == []

    def test_matches_brute_force_oracle(self, cfg):
        records = enumerate_salem(2, 10, cfg)
        assert {r.min_poly.inner.coeffs for r in records} == _brute_force_quartic_census(10)

    def test_matches_brute_force_oracle_degree_two(self, cfg):
        box = coeff_box(1, 15)
        hi = Fraction(15) + Fraction(1, 15)
        oracle = set()
        for p1 in range(-box.bounds[0], box.bounds[0] + 1):
            p = P(1, p1, 1)
            if p.evaluate(1) == 0 or p.evaluate(-1) == 0:
                continue
            result = classify(p)
            if result.kind is Kind.SALEM:
                trace = trace_transform(PalindromicPoly(p)).inner
                if count_real_roots_in(trace, 2, hi) == 1:
                    oracle.add(p.coeffs)
        assert {r.min_poly.inner.coeffs for r in enumerate_salem(1, 15, cfg)} == oracle

    def test_monotone_in_bound(self, cfg):
        small = {r.min_poly.inner.coeffs for r in enumerate_salem(2, 6, cfg)}
        large = {r.min_poly.inner.coeffs for r in enumerate_salem(2, 9, cfg)}
        assert small <= large

    def test_records_recertify(self, cfg):
        for record in enumerate_salem(2, 5, cfg):
            result = classify(record.min_poly.inner)
            assert result.kind is Kind.SALEM
            assert result.record.m == record.m
            assert record.min_poly.inner.is_palindromic()

    def test_density_near_bound(self, cfg):
        for Q in (10, 25, 60):
            count = len(enumerate_salem(1, Q, cfg))
            assert abs(count - Q) <= 2

    def test_lambda_at_most_q_is_sharp(self, cfg):
        # largest degree-2 Salem root below 10 is (10 + sqrt(96))/2 ~ 9.899
        records = enumerate_salem(1, Fraction(99, 10), cfg)
        assert records[-1].min_poly.inner.coeffs == (1, -10, 1)

    def test_budget_guard(self):
        tight = RunConfig(shards=1, budget=1000)
        with pytest.raises(CensusBudgetError):
            enumerate_salem(3, 1000, tight)

    def test_invalid_args(self, cfg):
        with pytest.raises(ValueError):
            enumerate_salem(0, 10, cfg)
        with pytest.raises(ValueError):
            enumerate_salem(1, 1, cfg)


def test_record_from_minimal_poly_rejects_non_salem():
    with pytest.raises(ValueError):
        record_from_minimal_poly(P(1, 1, 1))
