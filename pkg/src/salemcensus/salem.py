"""Salem number recognition and exhaustive enumeration by degree and bound.

A Salem number is a real algebraic integer greater than 1 that is conjugate
to its own inverse while every remaining conjugate lies on the unit circle
(degree 2 is admitted).  Recognition works in trace coordinates: a monic
palindromic p of degree 2m is a Salem minimal polynomial exactly when it is
irreducible and its trace polynomial has m-1 simple roots in (-2, 2) and a
single simple root beyond 2.  All root-location decisions are exact Sturm
counts over the rationals; floating point only supplies enclosures of the
leading root for reporting.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import itertools
import math
from fractions import Fraction

import mpmath
from typing import Optional, Union

from .config import DEFAULT_CONFIG, CensusBudgetError, RunConfig, as_fraction
from .polynomials import (
    IntPoly,
    PalindromicPoly,
    TracePoly,
    _chain_count,
    _int_sturm_chain,
    cauchy_root_bound,
    count_real_roots_in,
    exact_divide,
    isolate_real_root,
    rational_gcd_is_trivial,
    trace_inverse,
    trace_transform,
)
from .roots import RootCertificationError, RootEnclosure, certified_roots, fraction_to_mpf
from .sharding import run_sharded, split_range

MAX_IRREDUCIBILITY_DEGREE = 24

TWO = Fraction(2)
MINUS_TWO = Fraction(-2)


class Kind(enum.Enum):
    SALEM = "salem"
    CYCLOTOMIC = "cyclotomic"
    REDUCIBLE_OR_OTHER = "reducible_or_other"


@dataclasses.dataclass(frozen=True)
class SalemRecord:
    """A certified Salem number: minimal polynomial, enclosure of the root > 1, half-degree."""

    min_poly: PalindromicPoly
    lam: RootEnclosure
    m: int
    lambda_bracket: tuple[Fraction, Fraction]

    def approx_lambda(self) -> float:
        return float(self.lam.center.real)

    def sort_key(self):
        mid = (self.lambda_bracket[0] + self.lambda_bracket[1]) / 2
        return (float(mid), self.min_poly.inner.coeffs)

    def __str__(self) -> str:
        return f"Salem(lambda~{self.approx_lambda():.6f}, m={self.m}, {self.min_poly})"


@dataclasses.dataclass(frozen=True)
class ClassifyResult:
    kind: Kind
    record: Optional[SalemRecord] = None
    cyclotomic_order: Optional[int] = None


@dataclasses.dataclass(frozen=True)
class CoeffBox:
    """Inclusive symmetric bounds for the free coefficients p_1..p_m of a Salem candidate."""

    m: int
    Q: Fraction
    bounds: tuple[int, ...]

    def candidate_count(self) -> int:
        return math.prod(2 * b + 1 for b in self.bounds)


# ---------------------------------------------------------------------------
# Cyclotomic machinery


@functools.lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPoly:
    """The d-th cyclotomic polynomial via exact recursive division of x^d - 1."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    poly = IntPoly.of(*([-1] + [0] * (d - 1) + [1]))
    for e in range(1, d):
        if d % e == 0:
            quotient = exact_divide(poly, cyclotomic(e))
            assert quotient is not None
            poly = quotient
    return poly


def euler_phi(d: int) -> int:
    result = d
    n = d
    p = 2
    while p * p <= n:
        if n % p == 0:
            result -= result // p
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        result -= result // n
    return result


def cyclotomic_factor(p: IntPoly, max_order: int) -> Optional[tuple[int, IntPoly]]:
    """Smallest d <= max_order with the d-th cyclotomic polynomial dividing p exactly."""
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    for d in range(1, max_order + 1):
        phi = cyclotomic(d)
        if phi.degree() > p.degree():
            continue
        if exact_divide(p, phi) is not None:
            return d, phi
    return None


@functools.lru_cache(maxsize=None)
def _cyclotomics_with_phi_up_to(bound: int) -> tuple[tuple[int, IntPoly], ...]:
    """All (d, cyclotomic(d)) with d >= 3 and euler_phi(d) <= bound."""
    if bound < 2:
        return ()
    out = []
    for d in range(3, 2 * bound * bound + 7):
        if euler_phi(d) <= bound:
            out.append((d, cyclotomic(d)))
    return tuple(out)


def _no_cyclotomic_divisor(p: IntPoly, m: int) -> bool:
    """Irreducibility of p given its Salem root layout is already certified.

    With one real pair (l, 1/l) and 2m-2 simple roots strictly on the unit
    circle away from +-1, any proper factor splits off a product of
    cyclotomics of degree at most 2m-2 (Kronecker), so trial division by
    those finitely many cyclotomics decides irreducibility exactly.
    """
    for _, phi in _cyclotomics_with_phi_up_to(2 * m - 2):
        if exact_divide(p, phi) is not None:
            return False
    return True


# ---------------------------------------------------------------------------
# Irreducibility by factor reconstruction


def is_irreducible(p: IntPoly, precision_bits: int = 192) -> bool:
    """Whether monic p admits no factorization into monic integer factors of positive degree.

    Factors are reconstructed from certified complex root enclosures: a
    subset of roots whose elementary symmetric functions round to integers
    within the accumulated enclosure error is tried as an exact divisor.
    Ambiguous roundings double the precision and retry.  Intended for the
    small degrees of this package (the hard cap is degree 24).
    """
    if not p.is_monic():
        raise ValueError("irreducibility test requires a monic polynomial")
    if p.degree() > MAX_IRREDUCIBILITY_DEGREE:
        raise ValueError(f"degree {p.degree()} exceeds the supported cap {MAX_IRREDUCIBILITY_DEGREE}")
    if p.degree() <= 1:
        return True
    if not rational_gcd_is_trivial(p, p.derivative()):
        return False
    bits = precision_bits
    for _ in range(6):
        try:
            enclosures = certified_roots(p, bits, max_doublings=2)
        except RootCertificationError:
            bits *= 2
            continue
        with mpmath.mp.workprec(bits + 32):
            found = _find_integer_factor(p, enclosures, bits)
        if found is not None:
            return not found
        bits *= 2
    raise RootCertificationError(f"could not settle irreducibility of {p} below {bits} bits")


def _find_integer_factor(p: IntPoly, enclosures, bits: int) -> Optional[bool]:
    """True if a proper factor exists, False if certified absent, None if ambiguous."""
    n = p.degree()
    centers = [e.center for e in enclosures]
    radii = [e.radius for e in enclosures]
    const = p.coeffs[0]
    fp_noise = mpmath.mpf(2) ** (16 - bits)
    for size in range(1, n // 2 + 1):
        for subset in itertools.combinations(range(n), size):
            # enclosure widths plus round-off of the coefficient products
            err = _product_error(centers, radii, subset)
            err += (err + _abs_product(centers, subset) + 1) * fp_noise
            if not err < 0.25:
                return None
            coeffs = _poly_from_roots(centers, subset)
            ints = []
            ok = True
            for c in coeffs[:-1]:
                nearest = int(mpmath.nint(c.real))
                if abs(c.real - nearest) > err or abs(c.imag) > err:
                    ok = False
                    break
                ints.append(nearest)
            if not ok:
                continue
            if const != 0 and (ints[0] == 0 or const % ints[0] != 0):
                continue
            candidate = IntPoly.of(*ints, 1)
            if exact_divide(p, candidate) is not None:
                return True
    return False


def _poly_from_roots(centers, subset):
    # monic product of (x - z_i), constant term first
    coeffs = [1]
    for i in subset:
        z = centers[i]
        coeffs = [0] + coeffs
        for k in range(len(coeffs) - 1):
            coeffs[k] -= z * coeffs[k + 1]
    return coeffs


def _product_error(centers, radii, subset):
    with_r = mpmath.mpf(1)
    without = mpmath.mpf(1)
    for i in subset:
        a = abs(centers[i])
        with_r *= a + radii[i]
        without *= a
    return with_r - without


def _abs_product(centers, subset):
    out = mpmath.mpf(1)
    for i in subset:
        out *= 1 + abs(centers[i])
    return out


# ---------------------------------------------------------------------------
# Classification


def classify(p: IntPoly, precision_bits: int = 192) -> ClassifyResult:
    """Decide Salem / cyclotomic / other for a monic integer polynomial of degree >= 2."""
    if not p.is_monic():
        raise ValueError("classification requires a monic polynomial")
    if p.degree() < 2:
        raise ValueError("classification requires degree at least 2")
    other = ClassifyResult(Kind.REDUCIBLE_OR_OTHER)
    if not rational_gcd_is_trivial(p, p.derivative()):
        return other
    if p.degree() % 2 != 0 or not p.is_palindromic():
        return other
    if p.evaluate(1) == 0 or p.evaluate(-1) == 0:
        return other
    pal = PalindromicPoly(p)
    m = pal.m
    P = trace_transform(pal)
    on_circle = count_real_roots_in(P.inner, Fraction(-2), Fraction(2))
    if on_circle == m:
        if not is_irreducible(p, precision_bits):
            return other
        order = _cyclotomic_order(p, m)
        return ClassifyResult(Kind.CYCLOTOMIC, cyclotomic_order=order)
    if on_circle == m - 1:
        ub = cauchy_root_bound(P.inner)
        if count_real_roots_in(P.inner, Fraction(2), Fraction(ub)) != 1:
            return other
        if not is_irreducible(p, precision_bits):
            return other
        return ClassifyResult(Kind.SALEM, record=_record_from_certified_poly(pal, precision_bits))
    return other


def _cyclotomic_order(p: IntPoly, m: int) -> Optional[int]:
    target = 2 * m
    for d in range(3, 2 * target * target + 7):
        if euler_phi(d) == target and cyclotomic(d) == p:
            return d
    return None


def _record_from_certified_poly(pal: PalindromicPoly, precision_bits: int) -> SalemRecord:
    """Build the record once the Salem layout and irreducibility are certified."""
    p = pal.inner
    ub = cauchy_root_bound(p)
    width = Fraction(1, 2 ** max(64, precision_bits // 2))
    bracket = isolate_real_root(p, Fraction(1), Fraction(ub), width)
    lo, hi = bracket
    center = fraction_to_mpf((lo + hi) / 2, precision_bits + 32)
    radius = fraction_to_mpf(max(hi - lo, Fraction(1, 2 ** (precision_bits + 16))), precision_bits + 32)
    enclosure = RootEnclosure(center=mpmath.mpc(center), radius=radius)
    return SalemRecord(min_poly=pal, lam=enclosure, m=pal.m, lambda_bracket=bracket)


def record_from_minimal_poly(p: IntPoly, precision_bits: int = 192) -> SalemRecord:
    """Classify and return the Salem record, or raise ValueError if p is not a Salem minimal polynomial."""
    result = classify(p, precision_bits)
    if result.kind is not Kind.SALEM:
        raise ValueError(f"{p} is not the minimal polynomial of a Salem number ({result.kind.value})")
    assert result.record is not None
    return result.record


# ---------------------------------------------------------------------------
# Exhaustive enumeration in trace coordinates


def coeff_box(m: int, Q: Union[int, float, str, Fraction]) -> CoeffBox:
    """Per-coefficient bounds binom(2m, k) * Q covering every Salem minimal polynomial with root <= Q."""
    if m < 1:
        raise ValueError("m must be positive")
    Qf = as_fraction(Q)
    bounds = tuple(int(math.ceil(math.comb(2 * m, k) * Qf)) for k in range(1, m + 1))
    return CoeffBox(m=m, Q=Qf, bounds=bounds)


def _trace_box_bounds(m: int, Q: Fraction) -> list[int]:
    """Bounds for the trace-polynomial coefficients P_0..P_{m-1}.

    One root lies in (2, Q + 1/Q] and the rest in (-2, 2), so the k-th
    elementary symmetric function is at most
    binom(m-1, j) 2^j + B binom(m-1, j-1) 2^(j-1) with j = m - k.
    """
    B = Q + 1 / Q
    bounds = []
    for k in range(m):
        j = m - k
        size = math.comb(m - 1, j) * 2**j + B * math.comb(m - 1, j - 1) * 2 ** (j - 1)
        bounds.append(int(math.ceil(size)))
    return bounds


def _trace_candidates_estimate(m: int, Q: Fraction) -> int:
    return math.prod(2 * b + 1 for b in _trace_box_bounds(m, Q))


def salem_shard_descriptors(m: int, Q: Fraction, budget: int) -> list[tuple]:
    """Stable shard list for the all-Salem census; independent of worker count."""
    estimate = _trace_candidates_estimate(m, Q)
    if estimate > budget:
        raise CensusBudgetError(estimate, budget)
    bounds = _trace_box_bounds(m, Q)
    outer = bounds[-1]
    pieces = max(1, min(2 * outer + 1, -(-estimate // 250_000)))
    return [
        ("salem", m, Q.numerator, Q.denominator, lo, hi)
        for lo, hi in split_range(-outer, outer + 1, pieces)
    ]


def run_salem_shard(desc: tuple) -> list[tuple[int, ...]]:
    """Enumerate Salem minimal polynomials with top trace coefficient in [lo, hi).

    Returns coefficient tuples of the accepted minimal polynomials.  The
    leading-root interval test and the circle test are both exact Sturm
    counts; irreducibility reduces to cyclotomic trial division because the
    root layout is certified first.
    """
    _tag, m, qn, qd, outer_lo, outer_hi = desc
    Q = Fraction(qn, qd)
    B = Q + 1 / Q
    bounds = _trace_box_bounds(m, Q)
    sign_m = -1 if m % 2 else 1
    two_pow = [2**k for k in range(m + 1)]
    neg_two_pow = [(-2) ** k for k in range(m + 1)]
    accepted: list[tuple[int, ...]] = []

    if m == 1:
        # single coefficient; both endpoint constraints collapse to P_0 <= -3
        lo = max(outer_lo, -bounds[0])
        hi = min(outer_hi - 1, -3)
        for c0 in range(lo, hi + 1):
            accepted.extend(_accept_trace_candidate((c0, 1), m, B))
        return accepted

    middle_ranges = [range(-b, b + 1) for b in bounds[1:-1]]
    for outer in range(outer_lo, outer_hi):
        for middle in itertools.product(*middle_ranges):
            # coefficients P_1..P_{m-1}: middle holds P_1..P_{m-2}
            upper = (*middle, outer, 1)
            at2 = two_pow[m] + sum(c * two_pow[k + 1] for k, c in enumerate(upper[:-1]))
            atm2 = neg_two_pow[m] + sum(c * neg_two_pow[k + 1] for k, c in enumerate(upper[:-1]))
            # P(2) < 0 and (-1)^m P(-2) > 0 pin down the constant-term range
            hi0 = -at2 - 1
            if sign_m == 1:
                lo0 = -atm2 + 1
            else:
                lo0 = -bounds[0]
                hi0 = min(hi0, -atm2 - 1)
            lo0 = max(lo0, -bounds[0])
            hi0 = min(hi0, bounds[0])
            for c0 in range(lo0, hi0 + 1):
                accepted.extend(_accept_trace_candidate((c0, *upper), m, B))
    return accepted


def _accept_trace_candidate(coeffs: tuple[int, ...], m: int, B: Fraction) -> list[tuple[int, ...]]:
    chain = _int_sturm_chain(coeffs)
    if _chain_count(chain, MINUS_TWO, TWO) != m - 1:
        return []
    if _chain_count(chain, TWO, B) != 1:
        return []
    p = trace_inverse(TracePoly(IntPoly(coeffs))).inner
    if not _no_cyclotomic_divisor(p, m):
        return []
    return [p.coeffs]


def enumerate_salem(
    m: int,
    Q: Union[int, float, str, Fraction],
    config: RunConfig = DEFAULT_CONFIG,
) -> list[SalemRecord]:
    """All Salem numbers of degree 2m in (1, Q], sorted increasingly, each exactly once.

    Enumeration runs in trace coordinates over independent shards of the
    top coefficient and accepts through two exact Sturm counts, so the
    output is identical for any shard count.
    """
    if m < 1:
        raise ValueError("m must be positive")
    Qf = as_fraction(Q)
    if not Qf > 1:
        raise ValueError("Q must exceed 1")
    descriptors = salem_shard_descriptors(m, Qf, config.budget)
    coeff_lists = run_sharded(run_salem_shard, descriptors, config.effective_shards())
    records = [
        _record_from_certified_poly(PalindromicPoly(IntPoly(c)), config.precision_bits)
        for c in coeff_lists
    ]
    records.sort(key=SalemRecord.sort_key)
    return records
