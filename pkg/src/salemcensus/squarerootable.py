"""Square-rootability witnesses and the witness-lattice census.

A Salem number with minimal polynomial p of degree 2m is square-rootable
over the rationals when p(y) = A(y)^2 - alpha*y*B(y)^2 for a square-free
positive integer alpha and integer polynomials A (monic, degree m) and B
(degree at most m-1).  Equivalently q(x) = A(x^2) + sqrt(alpha)*x*B(x^2) is
monic palindromic with q(x)q(-x) = p(x^2), and the Salem number is the
square of q's root outside the unit circle.

Witness search for a single Salem number walks sign choices over the square
roots of the conjugates; the census walks integer points of the mixed
lattice (sqrt(alpha)Z, Z, sqrt(alpha)Z, ...) in coefficient space.  Both
paths certify every witness by exact integer arithmetic before returning
it.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
import math
from fractions import Fraction
from typing import Optional, Union

import mpmath
from mpmath import mp, mpc, mpf

from .config import DEFAULT_CONFIG, CensusBudgetError, RunConfig, as_fraction
from .polynomials import (
    IntPoly,
    PalindromicPoly,
    _chain_count,
    _int_sturm_chain,
    _power_sum_basis,
    cauchy_root_bound,
    isolate_real_root,
    sign_at_real_root,
)
from .roots import RootCertificationError, complex_roots, fraction_to_mpf
from .salem import (
    MINUS_TWO,
    TWO,
    Kind,
    SalemRecord,
    _no_cyclotomic_divisor,
    _record_from_certified_poly,
    classify,
    cyclotomic_factor,
    euler_phi,
)
from .sharding import run_sharded, split_range

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class SqrtDecomposition:
    """A certified witness (alpha, A, B) with A(y)^2 - alpha*y*B(y)^2 = p(y)."""

    alpha: int
    even_part: IntPoly
    odd_part: IntPoly
    source: PalindromicPoly

    @property
    def m(self) -> int:
        return self.source.m

    def mixed_vector(self) -> tuple[tuple[int, int], ...]:
        """Coefficients of q as (integer part, multiple of sqrt(alpha)) pairs."""
        m = self.m
        a = self.even_part.coeffs
        b = self.odd_part.coeffs
        vec = []
        for k in range(2 * m + 1):
            if k % 2 == 0:
                vec.append((a[k // 2] if k // 2 < len(a) else 0, 0))
            else:
                j = (k - 1) // 2
                vec.append((0, b[j] if j < len(b) else 0))
        return tuple(vec)

    def key(self):
        return (self.alpha, self.even_part.coeffs, self.odd_part.coeffs)

    def real_coefficient_key(self) -> tuple:
        """Canonical encoding of q's actual real coefficients.

        Odd coefficients sqrt(alpha)*b are normalized to (radical part,
        signed multiplier), so two witnesses collide here exactly when they
        define the same real polynomial q.
        """
        out: list = [self.even_part.coeffs]
        for k in range(self.m):
            b = self.odd_part.coeffs[k] if k < len(self.odd_part.coeffs) else 0
            if b == 0:
                out.append((1, 0))
            else:
                s, mult = square_free_part(self.alpha * b * b)
                out.append((s, mult if b > 0 else -mult))
        return tuple(out)

    def __str__(self) -> str:
        return f"(alpha={self.alpha}, A={self.even_part}, B={self.odd_part})"


@dataclasses.dataclass(frozen=True)
class VerificationResult:
    ok: bool
    failed_clause: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def square_free_part(n: int) -> tuple[int, int]:
    """Unique (s, k) with n = s * k^2 and s square-free."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    s, k = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                s *= d
            k *= d ** (e // 2)
        d += 1 if d == 2 else 2
    return s * n, k


def identity_polynomial(alpha: int, even_part: IntPoly, odd_part: IntPoly) -> IntPoly:
    """A(y)^2 - alpha * y * B(y)^2."""
    return even_part * even_part - (alpha * (odd_part * odd_part)).shift_up(1)


def expand_mixed_product(d: SqrtDecomposition) -> IntPoly:
    """q(x)q(-x) expanded exactly from the witness: A(x^2)^2 - alpha*x^2*B(x^2)^2."""
    from .polynomials import compose_square

    a2 = compose_square(d.even_part)
    b2 = compose_square(d.odd_part)
    return a2 * a2 - (d.alpha * (b2 * b2)).shift_up(2)


# ---------------------------------------------------------------------------
# Verification


def verify_decomposition(d: SqrtDecomposition) -> VerificationResult:
    """Check every witness invariant exactly; names the first failed clause.

    Clause order: alpha square-free, nonzero odd part, palindromic mixed
    vector, the defining identity, Salem certification of the source, the
    positive-root sign choice, and absence of low-order cyclotomic factors.
    """
    p = d.source.inner
    m = d.source.m
    if d.alpha < 1 or square_free_part(d.alpha)[1] != 1:
        return VerificationResult(False, "alpha-squarefree")
    if d.odd_part.is_zero():
        return VerificationResult(False, "nonzero-odd-part")
    if not _mixed_vector_palindromic(d):
        return VerificationResult(False, "palindromic")
    if identity_polynomial(d.alpha, d.even_part, d.odd_part) != p:
        return VerificationResult(False, "identity")
    result = classify(p)
    if result.kind is not Kind.SALEM:
        return VerificationResult(False, "source-salem")
    record = result.record
    assert record is not None
    if not _positive_root_sign(d, record):
        return VerificationResult(False, "root-sign")
    hit = cyclotomic_factor(p, 4 * m)
    if hit is not None:
        order = hit[0]
        if order > 2 * m:
            # rejection driven by the upper half of the order window; kept
            # visible so such cases can be audited rather than silently lost
            logger.warning(
                "witness rejected by a cyclotomic factor of order %d in (2m, 4m], "
                "root-of-unity degree %d",
                order,
                euler_phi(order),
            )
        return VerificationResult(False, "cyclotomic-free")
    return VerificationResult(True)


def _mixed_vector_palindromic(d: SqrtDecomposition) -> bool:
    m = d.source.m
    if d.even_part.degree() != m or not d.even_part.is_monic():
        return False
    if d.odd_part.degree() > m - 1:
        return False
    vec = d.mixed_vector()
    return all(vec[k] == vec[2 * m - k] for k in range(2 * m + 1))


def _positive_root_sign(d: SqrtDecomposition, record: SalemRecord) -> bool:
    """Exactly one of q(x), q(-x) has its large root positive; this checks the witness chose it.

    q(sqrt(l)) = A(l) + sqrt(alpha*l) B(l) vanishes precisely when A and B
    take opposite signs at the Salem number l, which is decidable exactly
    from the isolating bracket.
    """
    p = d.source.inner
    bracket = record.lambda_bracket
    sign_a = sign_at_real_root(d.even_part, p, bracket)
    sign_b = sign_at_real_root(d.odd_part, p, bracket)
    return sign_a != sign_b


def _light_verify(alpha: int, a: IntPoly, b: IntPoly, pal: PalindromicPoly, bracket) -> bool:
    """Certification for witnesses whose source is already a certified Salem record."""
    if b.is_zero():
        return False
    d = SqrtDecomposition(alpha, a, b, pal)
    if not _mixed_vector_palindromic(d):
        return False
    if identity_polynomial(alpha, a, b) != pal.inner:
        return False
    p = pal.inner
    return sign_at_real_root(a, p, bracket) != sign_at_real_root(b, p, bracket)


# ---------------------------------------------------------------------------
# Witness search for a single Salem number


def find_decompositions(record: SalemRecord, config: RunConfig = DEFAULT_CONFIG) -> list[SqrtDecomposition]:
    """All witnesses mapping to the given Salem number, deduplicated and sorted.

    The roots of p(x^2) split into pairs of opposite square roots of the
    conjugates; each candidate q picks one representative per pair, with
    the global choice pinned by taking the positive square root of the
    Salem number itself.  Even-degree coefficients must round to integers
    and odd ones to integer multiples of a common sqrt(alpha); every
    rounded candidate is then certified or rejected by exact arithmetic.
    Precision doubles automatically while any rounding stays ambiguous.
    """
    p = record.min_poly.inner
    m = record.m
    bits = config.precision_bits
    for _ in range(6):
        try:
            enclosures = complex_roots(p, bits)
        except RootCertificationError:
            bits *= 2
            continue
        outcome = _signed_sqrt_search(p, m, record, enclosures, bits)
        if outcome is not None:
            return outcome
        bits *= 2
    raise RootCertificationError(
        f"sign-choice rounding for {p} stayed ambiguous up to {bits} bits"
    )


def _signed_sqrt_search(p, m, record, enclosures, bits) -> Optional[list[SqrtDecomposition]]:
    with mp.workprec(bits + 32):
        lam_index = None
        for i, e in enumerate(enclosures):
            if e.center.real > 1 and e.is_certainly_outside_unit_circle():
                lam_index = i
                break
        if lam_index is None:
            return None
        order = [lam_index] + [i for i in range(len(enclosures)) if i != lam_index]
        sqrt_centers = []
        sqrt_radii = []
        for i in order:
            c = enclosures[i].center
            r = enclosures[i].radius
            if not abs(c) - r > 0:
                return None
            sqrt_centers.append(mpmath.sqrt(c))
            sqrt_radii.append(r / mpmath.sqrt(2 * (abs(c) - r)))
        inflated = mpf(1)
        for c, r in zip(sqrt_centers, sqrt_radii):
            inflated *= abs(c) + r
        prod_abs = mpf(1)
        for c in sqrt_centers:
            prod_abs *= abs(c)
        # enclosure widths plus round-off of the coefficient products
        err = (inflated - prod_abs) + (inflated + 1) * mpf(2) ** (16 - bits)
        if not err < mpf("0.2"):
            return None

        n = 2 * m
        found: dict[tuple, SqrtDecomposition] = {}
        for pattern in itertools.product((1, -1), repeat=n - 1):
            roots = [sqrt_centers[0]] + [s * c for s, c in zip(pattern, sqrt_centers[1:])]
            coeffs = _monic_from_roots(roots)
            witness = _round_mixed_candidate(coeffs, m, err)
            if witness is None:
                continue
            alpha, a_ints, b_ints = witness
            a_poly = IntPoly.of(*a_ints)
            b_poly = IntPoly.of(*b_ints)
            if _light_verify(alpha, a_poly, b_poly, record.min_poly, record.lambda_bracket):
                d = SqrtDecomposition(alpha, a_poly, b_poly, record.min_poly)
                found[d.key()] = d
        return sorted(found.values(), key=SqrtDecomposition.key)


def _monic_from_roots(roots: list[mpc]) -> list[mpc]:
    coeffs = [mpc(1)]
    for z in roots:
        coeffs = [mpc(0)] + coeffs
        for k in range(len(coeffs) - 1):
            coeffs[k] -= z * coeffs[k + 1]
    return coeffs  # constant first, length deg+1, leading 1


def _round_mixed_candidate(coeffs, m, err) -> Optional[tuple[int, list[int], list[int]]]:
    """Round a numeric q to (alpha, A, B) or certify that no exact witness matches it."""
    a_ints: list[int] = []
    odd_vals: list[mpf] = []
    for k, c in enumerate(coeffs):
        if abs(c.imag) > err:
            return None
        if k % 2 == 0:
            nearest = int(mpmath.nint(c.real))
            if abs(c.real - nearest) > err:
                return None
            a_ints.append(nearest)
        else:
            odd_vals.append(c.real)
    if a_ints[-1] != 1:
        return None
    best = max(range(len(odd_vals)), key=lambda j: abs(odd_vals[j]))
    if abs(odd_vals[best]) <= err:
        return None  # all odd coefficients vanish: no valid witness on this pattern
    b_ints: list[int] = []
    squared = odd_vals[best] ** 2
    sq_err = 2 * abs(odd_vals[best]) * err + err * err
    nearest_sq = int(mpmath.nint(squared))
    if abs(squared - nearest_sq) > sq_err or nearest_sq < 1:
        return None
    alpha, _ = square_free_part(nearest_sq)
    root_alpha = mpmath.sqrt(mpf(alpha))
    for v in odd_vals:
        b = int(mpmath.nint(v / root_alpha))
        b_ints.append(b)
    return alpha, a_ints, b_ints


def is_square_rootable(record: SalemRecord, config: RunConfig = DEFAULT_CONFIG) -> bool:
    """Whether the Salem number admits any witness over the rationals."""
    return bool(find_decompositions(record, config))


def salem_value(d: SqrtDecomposition, precision_bits: int = 128) -> mpf:
    """The Salem number the witness maps to: the square of q's root outside the unit circle."""
    p = d.source.inner
    ub = cauchy_root_bound(p)
    width = Fraction(1, 2 ** (precision_bits + 8))
    lo, hi = isolate_real_root(p, Fraction(1), Fraction(ub), width)
    return fraction_to_mpf((lo + hi) / 2, precision_bits + 16)


# ---------------------------------------------------------------------------
# Census over the mixed coefficient lattices


def _census_bounds(m: int, alpha: int, qn: int, qd: int) -> tuple[list[int], list[int]]:
    """Box bounds for the free B and A coefficients at Salem bound Q = qn/qd.

    Mixed coefficient j of q is bounded by binom(2m, j) * sqrt(Q); odd slots
    scale down by sqrt(alpha).
    """
    b_bounds = []
    for k in range((m + 1) // 2):
        c = math.comb(2 * m, 2 * k + 1)
        b_bounds.append(math.isqrt((c * c * qn) // (qd * alpha)))
    a_bounds = []
    for k in range(1, m // 2 + 1):
        c = math.comb(2 * m, 2 * k)
        a_bounds.append(math.isqrt((c * c * qn) // qd))
    return b_bounds, a_bounds


def _census_alpha_estimate(m: int, alpha: int, qn: int, qd: int) -> int:
    b_bounds, a_bounds = _census_bounds(m, alpha, qn, qd)
    return math.prod(2 * b + 1 for b in b_bounds) * math.prod(2 * a + 1 for a in a_bounds)


def _b_weights(m: int) -> list[int]:
    return [1 if 2 * k == m - 1 else 2 for k in range((m + 1) // 2)]


def _a_weights(m: int) -> list[int]:
    return [1 if 2 * k == m else 2 for k in range(1, m // 2 + 1)]


def _reflect_b(m: int, free: tuple[int, ...]) -> list[int]:
    vec = [0] * m
    for k, v in enumerate(free):
        vec[k] = v
        vec[m - 1 - k] = v
    return vec


def _reflect_a(m: int, free: tuple[int, ...]) -> list[int]:
    vec = [0] * (m + 1)
    vec[0] = vec[m] = 1
    for k, v in enumerate(free, start=1):
        vec[k] = v
        vec[m - k] = v
    return vec


def _convolve(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def sq_shard_descriptors(m: int, Q: Fraction, budget: int) -> list[tuple]:
    """Stable shards for the square-rootable census: one or more per radical part alpha.

    The radical part runs over square-free integers up to (binom(2m, m))^2 Q,
    the loose uniform ceiling; values whose odd coefficient boxes collapse
    to zero are skipped outright, since they could only produce a vanishing
    odd part.
    """
    qn, qd = Q.numerator, Q.denominator
    c0 = math.comb(2 * m, m)
    alpha_max = (c0 * c0 * qn) // qd
    flags = _squarefree_flags(alpha_max)
    total = 0
    descriptors: list[tuple] = []
    for alpha in range(1, alpha_max + 1):
        if not flags[alpha]:
            continue
        b_bounds, _ = _census_bounds(m, alpha, qn, qd)
        if all(b == 0 for b in b_bounds):
            continue
        est = _census_alpha_estimate(m, alpha, qn, qd)
        total += est
        pieces = max(1, -(-est // 250_000))
        b1 = b_bounds[0]
        for lo, hi in split_range(-b1, b1 + 1, pieces):
            descriptors.append(("sq", m, qn, qd, alpha, lo, hi))
    if total > budget:
        raise CensusBudgetError(total, budget)
    return descriptors


def _squarefree_flags(n: int) -> bytearray:
    flags = bytearray([1]) * (n + 1)
    i = 2
    while i * i <= n:
        step = i * i
        flags[step::step] = bytearray(len(range(step, n + 1, step)))
        i += 1
    return flags


def run_sq_shard(desc: tuple) -> list[tuple]:
    """Enumerate witnesses for one alpha with the leading odd coefficient in [lo, hi).

    Yields serialized witnesses (alpha, A coefficients, B coefficients,
    p coefficients).  Acceptance certifies, in order: the sign constraint
    p(1) < 0 (built into the final coefficient range), p(-1) != 0, the
    coefficient box of p, the Salem root layout by exact Sturm counts, the
    absence of cyclotomic factors, and the positive-root sign choice.

    p is palindromic, so only p_1..p_m are formed, and as the innermost
    coordinate c varies they are a fixed quadratic base + c*lin + c^2*quad,
    precomputed per loop level; the full polynomial is materialized only
    for candidates that survive the coefficient box.
    """
    _tag, m, qn, qd, alpha, lo1, hi1 = desc
    Q = Fraction(qn, qd)
    trace_hi = Q + 1 / Q
    b_bounds, a_bounds = _census_bounds(m, alpha, qn, qd)
    wb = _b_weights(m)
    wa = _a_weights(m)
    p_box = [math.ceil(math.comb(2 * m, j) * Q) for j in range(m + 1)]
    zbasis = [z.coeffs for z in _power_sum_basis(m)]
    out: list[tuple] = []

    other_b = [range(-b, b + 1) for b in b_bounds[1:]]
    lead_a = [range(-a, a + 1) for a in a_bounds[:-1]]

    for b1 in range(lo1, hi1):
        for rest_b in itertools.product(*other_b):
            b_free = (b1, *rest_b)
            b_vec = _reflect_b(m, b_free)
            b_at_1 = sum(w * v for w, v in zip(wb, b_free))
            disc = alpha * b_at_1 * b_at_1
            if disc == 0:
                continue  # p(1) = A(1)^2 >= 0 can never be negative
            b_at_m1 = sum(v * (1 if k % 2 == 0 else -1) for k, v in enumerate(b_vec))
            bb = _convolve(b_vec, b_vec)
            abb = [alpha * v for v in bb]
            if not a_bounds:
                # m = 1: A is pinned to y + 1, so p(1) = 4 - disc
                if disc > 4:
                    out.extend(
                        _accept_sq_candidate(m, alpha, (), b_vec, abb, b_at_m1, trace_hi, zbasis)
                    )
                continue
            tmax = math.isqrt(disc - 1)
            w_last = wa[-1]
            a_last_bound = a_bounds[-1]
            k_last = m // 2
            for rest_a in itertools.product(*lead_a):
                base = 2 + sum(w * v for w, v in zip(wa, rest_a))
                # A(1) = base + w_last * c must satisfy A(1)^2 < disc for p(1) < 0
                lo_c = max(-((tmax + base) // w_last), -a_last_bound)
                hi_c = min((tmax - base) // w_last, a_last_bound)
                if lo_c > hi_c:
                    continue
                pj_base, pj_lin, pj_quad = _quadratic_profile(m, rest_a, k_last, abb)
                for c in range(lo_c, hi_c + 1):
                    ok = True
                    cc = c * c
                    for j in range(1, m + 1):
                        if abs(pj_base[j] + c * pj_lin[j] + cc * pj_quad[j]) > p_box[j]:
                            ok = False
                            break
                    if ok:
                        out.extend(
                            _accept_sq_candidate(
                                m, alpha, (*rest_a, c), b_vec, abb, b_at_m1, trace_hi, zbasis
                            )
                        )
    return out


def _quadratic_profile(m, rest_a, k_last, abb):
    """p_1..p_m as quadratics in the innermost coordinate: entries of (A0 + c E)^2 - alpha y B^2."""
    a0 = _reflect_a(m, (*rest_a, 0))
    base = _convolve(a0, a0)
    for i, v in enumerate(abb):
        base[i + 1] -= v
    positions = (k_last,) if 2 * k_last == m else (k_last, m - k_last)
    lin = [0] * (2 * m + 1)
    for pos in positions:
        for i, v in enumerate(a0):
            lin[pos + i] += 2 * v
    quad = [0] * (2 * m + 1)
    for p1 in positions:
        for p2 in positions:
            quad[p1 + p2] += 1
    return base, lin, quad


def _accept_sq_candidate(m, alpha, a_free, b_vec, abb, b_at_m1, trace_hi, zbasis):
    a_vec = _reflect_a(m, a_free)
    a_at_m1 = sum(v * (1 if k % 2 == 0 else -1) for k, v in enumerate(a_vec))
    if a_at_m1 == 0 and b_at_m1 == 0:
        return []
    p = _convolve(a_vec, a_vec)
    for i, v in enumerate(abb):
        p[i + 1] -= v
    # trace coordinates of p
    tr = [0] * (m + 1)
    tr[0] = p[m]
    for k in range(1, m + 1):
        c = p[m + k]
        if c:
            for i, zc in enumerate(zbasis[k]):
                tr[i] += c * zc
    chain = _int_sturm_chain(tuple(tr))
    if _chain_count(chain, MINUS_TWO, TWO) != m - 1:
        return []
    if _chain_count(chain, TWO, trace_hi) != 1:
        return []
    p_poly = IntPoly(tuple(p))
    if not _no_cyclotomic_divisor(p_poly, m):
        return []
    a_poly = IntPoly(tuple(a_vec))
    b_poly = IntPoly.of(*b_vec)
    ub = cauchy_root_bound(p_poly)
    bracket = (Fraction(1), Fraction(ub))
    if sign_at_real_root(a_poly, p_poly, bracket) == sign_at_real_root(b_poly, p_poly, bracket):
        return []
    return [(alpha, tuple(a_vec), b_poly.coeffs, tuple(p))]


def enumerate_witnesses_for_alpha(
    m: int,
    alpha: int,
    R: Union[int, float, str, Fraction],
    config: RunConfig = DEFAULT_CONFIG,
) -> list[SqrtDecomposition]:
    """All witnesses with radical part alpha whose q-root lies in (1, R]."""
    if m < 1:
        raise ValueError("m must be positive")
    if alpha < 1 or square_free_part(alpha)[1] != 1:
        raise ValueError(f"alpha must be a square-free positive integer, got {alpha}")
    Rf = as_fraction(R)
    if not Rf > 1:
        raise ValueError("R must exceed 1")
    Q = Rf * Rf
    qn, qd = Q.numerator, Q.denominator
    b_bounds, _ = _census_bounds(m, alpha, qn, qd)
    if all(b == 0 for b in b_bounds):
        return []
    est = _census_alpha_estimate(m, alpha, qn, qd)
    if est > config.budget:
        raise CensusBudgetError(est, config.budget)
    b1 = b_bounds[0]
    pieces = max(1, -(-est // 250_000))
    descriptors = [("sq", m, qn, qd, alpha, lo, hi) for lo, hi in split_range(-b1, b1 + 1, pieces)]
    rows = run_sharded(run_sq_shard, descriptors, config.effective_shards())
    witnesses = [_witness_from_row(row) for row in rows]
    witnesses.sort(key=SqrtDecomposition.key)
    return witnesses


def _witness_from_row(row: tuple) -> SqrtDecomposition:
    alpha, a_coeffs, b_coeffs, p_coeffs = row
    return SqrtDecomposition(
        alpha=alpha,
        even_part=IntPoly(tuple(a_coeffs)),
        odd_part=IntPoly(tuple(b_coeffs)),
        source=PalindromicPoly(IntPoly(tuple(p_coeffs))),
    )


def enumerate_square_rootable(
    m: int,
    Q: Union[int, float, str, Fraction],
    config: RunConfig = DEFAULT_CONFIG,
) -> list[tuple[SalemRecord, list[SqrtDecomposition]]]:
    """All square-rootable Salem numbers of degree 2m in (1, Q], with every witness.

    Unions the per-alpha lattice walks, groups witnesses by minimal
    polynomial, and sorts groups by the Salem number.  Output does not
    depend on the shard count.
    """
    if m < 1:
        raise ValueError("m must be positive")
    Qf = as_fraction(Q)
    if not Qf > 1:
        raise ValueError("Q must exceed 1")
    descriptors = sq_shard_descriptors(m, Qf, config.budget)
    rows = run_sharded(run_sq_shard, descriptors, config.effective_shards())
    return group_witness_rows(rows, config)


def group_witness_rows(rows, config: RunConfig) -> list[tuple[SalemRecord, list[SqrtDecomposition]]]:
    groups: dict[tuple, list[tuple]] = {}
    for row in rows:
        groups.setdefault(tuple(row[3]), []).append(row)
    out = []
    for p_coeffs, group_rows in groups.items():
        pal = PalindromicPoly(IntPoly(p_coeffs))
        record = _record_from_certified_poly(pal, config.precision_bits)
        witnesses = sorted((_witness_from_row(r) for r in group_rows), key=SqrtDecomposition.key)
        out.append((record, witnesses))
    out.sort(key=lambda pair: pair[0].sort_key())
    return out
