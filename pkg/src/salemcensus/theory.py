"""Closed-form constants and theory curves for the censuses and geometry bounds.

Combinatorial constants are exact rationals; transcendental evaluations run
through mpmath's Euler-Maclaurin based zeta at a working precision that
keeps every reported value well below a 1e-12 error budget.  Square-free
Dirichlet sums are backed by an exact sieve so partial sums can be compared
against the closed forms.
"""

from __future__ import annotations

import dataclasses
import functools
import math
from fractions import Fraction
from typing import Union

import gmpy2
import mpmath
from mpmath import mpf

from .config import as_fraction

_WORK_DPS = 40  # comfortably past the documented 1e-12 budget


def volume_constant(m: int) -> Fraction:
    """The exact rational constant governing the degree-2(m+1) Salem census main term.

    Value: 2^(m(m+1)) / (m+1) * prod_{k=0}^{m-1} (k!)^2 / (2k+1)!.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    out = Fraction(2 ** (m * (m + 1)), m + 1)
    for k in range(m):
        out *= Fraction(math.factorial(k) ** 2, math.factorial(2 * k + 1))
    return out


def volume_constant_bound_holds(m: int) -> bool:
    """Exact check of volume_constant(m) <= 4^m / sqrt((m+1)!)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    w = volume_constant(m)
    # compare w^2 * (m+1)! <= 16^m in exact arithmetic
    lhs = w * w * math.factorial(m + 1)
    return lhs <= Fraction(16) ** m


def sq_bound_correction(Q: Union[int, float, Fraction], m: int) -> mpf:
    """Correction factor in the square-rootable upper bound: sqrt(Q), log(Q), or 1 by half-degree."""
    if m < 1:
        raise ValueError("m must be positive")
    Qf = as_fraction(Q)
    if not Qf > 1:
        raise ValueError("Q must exceed 1")
    with mpmath.workdps(_WORK_DPS):
        q = mpf(Qf.numerator) / Qf.denominator
        if m <= 2:
            return mpmath.sqrt(q)
        if m <= 4:
            return mpmath.log(q)
        return mpf(1)


# ---------------------------------------------------------------------------
# Square-free Dirichlet sums


@functools.lru_cache(maxsize=4)
def _squarefree_flags_cached(n: int) -> bytes:
    flags = bytearray([1]) * (n + 1)
    if n >= 0:
        flags[0] = 0
    i = 2
    while i * i <= n:
        step = i * i
        flags[step::step] = bytearray(len(range(step, n + 1, step)))
        i += 1
    return bytes(flags)


def squarefree_flags(n: int) -> bytes:
    """Sieve of square-free indicators up to n, shared read-only per process."""
    size = max(n, 1024)
    return _squarefree_flags_cached(size)


def squarefree_harmonic(x: int) -> Fraction:
    """Exact sum of 1/n over square-free n <= x.

    Uses balanced-tree accumulation over gmpy2 rationals so the gigantic
    common denominators stay affordable even at x = 10^6.
    """
    if x < 1:
        raise ValueError("x must be at least 1")
    flags = squarefree_flags(x)
    terms = [n for n in range(1, x + 1) if flags[n]]

    def tree(lo: int, hi: int):
        if hi - lo == 1:
            return gmpy2.mpq(1, terms[lo])
        mid = (lo + hi) // 2
        return tree(lo, mid) + tree(mid, hi)

    total = tree(0, len(terms))
    return Fraction(int(total.numerator), int(total.denominator))


def squarefree_zeta(s: Union[int, float, Fraction]) -> mpf:
    """Closed form of the square-free Dirichlet series for s > 1: zeta(s)/zeta(2s)."""
    sf = float(s)
    if not sf > 1:
        raise ValueError("closed form requires s > 1")
    with mpmath.workdps(_WORK_DPS):
        return mpmath.zeta(sf) / mpmath.zeta(2 * sf)


def squarefree_zeta_partial_sum(s: Union[int, float, Fraction], x: int) -> mpf:
    """Exact-support partial sum of n^(-s) over square-free n <= x."""
    if x < 1:
        raise ValueError("x must be at least 1")
    flags = squarefree_flags(x)
    with mpmath.workdps(_WORK_DPS):
        sf = mpf(str(s))
        total = mpf(0)
        for n in range(1, x + 1):
            if flags[n]:
                total += mpf(n) ** (-sf)
        return total


# ---------------------------------------------------------------------------
# Census predictions


@dataclasses.dataclass(frozen=True)
class TheoryPrediction:
    m: int
    Q: float
    kind: str  # all_salem, sq_salem_lower, sq_salem_upper, sq_salem_main
    value: mpf


@dataclasses.dataclass(frozen=True)
class SqPredictionSet:
    m: int
    Q: float
    lower: mpf
    upper: mpf
    main: mpf

    def as_predictions(self) -> list[TheoryPrediction]:
        return [
            TheoryPrediction(self.m, self.Q, "sq_salem_lower", self.lower),
            TheoryPrediction(self.m, self.Q, "sq_salem_upper", self.upper),
            TheoryPrediction(self.m, self.Q, "sq_salem_main", self.main),
        ]


def predict_salem_count(m: int, Q: Union[int, float, Fraction]) -> TheoryPrediction:
    """Main term of the all-Salem census: volume_constant(m-1) * Q^m."""
    if m < 1:
        raise ValueError("m must be positive")
    Qf = as_fraction(Q)
    with mpmath.workdps(_WORK_DPS):
        w = volume_constant(m - 1)
        q = mpf(Qf.numerator) / Qf.denominator
        value = mpf(w.numerator) / w.denominator * q**m
    return TheoryPrediction(m, float(Qf), "all_salem", value)


def predict_square_rootable_count(m: int, Q: Union[int, float, Fraction]) -> SqPredictionSet:
    """Main terms of the square-rootable census, as a lower/upper/main triple.

    Half-degrees 1 and 2 use the known exact densities Q and (4/3) Q^(3/2);
    from m = 3 on the main term is volume_constant(m-1) * Q^(m/2) times a
    log factor (m = 3, 4) or a ratio of zeta values (m >= 5), with the lower
    member of the even-m sandwich scaled by 2^(-2m).
    """
    if m < 1:
        raise ValueError("m must be positive")
    Qf = as_fraction(Q)
    with mpmath.workdps(_WORK_DPS):
        q = mpf(Qf.numerator) / Qf.denominator
        w = volume_constant(m - 1)
        wq = mpf(w.numerator) / w.denominator
        if m == 1:
            main = q
        elif m == 2:
            main = mpf(4) / 3 * q ** mpf("1.5")
        elif m <= 4:
            main = wq * 6 / mpmath.pi**2 * q ** (mpf(m) / 2) * mpmath.log(q)
        elif m % 2 == 1:
            main = wq * mpmath.zeta((m + 1) / 4) / mpmath.zeta((m + 1) / 2) * q ** (mpf(m) / 2)
        else:
            main = wq * mpmath.zeta(m / 4) / mpmath.zeta(m / 2) * q ** (mpf(m) / 2)
        if m % 2 == 1 or m <= 2:
            lower = upper = main
        else:
            upper = main
            lower = main / 2 ** (2 * m)
    return SqPredictionSet(m=m, Q=float(Qf), lower=lower, upper=upper, main=upper)


def witness_lattice_determinant(m: int, alpha: int) -> mpf:
    """Determinant of the mixed coefficient lattice: alpha^(ceil(m/2)/2)."""
    _require_squarefree(alpha)
    with mpmath.workdps(_WORK_DPS):
        return mpf(alpha) ** (mpf((m + 1) // 2) / 2)


def predict_witness_count(m: int, alpha: int, R: Union[int, float, Fraction]) -> mpf:
    """Main term of the per-alpha witness count: volume_constant(m-1) * R^m / det(lattice)."""
    if m < 1:
        raise ValueError("m must be positive")
    _require_squarefree(alpha)
    Rf = as_fraction(R)
    with mpmath.workdps(_WORK_DPS):
        w = volume_constant(m - 1)
        r = mpf(Rf.numerator) / Rf.denominator
        return mpf(w.numerator) / w.denominator * r**m / witness_lattice_determinant(m, alpha)


def _require_squarefree(alpha: int) -> None:
    from .squarerootable import square_free_part

    if alpha < 1 or square_free_part(alpha)[1] != 1:
        raise ValueError(f"alpha must be a square-free positive integer, got {alpha}")


# ---------------------------------------------------------------------------
# Geodesic counting bounds


@dataclasses.dataclass(frozen=True)
class BoundReport:
    """Mean-multiplicity lower bound data for hyperbolic dimension n and length cutoff L."""

    n: int
    L: float
    gamma_h: mpf  # prime-geodesic main term
    distinct_lengths_bound: mpf
    mean_mult_lower: mpf
    c_prime: mpf
    delta57: int


def prime_geodesic_main_term(n: int, L: Union[int, float]) -> mpf:
    """Asymptotic count of primitive hyperbolic classes up to length L: e^((n-1)L) / ((n-1)L)."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    Lf = float(L)
    if not Lf > 0:
        raise ValueError("L must be positive")
    with mpmath.workdps(_WORK_DPS):
        return mpmath.exp((n - 1) * mpf(Lf)) / ((n - 1) * mpf(Lf))


def distinct_length_bound(n: int, L: Union[int, float]) -> mpf:
    """Main-term proxy for the number of distinct translation lengths up to L.

    Even n sums all-Salem main terms at Q = e^L over half-degrees up to n/2;
    odd n sums square-rootable main terms at Q = e^(2L) up to (n+1)/2, using
    the upper member of the even-half-degree sandwich.  The underlying
    bounds carry unspecified constants, so this is the computable proxy.
    """
    if n < 4:
        raise ValueError("dimension must be at least 4")
    Lf = float(L)
    if not Lf > 0:
        raise ValueError("L must be positive")
    with mpmath.workdps(_WORK_DPS):
        total = mpf(0)
        if n % 2 == 0:
            Qe = mpmath.exp(mpf(Lf))
            for m in range(1, n // 2 + 1):
                w = volume_constant(m - 1)
                total += mpf(w.numerator) / w.denominator * Qe**m
        else:
            for m in range(1, (n + 1) // 2 + 1):
                total += _sq_main_at_exp(m, 2 * Lf)
        return total


def _sq_main_at_exp(m: int, logQ: float) -> mpf:
    """Square-rootable upper main term at Q = e^logQ without overflowing floats."""
    w = volume_constant(m - 1)
    wq = mpf(w.numerator) / w.denominator
    lq = mpf(logQ)
    growth = mpmath.exp(lq * m / 2)
    if m == 1:
        return mpmath.exp(lq)
    if m == 2:
        return mpf(4) / 3 * growth
    if m <= 4:
        return wq * 6 / mpmath.pi**2 * growth * lq
    if m % 2 == 1:
        return wq * mpmath.zeta((m + 1) / 4) / mpmath.zeta((m + 1) / 2) * growth
    return wq * mpmath.zeta(m / 4) / mpmath.zeta(m / 2) * growth


def delta_5_7(n: int) -> int:
    return 1 if n in (5, 7) else 0


def explicit_constant(n: int) -> mpf:
    """The dimension constant in the asymptotic mean-multiplicity bound.

    1/((n-1) * volume_constant(floor((n+1)/2) - 1)) times 1 for even n,
    pi^2/6 for n = 5 or 7, and zeta(k)/zeta(k/2) with k = floor((n+3)/4)
    for odd n >= 9.
    """
    if n < 4:
        raise ValueError("dimension must be at least 4")
    with mpmath.workdps(_WORK_DPS):
        w = volume_constant((n + 1) // 2 - 1)
        base = 1 / ((n - 1) * mpf(w.numerator) / w.denominator)
        if n % 2 == 0:
            return base
        if n in (5, 7):
            return base * mpmath.pi**2 / 6
        k = (n + 3) // 4
        return base * mpmath.zeta(k) / mpmath.zeta(k / 2)


def mean_multiplicity_bound(n: int, L: Union[int, float]) -> BoundReport:
    """Mean-multiplicity lower bound report at finite L.

    The ratio column is the prime-geodesic main term divided by the
    distinct-length proxy; the asymptotic constant and the log-power marker
    are reported alongside, never substituted into the finite-L ratio.
    """
    if n < 4:
        raise ValueError("dimension must be at least 4")
    gamma_h = prime_geodesic_main_term(n, L)
    dlb = distinct_length_bound(n, L)
    with mpmath.workdps(_WORK_DPS):
        ratio = gamma_h / dlb
    return BoundReport(
        n=n,
        L=float(L),
        gamma_h=gamma_h,
        distinct_lengths_bound=dlb,
        mean_mult_lower=ratio,
        c_prime=explicit_constant(n),
        delta57=delta_5_7(n),
    )
