"""Exact arithmetic on integer polynomials.

A polynomial is stored as a dense tuple of arbitrary-precision integer
coefficients, constant term first, so ``IntPoly((1, -3, 1))`` is
``x^2 - 3x + 1``.  The zero polynomial is the empty tuple.  Everything in
this module is exact: products, divisions, the palindromic/trace change of
coordinates, and Sturm-sequence real-root counting over the rationals.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
import re
from fractions import Fraction
from typing import Iterable, Optional, Union

Rational = Union[int, Fraction]


class PolynomialParseError(ValueError):
    """Raised when a polynomial string cannot be parsed; carries the offending position."""

    def __init__(self, text: str, pos: int, message: str):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


@dataclasses.dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial; ``coeffs[k]`` is the coefficient of x^k.

    Leading coefficient is nonzero unless the polynomial is zero (empty tuple).
    Instances are immutable and hashable, so they are safe to share across
    threads and to use as dict keys.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero; use IntPoly.of() to trim")

    @staticmethod
    def of(*coeffs: int) -> "IntPoly":
        """Build a polynomial from constant-first coefficients, trimming leading zeros."""
        end = len(coeffs)
        while end > 0 and coeffs[end - 1] == 0:
            end -= 1
        return IntPoly(tuple(int(c) for c in coeffs[:end]))

    @staticmethod
    def from_coeffs(coeffs: Iterable[int]) -> "IntPoly":
        return IntPoly.of(*coeffs)

    def degree(self) -> int:
        """Degree of the leading term; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_palindromic(self) -> bool:
        return bool(self.coeffs) and self.coeffs == self.coeffs[::-1]

    def evaluate(self, t: Rational) -> Rational:
        """Exact Horner evaluation at an integer or Fraction point."""
        acc: Rational = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly.of(*(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly.of(*(a + b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly.of(*(a - b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: Union[int, "IntPoly"]) -> "IntPoly":
        if isinstance(other, int):
            if other == 0:
                return IntPoly(())
            return IntPoly(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = IntPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift_up(self, k: int) -> "IntPoly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return IntPoly((0,) * k + self.coeffs)

    def reversed_coeffs(self) -> "IntPoly":
        """The reciprocal polynomial x^deg * p(1/x)."""
        return IntPoly.of(*self.coeffs[::-1])

    def substitute_negated(self) -> "IntPoly":
        """p(-x)."""
        return IntPoly.of(*((-c if k % 2 else c) for k, c in enumerate(self.coeffs)))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"IntPoly({format_poly(self)!r})"


ZERO = IntPoly(())
ONE = IntPoly((1,))
X = IntPoly((0, 1))


def multiply(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact product of two integer polynomials."""
    return a * b


def exact_divide(a: IntPoly, b: IntPoly) -> Optional[IntPoly]:
    """Return c with ``a == b * c`` over the integers, or None if no such quotient exists."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return ZERO
    if a.degree() < b.degree():
        return None
    rem = list(a.coeffs)
    lead = b.coeffs[-1]
    db = b.degree()
    quot = [0] * (a.degree() - db + 1)
    for k in range(len(quot) - 1, -1, -1):
        head = rem[k + db]
        if head % lead != 0:
            return None
        q = head // lead
        quot[k] = q
        if q:
            for j, c in enumerate(b.coeffs):
                rem[k + j] -= q * c
    if any(rem[:db]):
        return None
    return IntPoly.of(*quot)


def compose_square(p: IntPoly) -> IntPoly:
    """Return p(x^2); the degree doubles."""
    if p.is_zero():
        return ZERO
    out = [0] * (2 * p.degree() + 1)
    for k, c in enumerate(p.coeffs):
        out[2 * k] = c
    return IntPoly.of(*out)


def content(p: IntPoly) -> int:
    """Positive gcd of the coefficients (0 for the zero polynomial)."""
    return math.gcd(*p.coeffs) if p.coeffs else 0


def rational_gcd_is_trivial(p: IntPoly, q: IntPoly) -> bool:
    """True iff gcd(p, q) over the rationals is a nonzero constant.

    Used to detect repeated factors via gcd(p, p').
    """
    a = [Fraction(c) for c in p.coeffs]
    b = [Fraction(c) for c in q.coeffs]
    while any(b):
        a, b = b, _frac_rem(a, b)
    while a and a[-1] == 0:
        a.pop()
    return len(a) == 1


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b and b[-1] == 0:
        b = b[:-1]
    r = list(a)
    while len(r) >= len(b) and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(b):
            break
        q = r[-1] / b[-1]
        shift = len(r) - len(b)
        for j, c in enumerate(b):
            r[shift + j] -= q * c
        r.pop()
    return r


# ---------------------------------------------------------------------------
# Palindromic polynomials and the trace change of coordinates


@dataclasses.dataclass(frozen=True)
class PalindromicPoly:
    """Monic palindromic integer polynomial of even degree 2m."""

    inner: IntPoly

    def __post_init__(self):
        p = self.inner
        if p.degree() < 2 or p.degree() % 2 != 0:
            raise ValueError(f"palindromic wrapper needs even degree >= 2, got {p.degree()}")
        if not p.is_monic():
            raise ValueError("palindromic wrapper requires a monic polynomial")
        if not p.is_palindromic():
            raise ValueError(f"coefficients of {p} are not symmetric")

    @property
    def m(self) -> int:
        return self.inner.degree() // 2

    def __str__(self) -> str:
        return str(self.inner)


@dataclasses.dataclass(frozen=True)
class TracePoly:
    """Monic integer polynomial in the trace variable y = x + 1/x."""

    inner: IntPoly

    def __post_init__(self):
        if not self.inner.is_monic():
            raise ValueError("trace polynomial must be monic")

    def __str__(self) -> str:
        return str(self.inner)


def _power_sum_basis(m: int) -> list[IntPoly]:
    """z_k with x^k + x^{-k} = z_k(x + 1/x); z_0 = 2, z_1 = y, z_{k+1} = y z_k - z_{k-1}."""
    basis = [IntPoly((2,)), X]
    while len(basis) <= m:
        basis.append(X * basis[-1] - basis[-2])
    return basis[: m + 1]


def trace_transform(p: PalindromicPoly) -> TracePoly:
    """Monic degree-m P with p(x) = x^m P(x + 1/x).

    The change of basis is triangular with unit diagonal over the integers,
    so the map is an exact bijection onto monic integer polynomials of
    degree m and :func:`trace_inverse` undoes it coefficient-exactly.
    Conjugate root pairs on the unit circle map to real trace roots in
    (-2, 2), which is what makes exact circle-membership tests possible.
    """
    m = p.m
    coeffs = p.inner.coeffs
    basis = _power_sum_basis(m)
    out = IntPoly.of(coeffs[m])
    for k in range(1, m + 1):
        out = out + coeffs[m + k] * basis[k]
    return TracePoly(out)


def trace_inverse(P: TracePoly) -> PalindromicPoly:
    """The unique monic palindromic p of degree 2m with trace_transform(p) = P."""
    m = P.inner.degree()
    x2p1 = IntPoly((1, 0, 1))
    acc = ZERO
    power = ONE
    for k, c in enumerate(P.inner.coeffs):
        acc = acc + (c * power).shift_up(m - k)
        power = power * x2p1
    return PalindromicPoly(acc)


# ---------------------------------------------------------------------------
# Exact real-root counting (Sturm sequences over the integers)


def _int_sturm_chain(coeffs: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Sturm chain with integer coefficients.

    Pseudo-remainders are scaled by positive constants only and divided by
    their content, so sign variations match the classical rational chain.
    """
    f0 = list(coeffs)
    f1 = [k * c for k, c in enumerate(coeffs)][1:]
    chain = [tuple(f0), tuple(f1)]
    a, b = f0, f1
    while len(b) > 1:
        r = _signed_pseudo_rem(a, b)
        if not any(r):
            break
        g = math.gcd(*r)
        nxt = [-c // g for c in r]
        chain.append(tuple(nxt))
        a, b = b, nxt
    return chain


def _signed_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Remainder of a by b scaled by a positive constant."""
    d = len(b) - 1
    lb = b[-1]
    r = list(a)
    used = 0
    while len(r) > d:
        la = r[-1]
        r = [lb * c for c in r[:-1]]
        used += 1
        if la:
            shift = len(r) - d
            for j in range(d):
                r[shift + j] -= la * b[j]
        while len(r) > d and r and r[-1] == 0:
            r.pop()
    # the remainder is scaled by lb^used; only its sign matters for the chain
    if lb < 0 and used % 2 == 1:
        r = [-c for c in r]
    return r


def _variations_at(chain: list[tuple[int, ...]], num: int, den: int) -> int:
    """Sign variations of the chain at the rational point num/den (den > 0)."""
    signs = []
    deg_max = len(chain[0]) - 1
    num_pows = [1]
    den_pows = [1]
    for _ in range(deg_max):
        num_pows.append(num_pows[-1] * num)
        den_pows.append(den_pows[-1] * den)
    for f in chain:
        if not f:
            continue
        d = len(f) - 1
        v = 0
        for k, c in enumerate(f):
            if c:
                v += c * num_pows[k] * den_pows[d - k]
        if v:
            signs.append(1 if v > 0 else -1)
    count = 0
    for s, t in zip(signs, signs[1:]):
        if s != t:
            count += 1
    return count


def count_real_roots_in(p: IntPoly, lo: Rational, hi: Rational) -> int:
    """Exact number of distinct real roots of p in the open interval (lo, hi).

    Endpoints must be exact rationals and must not be roots of p; the count
    is computed by an all-integer Sturm sequence, so no floating point is
    involved at any stage.
    """
    if p.is_zero():
        raise ValueError("cannot count roots of the zero polynomial")
    lo = Fraction(lo)
    hi = Fraction(hi)
    if not lo < hi:
        raise ValueError(f"need lo < hi, got {lo} >= {hi}")
    if p.evaluate(lo) == 0:
        raise ValueError(f"endpoint {lo} is a root; perturb the interval")
    if p.evaluate(hi) == 0:
        raise ValueError(f"endpoint {hi} is a root; perturb the interval")
    if p.degree() == 0:
        return 0
    chain = _int_sturm_chain(p.coeffs)
    return _chain_count(chain, lo, hi)


def _chain_count(chain: list[tuple[int, ...]], lo: Fraction, hi: Fraction) -> int:
    return _variations_at(chain, lo.numerator, lo.denominator) - _variations_at(
        chain, hi.numerator, hi.denominator
    )


def cauchy_root_bound(p: IntPoly) -> int:
    """Integer strictly larger than the absolute value of every root of monic p."""
    if not p.is_monic():
        raise ValueError("Cauchy bound implemented for monic polynomials")
    return 1 + max(abs(c) for c in p.coeffs)


def isolate_real_root(p: IntPoly, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink a sign-change bracket around a simple real root to the given width.

    Requires p(lo) and p(hi) to have opposite signs with exactly one root of
    p inside; plain bisection with exact evaluation keeps the bracket
    certified at every step.
    """
    flo = p.evaluate(lo)
    fhi = p.evaluate(hi)
    if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
        raise ValueError("isolate_real_root needs a strict sign-change bracket")
    neg_left = flo < 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = p.evaluate(mid)
        if fm == 0:
            # rational root hit exactly; return a degenerate bracket
            return (mid, mid)
        if (fm < 0) == neg_left:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def sign_at_real_root(f: IntPoly, p: IntPoly, bracket: tuple[Fraction, Fraction]) -> int:
    """Exact sign of f at the unique root of p inside the sign-change bracket.

    f must not vanish at that root (guaranteed when deg f < deg p and p is
    irreducible).  The bracket is bisected until f is certified
    sign-constant across it by a Sturm count.
    """
    lo, hi = bracket
    if lo == hi:
        v = f.evaluate(lo)
        if v == 0:
            raise ValueError("f vanishes at the root")
        return 1 if v > 0 else -1
    plo = p.evaluate(lo)
    if plo == 0 or p.evaluate(hi) == 0:
        raise ValueError("bracket endpoints must not be roots of p")
    neg_left = plo < 0
    chain_f = _int_sturm_chain(f.coeffs) if f.degree() >= 1 else None
    while True:
        flo = f.evaluate(lo)
        fhi = f.evaluate(hi)
        if flo != 0 and fhi != 0 and (flo > 0) == (fhi > 0):
            if chain_f is None or _chain_count(chain_f, lo, hi) == 0:
                return 1 if flo > 0 else -1
        mid = (lo + hi) / 2
        fm = p.evaluate(mid)
        if fm == 0:
            raise ValueError("p has a rational root inside the bracket")
        if (fm < 0) == neg_left:
            lo = mid
        else:
            hi = mid


# ---------------------------------------------------------------------------
# Text formats: coefficient lists and human-readable strings


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:"
    r"(?P<coef>\d+)\s*\*?\s*(?P<var1>[a-zA-Z])(?:\^(?P<exp1>\d+))?"
    r"|(?P<var2>[a-zA-Z])(?:\^(?P<exp2>\d+))?"
    r"|(?P<const>\d+)"
    r")\s*"
)


def parse_poly(text: str) -> IntPoly:
    """Parse either a comma-separated coefficient list (constant first) or a string like 'x^4 - 3x^2 + 1'."""
    stripped = text.strip()
    if not stripped:
        raise PolynomialParseError(text, 0, "empty polynomial")
    if "," in stripped or re.fullmatch(r"[+-]?\d+", stripped):
        coeffs = []
        for i, piece in enumerate(stripped.split(",")):
            piece = piece.strip()
            try:
                coeffs.append(int(piece))
            except ValueError:
                raise PolynomialParseError(text, i, f"bad coefficient {piece!r}") from None
        return IntPoly.of(*coeffs)
    return _parse_symbolic(text, stripped)


def _parse_symbolic(original: str, text: str) -> IntPoly:
    pos = 0
    terms: dict[int, int] = {}
    varname = None
    first = True
    while pos < len(text):
        match = _TERM_RE.match(text, pos)
        if not match or match.end() == pos:
            raise PolynomialParseError(original, pos, "unrecognized term")
        sign = match.group("sign")
        if sign is None and not first:
            raise PolynomialParseError(original, pos, "missing +/- between terms")
        s = -1 if sign == "-" else 1
        if match.group("const") is not None:
            deg, coef = 0, int(match.group("const"))
        elif match.group("var1") is not None:
            coef = int(match.group("coef"))
            deg = int(match.group("exp1") or 1)
            varname = _check_var(original, pos, varname, match.group("var1"))
        else:
            coef = 1
            deg = int(match.group("exp2") or 1)
            varname = _check_var(original, pos, varname, match.group("var2"))
        terms[deg] = terms.get(deg, 0) + s * coef
        pos = match.end()
        first = False
    out = [0] * (max(terms) + 1)
    for d, c in terms.items():
        out[d] = c
    return IntPoly.of(*out)


def _check_var(original: str, pos: int, seen: Optional[str], new: str) -> str:
    if seen is not None and seen != new:
        raise PolynomialParseError(original, pos, f"mixed variables {seen!r} and {new!r}")
    return new


def format_poly(p: IntPoly, var: str = "x") -> str:
    """Human-readable form, highest degree first."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree(), -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            xpart = var if k == 1 else f"{var}^{k}"
            body = xpart if mag == 1 else f"{mag}{xpart}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def format_coeff_list(p: IntPoly) -> str:
    """Comma-separated coefficients, constant term first."""
    return ",".join(str(c) for c in p.coeffs) if p.coeffs else "0"
