"""Certified complex root enclosures via simultaneous iteration.

Roots are refined with the Aberth-Ehrlich method at a configurable working
precision, then wrapped in Weierstrass disks: for a monic polynomial of
degree n with pairwise distinct approximations z_i, every root lies in the
union of the disks centered at z_i with radius n*|p(z_i)/prod(z_i - z_j)|,
and a disk disjoint from all others contains exactly one root.  When the
disks fail to separate, the caller retries at higher precision.

The enclosures are advisory: every downstream exact claim (irreducibility,
decomposition identities) is re-verified with integer arithmetic.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import mp, mpc, mpf

from .polynomials import IntPoly, rational_gcd_is_trivial


class RootCertificationError(RuntimeError):
    """Disjoint enclosing disks could not be certified at the requested precision."""


@dataclasses.dataclass(frozen=True)
class RootEnclosure:
    """A disk certified to contain exactly one root of the source polynomial."""

    center: mpc
    radius: mpf

    def is_certainly_outside_unit_circle(self) -> bool:
        return abs(self.center) - self.radius > 1

    def real_interval(self) -> tuple[Fraction, Fraction]:
        """Enclosing rational interval for the real part (exact mpf-to-Fraction)."""
        lo = _mpf_to_fraction(self.center.real) - _mpf_to_fraction(self.radius)
        hi = _mpf_to_fraction(self.center.real) + _mpf_to_fraction(self.radius)
        return lo, hi


def _mpf_to_fraction(x: mpf) -> Fraction:
    num, den = mpmath.mpf(x).as_integer_ratio()
    return Fraction(num, den)


def fraction_to_mpf(x: Fraction, precision_bits: int = 256) -> mpf:
    with mp.workprec(precision_bits):
        return mpf(x.numerator) / x.denominator


def _initial_guesses(p: IntPoly, n: int) -> list[complex]:
    try:
        arr = np.array([float(c) for c in reversed(p.coeffs)], dtype=float)
        if np.all(np.isfinite(arr)):
            guesses = np.roots(arr)
            if len(guesses) == n and np.all(np.isfinite(guesses)):
                return [complex(z) for z in guesses]
    except (OverflowError, np.linalg.LinAlgError, ValueError):
        pass
    # perturbed circle fallback when float conversion or eigensolve fails
    radius = 1.0 + max(abs(c) for c in p.coeffs[:-1]) / abs(p.coeffs[-1])
    return [
        complex(radius * np.cos(2 * np.pi * k / n + 0.4), radius * np.sin(2 * np.pi * k / n + 0.4))
        for k in range(n)
    ]


def _horner_pair(coeffs: tuple[int, ...], z: mpc) -> tuple[mpc, mpc]:
    """Evaluate p and p' together."""
    v = mpc(0)
    d = mpc(0)
    for c in reversed(coeffs):
        d = d * z + v
        v = v * z + c
    return v, d


def complex_roots(p: IntPoly, precision_bits: int = 256) -> list[RootEnclosure]:
    """All roots of a squarefree polynomial as certified pairwise-disjoint disks.

    Raises RootCertificationError when the disks overlap at the requested
    precision; callers are expected to retry with more bits (see
    :func:`certified_roots`).  Results are sorted by descending real part,
    then ascending imaginary part, which is deterministic for fixed
    precision.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no well-defined root set")
    n = p.degree()
    if n == 0:
        return []
    deriv = p.derivative()
    if n >= 2 and not rational_gcd_is_trivial(p, deriv):
        raise ValueError("polynomial has repeated factors; deflate before root finding")

    lead = p.coeffs[-1]
    with mp.workprec(precision_bits + 32):
        zs = [mpc(z) for z in _initial_guesses(p, n)]
        # collision nudge: Aberth needs pairwise distinct iterates
        for i in range(n):
            for j in range(i):
                if zs[i] == zs[j]:
                    zs[i] += mpf(2) ** (-precision_bits // 2) * (1 + 1j)
        tol = mpf(2) ** (-precision_bits)
        for _ in range(60 + precision_bits // 2):
            max_step = mpf(0)
            for i in range(n):
                v, d = _horner_pair(p.coeffs, zs[i])
                if v == 0:
                    continue
                newton = v / d if d != 0 else v
                s = mpc(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (zs[i] - zs[j])
                denom = 1 - newton * s
                step = newton / denom if denom != 0 else newton
                zs[i] -= step
                scale = 1 + abs(zs[i])
                rel = abs(step) / scale
                if rel > max_step:
                    max_step = rel
            if max_step < tol:
                break

        enclosures = []
        inflate = 1 + mpf(2) ** (-precision_bits // 4)
        for i in range(n):
            v, _ = _horner_pair(p.coeffs, zs[i])
            prod = mpc(lead)
            for j in range(n):
                if j != i:
                    prod *= zs[i] - zs[j]
            if prod == 0:
                raise RootCertificationError("coincident iterates; increase precision")
            radius = mpf(n) * abs(v / prod) * inflate
            enclosures.append(RootEnclosure(center=zs[i], radius=radius))
        for i in range(n):
            for j in range(i):
                sep = abs(enclosures[i].center - enclosures[j].center)
                if not sep > enclosures[i].radius + enclosures[j].radius:
                    raise RootCertificationError(
                        f"enclosures {i} and {j} overlap at {precision_bits} bits"
                    )
    enclosures.sort(key=lambda e: (-e.center.real, e.center.imag))
    return enclosures


def certified_roots(p: IntPoly, precision_bits: int = 256, max_doublings: int = 4) -> list[RootEnclosure]:
    """complex_roots with automatic precision doubling on certification failure."""
    bits = precision_bits
    last_error: Exception | None = None
    for _ in range(max_doublings + 1):
        try:
            return complex_roots(p, bits)
        except RootCertificationError as exc:
            last_error = exc
            bits *= 2
    raise RootCertificationError(
        f"could not certify disjoint root disks of {p} up to {bits // 2} bits"
    ) from last_error
