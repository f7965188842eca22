"""Eta-quotients: q-expansion on the grain-24 lattice, weight/character
bookkeeping, and Ligozat cusp orders."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .operators import kronecker
from .partitions import pentagonal_terms
from .qseries import ZZ, CoefficientRing, QSeries, monomial


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    out += [n // d for d in reversed(out) if d * d != n]
    return out


@dataclass(frozen=True)
class EtaQuotient:
    """prod_{delta | level} eta(delta*z)^r_delta, exponents given as a map."""

    level: int
    exponents: tuple[tuple[int, int], ...]

    def __init__(self, level: int, exponents):
        if level < 1:
            raise ValueError("level must be positive")
        items = dict(exponents)
        for delta in items:
            if delta < 1 or level % delta:
                raise ValueError(f"{delta} does not divide the level {level}")
        cleaned = tuple(sorted((d, r) for d, r in items.items() if r != 0))
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "exponents", cleaned)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.exponents), 2)

    @property
    def leading_exponent_24(self) -> int:
        """Starting exponent sum(delta * r_delta), in units of 1/24."""
        return sum(d * r for d, r in self.exponents)


def _eta_factor(delta: int, trunc24: int, ring: CoefficientRing) -> QSeries:
    """eta(delta*z) on the grain-24 lattice: q^(delta/24) * prod (1-q^(delta n))."""
    n = trunc24 - delta
    coeffs = [0] * n
    coeffs[0] = 1
    for g, sign in pentagonal_terms((n - 1) // (24 * delta)):
        coeffs[24 * delta * g] = sign
    return QSeries(ring, 24, delta, coeffs, trunc24)


def expand(e: EtaQuotient, trunc24: int, ring: CoefficientRing = ZZ) -> QSeries:
    """q-expansion truncated at exponent trunc24/24.

    The result is renormalized to the smallest grain with integral support,
    so quotients whose leading exponent is a multiple of 24 come back on
    grain 1.
    """
    v_total = e.leading_exponent_24
    width = trunc24 - v_total
    if width < 1:
        raise ValueError("truncation does not reach past the leading exponent")
    result = None
    for delta, r in e.exponents:
        base = _eta_factor(delta, delta + width, ring)
        # chained multiplication keeps one factor pentagonal-sparse per step,
        # which is the O(T*sqrt(T)) backbone; binary powering would densify
        factor = base
        for _ in range(abs(r) - 1):
            factor = factor * base
        if r < 0:
            factor = factor.invert()
        result = factor if result is None else result * factor
    if result is None:  # empty quotient
        result = monomial(ring, 24, 0, 1, width)
    return result.normalized()


@dataclass(frozen=True)
class ModularityInfo:
    weight: Fraction
    s_value: Fraction  # prod delta^r_delta
    sum_delta_r: int
    sum_inverse_r: int
    condition_delta: bool
    condition_inverse: bool
    kronecker_top: int | None  # chi(d) = kronecker(kronecker_top, d)

    @property
    def integral_weight(self) -> bool:
        return self.weight.denominator == 1

    @property
    def satisfies_conditions(self) -> bool:
        return self.integral_weight and self.condition_delta and self.condition_inverse

    def character(self, d: int) -> int:
        if self.kronecker_top is None:
            raise ValueError("character defined only for integral weight")
        return kronecker(self.kronecker_top, d)


def squarefree_kernel(n: int) -> int:
    """Product of the primes dividing n to an odd power."""
    n = abs(n)
    kernel = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                kernel *= p
        p += 1 if p == 2 else 2
    return kernel * n  # leftover n is prime (or 1)


def modularity_check(e: EtaQuotient) -> ModularityInfo:
    """Weight, character data, and the two mod-24 conditions.

    For quotients with negative exponents the character argument
    (-1)^k * s is rational; we use the squarefree kernel of
    numerator * denominator, which is the documented convention here.
    """
    n = e.level
    k = e.weight
    s = Fraction(1)
    for delta, r in e.exponents:
        s *= Fraction(delta) ** r
    sum_dr = sum(d * r for d, r in e.exponents)
    sum_inv = sum((n // d) * r for d, r in e.exponents)
    top = None
    if k.denominator == 1:
        sign = -1 if k.numerator % 2 else 1
        top = sign * squarefree_kernel(s.numerator * s.denominator)
    return ModularityInfo(
        weight=k,
        s_value=s,
        sum_delta_r=sum_dr,
        sum_inverse_r=sum_inv,
        condition_delta=sum_dr % 24 == 0,
        condition_inverse=sum_inv % 24 == 0,
        kronecker_top=top,
    )


def cusp_order(e: EtaQuotient, c: int, level: int | None = None) -> Fraction:
    """Order of vanishing at a cusp with denominator c | level (Ligozat):
    (N/24) * sum_delta gcd(c,delta)^2 * r_delta / (gcd(c, N/c) * c * delta)."""
    n = level if level is not None else e.level
    if n % c:
        raise ValueError(f"cusp denominator {c} does not divide the level {n}")
    if level is not None:
        for delta, _ in e.exponents:
            if n % delta:
                raise ValueError("quotient does not live on the requested level")
    total = Fraction(0)
    for delta, r in e.exponents:
        total += Fraction(gcd(c, delta) ** 2 * r, delta)
    return Fraction(n, 24) * total / (gcd(c, n // c) * c)


def cusp_width(n: int, c: int) -> int:
    """Width of the cusp of Gamma_0(n) with denominator c."""
    if n % c:
        raise ValueError(f"{c} does not divide {n}")
    return n // (c * gcd(c, n // c))
