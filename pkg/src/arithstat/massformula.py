"""Local masses of etale extensions and predicted field-count constants.

The mass of degree-n etale extensions of Q_p with discriminant exponent k
is the number of partitions of k into at most n-k parts (p-independent,
for p > n this is exact and for the totals used here it feeds the
constant (1/2) d_inf prod_p d_p governing degree-n field counts).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .conjugacy import conjugacy_classes
from .primes import primes_up_to


def partitions_at_most(k: int, m: int) -> int:
    """q(k, m): partitions of k into at most m parts (q(0, m) = 1)."""
    if k < 0 or m < 0:
        return 0
    if k == 0:
        return 1
    if m == 0:
        return 0
    # at most m parts = (by conjugation) all parts of size <= m
    table = [1] + [0] * k
    for part in range(1, m + 1):
        for v in range(part, k + 1):
            table[v] += table[v - part]
    return table[k]


def etale_mass(n: int, k: int) -> int:
    """Total mass (sum of 1/#Aut) of degree-n etale extensions of Q_p with
    discriminant exponent exactly k (tame range); equals q(k, n-k)."""
    return partitions_at_most(k, n - k)


def local_mass(n: int, p: int) -> Fraction:
    """Sum over k of q(k, n-k) p^{-k}, the universal local mass at p."""
    return sum(
        Fraction(etale_mass(n, k), p**k) for k in range(n)
    )


def local_density_coeffs(n: int) -> list:
    """Coefficients c_k of d_p = sum c_k p^{-k} where
    d_p = (local mass) * (1 - 1/p)."""
    out = []
    for k in range(n + 1):
        out.append(
            partitions_at_most(k, n - k) - partitions_at_most(k - 1, n - k + 1)
        )
    return out


def local_density(n: int, p: int) -> Fraction:
    c = local_density_coeffs(n)
    return sum(Fraction(ck, p**k) for k, ck in enumerate(c))


@dataclass(frozen=True)
class LocalDensityTable:
    """The coefficient vector c_0..c_n of d_p = sum c_k p^{-k}."""

    n: int
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if len(self.coefficients) != self.n + 1:
            raise ValueError("need n + 1 coefficients")
        if self.coefficients != tuple(local_density_coeffs(self.n)):
            raise ValueError("coefficients break the partition-count identity")

    @classmethod
    def for_degree(cls, n: int) -> "LocalDensityTable":
        return cls(n, tuple(local_density_coeffs(n)))

    def at(self, p: int) -> Fraction:
        return sum(Fraction(c, p**k) for k, c in enumerate(self.coefficients))


def two_torsion_proportion(n: int) -> Fraction:
    """Proportion of elements of S_n squaring to the identity."""
    cnt = sum(
        c.size for c in conjugacy_classes(n) if all(part <= 2 for part in c.cycle_type)
    )
    return Fraction(cnt, math.factorial(n))


@dataclass(frozen=True)
class MassConstant:
    n: int
    prime_bound: int
    value: float
    lower: float
    upper: float


def field_count_constant(n: int, prime_bound: int) -> MassConstant:
    """The predicted leading constant (1/2) d_inf prod_p d_p for counting
    degree-n S_n fields by discriminant, with a rigorous interval for the
    truncated Euler product (|log d_p| <= 2 p^{-2} for p > prime_bound)."""
    d_inf = two_torsion_proportion(n)
    prod = 0.5 * float(d_inf)
    for p in primes_up_to(prime_bound):
        prod *= float(local_density(n, p))
    # sum_{p > P} 2/p^2 < 2/P
    tail = 2.0 / prime_bound
    return MassConstant(
        n, prime_bound, prod, prod * math.exp(-tail), prod * math.exp(tail)
    )


def zeta3(terms: int = 20000):
    """(value, lower, upper) bracket for zeta(3) by direct summation."""
    s = math.fsum(1.0 / k**3 for k in range(1, terms + 1))
    lo = s + 1.0 / (2 * (terms + 1) ** 2)
    hi = s + 1.0 / (2 * terms**2)
    return (lo + hi) / 2, lo, hi
