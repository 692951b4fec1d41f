"""Conjugacy classes of S_n, spectral points, and Sato-Tate measures.

A cycle type is a partition of n written as a weakly decreasing tuple.
Unramified splitting of a prime in a degree-n field matches a cycle type
(the Frobenius class), and the eigenvalue angles of the standard
(n-1)-dimensional representation at that class give a point on the
maximal torus.  Finite measures supported on such points are the
Sato-Tate measures handled here; their first and second moment
indicators are computed exactly in cyclotomic arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

MAX_GROUP_ORDER = 10**6


# ---------------------------------------------------------------------------
# cycle types


def validate_cycle_type(tau) -> tuple:
    t = tuple(int(p) for p in tau)
    if any(p <= 0 for p in t):
        raise ValueError("cycle type parts must be positive")
    if tuple(sorted(t, reverse=True)) != t:
        raise ValueError("cycle type must be weakly decreasing")
    return t


def cycle_type_degree(tau) -> int:
    return sum(tau)


def partitions_of(n: int):
    """All partitions of n as weakly decreasing tuples, lexicographically
    decreasing."""

    def gen(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, maxpart), 0, -1):
            for tail in gen(rest - p, p):
                yield (p,) + tail

    return list(gen(n, n))


def class_size(tau) -> int:
    """Number of permutations in S_n with the given cycle type."""
    tau = validate_cycle_type(tau)
    n = sum(tau)
    denom = 1
    mult = {}
    for p in tau:
        mult[p] = mult.get(p, 0) + 1
    for k, m in mult.items():
        denom *= k**m * math.factorial(m)
    return math.factorial(n) // denom


def char_std(tau) -> int:
    """Character of the standard (n-1)-dimensional representation:
    fixed points minus one."""
    tau = validate_cycle_type(tau)
    return sum(1 for p in tau if p == 1) - 1


def power_class(tau, k: int):
    """Cycle type of sigma^k for sigma of cycle type tau.

    A part of length l contributes gcd(l, k) parts of length l/gcd(l, k);
    k = 0 gives the identity class.
    """
    tau = validate_cycle_type(tau)
    parts = []
    for p in tau:
        g = math.gcd(p, k)
        parts.extend([p // g] * g)
    return tuple(sorted(parts, reverse=True))


@dataclass(frozen=True)
class ConjugacyClassData:
    cycle_type: tuple
    size: int
    char_std: int


def conjugacy_classes(n: int):
    """All conjugacy classes of S_n with sizes and standard characters."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for tau in partitions_of(n):
        out.append(ConjugacyClassData(tau, class_size(tau), char_std(tau)))
    assert sum(c.size for c in out) == math.factorial(n)
    return out


# ---------------------------------------------------------------------------
# spectral points and exact cyclotomic traces


@dataclass(frozen=True)
class SpectralPoint:
    """Point on the maximal torus: a multiset of angles in [0,1),
    stored sorted as exact fractions.  The trace is sum of e^{2 pi i theta}."""

    angles: tuple

    def __post_init__(self):
        for a in self.angles:
            if not isinstance(a, Fraction) or not (0 <= a < 1):
                raise ValueError("angles must be fractions in [0,1)")
        object.__setattr__(self, "angles", tuple(sorted(self.angles)))

    def doubled(self) -> "SpectralPoint":
        return SpectralPoint(tuple((2 * a) % 1 for a in self.angles))

    def dim(self) -> int:
        return len(self.angles)


def spectral_point(tau) -> SpectralPoint:
    """Eigenvalue angles of a permutation of cycle type tau acting in the
    standard representation: all f-th roots of unity for every part f,
    with a single zero angle removed."""
    tau = validate_cycle_type(tau)
    angles = []
    for f in tau:
        angles.extend(Fraction(j, f) for j in range(f))
    angles.remove(Fraction(0))
    return SpectralPoint(tuple(angles))


def _cyclotomic_poly(m: int) -> list:
    """Coefficients (ascending) of the m-th cyclotomic polynomial."""
    # x^m - 1 divided by the product of Phi_d over proper divisors d of m
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            q = _cyclotomic_poly(d)
            poly = _polydiv_exact(poly, q)
    return poly


def _polydiv_exact(num: list, den: list) -> list:
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            out[i - dn] = 0
            continue
        assert c % den[dn] == 0
        q = c // den[dn]
        out[i - dn] = q
        for j, dj in enumerate(den):
            num[i - dn + j] -= q * dj
    assert all(x == 0 for x in num[:dn])
    return out


class _CycloVec:
    """Element of Q[x]/(x^m - 1), used to carry sums of roots of unity."""

    __slots__ = ("m", "c")

    def __init__(self, m: int, coeffs=None):
        self.m = m
        self.c = [Fraction(0)] * m if coeffs is None else list(coeffs)

    @classmethod
    def root(cls, m: int, k: int):
        v = cls(m)
        v.c[k % m] = Fraction(1)
        return v

    def __add__(self, other):
        v = _CycloVec(self.m)
        v.c = [a + b for a, b in zip(self.c, other.c)]
        return v

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            v = _CycloVec(self.m)
            v.c = [a * other for a in self.c]
            return v
        v = _CycloVec(self.m)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                if b == 0:
                    continue
                v.c[(i + j) % self.m] += a * b
        return v

    def conj(self):
        v = _CycloVec(self.m)
        for i, a in enumerate(self.c):
            v.c[(-i) % self.m] += a
        return v

    def rational_value(self) -> Fraction:
        """Reduce modulo the m-th cyclotomic polynomial; the result must be
        a constant, which is returned."""
        phi = [Fraction(x) for x in _cyclotomic_poly(self.m)]
        rem = list(self.c)
        dn = len(phi) - 1
        for i in range(len(rem) - 1, dn - 1, -1):
            q = rem[i] / phi[dn]
            if q == 0:
                continue
            for j in range(dn + 1):
                rem[i - dn + j] -= q * phi[j]
        if any(x != 0 for x in rem[1:]):
            raise ValueError("cyclotomic element is not rational")
        return rem[0]


def _trace_vec(point: SpectralPoint, m: int) -> _CycloVec:
    v = _CycloVec(m)
    for a in point.angles:
        k = a * m
        assert k.denominator == 1
        v.c[int(k) % m] += 1
    return v


# ---------------------------------------------------------------------------
# measures and indicators


@dataclass(frozen=True)
class SatoTateMeasure:
    """Finitely supported measure on spectral points; masses are exact
    and sum to one."""

    atoms: tuple  # tuple of (Fraction mass, SpectralPoint)

    def __post_init__(self):
        total = sum(m for m, _ in self.atoms)
        if total != 1:
            raise ValueError("masses must sum to 1")
        if any(m < 0 for m, _ in self.atoms):
            raise ValueError("masses must be nonnegative")
        dims = {pt.dim() for _, pt in self.atoms}
        if len(dims) != 1:
            raise ValueError("all atoms must share a dimension")


@dataclass(frozen=True)
class Indicators:
    i1: Fraction
    i2: Fraction
    i3: Fraction


def indicators(measure: SatoTateMeasure) -> Indicators:
    """Exact moment indicators of a Sato-Tate measure.

    i1 integrates |tr t|^2, i2 integrates (tr t)^2, i3 integrates tr(t^2);
    all three are rational for the measures arising here and are computed
    in exact cyclotomic arithmetic.
    """
    m = 1
    for _, pt in measure.atoms:
        for a in pt.angles:
            m = math.lcm(m, a.denominator)
    acc1 = _CycloVec(m)
    acc2 = _CycloVec(m)
    acc3 = _CycloVec(m)
    for mass, pt in measure.atoms:
        t = _trace_vec(pt, m)
        acc1 = acc1 + (t * t.conj()) * mass
        acc2 = acc2 + (t * t) * mass
        acc3 = acc3 + _trace_vec(pt.doubled(), m) * mass
    return Indicators(
        acc1.rational_value(), acc2.rational_value(), acc3.rational_value()
    )


def sn_measure(n: int) -> SatoTateMeasure:
    """Haar pushforward for the full symmetric group: each class gets
    mass |class|/n!."""
    fact = math.factorial(n)
    atoms = []
    for cls in conjugacy_classes(n):
        atoms.append((Fraction(cls.size, fact), spectral_point(cls.cycle_type)))
    return SatoTateMeasure(tuple(atoms))


# ---------------------------------------------------------------------------
# subgroups given by generators


def _perm_mul(p, q):
    return tuple(p[q[i]] for i in range(len(p)))


def _perm_cycle_type(p):
    n = len(p)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            ln += 1
        parts.append(ln)
    return tuple(sorted(parts, reverse=True))


def close_generators(generators, n: int):
    """All elements of the subgroup of S_n generated by the given
    permutations (images of 0..n-1).  Bounded by MAX_GROUP_ORDER."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        if sorted(g) != list(range(n)):
            raise ValueError("generator is not a permutation of 0..n-1")
    ident = tuple(range(n))
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                e = _perm_mul(g, h)
                if e not in elements:
                    if len(elements) >= MAX_GROUP_ORDER:
                        raise ValueError("group order exceeds bound")
                    elements.add(e)
                    nxt.append(e)
        frontier = nxt
    return elements


def subgroup_pushforward(generators, n: int) -> SatoTateMeasure:
    """Haar pushforward measure for the subgroup generated by the given
    permutations, supported on the spectral points of its cycle types."""
    elements = close_generators(generators, n)
    order = len(elements)
    counts = {}
    for e in elements:
        t = _perm_cycle_type(e)
        counts[t] = counts.get(t, 0) + 1
    atoms = tuple(
        (Fraction(c, order), spectral_point(t)) for t, c in sorted(counts.items())
    )
    return SatoTateMeasure(atoms)


def _cycles_to_perm(n, cycles):
    p = list(range(n))
    for cyc in cycles:
        for i, a in enumerate(cyc):
            p[a] = cyc[(i + 1) % len(cyc)]
    return tuple(p)


def measure_from_group_spec(spec) -> SatoTateMeasure:
    """Build a measure from a named group or an explicit generator list.

    Named specs: "Sn" for n in 2..9 (e.g. "S3"), "C3_in_S3", "S2_in_S3",
    "D4_in_S4", "Q8_dim2".  An explicit spec is a pair (n, generators).
    """
    if isinstance(spec, str):
        name = spec.strip()
        if name.startswith("S") and name[1:].isdigit():
            return sn_measure(int(name[1:]))
        if name == "C3_in_S3":
            return subgroup_pushforward([_cycles_to_perm(3, [(0, 1, 2)])], 3)
        if name == "S2_in_S3":
            return subgroup_pushforward([_cycles_to_perm(3, [(0, 1)])], 3)
        if name == "D4_in_S4":
            gens = [
                _cycles_to_perm(4, [(0, 1, 2, 3)]),
                _cycles_to_perm(4, [(0, 2)]),
            ]
            return subgroup_pushforward(gens, 4)
        if name == "Q8_dim2":
            half = Fraction(1, 2)
            quarter = Fraction(1, 4)
            atoms = (
                (Fraction(1, 8), SpectralPoint((Fraction(0), Fraction(0)))),
                (Fraction(1, 8), SpectralPoint((half, half))),
                (Fraction(3, 4), SpectralPoint((quarter, 3 * quarter))),
            )
            return SatoTateMeasure(atoms)
        raise ValueError(f"unknown group spec {name!r}")
    n, gens = spec
    return subgroup_pushforward(gens, int(n))


def all_permutations_of_type(n, tau):
    """Brute-force list of permutations with a given cycle type (small n)."""
    tau = validate_cycle_type(tau)
    return [p for p in permutations(range(n)) if _perm_cycle_type(p) == tau]
