"""p-adic utilities: valuations, Hilbert symbols, square roots, and exact
arithmetic in biquadratic fields Q(sqrt(a), sqrt(b)) with p-adic embeddings.

Rational inputs are Fractions or ints; "inf" denotes the archimedean place.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .primes import factorize, is_prime

Place = Union[int, str]
Rat = Union[int, Fraction]


class PrecisionError(ValueError):
    """Requested p-adic digits do not determine the answer."""


def padic_valuation(x: Rat, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def unit_part(x: Rat, p: int) -> Fraction:
    """x / p^{v_p(x)} as an exact rational p-adic unit."""
    v = padic_valuation(x, p)
    return Fraction(x) / Fraction(p) ** v


def unit_residue(x: Rat, p: int, modulus: int) -> int:
    """The p-adic unit part of x reduced mod `modulus` (a power of p)."""
    u = unit_part(x, p)
    return u.numerator * pow(u.denominator, -1, modulus) % modulus


def legendre_symbol(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def hilbert_symbol(a: Rat, b: Rat, place: Place) -> int:
    """(a, b)_v in {+1, -1} for nonzero rationals a, b."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol needs nonzero arguments")
    if place == "inf":
        return -1 if (a < 0 and b < 0) else 1
    p = int(place)
    if not is_prime(p):
        raise ValueError(f"not a place: {place!r}")
    alpha, beta = padic_valuation(a, p), padic_valuation(b, p)
    if p != 2:
        u = unit_residue(a, p, p)
        v = unit_residue(b, p, p)
        sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
        return (
            sign
            * legendre_symbol(u, p) ** (beta % 2)
            * legendre_symbol(v, p) ** (alpha % 2)
        )
    u = unit_residue(a, 2, 8)
    v = unit_residue(b, 2, 8)
    eps_u, eps_v = (u - 1) // 2 % 2, (v - 1) // 2 % 2
    omega_u, omega_v = (u * u - 1) // 8 % 2, (v * v - 1) // 8 % 2
    exp = eps_u * eps_v + alpha * omega_v + beta * omega_u
    return -1 if exp % 2 else 1


def relevant_places(*values: Rat) -> list:
    """Places where a Hilbert symbol built from the given rationals can
    be nontrivial: infinity, 2, and odd primes dividing some value."""
    places: set = {"inf", 2}
    for x in values:
        x = Fraction(x)
        for n in (x.numerator, x.denominator):
            for q in factorize(abs(n)):
                if q != 2:
                    places.add(q)
    return ["inf"] + sorted(q for q in places if q != "inf")


def hilbert_product(a: Rat, b: Rat) -> int:
    """Product of (a, b)_v over all places (should always be +1)."""
    prod = 1
    for v in relevant_places(a, b):
        prod *= hilbert_symbol(a, b, v)
    return prod


def soluble_mod_prime_power(a: int, b: int, p: int, k: int) -> bool:
    """Whether z^2 = a x^2 + b y^2 has a primitive solution mod p^k.

    Any primitive solution has x or y a unit (both zero mod p would force
    z^2 = 0 mod p^2 against z being a unit), so scaling lets us fix the
    unit coordinate to 1.
    """
    q = p**k
    squares = set()
    for z in range(q):
        squares.add(z * z % q)
    for y in range(q):
        if (a + b * y * y) % q in squares:
            return True
    for x in range(0, q, p):
        if (a * x * x + b) % q in squares:
            return True
    return False


def hilbert_symbol_bruteforce(a: int, b: int, p: int) -> int:
    """Oracle: decide (a, b)_p by solubility mod a sufficient prime power."""
    vmax = max(abs(padic_valuation(a, p)), abs(padic_valuation(b, p)))
    k = 2 * vmax + (3 if p == 2 else 2)
    return 1 if soluble_mod_prime_power(a, b, p, k) else -1


def witt_condition(a: Rat, b: Rat) -> bool:
    """Whether (-a, -b)_v = (-1, -1)_v at every place."""
    for v in relevant_places(a, b):
        if hilbert_symbol(-Fraction(a), -Fraction(b), v) != hilbert_symbol(-1, -1, v):
            return False
    return True


def _sqrt_mod_p(a: int, p: int) -> int:
    """Tonelli-Shanks; a must be a QR mod odd p."""
    a %= p
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    s, q = 0, p - 1
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_symbol(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        bexp = pow(c, 1 << (m - i - 1), p)
        m, c = i, bexp * bexp % p
        t, r = t * c % p, r * bexp % p
    return r


@dataclass(frozen=True)
class PadicSqrt:
    p: int
    valuation: int  # of the square root
    unit: int  # unit part of the root, mod p^precision
    precision: int

    def residue(self, modulus: int) -> int:
        """The root mod `modulus`; requires valuation >= 0."""
        if self.valuation < 0:
            raise ValueError("negative valuation")
        return self.unit * self.p**self.valuation % modulus


def sqrt_in_Qp(a: Rat, p: int, precision: int = 24) -> Optional[PadicSqrt]:
    """A square root of a in Q_p to the stated unit precision, or None."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("zero input")
    v = padic_valuation(a, p)
    if v % 2:
        return None
    q = p**precision
    u = unit_residue(a, p, q if p != 2 else 4 * q)
    if p == 2:
        if u % 8 != 1:
            return None
        # lift from x = 1 mod 8: x -> x or x + 2^{j-1} doubles the modulus
        x, j = 1, 3
        while j < precision:
            if (x * x - u) % (1 << (j + 1)):
                x += 1 << (j - 1)
            j += 1
        x %= q
        assert (x * x - u) % q == 0
        return PadicSqrt(2, v // 2, x, precision)
    if legendre_symbol(u, p) != 1:
        return None
    x = _sqrt_mod_p(u, p)
    mod = p
    while mod < q:
        mod = min(mod * mod, q)
        x = (x - (x * x - u) * pow(2 * x, -1, mod)) % mod
    assert (x * x - u) % q == 0
    return PadicSqrt(p, v // 2, x, precision)


def is_square_in_Qp(a: Rat, p: int) -> bool:
    return sqrt_in_Qp(a, p, precision=8 if p != 2 else 10) is not None


@dataclass(frozen=True)
class BiquadraticElement:
    """c0 + c1 sqrt(a) + c2 sqrt(b) + c3 sqrt(ab) in Q(sqrt a, sqrt b)."""

    a: int
    b: int
    coords: Tuple[Fraction, Fraction, Fraction, Fraction]

    @staticmethod
    def make(a: int, b: int, c0=0, c1=0, c2=0, c3=0) -> "BiquadraticElement":
        return BiquadraticElement(
            a, b, (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))
        )

    def _check(self, other: "BiquadraticElement"):
        if (self.a, self.b) != (other.a, other.b):
            raise ValueError("mixed fields")

    def __add__(self, other):
        self._check(other)
        return BiquadraticElement(
            self.a, self.b, tuple(x + y for x, y in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        self._check(other)
        return BiquadraticElement(
            self.a, self.b, tuple(x - y for x, y in zip(self.coords, other.coords))
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiquadraticElement(
                self.a, self.b, tuple(x * other for x in self.coords)
            )
        self._check(other)
        a, b = Fraction(self.a), Fraction(self.b)
        x0, x1, x2, x3 = self.coords
        y0, y1, y2, y3 = other.coords
        return BiquadraticElement(
            self.a,
            self.b,
            (
                x0 * y0 + a * x1 * y1 + b * x2 * y2 + a * b * x3 * y3,
                x0 * y1 + x1 * y0 + b * (x2 * y3 + x3 * y2),
                x0 * y2 + x2 * y0 + a * (x1 * y3 + x3 * y1),
                x0 * y3 + x3 * y0 + x1 * y2 + x2 * y1,
            ),
        )

    __rmul__ = __mul__

    def conj_a(self) -> "BiquadraticElement":
        """sqrt(a) -> -sqrt(a) (fixes sqrt(b))."""
        c0, c1, c2, c3 = self.coords
        return BiquadraticElement(self.a, self.b, (c0, -c1, c2, -c3))

    def conj_b(self) -> "BiquadraticElement":
        c0, c1, c2, c3 = self.coords
        return BiquadraticElement(self.a, self.b, (c0, c1, -c2, -c3))

    def norm_to_sqrt_a(self) -> "BiquadraticElement":
        """self * conj_b(self); lies in Q(sqrt a)."""
        out = self * self.conj_b()
        assert out.coords[2] == 0 and out.coords[3] == 0
        return out

    def norm_to_Q(self) -> Fraction:
        out = self * self.conj_a() * self.conj_b() * self.conj_a().conj_b()
        assert out.coords[1] == out.coords[2] == out.coords[3] == 0
        return out.coords[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def conjugates(self):
        return [self, self.conj_a(), self.conj_b(), self.conj_a().conj_b()]


def embed_at_split_prime(
    elem: BiquadraticElement, p: int, precision: int = 24
) -> list:
    """All four embeddings of elem into Q_p, as residues mod p^precision.

    Requires a and b to be p-adic units that are squares in Q_p (the
    totally split case); sqrt(ab) is forced to sqrt(a) * sqrt(b) so the
    four sign choices are the four field embeddings.
    """
    ra = sqrt_in_Qp(elem.a, p, precision)
    rb = sqrt_in_Qp(elem.b, p, precision)
    if ra is None or rb is None or ra.valuation or rb.valuation:
        raise ValueError(f"{p} is not totally split for ({elem.a}, {elem.b})")
    q = p**precision
    sa, sb = ra.unit, rb.unit
    out = []
    for ea in (1, -1):
        for eb in (1, -1):
            va, vb = ea * sa % q, eb * sb % q
            total = 0
            for c, mult in zip(elem.coords, (1, va, vb, va * vb % q)):
                total += c.numerator * pow(c.denominator, -1, q) * mult
            out.append(total % q)
    return out


def residue_square_class(t: int, p: int, precision: int) -> bool:
    """Whether a p-adic number known mod p^precision is a square.

    Raises PrecisionError when the digits shown cannot decide (valuation
    too close to the precision, or zero residue).
    """
    t %= p**precision
    if t == 0:
        raise PrecisionError("residue vanishes to full precision")
    v = 0
    while t % p == 0:
        t //= p
        v += 1
    if precision - v < (3 if p == 2 else 1):
        raise PrecisionError("unit part known to too few digits")
    if v % 2:
        return False
    if p == 2:
        return t % 8 == 1
    return legendre_symbol(t, p) == 1
