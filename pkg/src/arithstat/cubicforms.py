"""Binary cubic forms over Z: discriminant, GL2(Z) reduction with canonical
orbit representatives, maximality of the associated cubic ring, splitting
symbols, cubic field tabulation, and the quadratic-resolvent map.

Conventions. A form (a,b,c,d) is a x^3 + b x^2 y + c xy^2 + d y^3. The group
acts by (g.f)(x, y) = f((x, y) g) / det g with (x,y)g a row-vector product,
so the discriminant is invariant (not merely covariant) under both
determinant signs.

Reduction. For disc > 0 the Hessian P x^2 + Q xy + R y^2 with
P = b^2 - 3ac, Q = bc - 9ad, R = c^2 - 3bd is positive definite
(disc of H is -3 disc f) and is Gauss-reduced to 0 <= Q <= P <= R.
For disc < 0 the form factors as a (x - t y)(x^2 + B xy + C y^2) with a
unique real root t, and the domain is a > 0, 0 <= B <= 1, C >= 1.  The three
inequalities are equivalent to integer sign conditions obtained by taking
resultants against the linear/quadratic polynomials whose sign at t they
express:
    B >= 0  <=>  T4 := bc - ad >= 0
    B <= 1  <=>  T1 := (a-b)^3 + b(a-b)^2 + ac(a-b) + a^2 d >= 0
    C >= 1  <=>  T3 := d^2 - bd + ac - a^2 >= 0
(each Ti is a * prod over roots of the tested polynomial, and the complex
pair contributes a positive factor).  Boundary ties in either sign are
broken lexicographically over the finite stabilizer, whose elements have
entries in {-1,0,1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from .conjugacy import class_size, validate_cycle_type
from .polyfactor import (
    MonicPoly,
    SplittingSymbol,
    ZeroDiscriminantError,
    factor_mod_p,
    is_irreducible_over_Q,
)
from .primes import factorize, squarefree_kernel


class NotPMaximal(ValueError):
    pass


class TotallyRamifiedSomewhere(ValueError):
    pass


class InsufficientTabulation(ValueError):
    pass


@dataclass(frozen=True)
class BinaryCubicForm:
    a: int
    b: int
    c: int
    d: int

    @property
    def coeffs(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def disc(self) -> int:
        a, b, c, d = self.coeffs
        return (
            b * b * c * c
            + 18 * a * b * c * d
            - 4 * a * c**3
            - 4 * b**3 * d
            - 27 * a * a * d * d
        )

    def hessian(self) -> Tuple[int, int, int]:
        a, b, c, d = self.coeffs
        return (b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d)

    def __call__(self, x: int, y: int) -> int:
        a, b, c, d = self.coeffs
        return a * x**3 + b * x * x * y + c * x * y * y + d * y**3

    def neg(self) -> "BinaryCubicForm":
        return BinaryCubicForm(-self.a, -self.b, -self.c, -self.d)

    def transformed(self, g) -> "BinaryCubicForm":
        """Twisted substitution f((x,y)g)/det g for g = ((p,q),(r,s))."""
        (p, q), (r, s) = g
        det = p * s - q * r
        if det not in (1, -1):
            raise ValueError("matrix not unimodular")
        # (x, y) g = (p x + r y, q x + s y)
        u, v = (p, r), (q, s)

        def lin_pow(l, k):
            out = [0] * (k + 1)
            for i in range(k + 1):
                out[i] = math.comb(k, i) * l[0] ** (k - i) * l[1] ** i
            return out

        total = [0, 0, 0, 0]
        for coef, i in ((self.a, 3), (self.b, 2), (self.c, 1), (self.d, 0)):
            if coef == 0:
                continue
            left = lin_pow(u, i)
            right = lin_pow(v, 3 - i)
            for ii, lv in enumerate(left):
                for jj, rv in enumerate(right):
                    total[ii + jj] += coef * lv * rv
        return BinaryCubicForm(*(t * det for t in total))

    def content(self) -> int:
        return math.gcd(math.gcd(abs(self.a), abs(self.b)), math.gcd(abs(self.c), abs(self.d)))

    def is_irreducible(self) -> bool:
        """Irreducibility over Q (no rational projective root)."""
        if self.a == 0:
            return False
        a, b, c, d = self.coeffs
        # monic model with roots a*t for t the roots of f(t, 1)
        return is_irreducible_over_Q(MonicPoly(3, (b, a * c, a * a * d)))


def disc_cubic(F: BinaryCubicForm) -> int:
    return F.disc


_T = ((1, 0), (1, 1))
_T_INV = ((1, 0), (-1, 1))
_SWAP = ((0, 1), (1, 0))
_FLIP = ((1, 0), (0, -1))
_S = ((0, 1), (-1, 0))


def _sign_normalized(F: BinaryCubicForm) -> BinaryCubicForm:
    return F.neg() if F.a < 0 else F


def _t1(F: BinaryCubicForm) -> int:
    a, b, c, d = F.coeffs
    s = a - b
    return s**3 + b * s * s + a * c * s + a * a * d


def _t3(F: BinaryCubicForm) -> int:
    a, b, c, d = F.coeffs
    return d * d - b * d + a * c - a * a


def _t4(F: BinaryCubicForm) -> int:
    a, b, c, d = F.coeffs
    return b * c - a * d


def is_reduced(F: BinaryCubicForm) -> bool:
    """Membership in the reduction domain (boundary included)."""
    D = F.disc
    if D == 0:
        raise ZeroDiscriminantError("degenerate form")
    if D > 0:
        P, Q, R = F.hessian()
        return 0 <= Q <= P <= R
    G = _sign_normalized(F)
    if G.a == 0:
        return False
    return _t4(G) >= 0 and _t1(G) >= 0 and _t3(G) >= 0


def _real_root(F: BinaryCubicForm) -> float:
    roots = np.roots([F.a, F.b, F.c, F.d])
    real = min(roots, key=lambda z: abs(z.imag))
    return float(real.real)


def reduce_form(F: BinaryCubicForm, max_steps: int = 20000) -> BinaryCubicForm:
    """A representative of the GL2(Z)-orbit inside the reduction domain."""
    D = F.disc
    if D == 0:
        raise ZeroDiscriminantError("degenerate form")
    f = F
    if D > 0:
        for _ in range(max_steps):
            P, Q, R = f.hessian()
            if P > R:
                f = f.transformed(_SWAP)
                continue
            if Q < 0 or Q > P:
                k = (P - Q) // (2 * P)
                if k == 0:
                    # |Q| <= P already; only the sign needs fixing
                    f = f.transformed(_FLIP)
                else:
                    f = f.transformed(((1, 0), (k, 1)))
                continue
            return f
        raise RuntimeError("reduction did not terminate")
    f = _sign_normalized(f)
    for _ in range(max_steps):
        if f.a == 0:
            raise ValueError("reducible form (a vanished)")
        if _t4(f) < 0 or _t1(f) < 0:
            # jump near the window using the real root, then fix exactly
            try:
                t = _real_root(f)
                k0 = -math.floor((t + f.b / f.a) / 2)
            except (OverflowError, ValueError):
                k0 = 0
            if k0:
                f = _sign_normalized(f.transformed(((1, 0), (k0, 1))))
            guard = 0
            while _t4(f) < 0:
                f = _sign_normalized(f.transformed(_T))
                guard += 1
                if guard > max_steps:
                    raise RuntimeError("translation runaway")
            while True:
                g = _sign_normalized(f.transformed(_T_INV))
                if _t4(g) >= 0:
                    f = g
                    guard += 1
                    if guard > max_steps:
                        raise RuntimeError("translation runaway")
                else:
                    break
        if _t1(f) < 0:
            # B in (1, 2): reflect then shift back into [0, 1)
            f = _sign_normalized(f.transformed(_FLIP))
            f = _sign_normalized(f.transformed(_T))
            assert _t4(f) >= 0 and _t1(f) >= 0
        if _t3(f) >= 0:
            return f
        f = _sign_normalized(f.transformed(_S))
    raise RuntimeError("reduction did not terminate")


def _fiber_matrices():
    out = []
    vals = (-1, 0, 1)
    for p in vals:
        for q in vals:
            for r in vals:
                for s in vals:
                    if p * s - q * r in (1, -1):
                        out.append(((p, q), (r, s)))
    return tuple(out)


_FIBER = _fiber_matrices()


def canonical_form(F: BinaryCubicForm) -> BinaryCubicForm:
    """The canonical orbit representative: reduce, then take the
    lexicographically least (a,b,c,d) with a > 0 over the boundary
    stabilizer (entries in {-1,0,1})."""
    f = reduce_form(F)
    best = None
    for g in _FIBER:
        cand = _sign_normalized(f.transformed(g))
        try:
            ok = is_reduced(cand)
        except ZeroDiscriminantError:
            ok = False
        if ok and (best is None or cand.coeffs < best):
            best = cand.coeffs
    assert best is not None
    return BinaryCubicForm(*best)


def _is_canonical_in_domain(f: BinaryCubicForm, interior: bool) -> bool:
    """For a form already in the domain with a > 0: whether it is the
    canonical representative. Interior points are canonical outright."""
    if interior:
        return True
    coeffs = f.coeffs
    for g in _FIBER:
        cand = _sign_normalized(f.transformed(g))
        if cand.coeffs < coeffs and is_reduced(cand):
            return False
    return True


def _ceil_div(x: int, y: int) -> int:
    return -((-x) // y)


def enumerate_reduced_forms(
    x: int, sign: Optional[int] = None, require_irreducible: bool = True
) -> Iterator[BinaryCubicForm]:
    """All canonical representatives of GL2(Z)-orbits of integral binary
    cubics with 0 < |disc| < x (optionally one sign only)."""
    if sign in (None, 1):
        yield from _enumerate_positive(x, require_irreducible)
    if sign in (None, -1):
        yield from _enumerate_negative(x, require_irreducible)


def _enumerate_positive(x: int, require_irreducible: bool) -> Iterator[BinaryCubicForm]:
    """Domain: Hessian reduced, a > 0.  Bounds (all proved from the reduced
    Hessian): P <= sqrt(disc); 27 disc a^2 <= 4P^3 (syzygy at (1,0));
    for b >= 0, P >= b^2 - 3ab + 9a^2; for b < 0, b^2 <= P - 9a^2."""
    if x <= 1:
        return
    sqx = math.isqrt(x - 1)
    a = 1
    while 729 * a**4 <= 16 * x:
        s_pos = math.isqrt(max(0, 4 * sqx - 27 * a * a))
        b_hi = (3 * a + s_pos) // 2 + 1
        b_lo = -math.isqrt(max(0, sqx - 9 * a * a)) - 1
        for b in range(b_lo, b_hi + 1):
            c_lo = _ceil_div(b * b - sqx, 3 * a)
            c_hi = (b * b - 1) // (3 * a)
            for c in range(c_lo, c_hi + 1):
                P = b * b - 3 * a * c
                if not 1 <= P <= sqx:
                    continue
                d_lo = _ceil_div(b * c - P, 9 * a)
                d_hi = (b * c) // (9 * a)
                for d in range(d_lo, d_hi + 1):
                    Q = b * c - 9 * a * d
                    R = c * c - 3 * b * d
                    if R < P:
                        continue
                    f = BinaryCubicForm(a, b, c, d)
                    D = f.disc
                    if not 0 < D < x:
                        continue
                    interior = 0 < Q < P < R
                    if not _is_canonical_in_domain(f, interior):
                        continue
                    if require_irreducible and not f.is_irreducible():
                        continue
                    yield f
        a += 1


def _enumerate_negative(x: int, require_irreducible: bool) -> Iterator[BinaryCubicForm]:
    """Domain: a > 0, 0 <= B <= 1, C >= 1.  With the complex root
    w = u + iv of the quadratic factor: v^2 >= 3/4, |u| <= 1/2, and
    |disc| = 4 a^4 v^2 ((t-u)^2 + v^2)^2 gives
    |t| <= 1/2 + (x/3)^{1/4}/a and C <= 1/4 + (x/(4a^4))^{1/3}."""
    if x <= 1:
        return
    a = 1
    while 27 * a**4 <= 16 * x:
        theta_max = 0.5 + (x / 3.0) ** 0.25 / a
        c_max = 0.25 + (x / (4.0 * a**4)) ** (1.0 / 3.0)
        b_lo = math.floor(-a * theta_max) - 1
        b_hi = math.ceil(a * (1 + theta_max)) + 1
        for b in range(b_lo, b_hi + 1):
            c_lo = math.floor(a * (1 - theta_max)) - 1
            c_hi = math.ceil(a * (c_max + theta_max)) + 1
            for c in range(c_lo, c_hi + 1):
                s = a - b
                w = s**3 + b * s * s + a * c * s
                # T1 >= 0 gives d >= -w/a^2; T4 >= 0 gives d <= bc/a
                d_lo = _ceil_div(-w, a * a)
                d_hi = (b * c) // a
                if d_hi < d_lo:
                    continue
                for d in range(d_lo, d_hi + 1):
                    f = BinaryCubicForm(a, b, c, d)
                    if _t3(f) < 0:
                        continue
                    D = f.disc
                    if not -x < D < 0:
                        continue
                    interior = _t1(f) > 0 and _t3(f) > 0 and _t4(f) > 0
                    if not _is_canonical_in_domain(f, interior):
                        continue
                    if require_irreducible and not f.is_irreducible():
                        continue
                    yield f
        a += 1


def is_DH_maximal(F: BinaryCubicForm, p: int) -> bool:
    """Whether the cubic ring of F is maximal at p.

    Nonmaximal iff p divides all coefficients, or some multiple projective
    root of F mod p lifts with value divisible by p^2: for a finite root r,
    p^2 | F(r, 1); for the root at infinity (p | a, p | b), p^2 | a.
    """
    D = F.disc
    if D == 0:
        raise ZeroDiscriminantError("degenerate form")
    if D % (p * p):
        return True
    a, b, c, d = F.coeffs
    if all(v % p == 0 for v in F.coeffs):
        return False
    pp = p * p
    for r in range(p):
        fr = ((a * r + b) * r + c) * r + d
        if fr % p:
            continue
        dr = (3 * a * r + 2 * b) * r + c
        if dr % p:
            continue
        if F(r, 1) % pp == 0:
            return False
    if a % p == 0 and b % p == 0 and a % pp == 0:
        return False
    return True


def is_DH_maximal_bruteforce(F: BinaryCubicForm, p: int) -> bool:
    """Oracle: search all of GL2(Z/p^2) for a translate with p^2 | a and
    p | b (the index-p sublattice witness).  Exponential in p; for tests."""
    if F.disc == 0:
        raise ZeroDiscriminantError("degenerate form")
    if all(v % p == 0 for v in F.coeffs):
        return False
    pp = p * p
    for g00 in range(pp):
        for g01 in range(pp):
            for g10 in range(pp):
                for g11 in range(pp):
                    det = (g00 * g11 - g01 * g10) % p
                    if det == 0:
                        continue
                    # untwisted substitution is enough mod p^2: the 1/det
                    # unit factor does not change divisibility
                    if F(g00, g01) % pp:
                        continue
                    # x^2 y coefficient of F(g00 x + g10 y, g01 x + g11 y)
                    bb = (
                        3 * F.a * g00 * g00 * g10
                        + F.b * (g00 * g00 * g11 + 2 * g00 * g01 * g10)
                        + F.c * (g10 * g01 * g01 + 2 * g00 * g01 * g11)
                        + 3 * F.d * g01 * g01 * g11
                    ) % p
                    if bb == 0:
                        return False
    return True


def splitting_symbol_cubic(F: BinaryCubicForm, p: int) -> SplittingSymbol:
    """Splitting symbol of p in the cubic field of a maximal form: the
    multiset (multiplicity, degree) of projective irreducible factors of
    F mod p, including the factor y when p | a."""
    if F.disc == 0:
        raise ZeroDiscriminantError("degenerate form")
    if not is_DH_maximal(F, p):
        raise NotPMaximal(f"form {F.coeffs} is not maximal at {p}")
    a, b, c, d = (v % p for v in F.coeffs)
    coeffs = [d, c, b, a]  # ascending in t for f(t, 1)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    pairs = []
    inf_mult = 4 - len(coeffs)  # multiplicity of y = 3 - deg
    if inf_mult > 0:
        pairs.append((inf_mult, 1))
    if coeffs:
        lead_inv = pow(coeffs[-1], -1, p)
        monic = [v * lead_inv % p for v in coeffs]
        deg = len(monic) - 1
        if deg > 0:
            poly = MonicPoly(deg, tuple(monic[-2::-1]))
            for g, mult in factor_mod_p(poly, p).factors:
                pairs.append((mult, len(g) - 1))
    sym = SplittingSymbol.from_pairs(pairs)
    assert sym.degree == 3
    return sym


def fundamental_discriminant(D: int) -> int:
    """The discriminant of Q(sqrt(D))."""
    if D == 0:
        raise ValueError("zero discriminant")
    d0 = squarefree_kernel(D)
    return d0 if d0 % 4 == 1 else 4 * d0


def is_fundamental_discriminant(D: int) -> bool:
    if D == 1:
        return False
    return D != 0 and fundamental_discriminant(D) == D


def resolvent_splitting(tau: Tuple[int, ...]) -> Tuple[int, ...]:
    """Splitting in the quadratic resolvent from unramified cubic splitting:
    (111), (3) -> (11); (21) -> (2)."""
    tau = validate_cycle_type(tau)
    if tau in ((1, 1, 1), (3,)):
        return (1, 1)
    if tau == (2, 1):
        return (2,)
    raise ValueError(f"not an unramified cubic type: {tau}")


@dataclass(frozen=True)
class CubicFieldRecord:
    form: BinaryCubicForm
    disc: int
    fundamental_resolvent_disc: int
    ntr: bool  # nowhere totally ramified
    splitting: Dict[int, SplittingSymbol] = field(compare=False)

    @property
    def conductor(self) -> int:
        return abs(self.disc)

    def resolvent_disc(self) -> int:
        """Discriminant of the quadratic resolvent field, guarded: the
        resolvent-family constructions only admit nowhere-totally-ramified
        fields, where disc itself is fundamental."""
        if not self.ntr:
            raise TotallyRamifiedSomewhere(
                f"record disc={self.disc} is totally ramified at some prime"
            )
        return self.fundamental_resolvent_disc


def quadratic_resolvent_disc(record: CubicFieldRecord) -> int:
    return record.resolvent_disc()


def enumerate_cubic_fields(
    x: int, cache_primes: Tuple[int, ...] = (2, 3, 5, 7, 11, 13)
) -> Iterator[CubicFieldRecord]:
    """One record per cubic field with 0 < |disc| < x, via maximal forms."""
    for f in enumerate_reduced_forms(x):
        D = f.disc
        fac = factorize(abs(D))
        if any(e >= 2 and not is_DH_maximal(f, q) for q, e in fac.items()):
            continue
        ntr = True
        for q in fac:
            if splitting_symbol_cubic(f, q).pairs == ((3, 1),):
                ntr = False
                break
        splitting = {p: splitting_symbol_cubic(f, p) for p in cache_primes}
        yield CubicFieldRecord(
            form=f,
            disc=D,
            fundamental_resolvent_disc=fundamental_discriminant(D),
            ntr=ntr,
            splitting=splitting,
        )


def cl3(d: int, tabulation: Dict[int, int], coverage: int) -> int:
    """#Cl(d)[3] = 1 + 2 (number of nowhere-totally-ramified cubic field
    records of discriminant exactly d); `tabulation` maps disc -> count."""
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    if abs(d) >= coverage:
        raise InsufficientTabulation(f"|{d}| exceeds tabulated bound {coverage}")
    return 1 + 2 * tabulation.get(d, 0)


def predicted_cubic_type_density(p: int, tau: Tuple[int, ...]) -> Fraction:
    tau = validate_cycle_type(tau)
    if sum(tau) != 3:
        raise ValueError(f"not a cubic cycle type: {tau}")
    return Fraction(class_size(tau), 6) * Fraction(p * p, p * p + p + 1)


def predicted_cubic_ramified_density(p: int) -> Fraction:
    return Fraction(p + 1, p * p + p + 1)


def cubic_form_census(p: int) -> Dict[object, int]:
    """Exact counts of projective splitting types over all p^4 binary
    cubics mod p with nonzero discriminant (plus the degenerate count)."""
    r = np.arange(p, dtype=np.int64)
    a, b, c, d = (v.reshape(-1) for v in np.meshgrid(r, r, r, r, indexing="ij"))
    disc = (
        b * b * c * c
        + 18 * a * b * c * d
        - 4 * a * c**3
        - 4 * b**3 * d
        - 27 * a * a * d * d
    ) % p
    nonzero = disc != 0
    roots = (a == 0).astype(np.int64)  # projective root at infinity
    for t in range(p):
        roots += ((a * t**3 + b * t * t + c * t + d) % p == 0).astype(np.int64)
    out = {
        (1, 1, 1): int(np.count_nonzero(nonzero & (roots == 3))),
        (2, 1): int(np.count_nonzero(nonzero & (roots == 1))),
        (3,): int(np.count_nonzero(nonzero & (roots == 0))),
        "degenerate": int(np.count_nonzero(~nonzero)),
    }
    assert sum(out.values()) == p**4
    return out
