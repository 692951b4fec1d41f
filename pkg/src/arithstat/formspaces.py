"""Pairs of ternary quadratic forms and quadruples of alternating
matrices: the quartic and quintic form spaces.

A ternary quadratic form with integer values is stored as its doubled
Gram matrix (an integer symmetric matrix with even diagonal), which keeps
all linear algebra over the integers.  The resolvent binary cubic of a
pair (A, B) is 4 det(Ax - By) = det(M_A x - M_B y)/2, provably integral.

Splitting of a nondegenerate pair mod an odd p is the Frobenius orbit
partition of the four intersection points of the two conics in P^2.  It
is computed by eliminating z: the z-resultant of the two forms is a
binary quartic whose projective roots are the projections of the four
points; when that quartic has four distinct roots the projection is a
bijection on points and its factorization type is the answer, otherwise
a fixed schedule of coordinate changes is tried.  An independent oracle
counts intersection points over F_p and F_{p^2} directly.

A quintic ring mod 2 is a quadruple of alternating 5x5 matrices over
F_2; the five principal 4x4 sub-Pfaffians of Ax + By + Cz + Dt cut out
five points in P^3, and the splitting partition is read off a point
census over F_{2^k}, k = 1..5.
"""

import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .cubicforms import BinaryCubicForm, disc_cubic
from .polyfactor import (
    MonicPoly,
    ZeroDiscriminantError,
    discriminant,
    factor_mod_p,
    is_irreducible_over_Q,
    resultant,
)

from fractions import Fraction


class Degenerate(ValueError):
    """Pair discriminant vanishes; no splitting type."""


class NoSeparatingProjection(RuntimeError):
    """Every coordinate change in the schedule failed to separate the
    intersection points; surfaced rather than guessed."""


class DegenerateScheme(ValueError):
    """The Pfaffian census is inconsistent with 5 distinct points."""


# ---------------------------------------------------------------------------
# ternary pairs


@dataclass(frozen=True)
class TernaryPair:
    """Doubled Gram matrices of two integral ternary quadratic forms,
    stored as 3x3 tuples; diagonals must be even."""

    MA: Tuple[Tuple[int, ...], ...]
    MB: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        for M in (self.MA, self.MB):
            for i in range(3):
                if M[i][i] % 2:
                    raise ValueError("doubled Gram needs even diagonal")
                for j in range(3):
                    if M[i][j] != M[j][i]:
                        raise ValueError("Gram matrix must be symmetric")


def pair_from_coeffs(
    qa: Sequence[int], qb: Sequence[int]
) -> TernaryPair:
    """Forms given as (a, b, c, d, e, f) for
    a x^2 + b y^2 + c z^2 + d xy + e xz + f yz."""

    def gram(q):
        a, b, c, d, e, f = q
        return ((2 * a, d, e), (d, 2 * b, f), (e, f, 2 * c))

    return TernaryPair(gram(qa), gram(qb))


def pair_from_quartic(coeffs: Sequence[int]) -> TernaryPair:
    """A pair whose four intersection points are [t^2 : t : 1] for the
    roots t of T^4 + a1 T^3 + a2 T^2 + a3 T + a4: the rational normal
    conic y^2 - xz together with x^2 + a1 xy + a2 xz + a3 yz + a4 z^2."""
    a1, a2, a3, a4 = coeffs
    return pair_from_coeffs((0, 1, 0, 0, -1, 0), (1, 0, a4, a1, a2, a3))


def _det3_linear(MA, MB, x: int) -> int:
    s = [
        [MA[i][j] * x - MB[i][j] for j in range(3)]
        for i in range(3)
    ]
    return (
        s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1])
        - s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0])
        + s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0])
    )


def resolvent_cubic(P: TernaryPair) -> BinaryCubicForm:
    """4 det(Ax - By), expanded by interpolation on det(M_A x - M_B)."""
    p0 = _det3_linear(P.MA, P.MB, 0)
    p1 = _det3_linear(P.MA, P.MB, 1)
    pm1 = _det3_linear(P.MA, P.MB, -1)
    p2 = _det3_linear(P.MA, P.MB, 2)
    c0 = p0
    even = p1 + pm1
    odd = p1 - pm1
    assert even % 2 == 0 and odd % 2 == 0
    c2 = even // 2 - c0
    rem = p2 - c0 - 4 * c2 - odd
    assert rem % 6 == 0
    c3 = rem // 6
    c1 = odd // 2 - c3
    # det(M_A x - M_B y) = 8 det(Ax - By); the resolvent is the quarter
    coeffs = []
    for v in (c3, c2, c1, c0):
        assert v % 2 == 0, "resolvent 4 det(Ax - By) must be integral"
        coeffs.append(v // 2)
    return BinaryCubicForm(*coeffs)


def pair_disc(P: TernaryPair) -> int:
    return disc_cubic(resolvent_cubic(P))


# deterministic schedule of unimodular coordinate changes; the vertex of
# the z-projection after the change G is the third column of G, so the
# vertices are kept pairwise distinct in P^2(F_p) for every p >= 5
def _schedule() -> List[Tuple[Tuple[int, ...], ...]]:
    mats = [
        ((1, 0, 0), (0, 1, 0), (0, 0, 1)),  # vertex (0,0,1)
        ((0, 0, 1), (1, 0, 0), (0, 1, 0)),  # vertex (1,0,0)
        ((1, 0, 0), (0, 0, 1), (0, 1, 0)),  # vertex (0,1,0)
    ]
    kms = [
        (0, 1), (0, 2), (0, 3), (0, 4),
        (1, 0), (1, 1), (1, 2), (1, 3), (1, 4),
        (2, 0), (2, 1), (2, 2), (2, 3),
        (3, 0), (3, 1), (3, 2),
        (4, 0),
    ]
    for k, m in kms:
        # unimodular with third column (1, k, m)
        mats.append(((0, 0, 1), (1, 0, k), (0, 1, m)))
    return mats


def _det3(G) -> int:
    return (
        G[0][0] * (G[1][1] * G[2][2] - G[1][2] * G[2][1])
        - G[0][1] * (G[1][0] * G[2][2] - G[1][2] * G[2][0])
        + G[0][2] * (G[1][0] * G[2][1] - G[1][1] * G[2][0])
    )


SCHEDULE = _schedule()
_SCHEDULE_DETS = [_det3(G) for G in SCHEDULE]
assert all(d != 0 for d in _SCHEDULE_DETS)


def _congruent(M, G):
    """G^T M G for 3x3 integer matrices."""
    MG = [
        [sum(M[i][k] * G[k][j] for k in range(3)) for j in range(3)]
        for i in range(3)
    ]
    return tuple(
        tuple(sum(G[k][i] * MG[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def _z_layers(M):
    """Split the form with doubled Gram M as az z^2 + (bx x + by y) z +
    (cxx x^2 + cxy xy + cyy y^2); all integers."""
    az = M[2][2] // 2
    bx, by = M[0][2], M[1][2]
    cxx, cxy, cyy = M[0][0] // 2, M[0][1], M[1][1] // 2
    return az, (bx, by), (cxx, cxy, cyy)


def _binform_mul(u, v):
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            out[i + j] += a * b
    return out


def _binform_sub(u, v):
    n = max(len(u), len(v))
    return [
        (u[i] if i < len(u) else 0) - (v[i] if i < len(v) else 0)
        for i in range(n)
    ]


def _z_resultant_quartic(MA, MB) -> List[int]:
    """Resultant in z of the two forms, as a degree-4 binary form in
    (x, y), coefficients listed from x^4 down to y^4."""
    a1, (b1x, b1y), c1 = _z_layers(MA)
    a2, (b2x, b2y), c2 = _z_layers(MB)
    # all arithmetic on binary-form coefficient lists in (x, y),
    # descending powers of x
    b1 = [b1x, b1y]
    b2 = [b2x, b2y]
    ac = _binform_sub([a1 * w for w in c2], [a2 * w for w in c1])
    ab = [a1 * b2x - a2 * b1x, a1 * b2y - a2 * b1y]
    bc = _binform_sub(_binform_mul(b1, c2), _binform_mul(b2, c1))
    res = _binform_sub(_binform_mul(ac, ac), _binform_mul(ab, bc))
    assert len(res) == 5
    return res


def _binary_form_type_mod_p(coeffs: List[int], degree: int, p: int):
    """Projective factorization multiset of a binary form mod p given by
    descending coefficients; returns list of (multiplicity, factor degree)
    including the point at infinity when the leading coefficients vanish."""
    cs = [c % p for c in coeffs]
    lead_drop = 0
    while cs and cs[0] == 0:
        cs.pop(0)
        lead_drop += 1
    pairs = []
    if lead_drop:
        pairs.append((lead_drop, 1))
    if not cs:
        return None  # identically zero form
    deg = len(cs) - 1
    if deg > 0:
        inv = pow(cs[0], -1, p)
        monic = [c * inv % p for c in cs]
        poly = MonicPoly(deg, tuple(monic[1:]))
        for g, mult in factor_mod_p(poly, p).factors:
            pairs.append((mult, len(g) - 1))
    return pairs


def splitting_symbol_pair(P: TernaryPair, p: int) -> Tuple[int, ...]:
    """Frobenius orbit partition of the four intersection points mod p,
    for odd p not dividing the pair discriminant."""
    if p == 2:
        raise ValueError("pair splitting implemented for odd p")
    if pair_disc(P) % p == 0:
        raise Degenerate(f"pair discriminant vanishes mod {p}")
    for G, detG in zip(SCHEDULE, _SCHEDULE_DETS):
        if detG % p == 0:
            continue
        MA = _congruent(P.MA, G)
        MB = _congruent(P.MB, G)
        if MA[2][2] // 2 % p == 0 and MB[2][2] // 2 % p == 0:
            # projection vertex lies on both conics
            continue
        quartic = _z_resultant_quartic(MA, MB)
        pairs = _binary_form_type_mod_p(quartic, 4, p)
        if pairs is None:
            continue
        if sum(e * f for e, f in pairs) != 4:
            continue
        if any(e > 1 for e, f in pairs):
            continue
        return tuple(sorted((f for _, f in pairs), reverse=True))
    raise NoSeparatingProjection(str(P))


# ---------------------------------------------------------------------------
# independent census oracle over F_p, F_{p^2}


def _p2_points(p: int) -> List[Tuple[int, int, int]]:
    pts = [(1, y, z) for y in range(p) for z in range(p)]
    pts += [(0, 1, z) for z in range(p)]
    pts.append((0, 0, 1))
    return pts


def _fp2_elements(p: int):
    """Elements of F_{p^2} = F_p[u]/(u^2 - nr) as pairs (s, t)."""
    nr = next(
        n for n in range(2, p) if pow(n, (p - 1) // 2, p) == p - 1
    )
    return nr, [(s, t) for s in range(p) for t in range(p)]


def _p2_points_quadratic(p: int):
    nr, elems = _fp2_elements(p)
    one = (1, 0)
    zero = (0, 0)
    pts = [(one, e1, e2) for e1 in elems for e2 in elems]
    pts += [(zero, one, e) for e in elems]
    pts.append((zero, zero, one))
    return nr, pts


def _form_value_fp2(q, v, p, nr):
    """Evaluate coefficients (a,b,c,d,e,f) at v with F_{p^2} coords."""

    def mul(u, w):
        return (
            (u[0] * w[0] + nr * u[1] * w[1]) % p,
            (u[0] * w[1] + u[1] * w[0]) % p,
        )

    def add(u, w):
        return ((u[0] + w[0]) % p, (u[1] + w[1]) % p)

    def smul(s, u):
        return (s * u[0] % p, s * u[1] % p)

    x, y, z = v
    a, b, c, d, e, f = q
    out = (0, 0)
    out = add(out, smul(a, mul(x, x)))
    out = add(out, smul(b, mul(y, y)))
    out = add(out, smul(c, mul(z, z)))
    out = add(out, smul(d, mul(x, y)))
    out = add(out, smul(e, mul(x, z)))
    out = add(out, smul(f, mul(y, z)))
    return out


def _coeffs_from_gram(M, p: Optional[int] = None):
    a, b, c = M[0][0] // 2, M[1][1] // 2, M[2][2] // 2
    d, e, f = M[0][1], M[0][2], M[1][2]
    out = (a, b, c, d, e, f)
    return out if p is None else tuple(v % p for v in out)


_TYPE_FROM_CENSUS = {
    (4, 4): (1, 1, 1, 1),
    (2, 4): (2, 1, 1),
    (0, 4): (2, 2),
    (1, 1): (3, 1),
    (0, 0): (4,),
}


def census_pair_type(P: TernaryPair, p: int) -> Tuple[int, ...]:
    """Splitting type by direct point counts over F_p and F_{p^2}; the
    slow oracle for splitting_symbol_pair."""
    if pair_disc(P) % p == 0:
        raise Degenerate(f"pair discriminant vanishes mod {p}")
    qa = _coeffs_from_gram(P.MA, p)
    qb = _coeffs_from_gram(P.MB, p)
    n1 = 0
    for v in _p2_points(p):
        x, y, z = v
        va = (
            qa[0] * x * x + qa[1] * y * y + qa[2] * z * z
            + qa[3] * x * y + qa[4] * x * z + qa[5] * y * z
        ) % p
        vb = (
            qb[0] * x * x + qb[1] * y * y + qb[2] * z * z
            + qb[3] * x * y + qb[4] * x * z + qb[5] * y * z
        ) % p
        if va == 0 and vb == 0:
            n1 += 1
    nr, pts2 = _p2_points_quadratic(p)
    n2 = 0
    for v in pts2:
        if _form_value_fp2(qa, v, p, nr) == (0, 0) and _form_value_fp2(
            qb, v, p, nr
        ) == (0, 0):
            n2 += 1
    key = (n1, n2)
    if key not in _TYPE_FROM_CENSUS:
        raise Degenerate(f"census pattern {key} not a nondegenerate type")
    return _TYPE_FROM_CENSUS[key]


# ---------------------------------------------------------------------------
# full F_p enumeration of pairs (criterion: exact |tau|/24 ratios)

QUARTIC_TYPES = ((1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,))
QUARTIC_CLASS_SIZE = {
    (1, 1, 1, 1): 1,
    (2, 1, 1): 6,
    (2, 2): 3,
    (3, 1): 8,
    (4,): 6,
}


def _all_form_coeffs(p: int) -> np.ndarray:
    """(p^6, 6) array of all ternary form coefficient vectors mod p."""
    grids = np.meshgrid(*([np.arange(p)] * 6), indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=1).astype(np.int64)


def _monomial_matrix_fp(p: int) -> np.ndarray:
    pts = _p2_points(p)
    out = np.zeros((6, len(pts)), dtype=np.int64)
    for k, (x, y, z) in enumerate(pts):
        out[:, k] = [
            x * x % p, y * y % p, z * z % p,
            x * y % p, x * z % p, y * z % p,
        ]
    return out


def _monomial_matrix_fp2(p: int):
    nr, pts = _p2_points_quadratic(p)

    def mul(u, w):
        return (
            (u[0] * w[0] + nr * u[1] * w[1]) % p,
            (u[0] * w[1] + u[1] * w[0]) % p,
        )

    re = np.zeros((6, len(pts)), dtype=np.int64)
    im = np.zeros((6, len(pts)), dtype=np.int64)
    for k, (x, y, z) in enumerate(pts):
        monos = [mul(x, x), mul(y, y), mul(z, z), mul(x, y), mul(x, z), mul(y, z)]
        re[:, k] = [m[0] for m in monos]
        im[:, k] = [m[1] for m in monos]
    return re, im


def _resolvent_coeff_arrays(FA: np.ndarray, FB: np.ndarray):
    """Resolvent cubic coefficients for every (row of FA) x (row of FB)
    pair of coefficient vectors; returns four (len(FA), len(FB)) arrays
    ordered x^3 .. y^3.  Entries must be small enough for int64."""

    def gram_entries(F):
        a, b, c, d, e, f = (F[:, k] for k in range(6))
        return (2 * a, 2 * b, 2 * c, d, e, f)

    ga = [v[:, None] for v in gram_entries(FA)]
    gb = [v[None, :] for v in gram_entries(FB)]

    def det_at(x):
        s00 = ga[0] * x - gb[0]
        s11 = ga[1] * x - gb[1]
        s22 = ga[2] * x - gb[2]
        s01 = ga[3] * x - gb[3]
        s02 = ga[4] * x - gb[4]
        s12 = ga[5] * x - gb[5]
        return (
            s00 * (s11 * s22 - s12 * s12)
            - s01 * (s01 * s22 - s12 * s02)
            + s02 * (s01 * s12 - s11 * s02)
        )

    p0 = det_at(0)
    p1 = det_at(1)
    pm1 = det_at(-1)
    p2 = det_at(2)
    c0 = p0
    c2 = (p1 + pm1) // 2 - c0
    odd = (p1 - pm1) // 2
    c3 = (p2 - c0 - 4 * c2 - (p1 - pm1)) // 6
    c1 = odd - c3
    return (c3 // 2, -c2 // 2, c1 // 2, -c0 // 2)


def _cubic_disc_arrays(a, b, c, d):
    return (
        b * b * c * c
        + 18 * a * b * c * d
        - 4 * a * c * c * c
        - 4 * b * b * b * d
        - 27 * a * a * d * d
    )


def brute_force_pair_density(p: int, chunk: int = 256) -> Dict[object, int]:
    """Exact counts over all p^12 pairs of ternary forms mod p: one count
    per unramified quartic type plus the degenerate bucket."""
    if p not in (3, 5):
        raise ValueError("full enumeration supported for p in {3, 5}")
    forms = _all_form_coeffs(p)
    nf = forms.shape[0]
    m1 = _monomial_matrix_fp(p)
    m2re, m2im = _monomial_matrix_fp2(p)
    z1 = ((forms @ m1) % p == 0)
    vre = (forms @ m2re) % p
    vim = (forms @ m2im) % p
    z2 = (vre == 0) & (vim == 0)
    z1f = z1.astype(np.float32)
    z2f = z2.astype(np.float32)
    counts: Dict[object, int] = {tau: 0 for tau in QUARTIC_TYPES}
    counts["degenerate"] = 0
    for lo in range(0, nf, chunk):
        hi = min(lo + chunk, nf)
        c3, c2, c1, c0 = _resolvent_coeff_arrays(forms[lo:hi], forms)
        disc = _cubic_disc_arrays(c3, c2, c1, c0) % p
        n1 = np.rint(z1f[lo:hi] @ z1f.T).astype(np.int64)
        n2 = np.rint(z2f[lo:hi] @ z2f.T).astype(np.int64)
        degen = disc == 0
        counts["degenerate"] += int(degen.sum())
        live = ~degen
        for key, tau in _TYPE_FROM_CENSUS.items():
            mask = live & (n1 == key[0]) & (n2 == key[1])
            counts[tau] += int(mask.sum())
        covered = degen.sum()
        for key in _TYPE_FROM_CENSUS:
            covered += (live & (n1 == key[0]) & (n2 == key[1])).sum()
        assert int(covered) == (hi - lo) * nf, "unclassified census pattern"
    assert sum(counts.values()) == p**12
    return counts


# ---------------------------------------------------------------------------
# Table 1 and quartic Galois classification

_QUARTIC_TO_CUBIC = {
    (1, 1, 1, 1): (1, 1, 1),
    (2, 2): (1, 1, 1),
    (2, 1, 1): (2, 1),
    (4,): (2, 1),
    (3, 1): (3,),
}


def quartic_to_cubic_splitting(tau4: Tuple[int, ...]) -> Tuple[int, ...]:
    """Splitting type in the cubic resolvent ring from the quartic type."""
    key = tuple(sorted((int(t) for t in tau4), reverse=True))
    if key not in _QUARTIC_TO_CUBIC:
        raise ValueError(f"not an unramified quartic type: {tau4}")
    return _QUARTIC_TO_CUBIC[key]


def _rational_square(x: Fraction) -> bool:
    if x < 0:
        return False
    num, den = x.numerator, x.denominator
    rn = int(num ** 0.5)
    while rn * rn < num:
        rn += 1
    while rn * rn > num:
        rn -= 1
    rd = int(den ** 0.5)
    while rd * rd < den:
        rd += 1
    while rd * rd > den:
        rd -= 1
    return rn * rn == num and rd * rd == den


def _separating_quartic(P: TernaryPair) -> List[int]:
    """Integer quartic with distinct roots whose root field structure is
    that of the four intersection points, via a separating projection."""
    for G in SCHEDULE:
        MA = _congruent(P.MA, G)
        MB = _congruent(P.MB, G)
        quartic = _z_resultant_quartic(MA, MB)
        if quartic[0] == 0:
            continue
        content = 0
        for c in quartic:
            content = _gcd(content, abs(c))
        if quartic[0] < 0:
            content = -content
        quartic = [c // content for c in quartic]
        asc = quartic[::-1]
        der = [i * asc[i] for i in range(1, 5)]
        if resultant(asc, der) == 0:
            continue
        return quartic
    raise NoSeparatingProjection(str(P))


def classify_quartic_group(P: TernaryPair) -> str:
    """Galois label of the quartic algebra of a nondegenerate pair:
    S4, A4, D4, C4, V4, or reducible."""
    delta = pair_disc(P)
    if delta == 0:
        raise ZeroDiscriminantError("pair discriminant is zero")
    quartic = _separating_quartic(P)
    lead = quartic[0]
    # scale roots by lead to get a monic integer model
    monic = [
        quartic[i] * lead ** (i - 1) if i >= 1 else 1 for i in range(5)
    ]
    g = MonicPoly(4, tuple(monic[1:]))
    if not is_irreducible_over_Q(g):
        return "reducible"
    a1, a2, a3, a4 = g.coeffs
    # depress: T -> T - a1/4
    s = Fraction(a1, 4)
    pp = Fraction(a2) - 6 * s * s
    qq = Fraction(a3) - 2 * a2 * s + 8 * s**3
    rr = Fraction(a4) - a3 * s + a2 * s * s - 3 * s**4
    dd = Fraction(discriminant(g))
    # resolvent cubic y^3 - pp y^2 - 4 rr y + (4 pp rr - qq^2)
    roots = _rational_cubic_roots(-pp, -4 * rr, 4 * pp * rr - qq * qq)
    if len(roots) == 0:
        return "A4" if _rational_square(dd) else "S4"
    if len(roots) == 3:
        return "V4"
    beta = roots[0]
    for disc_k in (beta * beta - 4 * rr, beta - pp):
        if disc_k != 0:
            return "C4" if _rational_square(dd * disc_k) else "D4"
    raise NoSeparatingProjection("degenerate resolvent structure")


def _integer_roots_monic(coeffs: List[int]) -> List[int]:
    """Integer roots of a monic integer polynomial given by descending
    coefficients after the leading 1; rational roots are integral here."""
    if not coeffs:
        return []
    if coeffs[-1] == 0:
        return sorted(set([0] + _integer_roots_monic(coeffs[:-1])))

    def value(r):
        acc = 1
        for c in coeffs:
            acc = acc * r + c
        return acc

    roots = []
    d = 1
    a0 = abs(coeffs[-1])
    while d * d <= a0:
        if a0 % d == 0:
            for r in {d, -d, a0 // d, -(a0 // d)}:
                if value(r) == 0:
                    roots.append(r)
        d += 1
    return sorted(set(roots))


def _rational_cubic_roots(b: Fraction, c: Fraction, d: Fraction):
    """Rational roots of y^3 + b y^2 + c y + d (candidates via the
    rational root theorem on a denominator-cleared monic model)."""
    den = 1
    for v in (b, c, d):
        g = _gcd(den, v.denominator)
        den = den * v.denominator // g
    # y = z / den turns the cubic into a monic integer cubic in z
    bb = int(b * den)
    cc = int(c * den * den)
    dd = int(d * den**3)
    roots = _integer_roots_monic([bb, cc, dd])
    return sorted(Fraction(r, den) for r in roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# alternating quadruples and quintic census

MONOMIALS4 = (
    (0, 0), (1, 1), (2, 2), (3, 3),
    (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
)


@dataclass(frozen=True)
class AlternatingQuadruple:
    """Four alternating 5x5 matrices with entries in F_2 (or Z), stored
    as tuples of upper-triangle entries m[i][j] for i < j in row order."""

    A: Tuple[int, ...]
    B: Tuple[int, ...]
    C: Tuple[int, ...]
    D: Tuple[int, ...]

    def __post_init__(self):
        for M in (self.A, self.B, self.C, self.D):
            if len(M) != 10:
                raise ValueError("need 10 upper-triangle entries")


_UPPER_INDEX = {}
for _k, (_i, _j) in enumerate(
    [(i, j) for i in range(5) for j in range(i + 1, 5)]
):
    _UPPER_INDEX[(_i, _j)] = _k


def _entry_linear(Q: AlternatingQuadruple, i: int, j: int):
    """Linear form (in x,y,z,t) at matrix position (i, j), with sign."""
    if i == j:
        return (0, 0, 0, 0)
    sign = 1 if i < j else -1
    k = _UPPER_INDEX[(min(i, j), max(i, j))]
    return tuple(sign * M[k] for M in (Q.A, Q.B, Q.C, Q.D))


def _linform_mul(u, v):
    """Product of two linear forms in 4 variables, as coefficients over
    MONOMIALS4."""
    out = [0] * 10
    for k, (i, j) in enumerate(MONOMIALS4):
        if i == j:
            out[k] = u[i] * v[i]
        else:
            out[k] = u[i] * v[j] + u[j] * v[i]
    return out


def pfaffian_quadrics(Q: AlternatingQuadruple) -> List[Tuple[int, ...]]:
    """The five principal 4x4 sub-Pfaffians of Ax + By + Cz + Dt, each a
    quadratic form in (x, y, z, t) given by coefficients over MONOMIALS4
    in the order x^2, y^2, z^2, t^2, xy, xz, xt, yz, yt, zt."""
    out = []
    for drop in range(5):
        keep = [i for i in range(5) if i != drop]
        j0, j1, j2, j3 = keep
        terms = (
            (1, (j0, j1), (j2, j3)),
            (-1, (j0, j2), (j1, j3)),
            (1, (j0, j3), (j1, j2)),
        )
        acc = [0] * 10
        for sign, (a, b), (c, d) in terms:
            prod = _linform_mul(_entry_linear(Q, a, b), _entry_linear(Q, c, d))
            for k in range(10):
                acc[k] += sign * prod[k]
        out.append(tuple(acc))
    return out


def pfaffian4(m: Sequence[Sequence[int]]) -> int:
    """Pfaffian of a 4x4 alternating matrix."""
    return m[0][1] * m[2][3] - m[0][2] * m[1][3] + m[0][3] * m[1][2]


class _GF2k:
    """Arithmetic tables for F_{2^k}, k <= 5, with fixed irreducible
    reduction polynomials."""

    POLVS = {1: 0b11, 2: 0b111, 3: 0b1011, 4: 0b10011, 5: 0b100101}

    def __init__(self, k: int):
        self.k = k
        self.size = 1 << k
        poly = self.POLVS[k]
        exp = [1]
        # x is a generator for these reduction polynomials except k = 1
        g = 2 if k > 1 else 1
        seen = {1}
        while len(exp) < self.size - 1:
            n = self._clmul_mod(exp[-1], g, poly, k)
            exp.append(n)
            seen.add(n)
        assert len(seen) == self.size - 1, f"generator failed for k={k}"
        self.EXP = np.array(exp + exp, dtype=np.int64)
        log = np.zeros(self.size, dtype=np.int64)
        for i, v in enumerate(exp):
            log[v] = i
        self.LOG = log

    @staticmethod
    def _clmul_mod(a: int, b: int, poly: int, k: int) -> int:
        out = 0
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if a >> k & 1:
                a ^= poly
        return out

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = self.EXP[self.LOG[a] + self.LOG[b]]
        return np.where((a == 0) | (b == 0), 0, out)


class QuinticCensus:
    """Shared point tables for P^3(F_{2^k}), k = 1..5: for each level the
    10 monomial product arrays over all projective points."""

    def __init__(self):
        self.levels = {}
        for k in range(1, 6):
            gf = _GF2k(k)
            q = gf.size
            coords = []
            for lead in range(4):
                shape = [1] * 4
                free = list(range(lead + 1, 4))
                grids = np.meshgrid(
                    *[np.arange(q) for _ in free], indexing="ij"
                ) if free else []
                npts = q ** len(free)
                block = np.zeros((4, npts), dtype=np.int64)
                block[lead] = 1
                for gi, axis in enumerate(free):
                    block[axis] = grids[gi].reshape(-1)
                coords.append(block)
            pts = np.concatenate(coords, axis=1)
            prods = np.stack(
                [gf.mul(pts[i], pts[j]) for i, j in MONOMIALS4]
            )
            self.levels[k] = prods

    def counts(self, quadrics: Sequence[Sequence[int]]) -> List[int]:
        """Number of common zeros in P^3(F_{2^k}) for k = 1..5; the
        quadric coefficients are reduced mod 2."""
        out = []
        for k in range(1, 6):
            prods = self.levels[k]
            alive = np.ones(prods.shape[1], dtype=bool)
            for quad in quadrics:
                val = np.zeros(prods.shape[1], dtype=np.int64)
                for m in range(10):
                    if quad[m] % 2:
                        val ^= prods[m]
                alive &= val == 0
                if not alive.any():
                    break
            out.append(int(alive.sum()))
        return out


_CENSUS: Optional[QuinticCensus] = None


def _census() -> QuinticCensus:
    global _CENSUS
    if _CENSUS is None:
        _CENSUS = QuinticCensus()
    return _CENSUS


def splitting_symbol_quintic(Q: AlternatingQuadruple, p: int = 2) -> Tuple[int, ...]:
    """Partition of 5 given by the Frobenius orbits on the five points
    cut out by the Pfaffian quadrics; DegenerateScheme when the census is
    inconsistent with five distinct points."""
    if p != 2:
        raise ValueError("quintic census implemented for p = 2")
    quadrics = pfaffian_quadrics(Q)
    counts = _census().counts(quadrics)
    new = {}
    for k in range(1, 6):
        nk = counts[k - 1]
        for d in range(1, k):
            if k % d == 0:
                nk -= new.get(d, 0)
        if nk < 0 or nk % k:
            raise DegenerateScheme(f"census {counts}")
        new[k] = nk
    if sum(new.values()) != 5:
        raise DegenerateScheme(f"census {counts}")
    parts = []
    for k in range(5, 0, -1):
        parts.extend([k] * (new[k] // k))
    return tuple(parts)


def sample_quadruple(seed: object, index: int) -> AlternatingQuadruple:
    """Counter-based reproducible sample: quadruple i is independent of
    how many other samples were drawn."""
    rng = random.Random(f"{seed}:{index}")
    mats = [tuple(rng.randrange(2) for _ in range(10)) for _ in range(4)]
    return AlternatingQuadruple(*mats)


QUINTIC_CLASS_SIZE = {
    (1, 1, 1, 1, 1): 1,
    (2, 1, 1, 1): 10,
    (2, 2, 1): 15,
    (3, 1, 1): 20,
    (3, 2): 20,
    (4, 1): 30,
    (5,): 24,
}


def quintic_splitting_survey(
    samples: int, seed: object = 42, p: int = 2
) -> Dict[object, int]:
    """Monte Carlo splitting survey: keeps drawing counter-indexed
    quadruples until `samples` nondegenerate ones are classified."""
    counts: Dict[object, int] = {tau: 0 for tau in QUINTIC_CLASS_SIZE}
    counts["degenerate"] = 0
    good = 0
    index = 0
    while good < samples:
        quad = sample_quadruple(seed, index)
        index += 1
        try:
            tau = splitting_symbol_quintic(quad, p)
        except DegenerateScheme:
            counts["degenerate"] += 1
            continue
        counts[tau] += 1
        good += 1
    counts["attempts"] = index
    return counts
