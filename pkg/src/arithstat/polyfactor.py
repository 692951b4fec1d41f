"""Monic integer polynomials: factorization mod p, splitting symbols,
maximality at p, and exact counts of factorization types over F_p.

Polynomials over F_p are coefficient lists in ascending order.  All
factorization paths are deterministic; for the degrees used here
(n <= 5) the equal-degree stage walks a fixed schedule of test
elements, so repeated runs agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .primes import mobius

# ---------------------------------------------------------------------------
# F_p polynomial arithmetic (ascending coefficient lists)


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def pf_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def pf_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def pf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] = (out[i + j] + ca * cb) % p
    return _trim(out)


def pf_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return [], _trim(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * (da - db + 1)
    for i in range(da, db - 1, -1):
        c = a[i] % p
        if c == 0:
            continue
        f = c * inv % p
        q[i - db] = f
        for j in range(db + 1):
            a[i - db + j] = (a[i - db + j] - f * b[j]) % p
    return _trim(q), _trim(a)


def pf_mod(a, b, p):
    return pf_divmod(a, b, p)[1]


def pf_gcd(a, b, p):
    a, b = [c % p for c in a], [c % p for c in b]
    _trim(a), _trim(b)
    while b:
        a, b = b, pf_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def pf_monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def pf_deriv(a, p):
    return _trim([(i * c) % p for i, c in enumerate(a)][1:])


def pf_pow_mod(a, e, mod, p):
    r = [1]
    a = pf_mod(a, mod, p)
    while e:
        if e & 1:
            r = pf_mod(pf_mul(r, a, p), mod, p)
        a = pf_mod(pf_mul(a, a, p), mod, p)
        e >>= 1
    return r


def pf_eval(a, x, p):
    r = 0
    for c in reversed(a):
        r = (r * x + c) % p
    return r


def pf_pth_root(a, p):
    """p-th root of a polynomial of the form g(x^p) over F_p."""
    out = []
    for i, c in enumerate(a):
        if i % p == 0:
            out.append(c)
        elif c != 0:
            raise ValueError("not a p-th power")
    return _trim(out)


# ---------------------------------------------------------------------------
# squarefree decomposition, radical, distinct/equal degree factorization


def squarefree_decomposition(f, p):
    """Return {multiplicity: factor} with f = lc * prod g_m^m, the g_m
    squarefree and pairwise coprime.  Correct in characteristic p."""
    f = pf_monic(f, p)
    out: dict = {}
    e = 1
    while len(f) > 1:
        fp = pf_deriv(f, p)
        if not fp:
            f = pf_pth_root(f, p)
            e *= p
            continue
        c = pf_gcd(f, fp, p)
        w = pf_divmod(f, c, p)[0]
        i = 1
        while len(w) > 1:
            y = pf_gcd(w, c, p)
            z = pf_divmod(w, y, p)[0]
            if len(z) > 1:
                key = e * i
                out[key] = pf_mul(out[key], z, p) if key in out else z
            w = y
            c = pf_divmod(c, y, p)[0]
            i += 1
        if len(c) > 1:
            f = pf_pth_root(c, p)
            e *= p
        else:
            break
    return out


def pf_radical(f, p):
    """Product of the distinct irreducible factors of f."""
    rad = [1]
    for g in squarefree_decomposition(f, p).values():
        rad = pf_mul(rad, g, p)
    return rad


def distinct_degree_split(f, p):
    """For squarefree monic f, return list of (d, product of irreducible
    factors of degree d)."""
    out = []
    h = [0, 1]  # x
    g = list(f)
    d = 0
    while len(g) - 1 > 2 * (d + 1) - 2:
        d += 1
        h = pf_pow_mod(h, p, g, p)
        gd = pf_gcd(pf_sub(h, [0, 1], p), g, p)
        if len(gd) > 1:
            out.append((d, gd))
            g = pf_divmod(g, gd, p)[0]
            h = pf_mod(h, g, p)
        if len(g) == 1:
            break
    if len(g) > 1:
        out.append((len(g) - 1, g))
    return out


def _int_to_poly(k, p):
    out = []
    while k:
        out.append(k % p)
        k //= p
    return out


def _edf(g, d, p):
    """Split the squarefree monic g, a product of irreducibles all of
    degree d, deterministically."""
    if len(g) - 1 == d:
        return [g]
    counter = 1
    while True:
        counter += 1
        v = _int_to_poly(counter, p)
        if p == 2:
            # trace map v + v^2 + ... + v^(2^(d-1))
            t = pf_mod(v, g, p)
            acc = t
            for _ in range(d - 1):
                t = pf_mod(pf_mul(t, t, p), g, p)
                acc = pf_add(acc, t, p)
            s = pf_gcd(acc, g, p)
        else:
            w = pf_pow_mod(v, (p**d - 1) // 2, g, p)
            s = pf_gcd(pf_sub(w, [1], p), g, p)
        if 0 < len(s) - 1 < len(g) - 1:
            other = pf_divmod(g, s, p)[0]
            return _edf(s, d, p) + _edf(other, d, p)
        if counter > 4 * p ** (2 * d) + 16:
            raise ArithmeticError("equal-degree splitting failed")


def _root_search_split(g, p):
    """Fast path: peel roots off by exhaustive search (small p)."""
    roots = [r for r in range(p) if pf_eval(g, r, p) == 0]
    rest = g
    for r in roots:
        rest = pf_divmod(rest, [(-r) % p, 1], p)[0]
    return roots, rest


def factor_squarefree(f, p):
    """Irreducible factors of a squarefree monic f, deterministic."""
    out = []
    g = f
    if p < 10**4 and len(f) - 1 <= 5:
        roots, g = _root_search_split(f, p)
        out.extend([(-r) % p, 1] for r in sorted(roots))
    for d, gd in distinct_degree_split(g, p):
        if len(gd) - 1 == d:
            out.append(gd)
        else:
            out.extend(_edf(gd, d, p))
    return sorted(out, key=lambda q: (len(q), list(reversed(q))))


# ---------------------------------------------------------------------------
# monic integer polynomials


@dataclass(frozen=True)
class MonicPoly:
    """T^n + a_1 T^(n-1) + ... + a_n with integer coefficients."""

    n: int
    coeffs: tuple  # (a_1, ..., a_n)

    def __post_init__(self):
        if self.n < 1 or len(self.coeffs) != self.n:
            raise ValueError("need n coefficients a_1..a_n")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def ascending(self):
        """Coefficient list c_0..c_n ascending, c_n = 1."""
        return list(reversed(self.coeffs)) + [1]

    def __call__(self, x: int) -> int:
        r = 1
        for c in self.coeffs:
            r = r * x + c
        return r

    def derivative_ascending(self):
        asc = self.ascending()
        return [i * c for i, c in enumerate(asc)][1:]

    def __str__(self):
        terms = ["T^%d" % self.n]
        for i, c in enumerate(self.coeffs):
            if c:
                d = self.n - 1 - i
                terms.append(("%+d" % c) + ("" if d == 0 else f"*T^{d}"))
        return "".join(terms)


def _bareiss_det(mat):
    """Fraction-free determinant of an integer matrix."""
    m = [row[:] for row in mat]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(a, b):
    """Resultant of two integer polynomials (ascending coefficients)."""
    da, db = len(a) - 1, len(b) - 1
    if da < 0 or db < 0:
        return 0
    size = da + db
    mat = []
    for i in range(db):
        row = [0] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        mat.append(row)
    for i in range(da):
        row = [0] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        mat.append(row)
    return _bareiss_det(mat)


def discriminant(f: MonicPoly) -> int:
    """Exact integer discriminant via the resultant with the derivative."""
    asc = f.ascending()
    der = f.derivative_ascending()
    res = resultant(asc, der)
    sign = -1 if (f.n * (f.n - 1) // 2) % 2 else 1
    return sign * res


def height_less_than(f: MonicPoly, x) -> bool:
    """h(f) < x where h(f) = max_i |a_i|^(n(n-1)/i), compared exactly as
    |a_i|^(n(n-1)) < x^i."""
    xf = Fraction(x)
    e = f.n * (f.n - 1)
    for i, a in enumerate(f.coeffs, start=1):
        if Fraction(abs(a)) ** e >= xf**i:
            return False
    return True


# ---------------------------------------------------------------------------
# factorization over F_p and splitting symbols


@dataclass(frozen=True)
class FpFactorization:
    p: int
    factors: tuple  # tuple of (coeff tuple ascending, multiplicity)

    def symbol(self) -> "SplittingSymbol":
        return SplittingSymbol.from_pairs(
            [(m, len(g) - 1) for g, m in self.factors]
        )


def factor_mod_p(f: MonicPoly, p: int) -> FpFactorization:
    """Complete factorization of f mod p, deterministic."""
    fp = [c % p for c in f.ascending()]
    out = []
    for mult, part in sorted(squarefree_decomposition(fp, p).items()):
        for g in factor_squarefree(part, p):
            out.append((tuple(g), mult))
    out.sort(key=lambda t: (len(t[0]), t[1], tuple(reversed(t[0]))))
    prod = [1]
    for g, m in out:
        for _ in range(m):
            prod = pf_mul(prod, list(g), p)
    assert prod == [c % p for c in f.ascending()], "factor product check"
    return FpFactorization(p, tuple(out))


@dataclass(frozen=True)
class SplittingSymbol:
    """Multiset of (e, f) pairs: ramification index and residue degree of
    the primes above p.  Canonical order: (f, e) descending."""

    pairs: tuple

    def __post_init__(self):
        ps = tuple(
            sorted(((int(e), int(f)) for e, f in self.pairs),
                   key=lambda t: (t[1], t[0]), reverse=True)
        )
        if any(e < 1 or f < 1 for e, f in ps):
            raise ValueError("e and f must be positive")
        object.__setattr__(self, "pairs", ps)

    @classmethod
    def from_pairs(cls, pairs):
        return cls(tuple(pairs))

    @classmethod
    def from_cycle_type(cls, tau):
        return cls(tuple((1, f) for f in tau))

    @property
    def degree(self) -> int:
        return sum(e * f for e, f in self.pairs)

    @property
    def unramified(self) -> bool:
        return all(e == 1 for e, f in self.pairs)

    def cycle_type(self) -> tuple:
        if not self.unramified:
            raise ValueError("ramified symbol has no cycle type")
        return tuple(sorted((f for _, f in self.pairs), reverse=True))

    def to_text(self) -> str:
        return "+".join(f"{e}:{f}" for e, f in self.pairs)

    @classmethod
    def from_text(cls, s: str) -> "SplittingSymbol":
        pairs = []
        for part in s.split("+"):
            e, f = part.split(":")
            pairs.append((int(e), int(f)))
        return cls(tuple(pairs))


def all_splitting_symbols(n: int):
    """Every splitting symbol of total degree n."""
    pairs = [(e, f) for e in range(1, n + 1) for f in range(1, n + 1)
             if e * f <= n]
    pairs.sort(key=lambda t: (t[1], t[0]), reverse=True)
    out = []

    def rec(rest, idx, cur):
        if rest == 0:
            out.append(SplittingSymbol(tuple(cur)))
            return
        for i in range(idx, len(pairs)):
            e, f = pairs[i]
            if e * f <= rest:
                cur.append((e, f))
                rec(rest - e * f, i, cur)
                cur.pop()

    rec(n, 0, [])
    return out


# ---------------------------------------------------------------------------
# maximality at p (Dedekind) and splitting of p


class ZeroDiscriminantError(ValueError):
    pass


def dedekind_gcd_ok(f: MonicPoly, p: int) -> bool:
    """Dedekind criterion on f mod p^2: with fbar = prod g_i^{e_i}, g the
    lifted radical, h the lifted cofactor, and F = (g h - f)/p, the ring
    Z[T]/f is maximal at p iff gcd(Fbar, gbar, hbar) = 1."""
    asc = f.ascending()
    fbar = [c % p for c in asc]
    gbar = pf_radical(fbar, p)
    hbar = pf_divmod(fbar, gbar, p)[0]
    if len(hbar) == 1:
        return True  # fbar squarefree
    g = [c % p for c in gbar]
    h = [c % p for c in hbar]
    gh = [0] * (len(g) + len(h) - 1)
    for i, ci in enumerate(g):
        for j, cj in enumerate(h):
            gh[i + j] += ci * cj
    diff = [(gh[i] if i < len(gh) else 0) - asc[i] for i in range(len(asc))]
    assert all(d % p == 0 for d in diff)
    big_f = [(d // p) % p for d in diff]
    _trim(big_f)
    g1 = pf_gcd(big_f, gbar, p)
    g2 = pf_gcd(g1, hbar, p)
    return len(g2) - 1 == 0


def is_p_maximal(f: MonicPoly, p: int) -> bool:
    d = discriminant(f)
    if d == 0:
        raise ZeroDiscriminantError(str(f))
    if d % (p * p) != 0:
        return True
    return dedekind_gcd_ok(f, p)


def splitting_symbol(f: MonicPoly, p: int) -> SplittingSymbol:
    """Splitting of p in the ring cut out by f; requires p-maximality so
    that the factorization of f mod p matches the prime factorization."""
    if not is_p_maximal(f, p):
        raise ValueError(f"{f} is not maximal at {p}")
    return factor_mod_p(f, p).symbol()


def maximality_proportion_zp2(n: int, p: int) -> Fraction:
    """Exhaustive proportion of monic degree-n polynomials over Z/p^2
    passing the Dedekind criterion (which only depends on f mod p^2)."""
    p2 = p * p
    total = p2**n
    good = 0
    coeffs = [0] * n
    while True:
        good += dedekind_gcd_ok(MonicPoly(n, tuple(coeffs)), p)
        i = n - 1
        while i >= 0:
            coeffs[i] += 1
            if coeffs[i] < p2:
                break
            coeffs[i] = 0
            i -= 1
        if i < 0:
            break
    return Fraction(good, total)


# ---------------------------------------------------------------------------
# exact counts of factorization types over F_p


def irreducible_count(p: int, k: int) -> int:
    """Number of monic irreducible polynomials of degree k over F_p."""
    s = 0
    for d in range(1, k + 1):
        if k % d == 0:
            s += mobius(d) * p ** (k // d)
    assert s % k == 0
    return s // k


def stabilizer_size(tau) -> int:
    """Order of the centralizer of a permutation of cycle type tau."""
    mult = {}
    for part in tau:
        mult[part] = mult.get(part, 0) + 1
    out = 1
    for k, m in mult.items():
        out *= k**m * math.factorial(m)
    return out


def exact_type_count(n: int, p: int, tau) -> int:
    """Exact number of squarefree monic degree-n polynomials over F_p
    whose irreducible factor degrees form the partition tau."""
    tau = tuple(sorted((int(t) for t in tau), reverse=True))
    if sum(tau) != n:
        raise ValueError("tau must be a partition of n")
    mult = {}
    for part in tau:
        mult[part] = mult.get(part, 0) + 1
    out = 1
    for k, m in mult.items():
        out *= math.comb(irreducible_count(p, k), m)
    return out


# ---------------------------------------------------------------------------
# theta coefficients and Euler factor checks


def theta_coefficient(symbol: SplittingSymbol, m: int) -> int:
    """Coefficient of the Dirichlet series -L'/L at p^m for the degree-n
    Artin factor attached to the splitting symbol: the sum of the residue
    degrees dividing m, minus one.  Valid for ramified symbols too."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return sum(f for _, f in symbol.pairs if m % f == 0) - 1


def _series_mul(a, b, prec):
    out = [Fraction(0)] * prec
    for i, ca in enumerate(a[:prec]):
        if ca == 0:
            continue
        for j, cb in enumerate(b[: prec - i]):
            out[i + j] += ca * cb
    return out


def _series_inv(a, prec):
    assert a[0] != 0
    out = [Fraction(0)] * prec
    out[0] = 1 / Fraction(a[0])
    for k in range(1, prec):
        s = Fraction(0)
        for i in range(1, min(k, len(a) - 1) + 1):
            s += Fraction(a[i]) * out[k - i]
        out[k] = -s * out[0]
    return out


def euler_factor_check(symbol: SplittingSymbol, precision: int = 20) -> bool:
    """Power-series verification that the theta coefficients are the
    logarithmic-derivative coefficients of the local Artin factor
    zeta_{K,p}(u)/zeta_p(u), and that the first three theta values obey
    the Newton relations with the Dirichlet coefficients lambda."""
    prec = max(4, min(precision, 30))
    # zeta_{K,p}(u) = prod 1/(1 - u^f), one factor per prime above p
    denom = [Fraction(1)] + [Fraction(0)] * (prec - 1)
    for _, f in symbol.pairs:
        term = [Fraction(0)] * prec
        term[0] = Fraction(1)
        if f < prec:
            term[f] = Fraction(-1)
        denom = _series_mul(denom, term, prec)
    zeta_k = _series_inv(denom, prec)
    one_minus_u = [Fraction(1), Fraction(-1)] + [Fraction(0)] * (prec - 2)
    lam = _series_mul(zeta_k, one_minus_u, prec)  # L_p(u) coefficients
    # u L'/L must reproduce theta
    lprime = [lam[k] * k for k in range(prec)]
    logder = _series_mul(lprime, _series_inv(lam, prec), prec)
    for k in range(1, prec):
        if logder[k] != theta_coefficient(symbol, k):
            return False
    t1 = theta_coefficient(symbol, 1)
    t2 = theta_coefficient(symbol, 2)
    t3 = theta_coefficient(symbol, 3)
    if t1 != lam[1]:
        return False
    if t2 != 2 * lam[2] - lam[1] ** 2:
        return False
    if t3 != 3 * lam[3] - 3 * lam[1] * lam[2] + lam[1] ** 3:
        return False
    return True


# ---------------------------------------------------------------------------
# irreducibility over Q


def _rational_roots(f: MonicPoly):
    an = f.coeffs[-1]
    if an == 0:
        return [0]
    roots = []
    d = 1
    while d * d <= abs(an):
        if an % d == 0:
            for r in {d, -d, an // d, -(an // d)}:
                if f(r) == 0:
                    roots.append(r)
        d += 1
    return sorted(set(roots))


def _divisor_pairs(n):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    full = set()
    for d in out:
        full.update({d, -d})
    return sorted(full)


def _has_quadratic_factor(f: MonicPoly) -> bool:
    """Search for a monic quadratic factor T^2 + uT + v with integer
    coefficients (degrees 4 and 5): v must divide f(0), 1 + u + v must
    divide f(1), and 1 - u + v must divide f(-1), which leaves a small
    candidate set to verify by exact division."""
    n = f.n
    asc = f.ascending()
    f0, f1, fm1 = f(0), f(1), f(-1)
    if f0 == 0 or f1 == 0 or fm1 == 0:
        return True  # a linear factor exists, so f is reducible anyway
    for v in _divisor_pairs(f0):
        for d in _divisor_pairs(f1):
            u = d - 1 - v
            w = 1 - u + v
            if w == 0 or fm1 % w:
                continue
            # synthetic division of f by T^2 + u T + v over Z
            rem = list(reversed(asc))
            for i in range(n - 1):
                c = rem[i]
                rem[i + 1] -= c * u
                rem[i + 2] -= c * v
            if rem[n - 1] == 0 and rem[n] == 0:
                return True
    return False


def is_irreducible_over_Q(f: MonicPoly) -> bool:
    """Irreducibility for degree <= 5: a mod-p irreducibility certificate
    when one exists below 100, else rational-root and bounded quadratic
    factor search (complete for n <= 5)."""
    if f.n == 1:
        return True
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
              59, 61, 67, 71, 73, 79, 83, 89, 97):
        fac = factor_mod_p(f, p)
        if len(fac.factors) == 1 and fac.factors[0][1] == 1:
            return True
    if _rational_roots(f):
        return False
    if f.n <= 3:
        return True
    if f.n > 5:
        raise ValueError("only degrees up to 5 supported")
    return not _has_quadratic_factor(f)
