"""Quadratic twist families of octic fields with quaternion symmetry.

Coprime squarefree integers a, b > 1 that pass the everywhere-local test
`padic.witt_condition` admit a pair of orthogonal three-square
decompositions, and those produce a distinguished unit theta of
M = Q(sqrt a, sqrt b) whose square root generates a degree-8 field K
with quaternion Galois group.  Scaling theta by fundamental
discriminants q coprime to ab walks through the full family of such
fields containing M.

This module builds theta from a decomposition (with a deterministic
search when none is supplied), enumerates twists with their conductors
2^alpha * r(ab)^2 * (q*)^2, classifies the splitting type of every
rational prime in each twist, exposes the trace coefficients of the
attached 2-dimensional representation for the one-level density
machinery in `lowlying`, and certifies the octic degree through the
minimal polynomial of sqrt(theta).

Splitting types are encoded as `SplittingSymbol`s on eight letters.
Unramified primes land on (1)^8, (2)^4, or (4)^2; primes dividing q
ramify tamely with e = 2; primes dividing ab ramify with e = 4; the
prime 2 is wild whenever a, b are not both 1 mod 4.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .padic import (
    BiquadraticElement,
    PrecisionError,
    embed_at_split_prime,
    legendre_symbol,
    residue_square_class,
    sqrt_in_Qp,
    witt_condition,
)
from .polyfactor import MonicPoly, SplittingSymbol
from .primes import (
    factorize,
    is_prime,
    is_squarefree,
    primes_up_to,
    squarefree_kernel,
)


class NotFound(RuntimeError):
    """The bounded decomposition search was exhausted."""


class EmbeddingDisagreement(RuntimeError):
    """Completions that must agree by Galois conjugacy did not."""


class Undecided2Adic(RuntimeError):
    """The 2-adic ramification test stayed undecided at max precision."""


SPLIT_8 = SplittingSymbol.from_cycle_type((1,) * 8)
INERT_2_4 = SplittingSymbol.from_cycle_type((2,) * 4)
INERT_4_2 = SplittingSymbol.from_cycle_type((4, 4))
RAM_E2_F1 = SplittingSymbol.from_pairs(((2, 1),) * 4)
RAM_E2_F2 = SplittingSymbol.from_pairs(((2, 2), (2, 2)))
RAM_E4_F1 = SplittingSymbol.from_pairs(((4, 1), (4, 1)))
RAM_E4_F2 = SplittingSymbol.from_pairs(((4, 2),))
RAM_WILD = SplittingSymbol.from_pairs(((8, 1),))

_RAMIFIED_SYMBOLS = frozenset(
    (RAM_E2_F1, RAM_E2_F2, RAM_E4_F1, RAM_E4_F2, RAM_WILD)
)


def theta_Q8(symbol: SplittingSymbol, k: int) -> int:
    """Trace of the k-th Frobenius power in the 2-dimensional
    representation: 2 on (1)^8, 2 * (-1)^k on (2)^4, the period-4
    pattern 0, -2, 0, 2 on (4)^2, and 0 on every ramified type (the
    central involution lies in inertia, so no invariants survive)."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if not symbol.unramified:
        if symbol in _RAMIFIED_SYMBOLS:
            return 0
        raise ValueError(f"not a quaternionic octic splitting type: {symbol}")
    shape = symbol.cycle_type()
    if shape == (1,) * 8:
        return 2
    if shape == (2,) * 4:
        return -2 if k % 2 else 2
    if shape == (4, 4):
        if k % 2:
            return 0
        return 2 if k % 4 == 0 else -2
    raise ValueError(f"not a quaternionic octic splitting type: {symbol}")


def _three_square_decompositions(a: int) -> List[Tuple[int, int, int]]:
    out = []
    for x in range(math.isqrt(a // 3) + 1):
        for y in range(x, math.isqrt((a - x * x) // 2) + 1):
            rem = a - x * x - y * y
            z = math.isqrt(rem)
            if z * z == rem and z >= y:
                out.append((x, y, z))
    return out


def orthogonal_three_squares(
    a: int, b: int, denominator_bound: int = 12
) -> Tuple[Fraction, ...]:
    """A deterministic decomposition (alpha, beta, gamma, lam, mu, nu)
    with a = alpha^2 + beta^2 + gamma^2, b = lam^2 + mu^2 + nu^2, and
    alpha*lam + beta*mu + gamma*nu = 0.

    The first triple ranges over integer decompositions of a in
    ascending order; the second is found by a bounded search over
    integer triples scaled by denominators up to `denominator_bound`.
    Raises NotFound when the search space is exhausted (the caller may
    raise the bound).
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if not witt_condition(a, b):
        raise ValueError(f"({a}, {b}) fails the local solubility condition")
    for alpha, beta, gamma in _three_square_decompositions(a):
        # gamma is the largest coordinate, hence nonzero; solve for nu
        for d in range(1, denominator_bound + 1):
            target = b * d * d
            s = math.isqrt(target)
            for x in range(-s, s + 1):
                xx = x * x
                if xx > target:
                    continue
                for y in range(-s, s + 1):
                    t = alpha * x + beta * y
                    if t % gamma:
                        continue
                    z = -(t // gamma)
                    if xx + y * y + z * z == target:
                        return (
                            Fraction(alpha),
                            Fraction(beta),
                            Fraction(gamma),
                            Fraction(x, d),
                            Fraction(y, d),
                            Fraction(z, d),
                        )
    raise NotFound(
        f"no orthogonal decomposition of ({a}, {b}) with denominator"
        f" <= {denominator_bound}; raise the bound"
    )


def _theta_from_decomposition(
    a: int, b: int, decomposition: Sequence[Fraction]
) -> BiquadraticElement:
    alpha, beta, _gamma, lam, mu, _nu = decomposition
    return BiquadraticElement.make(
        a,
        b,
        1,
        Fraction(alpha, a),
        Fraction(mu, b),
        Fraction(alpha * mu - beta * lam, a * b),
    )


@dataclass(frozen=True)
class QuaternionParams:
    """Family parameters: the base pair (a, b), an orthogonal pair of
    three-square decompositions, and the derived theta element.

    Construction validates everything: squarefree coprime a, b with the
    supported 2-adic shape, the three decomposition equations, the theta
    coordinates (1, alpha/a, mu/b, (alpha*mu - beta*lam)/(ab)), the norm
    identity down to Q(sqrt a), and nondegeneracy (four distinct
    conjugates)."""

    a: int
    b: int
    decomposition: Tuple[Fraction, ...]
    theta: Optional[BiquadraticElement] = None

    def __post_init__(self):
        a, b = self.a, self.b
        if a < 2 or b < 2:
            raise ValueError("a and b must be at least 2")
        if not (is_squarefree(a) and is_squarefree(b)):
            raise ValueError("a and b must be squarefree")
        if math.gcd(a, b) != 1:
            raise ValueError("a and b must be coprime")
        if not self.two_unramified and sorted((a % 4, b % 4)) != [2, 3]:
            # the 2-adic branch handles 2 unramified in M (both 1 mod 4)
            # or totally ramified (one even, the other 3 mod 4)
            raise ValueError(
                "unsupported 2-adic shape: need a, b = 1 mod 4 or"
                " {a, b} = {2, 3} mod 4"
            )
        if not witt_condition(a, b):
            raise ValueError(f"({a}, {b}) fails the local solubility condition")
        dec = tuple(Fraction(c) for c in self.decomposition)
        if len(dec) != 6:
            raise ValueError("decomposition needs six entries")
        object.__setattr__(self, "decomposition", dec)
        alpha, beta, gamma, lam, mu, nu = dec
        if alpha**2 + beta**2 + gamma**2 != a:
            raise ValueError("first triple does not decompose a")
        if lam**2 + mu**2 + nu**2 != b:
            raise ValueError("second triple does not decompose b")
        if alpha * lam + beta * mu + gamma * nu != 0:
            raise ValueError("triples are not orthogonal")
        want = _theta_from_decomposition(a, b, dec)
        if self.theta is None:
            object.__setattr__(self, "theta", want)
        elif self.theta != want:
            raise ValueError("theta does not match the decomposition")
        norm = self.theta.norm_to_sqrt_a()
        root = BiquadraticElement.make(a, b, nu, Fraction(alpha * nu - gamma * lam, a))
        if root.is_zero() or norm * b != root * root:
            raise ValueError("norm identity fails for this decomposition")
        conjugates = self.theta.conjugates()
        for i in range(4):
            for j in range(i + 1, 4):
                if conjugates[i] == conjugates[j]:
                    raise ValueError("degenerate theta: repeated conjugate")

    @property
    def two_unramified(self) -> bool:
        """Whether 2 is unramified in Q(sqrt a, sqrt b)."""
        return self.a % 4 == 1 and self.b % 4 == 1

    @classmethod
    def from_pair(
        cls, a: int, b: int, denominator_bound: int = 12
    ) -> "QuaternionParams":
        return cls(a, b, orthogonal_three_squares(a, b, denominator_bound))


def theta_element(params: QuaternionParams) -> BiquadraticElement:
    """The distinguished unit 1 + alpha/sqrt(a) + mu/sqrt(b) +
    (alpha*mu - beta*lam)/sqrt(ab); already validated at construction
    against the norm identity."""
    return params.theta


def is_fundamental_discriminant(q: int) -> bool:
    """Discriminants of quadratic fields, plus 1 for the identity twist."""
    if q == 1:
        return True
    if q == 0:
        return False
    if q % 4 == 1:
        return is_squarefree(abs(q))
    if q % 4 == 0:
        m = q // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


def _validate_twist(params: QuaternionParams, q: int):
    if q != 1 and not is_fundamental_discriminant(q):
        raise ValueError(f"q = {q} is not a fundamental discriminant")
    if math.gcd(q, params.a * params.b) != 1:
        raise ValueError(f"q = {q} is not coprime to ab")


# ---------------------------------------------------------------------------
# Local classification away from 2


@lru_cache(maxsize=None)
def _theta_square_character(params: QuaternionParams, p: int) -> int:
    """Square class of theta in Q_p (+1 square, -1 not) for an odd prime
    p coprime to 2ab that splits in M, with the four completions checked
    against each other."""
    for precision in (24, 48, 96):
        try:
            residues = embed_at_split_prime(params.theta, p, precision)
            verdicts = []
            for r in residues:
                t = r % p**precision
                if t == 0:
                    raise PrecisionError("zero residue")
                v = 0
                while t % p == 0:
                    t //= p
                    v += 1
                if v % 2:
                    raise EmbeddingDisagreement(
                        f"odd valuation {v} of theta at split p = {p}"
                        " contradicts the conductor shape"
                    )
                verdicts.append(residue_square_class(r, p, precision))
        except PrecisionError:
            continue
        if len(set(verdicts)) != 1:
            raise EmbeddingDisagreement(
                f"square classes of theta disagree at p = {p}: {verdicts}"
            )
        return 1 if verdicts[0] else -1
    raise PrecisionError(f"theta square class at p = {p} undecided")


def nonsquare_split_prime_witnesses(
    params: QuaternionParams, count: int = 3, pmax: int = 1000
) -> List[int]:
    """Split primes where every completion of theta is a p-adic
    nonsquare: numeric evidence that theta is not a square in M."""
    ab = params.a * params.b
    out = []
    for p in primes_up_to(pmax):
        if p == 2 or ab % p == 0:
            continue
        if legendre_symbol(params.a, p) == 1 and legendre_symbol(params.b, p) == 1:
            if _theta_square_character(params, p) == -1:
                out.append(p)
                if len(out) == count:
                    return out
    raise NotFound(f"only {len(out)} nonsquare witnesses below {pmax}")


# ---------------------------------------------------------------------------
# The prime 2: arithmetic in the unramified quadratic extension

# O4 = Z_2[w]/(w^2 + w + 1), elements as coordinate pairs mod 2^K


def _o4_mul(x, y, mod):
    x0, x1 = x
    y0, y1 = y
    return ((x0 * y0 - x1 * y1) % mod, (x0 * y1 + x1 * y0 - x1 * y1) % mod)


def _sqrt_in_o4(n: int, precision: int) -> Tuple[int, int]:
    """A square root of n = 5 mod 8 in O4, mod 2^precision."""
    base = None
    for s0 in range(8):
        for s1 in range(8):
            if _o4_mul((s0, s1), (s0, s1), 8) == (n % 8, 0):
                base = (s0, s1)
                break
        if base is not None:
            break
    if base is None:
        raise ValueError(f"{n} is not a square in O4")
    s0, s1 = base
    for j in range(3, precision):
        # lift s mod 2^j to mod 2^(j+1) by adjusting the bit at j-1
        mod = 1 << (j + 1)
        for t0, t1 in ((0, 0), (1, 0), (0, 1), (1, 1)):
            c = ((s0 + (t0 << (j - 1))) % mod, (s1 + (t1 << (j - 1))) % mod)
            if _o4_mul(c, c, mod) == (n % mod, 0):
                s0, s1 = c
                break
        else:
            raise AssertionError(f"square root lifting stalled for {n}")
    return (s0, s1)


def _val2(t: int, cap: int) -> int:
    if t == 0:
        return cap
    v = 0
    while t % 2 == 0:
        t //= 2
        v += 1
    return v


class _TwoAdicClassifier:
    """Splitting and ramification over 2 when a, b = 1 mod 4.

    Each completion of M at 2 receives q * theta; the twist is
    unramified there iff the valuation is even and the unit cube is
    1 mod 4 O4.  When 2 splits completely (a, b = 1 mod 8) the residue
    mod 8 further separates split from inert."""

    PRECISIONS = (8, 16, 32, 64)

    def __init__(self, params: QuaternionParams):
        self.params = params
        self.split_completely = params.a % 8 == 1 and params.b % 8 == 1
        self._embeddings: Dict[int, list] = {}

    def _square_root(self, n: int, precision: int) -> Tuple[int, int]:
        if n % 8 == 1:
            return (sqrt_in_Qp(n, 2, precision).residue(1 << precision), 0)
        return _sqrt_in_o4(n, precision)

    def embeddings(self, precision: int) -> list:
        if precision not in self._embeddings:
            mod = 1 << precision
            sa = self._square_root(self.params.a, precision)
            sb = self._square_root(self.params.b, precision)
            coords = []
            for c in self.params.theta.coords:
                # denominators divide ab, odd here, so invertible mod 2^K
                coords.append(
                    0 if c == 0 else c.numerator * pow(c.denominator, -1, mod) % mod
                )
            embs = []
            for ea in (sa, (-sa[0] % mod, -sa[1] % mod)):
                for eb in (sb, (-sb[0] % mod, -sb[1] % mod)):
                    eab = _o4_mul(ea, eb, mod)
                    embs.append(
                        (
                            (coords[0] + coords[1] * ea[0] + coords[2] * eb[0]
                             + coords[3] * eab[0]) % mod,
                            (coords[1] * ea[1] + coords[2] * eb[1]
                             + coords[3] * eab[1]) % mod,
                        )
                    )
            self._embeddings[precision] = embs
        return self._embeddings[precision]

    def _label(self, q: int, x, precision: int) -> Optional[str]:
        mod = 1 << precision
        t0 = q * x[0] % mod
        t1 = q * x[1] % mod
        if t0 == 0 and t1 == 0:
            return None
        v = min(_val2(t0, precision), _val2(t1, precision))
        if precision - v < 4:
            return None
        u0 = (t0 >> v) % 8
        u1 = (t1 >> v) % 8
        if v % 2:
            return "ram"
        if self.split_completely:
            assert u1 == 0, "rational embedding acquired an O4 component"
            return {1: "split", 5: "inert"}.get(u0, "ram")
        cube = _o4_mul((u0, u1), _o4_mul((u0, u1), (u0, u1), 8), 8)
        return "unram" if (cube[0] % 4, cube[1] % 4) == (1, 0) else "ram"

    def classify(self, q: int) -> str:
        for precision in self.PRECISIONS:
            labels = []
            for x in self.embeddings(precision):
                lab = self._label(q, x, precision)
                if lab is None:
                    break
                labels.append(lab)
            else:
                if len(set(labels)) != 1:
                    raise EmbeddingDisagreement(
                        f"2-adic labels disagree for q = {q}: {labels}"
                    )
                return labels[0]
        raise Undecided2Adic(
            f"2-adic test for q = {q} undecided at precision"
            f" 2^{self.PRECISIONS[-1]}"
        )


@lru_cache(maxsize=None)
def _two_adic_classifier(params: QuaternionParams) -> _TwoAdicClassifier:
    return _TwoAdicClassifier(params)


@lru_cache(maxsize=None)
def _two_adic_label(params: QuaternionParams, q: int) -> str:
    return _two_adic_classifier(params).classify(q)


def _two_symbol(params: QuaternionParams, label: str) -> SplittingSymbol:
    if params.two_unramified:
        split_completely = _two_adic_classifier(params).split_completely
        return {
            "split": SPLIT_8,
            "inert": INERT_2_4,
            "unram": INERT_4_2,
            "ram": RAM_E2_F1 if split_completely else RAM_E2_F2,
        }[label]
    return RAM_WILD


# ---------------------------------------------------------------------------
# Splitting types, conductors, twist enumeration


def splitting_in_Kq(params: QuaternionParams, q: int, p: int) -> SplittingSymbol:
    """Splitting type of p in the twist by q.

    Unramified p follows the image of Frobenius: identity (1)^8,
    central involution (2)^4, order four (4)^2.  Odd p | q ramifies with
    e = 2 and residue behaviour given by the splitting of p in M; odd
    p | ab ramifies with e = 4 and residue degree read off the quadratic
    subfield it does not ramify in; p = 2 goes through the 2-adic branch
    (or is totally ramified when 2 ramifies in M).
    """
    _validate_twist(params, q)
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    a, b = params.a, params.b
    if p == 2:
        if params.two_unramified:
            return _two_symbol(params, _two_adic_label(params, q))
        return RAM_WILD
    if (a * b) % p == 0:
        other = b if a % p == 0 else a
        return RAM_E4_F1 if legendre_symbol(other, p) == 1 else RAM_E4_F2
    split_in_M = legendre_symbol(a, p) == 1 and legendre_symbol(b, p) == 1
    if q % p == 0:
        return RAM_E2_F1 if split_in_M else RAM_E2_F2
    if not split_in_M:
        return INERT_4_2
    sign = _theta_square_character(params, p) * legendre_symbol(q, p)
    return SPLIT_8 if sign == 1 else INERT_2_4


def alpha_exponent(params: QuaternionParams, q: int) -> int:
    """The 2-exponent of the conductor: 0 or 4, decided twist by twist
    when 2 is unramified in M, constant otherwise (q is forced odd, so
    the quadratic character never moves the wild part)."""
    _validate_twist(params, q)
    if not params.two_unramified:
        return 4
    label = _two_adic_label(params, q)
    return 0 if label in ("split", "inert", "unram") else 4


def conductor_Kq(params: QuaternionParams, q: int) -> int:
    """2^alpha * r(ab)^2 * (q*)^2 with q* the odd part of |q|."""
    _validate_twist(params, q)
    alpha = alpha_exponent(params, q)
    r = squarefree_kernel(params.a * params.b)
    qstar = abs(q)
    while qstar % 2 == 0:
        qstar //= 2
    return 2**alpha * r * r * qstar * qstar


@dataclass(frozen=True)
class TwistRecord:
    q: int
    conductor: int
    alpha: int
    splitting: Dict[int, SplittingSymbol] = field(compare=False)
    root_sign: Optional[int] = None  # never computed here; external only


def _squarefree_mask(limit: int) -> np.ndarray:
    mask = np.ones(limit + 1, dtype=bool)
    if limit >= 0:
        mask[0] = False
    for p in primes_up_to(math.isqrt(limit)):
        mask[p * p :: p * p] = False
    return mask


def _fundamental_q_values(ab: int, nmax: int) -> Iterator[int]:
    """Fundamental discriminants coprime to ab in (|q|, q) order, with
    the identity twist q = 1 first."""
    mask = _squarefree_mask(nmax)
    for n in range(1, nmax + 1):
        for q in (-n, n):
            if q == 1:
                yield 1
                continue
            if q % 4 == 1:
                if not mask[n]:
                    continue
            elif q % 4 == 0:
                m = q // 4
                if m % 4 not in (2, 3) or not mask[abs(m)]:
                    continue
            else:
                continue
            if math.gcd(n, ab) == 1:
                yield q


def enumerate_twists(
    params: QuaternionParams,
    bound: int,
    by: str = "conductor",
    pmax: int = 13,
) -> Iterator[TwistRecord]:
    """Stream the twist family in (|q|, q) order.

    by="conductor" keeps conductor < bound (bound >= 5); by="q" keeps
    |q| <= bound.  The identity twist q = 1 is always included so the
    family is nonempty at tiny bounds.  Each record caches splitting
    types at primes up to pmax.
    """
    if by not in ("conductor", "q"):
        raise ValueError("by must be 'conductor' or 'q'")
    bound = int(bound)
    if by == "conductor" and bound < 5:
        raise ValueError("conductor bound must be at least 5")
    ab = params.a * params.b
    if by == "q":
        if bound < 1:
            raise ValueError("q bound must be at least 1")
        nmax = bound
    else:
        # conductor >= (ab q*)^2 and q* >= |q| / 4
        nmax = 4 * (math.isqrt(bound // (ab * ab)) + 1)
    cache_primes = primes_up_to(pmax)
    for q in _fundamental_q_values(ab, nmax):
        alpha = alpha_exponent(params, q)
        conductor = conductor_Kq(params, q)
        if by == "conductor" and conductor >= bound and q != 1:
            continue
        splitting = {p: splitting_in_Kq(params, q, p) for p in cache_primes}
        yield TwistRecord(q, conductor, alpha, splitting)


# ---------------------------------------------------------------------------
# Columnar family for density experiments


class QuaternionTwistFamily:
    """Columnar view of the twist family |q| <= qmax.

    Only the q column, conductors, and the symbol at 2 are stored;
    per-prime theta totals follow from residue-class counts, so the
    memory footprint stays flat no matter how many primes the density
    sums visit.  Implements the family-view protocol of `lowlying`
    (theta coefficients are applied internally, so no theta_fn is
    needed), with no covered_prime_bound: every prime is available.
    """

    def __init__(self, params: QuaternionParams, qmax: int):
        self.params = params
        self.height_cutoff = qmax
        qs = []
        conductors = []
        alphas = []
        two_counts: Counter = Counter()
        ab = params.a * params.b
        for q in _fundamental_q_values(ab, int(qmax)):
            qs.append(q)
            alpha = alpha_exponent(params, q)
            alphas.append(alpha)
            conductors.append(conductor_Kq(params, q))
            if params.two_unramified:
                two_counts[_two_symbol(params, _two_adic_label(params, q))] += 1
            else:
                two_counts[RAM_WILD] += 1
        if not qs:
            raise ValueError("empty twist family")
        self.qs = qs
        self.conductors = conductors
        self.alphas = alphas
        self._qarr = np.array(qs, dtype=np.int64)
        self._two_counts = dict(two_counts)
        self._odd_cache: Dict[int, Tuple[bool, int, int]] = {}

    @classmethod
    def build(cls, params: QuaternionParams, qmax: int) -> "QuaternionTwistFamily":
        return cls(params, qmax)

    @property
    def size(self) -> int:
        return len(self.qs)

    def mean_log_conductor(self) -> float:
        return float(np.log(np.array(self.conductors, dtype=np.float64)).mean())

    def alpha_distribution(self) -> Dict[int, int]:
        return dict(Counter(self.alphas))

    def _odd_counts(self, p: int) -> Tuple[bool, int, int]:
        """(splits in M, twists coprime to p, twists with q * theta a
        p-adic square) for odd p coprime to ab."""
        if p not in self._odd_cache:
            a, b = self.params.a, self.params.b
            residues = np.mod(self._qarr, p)
            histogram = np.bincount(residues, minlength=p)
            coprime = int(self.size - histogram[0])
            split = legendre_symbol(a, p) == 1 and legendre_symbol(b, p) == 1
            plus = 0
            if split:
                c = _theta_square_character(self.params, p)
                for r in range(1, p):
                    if histogram[r] and legendre_symbol(r, p) == c:
                        plus += int(histogram[r])
            self._odd_cache[p] = (split, coprime, plus)
        return self._odd_cache[p]

    def symbol_counts(self, p: int) -> Dict[SplittingSymbol, int]:
        """How many twists see each splitting type at p."""
        if p == 2:
            return dict(self._two_counts)
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        a, b = self.params.a, self.params.b
        if (a * b) % p == 0:
            other = b if a % p == 0 else a
            sym = RAM_E4_F1 if legendre_symbol(other, p) == 1 else RAM_E4_F2
            return {sym: self.size}
        split, coprime, plus = self._odd_counts(p)
        ramified = self.size - coprime
        out: Dict[SplittingSymbol, int] = {}
        if split:
            if plus:
                out[SPLIT_8] = plus
            if coprime - plus:
                out[INERT_2_4] = coprime - plus
            if ramified:
                out[RAM_E2_F1] = ramified
        else:
            if coprime:
                out[INERT_4_2] = coprime
            if ramified:
                out[RAM_E2_F2] = ramified
        return out

    def theta_sum(self, p: int, k: int) -> int:
        if p == 2:
            return sum(
                n * theta_Q8(s, k) for s, n in self._two_counts.items() if s.unramified
            )
        if (self.params.a * self.params.b) % p == 0:
            return 0
        split, coprime, plus = self._odd_counts(p)
        if not split:
            return coprime * theta_Q8(INERT_4_2, k)
        return plus * theta_Q8(SPLIT_8, k) + (coprime - plus) * theta_Q8(
            INERT_2_4, k
        )

    def ramified_theta_sum(self, p: int, k: int) -> int:
        # every ramified quaternionic type has theta = 0
        return 0


@dataclass(frozen=True)
class PrimeShareRow:
    """Observed splitting-type counts at one unramified prime."""

    p: int
    splits_in_base: bool
    n: int
    count_split8: int
    count_inert24: int
    count_inert42: int


def splitting_share_table(
    family: QuaternionTwistFamily, pmax: int = 100
) -> List[PrimeShareRow]:
    """Per-prime counts of unramified splitting types over the family,
    for odd primes up to pmax coprime to ab (twists divisible by p are
    left out of their row)."""
    ab = family.params.a * family.params.b
    rows = []
    for p in primes_up_to(pmax):
        if p == 2 or ab % p == 0:
            continue
        split, coprime, plus = family._odd_counts(p)
        rows.append(
            PrimeShareRow(
                p=p,
                splits_in_base=split,
                n=coprime,
                count_split8=plus if split else 0,
                count_inert24=(coprime - plus) if split else 0,
                count_inert42=0 if split else coprime,
            )
        )
    return rows


# ---------------------------------------------------------------------------
# Minimal polynomial of sqrt(theta)


@dataclass(frozen=True)
class SqrtThetaMinpoly:
    """Exact minimal-polynomial data for sqrt(theta).

    quartic holds (a1, a2, a3, a4) of the monic rational minimal
    polynomial of theta; octic is the integer minimal polynomial of
    scale * sqrt(theta); degree is the degree of sqrt(theta) over Q."""

    quartic: Tuple[Fraction, Fraction, Fraction, Fraction]
    scale: int
    octic: MonicPoly
    degree: int


def sqrt_theta_minimal_polynomial(params: QuaternionParams) -> SqrtThetaMinpoly:
    """The degree-8 minimal polynomial of sqrt(theta), certified exactly.

    The four conjugates of theta are distinct (checked at construction),
    so the characteristic product below is the quartic minimal
    polynomial of theta and is irreducible.  The validated norm identity
    makes N(theta) a square of Q(sqrt a) divided by b, and b is not a
    square there, so theta is not a square in M; hence substituting T^2
    (the resultant of the quartic with T^2 - y) keeps the octic
    irreducible.  The scale d is minimal with d^2 * theta integral
    enough for integer coefficients, and the octic is the minimal
    polynomial of d * sqrt(theta)."""
    theta = params.theta
    conjugates = theta.conjugates()
    coeffs = [BiquadraticElement.make(theta.a, theta.b, 1)]
    zero = BiquadraticElement.make(theta.a, theta.b)
    for r in conjugates:
        new = [zero] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] - c * r
        coeffs = new
    rational = []
    for c in coeffs[:4]:
        assert all(c.coords[i] == 0 for i in (1, 2, 3)), "charpoly not rational"
        rational.append(c.coords[0])
    m0, m1, m2, m3 = rational  # ascending: T^4 + m3 T^3 + ... + m0
    quartic = (m3, m2, m1, m0)
    needed: Dict[int, int] = {}
    for k, c in enumerate(quartic, start=1):
        # coefficient of T^(4-k) picks up d^k
        for p, e in factorize(c.denominator).items():
            needed[p] = max(needed.get(p, 0), -(-e // k))
    d = 1
    for p, e in needed.items():
        d *= p**e

    def whole(fr: Fraction) -> int:
        assert fr.denominator == 1, "scaling left a denominator behind"
        return fr.numerator

    octic = MonicPoly(
        8,
        (
            0,
            whole(m3 * d**2),
            0,
            whole(m2 * d**4),
            0,
            whole(m1 * d**6),
            0,
            whole(m0 * d**8),
        ),
    )
    return SqrtThetaMinpoly(quartic=quartic, scale=d, octic=octic, degree=8)
