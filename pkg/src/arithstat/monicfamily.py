"""Families of monic integer polynomials ordered by height.

A degree-n family member is T^n + a1 T^(n-1) + ... + an with a1 in [0, n),
one representative per translation class T -> T + k.  The height of a
representative is h(f) = max over i >= 2 of |a_i|^(n(n-1)/i); the linear
normalization already pins a1, so a1 carries no height constraint.

The sieve keeps exactly the f that are irreducible over Q with nonzero
discriminant and whose order Z[T]/(f) is maximal at every prime.  Kept
records carry the absolute discriminant as conductor and a splitting-symbol
cache for small primes.

For degree 3 a vectorized survey enumerates the whole family with numpy,
marking reducible and nonmaximal members by congruence sieves instead of
per-polynomial factorization.  Nonmaximality at p is equivalent to the
existence of a residue r with f(r) = f'(r) = 0 mod p and f(r) = 0 mod p^2,
a condition that only depends on f mod p^2 and is independent of the lift
of r; the equivalence with the Dedekind criterion is covered by tests.
"""

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from .conjugacy import validate_cycle_type
from .polyfactor import (
    MonicPoly,
    SplittingSymbol,
    discriminant,
    exact_type_count,
    factor_mod_p,
    is_irreducible_over_Q,
    is_p_maximal,
    theta_coefficient,
)
from .primes import factorize, primes_up_to


class SplittingCacheMiss(KeyError):
    """A report asked for a prime outside the record splitting cache."""


class UnresolvedDiscriminants(RuntimeError):
    """Too many records dropped for unfactorable discriminants."""


def floor_root(m: int, k: int) -> int:
    """Largest t >= 0 with t^k <= m, exact for arbitrary integers."""
    if m < 0 or k < 1:
        raise ValueError("floor_root needs m >= 0, k >= 1")
    if m in (0, 1) or k == 1:
        return m
    t = int(round(m ** (1.0 / k)))
    while t > 0 and t**k > m:
        t -= 1
    while (t + 1) ** k <= m:
        t += 1
    return t


def coefficient_bound(n: int, x: int, i: int) -> int:
    """Largest allowed |a_i| for height < x: t^(n(n-1)) < x^i."""
    if x < 1:
        raise ValueError("x must be >= 1")
    if not 2 <= i <= n:
        raise ValueError("height constrains coefficients a_2..a_n")
    b = floor_root(x**i - 1, n * (n - 1))
    return b


def enumerate_monic(n: int, x: int) -> Iterator[MonicPoly]:
    """All representatives with a1 in [0, n) and height < x, in
    lexicographic coefficient order."""
    if not 2 <= n <= 5:
        raise ValueError("degree must be between 2 and 5")
    x = int(x)
    bounds = [coefficient_bound(n, x, i) for i in range(2, n + 1)]
    coeffs = [0] * n

    def rec(idx: int) -> Iterator[MonicPoly]:
        if idx == n:
            yield MonicPoly(n, tuple(coeffs))
            return
        lo, hi = (0, n - 1) if idx == 0 else (-bounds[idx - 1], bounds[idx - 1])
        for v in range(lo, hi + 1):
            coeffs[idx] = v
            yield from rec(idx + 1)

    yield from rec(0)


FLAG_IRREDUCIBLE = "irreducible"
FLAG_MAXIMAL = "maximal"
FLAG_FACTORED = "discriminant_fully_factored"


@dataclass(frozen=True)
class FamilyRecord:
    id: str
    poly: MonicPoly
    conductor: int
    splitting: Dict[int, SplittingSymbol] = field(compare=False)
    flags: frozenset = frozenset()


@dataclass
class SieveStats:
    examined: int = 0
    kept: int = 0
    degenerate: int = 0
    reducible: int = 0
    nonmaximal: int = 0
    unresolved: int = 0

    @property
    def unresolved_fraction(self) -> float:
        return self.unresolved / self.examined if self.examined else 0.0


def record_id(poly: MonicPoly) -> str:
    return "m%d_%s" % (poly.n, "_".join(str(c) for c in poly.coeffs))


def sieve_maximal(
    stream: Iterable[MonicPoly],
    trial_bound: int = 10**6,
    pmax: int = 13,
    stats: Optional[SieveStats] = None,
    squarefree_only: bool = False,
) -> Iterator[FamilyRecord]:
    """Filter a polynomial stream down to maximal-order records.

    `squarefree_only` keeps only squarefree discriminants (a strictly
    smaller family, provided for speed comparisons).  Discriminants whose
    factorization cannot be completed are counted in `stats.unresolved`
    and excluded, never silently kept.
    """
    if stats is None:
        stats = SieveStats()
    cache_primes = primes_up_to(pmax)
    for f in stream:
        stats.examined += 1
        d = discriminant(f)
        if d == 0:
            stats.degenerate += 1
            continue
        if not is_irreducible_over_Q(f):
            stats.reducible += 1
            continue
        try:
            fac = factorize(abs(d), trial_bound=trial_bound)
        except ArithmeticError:
            stats.unresolved += 1
            continue
        if squarefree_only:
            if any(e >= 2 for e in fac.values()):
                stats.nonmaximal += 1
                continue
        elif any(e >= 2 and not is_p_maximal(f, p) for p, e in fac.items()):
            stats.nonmaximal += 1
            continue
        splitting = {p: factor_mod_p(f, p).symbol() for p in cache_primes}
        stats.kept += 1
        yield FamilyRecord(
            id=record_id(f),
            poly=f,
            conductor=abs(d),
            splitting=splitting,
            flags=frozenset((FLAG_IRREDUCIBLE, FLAG_MAXIMAL, FLAG_FACTORED)),
        )


def build_family(
    n: int,
    x: int,
    trial_bound: int = 10**6,
    pmax: int = 13,
    squarefree_only: bool = False,
    max_unresolved: float = 1e-4,
) -> Tuple[List[FamilyRecord], SieveStats]:
    stats = SieveStats()
    records = list(
        sieve_maximal(
            enumerate_monic(n, x),
            trial_bound=trial_bound,
            pmax=pmax,
            stats=stats,
            squarefree_only=squarefree_only,
        )
    )
    if stats.unresolved_fraction > max_unresolved:
        raise UnresolvedDiscriminants(
            f"{stats.unresolved}/{stats.examined} discriminants unresolved"
        )
    return records, stats


# ---------------------------------------------------------------------------
# density reports


def char_standard(tau: Tuple[int, ...]) -> int:
    """Character of the (n-1)-dimensional standard representation at a
    permutation of cycle type tau: fixed points minus one."""
    tau = validate_cycle_type(tau)
    return sum(1 for part in tau if part == 1) - 1


def predicted_type_density(n: int, p: int, tau: Tuple[int, ...]) -> Fraction:
    """Density of unramified splitting type tau in the maximal monic
    family: squarefree type count over F_p divided by p^n (1 - 1/p^2)."""
    cnt = exact_type_count(n, p, tau)
    return Fraction(cnt * p * p, p**n * (p * p - 1))


def predicted_ramified_density(n: int, p: int) -> Fraction:
    total = sum(
        predicted_type_density(n, p, tau) for tau in _cycle_types(n)
    )
    return 1 - total


def _cycle_types(n: int) -> List[Tuple[int, ...]]:
    out = []

    def rec(rest, maxpart, cur):
        if rest == 0:
            out.append(tuple(cur))
            return
        for part in range(min(rest, maxpart), 0, -1):
            cur.append(part)
            rec(rest - part, part, cur)
            cur.pop()

    rec(n, n, [])
    return out


@dataclass(frozen=True)
class DensityReport:
    x: int
    p: int
    n: int
    counts: Dict[object, int]
    total: int
    empirical: Dict[object, Fraction]
    predicted: Dict[object, Fraction]
    t_F_empirical: Fraction
    t_F_predicted: Fraction

    def __post_init__(self):
        assert sum(self.counts.values()) == self.total
        if self.total:
            assert sum(self.empirical.values()) == 1


def _report_from_counts(
    n: int, p: int, x: int, counts: Dict[object, int]
) -> DensityReport:
    total = sum(counts.values())
    empirical = {
        key: Fraction(v, total) if total else Fraction(0)
        for key, v in counts.items()
    }
    predicted = {tau: predicted_type_density(n, p, tau) for tau in _cycle_types(n)}
    predicted["ramified"] = predicted_ramified_density(n, p)
    t_emp = sum(
        (frac * char_standard(key) for key, frac in empirical.items()
         if key != "ramified"),
        Fraction(0),
    )
    t_pred = sum(
        (frac * char_standard(key) for key, frac in predicted.items()
         if key != "ramified"),
        Fraction(0),
    )
    return DensityReport(
        x=x,
        p=p,
        n=n,
        counts=counts,
        total=total,
        empirical=empirical,
        predicted=predicted,
        t_F_empirical=t_emp,
        t_F_predicted=t_pred,
    )


def density_report(records: List[FamilyRecord], p: int, x: int) -> DensityReport:
    if not records:
        raise ValueError("empty family")
    n = records[0].poly.n
    counts: Dict[object, int] = {tau: 0 for tau in _cycle_types(n)}
    counts["ramified"] = 0
    for rec in records:
        if p not in rec.splitting:
            raise SplittingCacheMiss(
                f"prime {p} not cached for record {rec.id}"
            )
        sym = rec.splitting[p]
        key = sym.cycle_type() if sym.unramified else "ramified"
        counts[key] += 1
    return _report_from_counts(n, p, x, counts)


# ---------------------------------------------------------------------------
# CSV cache

CACHE_FORMAT = "arithstat-monic-cache-v1"


def write_cache(path, records: List[FamilyRecord], n: int, x: int, pmax: int):
    cache_primes = primes_up_to(pmax)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# format={CACHE_FORMAT} n={n} x={x} pmax={pmax}\n")
        writer = csv.writer(fh)
        header = (
            ["id", "n"]
            + [f"a{i}" for i in range(1, n + 1)]
            + ["conductor", "flags"]
            + [f"p{p}:sym" for p in cache_primes]
        )
        writer.writerow(header)
        for rec in records:
            row = (
                [rec.id, rec.poly.n]
                + [str(c) for c in rec.poly.coeffs]
                + [str(rec.conductor), ";".join(sorted(rec.flags))]
                + [rec.splitting[p].to_text() for p in cache_primes]
            )
            writer.writerow(row)


def read_cache(path) -> Tuple[List[FamilyRecord], Dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        first = fh.readline()
        if not first.startswith("#"):
            raise ValueError("missing cache metadata line")
        meta = dict(tok.split("=", 1) for tok in first[1:].split())
        if meta.get("format") != CACHE_FORMAT:
            raise ValueError(f"unsupported cache format: {meta.get('format')}")
        reader = csv.reader(fh)
        header = next(reader)
        n = int(meta["n"])
        sym_cols = []
        for idx, name in enumerate(header):
            if name.startswith("p") and name.endswith(":sym"):
                sym_cols.append((int(name[1:-4]), idx))
        records = []
        for row in reader:
            coeffs = tuple(int(row[2 + i]) for i in range(n))
            poly = MonicPoly(n, coeffs)
            splitting = {
                p: SplittingSymbol.from_text(row[idx]) for p, idx in sym_cols
            }
            records.append(
                FamilyRecord(
                    id=row[0],
                    poly=poly,
                    conductor=int(row[2 + n]),
                    splitting=splitting,
                    flags=frozenset(row[3 + n].split(";")),
                )
            )
    return records, meta


# ---------------------------------------------------------------------------
# vectorized cubic survey

CUBIC_SHAPES = (
    SplittingSymbol.from_pairs([(1, 1), (1, 1), (1, 1)]),
    SplittingSymbol.from_pairs([(1, 2), (1, 1)]),
    SplittingSymbol.from_pairs([(1, 3)]),
    SplittingSymbol.from_pairs([(2, 1), (1, 1)]),
    SplittingSymbol.from_pairs([(3, 1)]),
)
_SHAPE_BUCKET = ((1, 1, 1), (2, 1), (3,), "ramified", "ramified")


def _cubic_disc_grid(a, b, c):
    return (
        18 * a * b * c
        - 4 * a * a * a * c
        + a * a * b * b
        - 4 * b * b * b
        - 27 * c * c
    )


def _cubic_shape_table(p: int) -> np.ndarray:
    """Shape index (into CUBIC_SHAPES) for every monic cubic mod p, keyed
    by (a*p + b)*p + c.  Classification: ramified iff p | disc; rational
    root count then separates (111)/(21)/(3) and double/triple."""
    ar = np.arange(p, dtype=np.int64)
    a, b, c = np.meshgrid(ar, ar, ar, indexing="ij")
    disc = _cubic_disc_grid(a, b, c) % p
    roots = np.zeros((p, p, p), dtype=np.int8)
    aa, bb = np.meshgrid(ar, ar, indexing="ij")
    for r in range(p):
        cc = (-(r**3 + aa * r * r + bb * r)) % p
        roots[aa, bb, cc] += 1
    table = np.full((p, p, p), -1, dtype=np.int8)
    ram = disc == 0
    table[~ram & (roots == 3)] = 0
    table[~ram & (roots == 1)] = 1
    table[~ram & (roots == 0)] = 2
    table[ram & (roots == 2)] = 3
    table[ram & (roots == 1)] = 4
    # a multiple root of a cubic is always rational, so every class falls
    # in one of the five shapes; -1 leftovers would mean a logic error
    assert int(table.min()) >= 0
    return table.reshape(-1)


class CubicSurvey:
    """Complete maximal cubic family below height x, held columnwise."""

    def __init__(self, x: int, a, b, c, absdisc, stats: Dict[str, int]):
        self.x = int(x)
        self.a = a
        self.b = b
        self.c = c
        self.absdisc = absdisc
        self.stats = stats
        self._shape_cache: Dict[int, np.ndarray] = {}

    @property
    def size(self) -> int:
        return int(self.a.shape[0])

    @classmethod
    def build(cls, x: int) -> "CubicSurvey":
        x = int(x)
        b2 = coefficient_bound(3, x, 2)
        b3 = coefficient_bound(3, x, 3)
        nb, nc = 2 * b2 + 1, 2 * b3 + 1
        bcol = np.arange(-b2, b2 + 1, dtype=np.int64)[:, None]
        crow = np.arange(-b3, b3 + 1, dtype=np.int64)[None, :]
        keep_a, keep_b, keep_c, keep_d = [], [], [], []
        stats = {"degenerate": 0, "reducible": 0, "nonmaximal": 0}
        for a1 in range(3):
            disc = _cubic_disc_grid(a1, bcol, crow)
            bad = disc == 0
            stats["degenerate"] += int(bad.sum())
            red = np.zeros((nb, nc), dtype=bool)
            rmax = 1 + max(a1, b2, b3)
            brange = np.arange(nb)
            for r in range(-rmax, rmax + 1):
                cval = -(r**3 + a1 * r * r + bcol.ravel() * r)
                ok = (cval >= -b3) & (cval <= b3)
                red[brange[ok], (cval + b3)[ok]] = True
            stats["reducible"] += int((red & ~bad).sum())
            bad_or_red = bad | red
            nonmax = np.zeros((nb, nc), dtype=bool)
            maxdisc = int(np.abs(disc).max())
            _mark_nonmaximal(nonmax, a1, b2, b3, maxdisc)
            stats["nonmaximal"] += int((nonmax & ~bad_or_red).sum())
            kept = ~(bad_or_red | nonmax)
            bi, ci = np.nonzero(kept)
            keep_a.append(np.full(bi.shape, a1, dtype=np.int64))
            keep_b.append(bi.astype(np.int64) - b2)
            keep_c.append(ci.astype(np.int64) - b3)
            keep_d.append(np.abs(disc[kept]))
        return cls(
            x,
            np.concatenate(keep_a),
            np.concatenate(keep_b),
            np.concatenate(keep_c),
            np.concatenate(keep_d),
            stats,
        )

    def height_mask(self, x2: int) -> np.ndarray:
        if x2 > self.x:
            raise ValueError("survey only covers heights below its cutoff")
        m2 = coefficient_bound(3, x2, 2)
        m3 = coefficient_bound(3, x2, 3)
        return (np.abs(self.b) <= m2) & (np.abs(self.c) <= m3)

    def count_for_height(self, x2: int) -> int:
        return int(self.height_mask(x2).sum())

    def shape_ids(self, p: int) -> np.ndarray:
        if p not in self._shape_cache:
            table = _cubic_shape_table(p)
            idx = ((self.a % p) * p + self.b % p) * p + self.c % p
            self._shape_cache[p] = table[idx]
        return self._shape_cache[p]

    def type_counts(self, p: int, x2: Optional[int] = None) -> Dict[object, int]:
        ids = self.shape_ids(p)
        if x2 is not None:
            ids = ids[self.height_mask(x2)]
        counts: Dict[object, int] = {tau: 0 for tau in _cycle_types(3)}
        counts["ramified"] = 0
        binned = np.bincount(ids, minlength=5)
        for shape_id, bucket in enumerate(_SHAPE_BUCKET):
            counts[bucket] += int(binned[shape_id])
        return counts

    def density_report(self, p: int, x2: Optional[int] = None) -> DensityReport:
        return _report_from_counts(
            3, p, x2 if x2 is not None else self.x, self.type_counts(p, x2)
        )

    def view(self, x2: Optional[int] = None) -> "CubicFamilyView":
        mask = None if x2 is None else self.height_mask(x2)
        return CubicFamilyView(self, mask, height_cutoff=x2 or self.x)

    def records(self, pmax: int = 13) -> Iterator[FamilyRecord]:
        cache_primes = primes_up_to(pmax)
        for i in range(self.size):
            poly = MonicPoly(
                3, (int(self.a[i]), int(self.b[i]), int(self.c[i]))
            )
            splitting = {
                p: factor_mod_p(poly, p).symbol() for p in cache_primes
            }
            yield FamilyRecord(
                id=record_id(poly),
                poly=poly,
                conductor=int(self.absdisc[i]),
                splitting=splitting,
                flags=frozenset(
                    (FLAG_IRREDUCIBLE, FLAG_MAXIMAL, FLAG_FACTORED)
                ),
            )


class CubicFamilyView:
    """Height-restricted slice of a survey exposing the family-view
    protocol consumed by the one-level-density machinery: size,
    mean_log_conductor, theta_sum, ramified_theta_sum."""

    def __init__(
        self,
        survey: CubicSurvey,
        mask: Optional[np.ndarray],
        height_cutoff: Optional[int] = None,
    ):
        self.survey = survey
        self.mask = mask
        self.height_cutoff = height_cutoff
        self.absdisc = survey.absdisc if mask is None else survey.absdisc[mask]
        self._bin_cache: Dict[int, np.ndarray] = {}
        self._ram_bin_cache: Dict[int, np.ndarray] = {}

    @property
    def size(self) -> int:
        return int(self.absdisc.shape[0])

    def mean_log_conductor(self) -> float:
        return float(np.log(self.absdisc.astype(np.float64)).mean())

    def _binned(self, p: int) -> np.ndarray:
        if p not in self._bin_cache:
            ids = self.survey.shape_ids(p)
            if self.mask is not None:
                ids = ids[self.mask]
            self._bin_cache[p] = np.bincount(ids, minlength=5)
            ram = self.absdisc % p == 0
            self._ram_bin_cache[p] = np.bincount(ids[ram], minlength=5)
        return self._bin_cache[p]

    def theta_sum(self, p: int, k: int) -> int:
        binned = self._binned(p)
        return sum(
            int(binned[s]) * theta_coefficient(CUBIC_SHAPES[s], k)
            for s in range(5)
        )

    def ramified_theta_sum(self, p: int, k: int) -> int:
        """theta_sum restricted to records with p dividing the conductor."""
        self._binned(p)
        binned = self._ram_bin_cache[p]
        return sum(
            int(binned[s]) * theta_coefficient(CUBIC_SHAPES[s], k)
            for s in range(5)
        )


def _mark_nonmaximal(nonmax, a1, b2, b3, maxdisc):
    """Mark every (b, c) in the grid where T^3 + a1 T^2 + b T + c is
    nonmaximal at some prime: a residue r with p | f'(r) and p^2 | f(r).
    Scans all p with p^2 <= maxdisc, which covers every p^2 | disc."""
    nb, nc = nonmax.shape
    small_cut = math.isqrt(2 * b3 + 1)
    for p in primes_up_to(math.isqrt(maxdisc)):
        pp = p * p
        if p <= small_cut:
            # several c per (r, b): stride fill
            for r in range(p):
                b0 = (-(3 * r * r + 2 * a1 * r)) % p
                start = -b2 + ((b0 + b2) % p)
                for bval in range(start, b2 + 1, p):
                    c0 = (-(r**3 + a1 * r * r + bval * r)) % pp
                    cstart = -b3 + ((c0 + b3) % pp)
                    if cstart <= b3:
                        nonmax[bval + b2, cstart + b3 :: pp] = True
            continue
        # at most one c per (r, b)
        r = np.arange(p, dtype=np.int64)
        b0 = (-(3 * r * r + 2 * a1 * r)) % p
        start = -b2 + ((b0 + b2) % p)
        kcount = (b2 - start) // p + 1
        ok = start <= b2
        r, start, kcount = r[ok], start[ok], kcount[ok]
        if r.size == 0:
            continue
        total = int(kcount.sum())
        rrep = np.repeat(r, kcount)
        base = np.repeat(start, kcount)
        offsets = np.arange(total) - np.repeat(
            np.cumsum(kcount) - kcount, kcount
        )
        bflat = base + offsets * p
        c0 = (-(rrep**3 + a1 * rrep * rrep + bflat * rrep)) % pp
        cc = np.where(c0 <= b3, c0, c0 - pp)
        good = cc >= -b3
        nonmax[bflat[good] + b2, cc[good] + b3] = True
