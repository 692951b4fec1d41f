"""One-level density machinery: compactly supported test functions,
average conductors, and the prime-power sums that carry the symmetry
type of a family.

The test function is the Fejer kernel f(y) = sigma (sin(pi sigma y) /
(pi sigma y))^2, whose Fourier transform is the triangle max(0, 1 -
|u|/sigma); both sides have closed forms and f-hat has exact compact
support, so every prime sum is finite.

A family enters either as an iterable of records (each with a
`conductor` and a `splitting` dict over primes) or as a columnar view
object exposing size, mean_log_conductor(), theta_sum(p, k) and
ramified_theta_sum(p, k); the integer theta totals of the two routes
agree exactly, and each route is deterministic because the reduction
order is a fixed pairwise tree.

The density estimate D keeps only the prime-sum side: the pole and
archimedean terms of the explicit formula are omitted, and the report
says so, because the artifact verifies the prime sums rather than
actual zero statistics.
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .polyfactor import theta_coefficient
from .primes import primes_up_to

SIGMA_DEFAULT = 0.25
SIGMA_CAP = 0.45

OMITTED_TERMS = "pole and archimedean terms omitted; D is the prime-sum side"


class InsufficientPrimeCache(RuntimeError):
    """The family's splitting data does not reach exp(L * sigma)."""


@dataclass(frozen=True)
class TestFunction:
    """Fejer kernel with support parameter sigma: f(0) = sigma and
    f-hat(u) = max(0, 1 - |u|/sigma)."""

    sigma: float

    __test__ = False  # keep pytest from collecting this as a test class

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    def __call__(self, y: float) -> float:
        if y == 0:
            return self.sigma
        t = math.pi * self.sigma * y
        return self.sigma * (math.sin(t) / t) ** 2

    def hat(self, u: float) -> float:
        return max(0.0, 1.0 - abs(u) / self.sigma)


class RecordFamilyView:
    """Family-view adapter over explicit records; theta totals are
    computed per prime from each record's cached splitting symbol."""

    def __init__(self, records: Sequence, theta_fn: Optional[Callable] = None):
        self.records = list(records)
        if not self.records:
            raise ValueError("empty family")
        self.theta = theta_fn if theta_fn is not None else theta_coefficient
        keys = set(self.records[0].splitting)
        for r in self.records:
            keys &= set(r.splitting)
        self.primes = sorted(keys)
        self.covered_prime_bound = max(self.primes) if self.primes else 0

    @property
    def size(self) -> int:
        return len(self.records)

    def mean_log_conductor(self) -> float:
        return math.fsum(
            math.log(r.conductor) for r in self.records
        ) / len(self.records)

    def _require(self, p: int):
        if p not in self.records[0].splitting:
            raise InsufficientPrimeCache(f"no splitting data at p={p}")

    def theta_sum(self, p: int, k: int) -> int:
        self._require(p)
        return sum(self.theta(r.splitting[p], k) for r in self.records)

    def ramified_theta_sum(self, p: int, k: int) -> int:
        self._require(p)
        return sum(
            self.theta(r.splitting[p], k)
            for r in self.records
            if not r.splitting[p].unramified
        )


def as_family_view(records, theta_fn: Optional[Callable] = None):
    """Pass columnar views through; wrap record iterables."""
    if hasattr(records, "theta_sum") and hasattr(records, "mean_log_conductor"):
        if theta_fn is not None:
            raise ValueError(
                "theta_fn applies to record families; views carry their own"
            )
        return records
    return RecordFamilyView(records, theta_fn)


def average_log_conductor(records) -> float:
    """Arithmetic mean of the natural logs of the conductors."""
    view = as_family_view(records)
    if view.size == 0:
        raise ValueError("empty family")
    return view.mean_log_conductor()


def _tree_sum(values: List[Tuple[float, ...]], width: int) -> Tuple[float, ...]:
    """Deterministic pairwise-tree reduction, stable against reordering
    of equal-length inputs."""
    if not values:
        return (0.0,) * width
    layer = list(values)
    while len(layer) > 1:
        nxt = []
        for i in range(0, len(layer) - 1, 2):
            a, b = layer[i], layer[i + 1]
            nxt.append(tuple(x + y for x, y in zip(a, b)))
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def prime_sums(
    records, tf: TestFunction, theta_fn: Optional[Callable] = None
) -> Tuple[float, float, float, float]:
    """The four prime-power sums (S1, S2, S3, S_ram) over p^k <=
    exp(L * sigma): unramified k = 1, k = 2, k >= 3, and the ramified
    bucket, each term weighted 2/(L |F|) (log p / p^{k/2})
    f-hat(k log p / L) times the family theta total."""
    view = as_family_view(records, theta_fn)
    contributions = _prime_contributions(view, tf)
    return _tree_sum([c for _, c in contributions], 4)


def _prime_contributions(view, tf: TestFunction):
    L = view.mean_log_conductor()
    size = view.size
    if size == 0:
        raise ValueError("empty family")
    cutoff = math.exp(L * tf.sigma)
    bound = getattr(view, "covered_prime_bound", None)
    if bound is not None and cutoff > bound + 1:
        raise InsufficientPrimeCache(
            f"need primes up to {cutoff:.1f}, cache covers {bound}"
        )
    out = []
    for p in primes_up_to(int(cutoff)):
        lp = math.log(p)
        c1 = c2 = c3 = cram = 0.0
        k = 1
        while p**k <= cutoff:
            w = (2.0 / (L * size)) * (lp / p ** (k / 2.0)) * tf.hat(k * lp / L)
            total = view.theta_sum(p, k)
            ram = view.ramified_theta_sum(p, k)
            term = w * (total - ram)
            if k == 1:
                c1 += term
            elif k == 2:
                c2 += term
            else:
                c3 += term
            cram += w * ram
            k += 1
        out.append((p, (c1, c2, c3, cram)))
    return out


def prime_sum_details(
    records, tf: TestFunction, theta_fn: Optional[Callable] = None
) -> List[Dict[str, float]]:
    """Per-prime contributions for diagnostics (the CLI surfaces the
    k = 1 column)."""
    view = as_family_view(records, theta_fn)
    rows = []
    for p, (c1, c2, c3, cram) in _prime_contributions(view, tf):
        rows.append(
            {"p": p, "S1": c1, "S2": c2, "S3": c3, "S_ram": cram}
        )
    return rows


TARGETS = {"Sp": -0.5, "SO": 0.5}


@dataclass(frozen=True)
class OneLevelReport:
    x: Optional[float]
    sigma: float
    L: float
    size: int
    S1: float
    S2: float
    S3: float
    S_ram: float
    density_estimate: float
    target: float
    symmetry: str
    omitted: str = OMITTED_TERMS

    def residual(self) -> float:
        return self.density_estimate - self.target


def one_level_density(
    records,
    sigma: float = SIGMA_DEFAULT,
    symmetry: str = "Sp",
    theta_fn: Optional[Callable] = None,
    x: Optional[float] = None,
) -> OneLevelReport:
    """Density estimate D = f-hat(0) - (S1 + S2 + S3 + S_ram) against
    the symmetry target 1 - sigma/2 (Sp) or 1 + sigma/2 (SO)."""
    tag = {"sp": "Sp", "so": "SO"}.get(symmetry.lower())
    if tag is None:
        raise ValueError("symmetry must be Sp or SO")
    if not 0 < sigma <= SIGMA_CAP:
        raise ValueError(f"sigma must lie in (0, {SIGMA_CAP}]")
    tf = TestFunction(sigma)
    view = as_family_view(records, theta_fn)
    s1, s2, s3, sram = prime_sums(view, tf)
    L = view.mean_log_conductor()
    density = tf.hat(0.0) - (s1 + s2 + s3 + sram)
    if x is None:
        x = getattr(view, "height_cutoff", None)
    return OneLevelReport(
        x=x,
        sigma=sigma,
        L=L,
        size=view.size,
        S1=s1,
        S2=s2,
        S3=s3,
        S_ram=sram,
        density_estimate=density,
        target=1.0 + TARGETS[tag] * sigma,
        symmetry=tag,
    )
