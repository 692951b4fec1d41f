import math
from dataclasses import dataclass, field
from typing import Dict

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import sici

from arithstat.conjugacy import partitions_of
from arithstat.lowlying import (
    InsufficientPrimeCache,
    OneLevelReport,
    RecordFamilyView,
    TestFunction,
    average_log_conductor,
    one_level_density,
    prime_sum_details,
    prime_sums,
)
from arithstat.monicfamily import CubicSurvey, predicted_type_density
from arithstat.polyfactor import SplittingSymbol, theta_coefficient
from arithstat.primes import primes_up_to


@dataclass
class FakeRecord:
    conductor: float
    splitting: Dict[int, SplittingSymbol] = field(default_factory=dict)


def test_testfunction_basics():
    tf = TestFunction(0.25)
    assert tf(0.0) == 0.25
    assert tf(3.7) == tf(-3.7)
    assert tf.hat(0.0) == 1.0
    assert tf.hat(0.25) == 0.0
    assert tf.hat(0.1) == pytest.approx(0.6)
    assert tf.hat(-0.1) == tf.hat(0.1)
    assert tf.hat(5.0) == 0.0
    with pytest.raises(ValueError):
        TestFunction(0.0)
    with pytest.raises(ValueError):
        TestFunction(-0.1)


def _cosine_tail(m: float, R: float) -> float:
    # integral over [R, inf) of cos(m y) / y^2 dy
    if m == 0.0:
        return 1.0 / R
    si, _ = sici(m * R)
    return math.cos(m * R) / R - m * (math.pi / 2 - si)


def _fourier_by_quadrature(tf: TestFunction, u: float, R: float = 80.0) -> float:
    # adaptive oscillatory quadrature on [0, R]; the 1/y^2 tail of
    # f(y) cos(2 pi u y) integrates in closed form via Si
    w = 2 * math.pi * abs(u)
    head, _ = quad(tf, 0, R, weight="cos", wvar=w, limit=500)
    a = 2 * math.pi * tf.sigma
    tail = (1.0 / (math.pi**2 * tf.sigma)) * (
        0.5 * _cosine_tail(w, R)
        - 0.25 * _cosine_tail(a + w, R)
        - 0.25 * _cosine_tail(abs(a - w), R)
    )
    return 2 * (head + tail)


def test_fourier_transform_matches_triangle_by_quadrature():
    # 50 nonzero frequencies across and beyond the support
    tf = TestFunction(0.25)
    for u in np.linspace(-0.54, 0.54, 50):
        assert abs(_fourier_by_quadrature(tf, u) - tf.hat(u)) < 1e-6, u


def test_f_integrates_to_one():
    # finite head by adaptive quadrature plus an exact sine-integral tail
    for sigma in (0.1, 0.25, 0.45):
        tf = TestFunction(sigma)
        R = 60.0
        head, _ = quad(tf, 0, R, limit=300)
        b = 2 * math.pi * sigma
        si, _ = sici(b * R)
        tail = (1.0 / (2 * math.pi**2 * sigma)) * (
            1.0 / R - math.cos(b * R) / R + b * (math.pi / 2 - si)
        )
        assert abs(2 * (head + tail) - 1.0) < 1e-6
        assert tf(0.0) == sigma


def test_average_log_conductor_examples():
    assert average_log_conductor([FakeRecord(math.e)]) == pytest.approx(1.0)
    two = [FakeRecord(10.0), FakeRecord(1000.0)]
    assert average_log_conductor(two) == pytest.approx(2 * math.log(10))
    with pytest.raises(ValueError):
        average_log_conductor([])


@pytest.fixture(scope="module")
def big_survey():
    return CubicSurvey.build(10**6)


def test_average_log_conductor_tracks_log_x(big_survey):
    ratios = []
    for x in (10**4, 10**5, 10**6):
        L = average_log_conductor(big_survey.view(x))
        ratios.append(L / math.log(x))
    assert all(1.0 < r < 1.25 for r in ratios)
    assert ratios[0] > ratios[1] > ratios[2]


def test_empty_prime_range_gives_zero_sums():
    records = [FakeRecord(1, {})]
    tf = TestFunction(0.25)
    assert prime_sums(records, tf) == (0.0, 0.0, 0.0, 0.0)
    rep = one_level_density(records, sigma=0.25, symmetry="Sp")
    assert rep.density_estimate == 1.0
    assert rep.L == 0.0


def test_targets():
    records = [FakeRecord(1, {})]
    assert one_level_density(records, 0.3, "Sp").target == pytest.approx(0.85)
    assert one_level_density(records, 0.3, "SO").target == pytest.approx(1.15)
    assert one_level_density(records, 0.3, "sp").symmetry == "Sp"
    assert one_level_density(records, 0.3, "so").symmetry == "SO"
    with pytest.raises(ValueError):
        one_level_density(records, 0.3, "unitary")
    with pytest.raises(ValueError):
        one_level_density(records, 0.5, "Sp")
    with pytest.raises(ValueError):
        one_level_density(records, 0.0, "Sp")


@pytest.fixture(scope="module")
def small_survey():
    return CubicSurvey.build(5000)


def test_record_route_equals_view_route(small_survey):
    # the view bins a vectorized shape table while the records carry
    # per-polynomial factorizations, so matching integer theta totals
    # cross-check two independent splitting computations
    view = small_survey.view()
    L = view.mean_log_conductor()
    assert math.exp(L * 0.25) < 13  # record cache covers the prime range
    records = list(small_survey.records(pmax=13))
    rec_view = RecordFamilyView(records)
    for p in (2, 3, 5, 7, 11, 13):
        for k in (1, 2, 3):
            assert view.theta_sum(p, k) == rec_view.theta_sum(p, k)
            assert view.ramified_theta_sum(p, k) == rec_view.ramified_theta_sum(
                p, k
            )
    assert rec_view.mean_log_conductor() == pytest.approx(L, rel=1e-12)
    tf = TestFunction(0.25)
    for got, want in zip(prime_sums(records, tf), prime_sums(view, tf)):
        assert got == pytest.approx(want, rel=1e-9, abs=1e-15)
    rep_r = one_level_density(records, 0.25, "Sp")
    rep_v = one_level_density(view, 0.25, "Sp")
    assert rep_r.density_estimate == pytest.approx(
        rep_v.density_estimate, rel=1e-9
    )
    assert rep_r.size == rep_v.size == small_survey.size


def test_insufficient_prime_cache(small_survey):
    records = list(small_survey.records(pmax=7))
    with pytest.raises(InsufficientPrimeCache):
        prime_sums(records, TestFunction(0.25))
    with pytest.raises(InsufficientPrimeCache):
        prime_sums(records, TestFunction(0.45))


def test_view_rejects_theta_override(small_survey):
    with pytest.raises(ValueError):
        prime_sums(small_survey.view(), TestFunction(0.2), theta_fn=lambda s, k: 0)


def test_density_identity_and_report_fields(small_survey):
    rep = one_level_density(small_survey.view(), 0.25, "Sp")
    assert rep.density_estimate == 1.0 - (rep.S1 + rep.S2 + rep.S3 + rep.S_ram)
    assert rep.target == pytest.approx(0.875)
    assert rep.x == 5000
    assert rep.size == small_survey.size
    assert "omitted" in rep.omitted
    assert rep.residual() == rep.density_estimate - rep.target


def test_prime_sum_details_consistent(small_survey):
    view = small_survey.view()
    tf = TestFunction(0.25)
    rows = prime_sum_details(view, tf)
    sums = prime_sums(view, tf)
    assert [r["p"] for r in rows] == primes_up_to(
        int(math.exp(view.mean_log_conductor() * 0.25))
    )
    for key, total in zip(("S1", "S2", "S3", "S_ram"), sums):
        assert math.fsum(r[key] for r in rows) == pytest.approx(total, abs=1e-12)


def test_density_converges_to_sp_target(big_survey):
    deviations = []
    for x in (10**4, 10**5, 10**6):
        rep = one_level_density(big_survey.view(x), 0.25, "Sp")
        deviations.append(abs(rep.density_estimate - rep.target))
    assert deviations[0] > deviations[1] > deviations[2]
    assert deviations[-1] < 0.1


def test_s2_matches_predicted_local_averages(big_survey):
    # S2 against the prediction with exact finite-p local densities;
    # the asymptotic coefficient is 1 (standard-rep second indicator),
    # approached like (p-1)/(p+1) at the finite primes in range
    view = big_survey.view()
    tf = TestFunction(0.25)
    rep = one_level_density(view, 0.25, "Sp")
    L = rep.L
    cutoff = math.exp(L * 0.25)
    ref = 0.0
    for p in primes_up_to(int(cutoff**0.5)):
        lp = math.log(p)
        avg = sum(
            float(predicted_type_density(3, p, tau))
            * theta_coefficient(SplittingSymbol.from_cycle_type(tau), 2)
            for tau in partitions_of(3)
        )
        ref += (2.0 / L) * (lp / p) * tf.hat(2 * lp / L) * avg
    assert ref > 0
    assert abs(rep.S2 - ref) / ref < 0.01
    # the naive coefficient-1 reference differs by the finite-p
    # correction, which the densities fully explain
    crude = 0.0
    explained = 0.0
    for p in primes_up_to(int(cutoff**0.5)):
        lp = math.log(p)
        w = (2.0 / L) * (lp / p) * tf.hat(2 * lp / L)
        crude += w
        explained += w * (1.0 - (p - 1.0) / (p + 1.0))
    assert abs((crude - ref) - explained) < 5e-3


def test_s1_small_at_scale(big_survey):
    rep = one_level_density(big_survey.view(), 0.25, "Sp")
    assert abs(rep.S1) <= 0.1


def test_tree_reduction_deterministic(small_survey):
    tf = TestFunction(0.25)
    a = prime_sums(small_survey.view(), tf)
    b = prime_sums(small_survey.view(), tf)
    assert a == b
