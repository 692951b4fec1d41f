"""Tests for the quaternionic octic twist families.

Oracles used here, in rough order of independence:

  * the trace table of the 2-dimensional quaternion representation,
    recomputed from explicit 2x2 matrices over Z[i];
  * hand-derived splitting types at small primes for the (2, 3) family
    twisted by q = 5 (Legendre symbol computations done on paper);
  * mod-p factorization shapes of the integer octic minimal polynomial,
    compared against the local classifier at every good prime;
  * exact field arithmetic: the quartic and octic must annihilate theta
    and scale^2 * theta inside the biquadratic algebra;
  * four-fold embedding redundancy: each p-adic verdict is recomputed
    along all four completions, which must agree.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from arithstat.lowlying import RecordFamilyView, one_level_density
from arithstat.padic import (
    BiquadraticElement,
    embed_at_split_prime,
    legendre_symbol,
    residue_square_class,
    witt_condition,
)
from arithstat.polyfactor import MonicPoly, SplittingSymbol, factor_mod_p
from arithstat.polyfactor import is_irreducible_over_Q
from arithstat.primes import factorize, primes_up_to
from arithstat.quaternion import (
    INERT_2_4,
    INERT_4_2,
    RAM_E2_F1,
    RAM_E2_F2,
    RAM_E4_F1,
    RAM_E4_F2,
    RAM_WILD,
    SPLIT_8,
    NotFound,
    QuaternionParams,
    QuaternionTwistFamily,
    alpha_exponent,
    conductor_Kq,
    enumerate_twists,
    is_fundamental_discriminant,
    nonsquare_split_prime_witnesses,
    orthogonal_three_squares,
    splitting_in_Kq,
    splitting_share_table,
    sqrt_theta_minimal_polynomial,
    theta_Q8,
    theta_element,
)


@pytest.fixture(scope="module")
def p23():
    # decomposition of (2, 3) with the first triple (1, 1, 0)
    return QuaternionParams(2, 3, (1, 1, 0, 1, -1, 1))


@pytest.fixture(scope="module")
def p541():
    # decomposition of (5, 41) with the second triple (6, -2, 1)
    return QuaternionParams(5, 41, (0, 1, 2, 6, -2, 1))


@pytest.fixture(scope="module")
def p1733():
    # smallest admissible pair with a = b = 1 mod 8; exercises the
    # split/inert branch of the 2-adic test
    return QuaternionParams.from_pair(17, 33)


@pytest.fixture(scope="module")
def fam23_10k(p23):
    return QuaternionTwistFamily.build(p23, 10**4)


# ---------------------------------------------------------------------------
# solubility and the orthogonal decomposition search


def test_witt_condition_on_named_pairs():
    assert witt_condition(2, 3) is True
    assert witt_condition(5, 41) is True
    assert witt_condition(163, 14) is False


def test_orthogonal_three_squares_satisfies_the_equations():
    for a, b in ((2, 3), (5, 41), (17, 33), (2, 11), (13, 17)):
        alpha, beta, gamma, lam, mu, nu = orthogonal_three_squares(a, b)
        assert alpha**2 + beta**2 + gamma**2 == a
        assert lam**2 + mu**2 + nu**2 == b
        assert alpha * lam + beta * mu + gamma * nu == 0
        # deterministic: a second call returns the identical tuple
        assert orthogonal_three_squares(a, b) == (alpha, beta, gamma, lam, mu, nu)


def test_orthogonal_three_squares_rejects_insoluble_pairs():
    with pytest.raises(ValueError):
        orthogonal_three_squares(163, 14)
    with pytest.raises(ValueError):
        orthogonal_three_squares(-2, 3)


def test_reference_decompositions_validate(p23, p541):
    # the tuples behind the fixtures, checked by substitution
    assert p23.decomposition == tuple(map(Fraction, (1, 1, 0, 1, -1, 1)))
    assert p541.decomposition == tuple(map(Fraction, (0, 1, 2, 6, -2, 1)))


# ---------------------------------------------------------------------------
# parameter validation and the theta element


def test_params_validation_rejects_bad_input():
    with pytest.raises(ValueError):
        QuaternionParams.from_pair(4, 3)  # a not squarefree
    with pytest.raises(ValueError):
        QuaternionParams.from_pair(3, 6)  # not coprime
    with pytest.raises(ValueError):
        QuaternionParams.from_pair(3, 7)  # unsupported shape mod 4
    with pytest.raises(ValueError):
        QuaternionParams.from_pair(163, 14)  # fails local solubility
    with pytest.raises(ValueError):
        QuaternionParams(2, 3, (1, 1, 0, 1, -1))  # five entries
    with pytest.raises(ValueError):
        QuaternionParams(2, 3, (1, 0, 1, 1, -1, 1))  # wrong a-triple order
    with pytest.raises(ValueError):
        QuaternionParams(2, 3, (1, 1, 0, 1, 1, 1))  # not orthogonal
    with pytest.raises(ValueError):
        # decomposition is fine but the supplied theta contradicts it
        QuaternionParams(
            2, 3, (1, 1, 0, 1, -1, 1), BiquadraticElement.make(2, 3, 1)
        )


def test_theta_coordinates_match_reference(p23, p541, p1733):
    t = theta_element(p23)
    assert t.coords == (1, Fraction(1, 2), Fraction(-1, 3), Fraction(-1, 3))
    t = theta_element(p541)
    assert t.coords == (1, 0, Fraction(-2, 41), Fraction(-6, 205))
    t = theta_element(p1733)
    assert t.coords == (1, 0, Fraction(-4, 33), Fraction(4, 561))


def test_norm_identity_explicitly(p23, p541, p1733):
    # N down to Q(sqrt a) times b must be a square in Q(sqrt a)
    for params in (p23, p541, p1733):
        alpha, beta, gamma, lam, mu, nu = params.decomposition
        root = BiquadraticElement.make(
            params.a,
            params.b,
            nu,
            Fraction(alpha * nu - gamma * lam, params.a),
        )
        assert params.theta.norm_to_sqrt_a() * params.b == root * root
        conj = params.theta.conjugates()
        assert len({c.coords for c in conj}) == 4


# ---------------------------------------------------------------------------
# trace table of the 2-dimensional representation


def _trace_oracle():
    """Traces of powers of the three Frobenius candidates, from explicit
    matrices of the 2-dimensional representation over the Gaussians."""
    one = np.eye(2, dtype=complex)
    minus = -one
    fourfold = np.array([[1j, 0], [0, -1j]])
    return {SPLIT_8: one, INERT_2_4: minus, INERT_4_2: fourfold}


def test_theta_Q8_matches_matrix_traces():
    for symbol, mat in _trace_oracle().items():
        power = np.eye(2, dtype=complex)
        for k in range(1, 9):
            power = power @ mat
            trace = power.trace()
            assert abs(trace.imag) < 1e-12
            assert theta_Q8(symbol, k) == round(trace.real)


def test_theta_Q8_known_values_and_ramified_types():
    assert theta_Q8(SPLIT_8, 1) == 2
    assert theta_Q8(INERT_2_4, 1) == -2
    assert theta_Q8(INERT_2_4, 2) == 2
    assert theta_Q8(INERT_4_2, 1) == 0
    assert theta_Q8(INERT_4_2, 2) == -2
    assert theta_Q8(INERT_4_2, 4) == 2
    for sym in (RAM_E2_F1, RAM_E2_F2, RAM_E4_F1, RAM_E4_F2, RAM_WILD):
        for k in range(1, 5):
            assert theta_Q8(sym, k) == 0


def test_theta_Q8_rejects_foreign_symbols():
    with pytest.raises(ValueError):
        theta_Q8(SPLIT_8, 0)
    with pytest.raises(ValueError):
        # degree-8 cycle type that no quaternionic Frobenius produces
        theta_Q8(SplittingSymbol.from_cycle_type((5, 3)), 1)
    with pytest.raises(ValueError):
        theta_Q8(SplittingSymbol.from_pairs(((2, 1), (2, 1), (4, 1))), 1)


# ---------------------------------------------------------------------------
# splitting types: hand-checked values, then structural sweeps


def test_splitting_of_q5_twist_hand_checked(p23):
    # (2, 3) twisted by q = 5.  On paper: 2 ramifies totally (wild
    # shape); 3 | ab with (2|3) = -1 so e = 4, f = 2; 5 | q with 2, 3
    # nonsquares mod 5, hence e = 2 on the inert side; 7 and 11 are
    # nonsplit in M; 23 splits in M, theta is a square there but
    # (5|23) = -1 flips the Frobenius to the central involution; 47 and
    # 73 split with both signs positive.
    cases = {
        2: RAM_WILD,
        3: RAM_E4_F2,
        5: RAM_E2_F2,
        7: INERT_4_2,
        11: INERT_4_2,
        23: INERT_2_4,
        47: SPLIT_8,
        73: SPLIT_8,
    }
    for p, want in cases.items():
        assert splitting_in_Kq(p23, 5, p) == want, p


def test_splitting_symbol_degrees_and_ramification(p23, p541):
    for params, q in ((p23, 5), (p23, -11), (p541, 1), (p541, 12)):
        for p in primes_up_to(40):
            sym = splitting_in_Kq(params, q, p)
            assert sym.degree == 8
            ab = params.a * params.b
            if p == 2:
                ramified = not params.two_unramified or alpha_exponent(
                    params, q
                ) == 4
            else:
                ramified = (ab * q) % p == 0
            assert sym.unramified == (not ramified), (params.a, q, p)


def test_splitting_rejects_bad_twists(p23):
    with pytest.raises(ValueError):
        splitting_in_Kq(p23, 3, 5)  # 3 is not a fundamental discriminant
    with pytest.raises(ValueError):
        splitting_in_Kq(p23, -3, 5)  # fundamental but shares a factor with ab
    with pytest.raises(ValueError):
        splitting_in_Kq(p23, 0, 5)
    with pytest.raises(ValueError):
        splitting_in_Kq(p23, 5, 6)  # p must be prime


def test_splitting_at_dividing_primes_reads_the_other_root(p541):
    # p | ab: e = 4 and the residue degree follows the square class of
    # the complementary parameter
    assert legendre_symbol(41, 5) == 1
    assert splitting_in_Kq(p541, 1, 5) == RAM_E4_F1
    assert legendre_symbol(5, 41) == 1
    assert splitting_in_Kq(p541, 1, 41) == RAM_E4_F1
    # for (2, 3): (2|3) = -1 gives the f = 2 shape at 3
    p23 = QuaternionParams(2, 3, (1, 1, 0, 1, -1, 1))
    assert splitting_in_Kq(p23, 1, 3) == RAM_E4_F2


# ---------------------------------------------------------------------------
# the prime 2


def test_two_adic_branch_totally_ramified_family(p23):
    assert not p23.two_unramified
    for q in (1, 5, -7, -11, 13):
        assert splitting_in_Kq(p23, q, 2) == RAM_WILD
        assert alpha_exponent(p23, q) == 4


def test_two_adic_branch_unramified_family(p541):
    assert p541.two_unramified
    # q = 1: conductor (5 * 41)^2 forces alpha = 0
    assert alpha_exponent(p541, 1) == 0
    assert splitting_in_Kq(p541, 1, 2) == INERT_4_2
    # even q: the quadratic character ramifies at 2, so alpha = 4
    assert alpha_exponent(p541, 12) == 4
    assert splitting_in_Kq(p541, 12, 2) == RAM_E2_F2
    for q in (-3, -4, -7, -8, 8, -11, 12, 13):
        alpha = alpha_exponent(p541, q)
        assert alpha in (0, 4)
        sym = splitting_in_Kq(p541, q, 2)
        assert sym.unramified == (alpha == 0)
        if q % 2 == 0:
            assert alpha == 4


def test_two_adic_all_three_unramified_labels_occur(p1733):
    fam = QuaternionTwistFamily.build(p1733, 2000)
    counts = fam.symbol_counts(2)
    # a = b = 1 mod 8: 2 splits completely in M, so the unramified
    # labels land on (1)^8 and (2)^4 and the ramified one keeps f = 1
    assert set(counts) == {SPLIT_8, INERT_2_4, RAM_E2_F1}
    assert min(counts.values()) > 100
    dist = fam.alpha_distribution()
    assert dist[4] == counts[RAM_E2_F1]
    assert dist[0] == counts[SPLIT_8] + counts[INERT_2_4]


def test_alpha_genuinely_depends_on_q(p541):
    fam = QuaternionTwistFamily.build(p541, 3000)
    dist = fam.alpha_distribution()
    assert set(dist) == {0, 4}
    assert min(dist.values()) > 200
    counts = fam.symbol_counts(2)
    assert counts[INERT_4_2] == dist[0]
    assert counts[RAM_E2_F2] == dist[4]


# ---------------------------------------------------------------------------
# conductors and twist enumeration


def test_conductor_reference_values(p23, p541):
    assert conductor_Kq(p23, 1) == 576  # 2^4 * 6^2
    assert conductor_Kq(p23, 5) == 14400  # 576 * 25
    assert conductor_Kq(p541, 1) == 42025  # 205^2
    assert conductor_Kq(p541, 12) == 6051600  # 2^4 * 205^2 * 3^2


def test_conductor_uses_odd_part_of_q(p541):
    # q = -8 has odd part 1, so only the 2-exponent moves
    assert conductor_Kq(p541, -8) == 2**4 * 205**2
    assert conductor_Kq(p541, -4) == 2**4 * 205**2


def test_fundamental_discriminant_classifier():
    yes = (1, 5, -3, -4, 8, -8, 12, 13, -7, 21, -24, 28)
    no = (0, 2, 3, -5, 4, -12, 9, 16, 25, -25, 18, -9)
    for q in yes:
        assert is_fundamental_discriminant(q), q
    for q in no:
        assert not is_fundamental_discriminant(q), q


def test_enumeration_order_and_membership(p23, p541):
    qs = [r.q for r in enumerate_twists(p23, 50, by="q")]
    # coprime to 6, in (|q|, q) order, with the identity twist first
    assert qs == [1, 5, -7, -11, 13, 17, -19, -23, 29, -31, -35, 37, 41, -43, -47]
    qs = [r.q for r in enumerate_twists(p541, 20, by="q")]
    assert qs == [1, -3, -4, -7, -8, 8, -11, 12, 13, 17, -19]


def test_enumeration_by_conductor_is_strict(p23):
    assert [r.q for r in enumerate_twists(p23, 14400, by="conductor")] == [1]
    assert [r.q for r in enumerate_twists(p23, 14401, by="conductor")] == [1, 5]
    assert [r.q for r in enumerate_twists(p23, 10**5, by="conductor")] == [
        1,
        5,
        -7,
        -11,
        13,
    ]
    # the identity twist survives bounds below its own conductor
    assert [r.q for r in enumerate_twists(p23, 5, by="conductor")] == [1]
    with pytest.raises(ValueError):
        list(enumerate_twists(p23, 4, by="conductor"))
    with pytest.raises(ValueError):
        list(enumerate_twists(p23, 50, by="height"))


def test_twist_records_carry_consistent_data(p23):
    for rec in enumerate_twists(p23, 200, by="q", pmax=13):
        assert rec.conductor == conductor_Kq(p23, rec.q)
        assert rec.alpha == alpha_exponent(p23, rec.q)
        assert rec.root_sign is None
        assert sorted(rec.splitting) == [2, 3, 5, 7, 11, 13]
        for p, sym in rec.splitting.items():
            assert sym == splitting_in_Kq(p23, rec.q, p)


# ---------------------------------------------------------------------------
# minimal polynomial of sqrt(theta)


def test_octic_reference_values(p23):
    data = sqrt_theta_minimal_polynomial(p23)
    assert data.degree == 8
    assert data.scale == 6
    assert data.quartic == (
        Fraction(-4),
        Fraction(3),
        Fraction(-2, 3),
        Fraction(1, 36),
    )
    assert data.octic == MonicPoly(8, (0, -144, 0, 3888, 0, -31104, 0, 46656))


def test_octic_scales_are_minimal(p23, p541, p1733):
    for params, scale in ((p23, 6), (p541, 205), (p1733, 561)):
        data = sqrt_theta_minimal_polynomial(params)
        assert data.degree == 8
        assert data.scale == scale
        # every scaled coefficient is an integer ...
        for k, c in enumerate(data.quartic, start=1):
            assert (c * Fraction(scale) ** k).denominator == 1
        # ... and no prime factor of the scale can be dropped
        for p in factorize(scale):
            smaller = scale // p
            assert any(
                (c * Fraction(smaller) ** k).denominator != 1
                for k, c in enumerate(data.quartic, start=1)
            ), (scale, p)


def test_quartic_annihilates_theta_exactly(p23, p541, p1733):
    for params in (p23, p541, p1733):
        data = sqrt_theta_minimal_polynomial(params)
        t = params.theta
        a1, a2, a3, a4 = data.quartic
        value = t * t * t * t + a1 * (t * t * t) + a2 * (t * t) + a3 * t
        value = value + BiquadraticElement.make(params.a, params.b, a4)
        assert value.is_zero()
        # leading and trailing coefficients agree with trace and norm
        conj = t.conjugates()
        trace = sum(c.coords[0] for c in conj)
        assert a1 == -trace
        norm = conj[0]
        for c in conj[1:]:
            norm = norm * c
        assert norm.coords == (a4, 0, 0, 0)


def test_octic_annihilates_scaled_sqrt_theta(p23, p541, p1733):
    # the octic is even, so on T = scale * sqrt(theta) it reduces to the
    # quartic evaluated at scale^2 * theta; check that exactly
    for params in (p23, p541, p1733):
        data = sqrt_theta_minimal_polynomial(params)
        s = data.scale
        x = params.theta * (s * s)
        asc = data.octic.ascending()  # constant first, monic last
        even = [Fraction(asc[2 * i]) for i in range(5)]
        value = BiquadraticElement.make(params.a, params.b, even[0])
        power = BiquadraticElement.make(params.a, params.b, 1)
        for c in even[1:]:
            power = power * x
            value = value + power * c
        assert value.is_zero()


def test_small_octic_quartic_agrees_with_generic_irreducibility(p23):
    # the certification is theorem-based; for the small parameter pair
    # the generic rational-factor search is feasible and must agree on
    # the quartic layer
    data = sqrt_theta_minimal_polynomial(p23)
    s = data.scale
    scaled = MonicPoly(
        4, tuple(int(c * Fraction(s) ** k) for k, c in enumerate(data.quartic, 1))
    )
    assert is_irreducible_over_Q(scaled)


def test_octic_factor_shapes_match_local_classifier(p23, p541, p1733):
    # strongest end-to-end check: reduce the octic mod p and compare the
    # factorization shape with the splitting classifier at q = 1, at
    # every odd good prime where the reduction stays squarefree
    for params in (p23, p541, p1733):
        octic = sqrt_theta_minimal_polynomial(params).octic
        ab = params.a * params.b
        checked = 0
        for p in primes_up_to(200):
            if p == 2 or ab % p == 0:
                continue
            shape = factor_mod_p(octic, p).symbol()
            if not shape.unramified:
                continue  # p divides the index of the monogenic order
            assert shape == splitting_in_Kq(params, 1, p), (params.a, params.b, p)
            checked += 1
        assert checked >= 35


def test_nonsquare_witnesses(p23, p541):
    assert nonsquare_split_prime_witnesses(p23) == [47, 73, 97]
    assert nonsquare_split_prime_witnesses(p541) == [31, 59, 131]
    with pytest.raises(NotFound):
        # the only split prime below 40 for (2, 3) is 23, where theta is
        # a square
        nonsquare_split_prime_witnesses(p23, pmax=40)
    # independent verification along all four completions
    for params, ps in ((p23, (47, 73, 97)), (p541, (31, 59, 131))):
        for p in ps:
            for r in embed_at_split_prime(params.theta, p, 24):
                assert residue_square_class(r, p, 24) is False


# ---------------------------------------------------------------------------
# embedding agreement sweeps (redundancy must never trip)


def test_four_embeddings_agree_at_all_split_primes(p23, p541, p1733):
    # sweeps every odd prime below 1000; inside the split branch the
    # classifier compares all four completions and raises on mismatch
    for params in (p23, p541, p1733):
        ab = params.a * params.b
        for p in primes_up_to(997):
            if p == 2 or ab % p == 0:
                continue
            sym = splitting_in_Kq(params, 1, p)
            assert sym.degree == 8


def test_two_adic_labels_agree_for_all_small_twists(p541, p1733):
    # every twist runs the 2-adic test along all four embeddings; a
    # label mismatch or an undecided lift would raise
    for params in (p541, p1733):
        fam = QuaternionTwistFamily.build(params, 4000)
        assert fam.size > 1000
        assert sum(fam.symbol_counts(2).values()) == fam.size


# ---------------------------------------------------------------------------
# columnar family statistics


def test_family_counts_against_direct_enumeration(p23):
    fam = QuaternionTwistFamily.build(p23, 300)
    recs = list(enumerate_twists(p23, 300, by="q", pmax=60))
    assert fam.size == len(recs)
    assert fam.qs == [r.q for r in recs]
    assert fam.conductors == [r.conductor for r in recs]
    for p in primes_up_to(60):
        want = {}
        for r in recs:
            want[r.splitting[p]] = want.get(r.splitting[p], 0) + 1
        assert fam.symbol_counts(p) == want, p


def test_theta_sums_record_route_equals_columnar_route(p23, p541):
    for params, qmax in ((p23, 300), (p541, 400)):
        fam = QuaternionTwistFamily.build(params, qmax)
        recs = list(enumerate_twists(params, qmax, by="q", pmax=60))
        view = RecordFamilyView(recs, theta_fn=theta_Q8)
        for p in primes_up_to(60):
            for k in (1, 2, 3):
                assert fam.theta_sum(p, k) == view.theta_sum(p, k), (p, k)
                assert fam.ramified_theta_sum(p, k) == 0
                assert view.ramified_theta_sum(p, k) == 0
        assert fam.mean_log_conductor() == view.mean_log_conductor()


def test_one_level_density_identical_along_both_routes(p23):
    recs = list(enumerate_twists(p23, 300, by="q", pmax=60))
    fam = QuaternionTwistFamily.build(p23, 300)
    via_records = one_level_density(
        recs, sigma=0.2, symmetry="SO", theta_fn=theta_Q8
    )
    via_family = one_level_density(fam, sigma=0.2, symmetry="SO")
    assert via_records.density_estimate == via_family.density_estimate
    assert via_records.S2 == via_family.S2
    assert via_family.S_ram == 0.0


def test_share_table_matches_chebotarev_weights(fam23_10k):
    # split primes in the base field see (1)^8 and (2)^4 in equal
    # measure; the rest are constantly (4)^2.  Per-prime: a 3 sigma
    # binomial window around 1/2.  Pooled over primes up to 100: a
    # 3 sigma window around (1/8, 1/8, 3/4) with prime-sampling noise.
    rows = splitting_share_table(fam23_10k, pmax=100)
    split_ps = [r.p for r in rows if r.splits_in_base]
    assert split_ps == [23, 47, 71, 73, 97]
    for r in rows:
        assert r.n + (fam23_10k.size - r.n) == fam23_10k.size
        if r.splits_in_base:
            share = r.count_split8 / r.n
            sigma = math.sqrt(0.25 / r.n)
            assert abs(share - 0.5) <= 3 * sigma, r.p
            assert r.count_inert42 == 0
        else:
            assert r.count_split8 == 0 and r.count_inert24 == 0
            assert r.count_inert42 == r.n
    total = sum(r.n for r in rows)
    pooled = (
        sum(r.count_split8 for r in rows) / total,
        sum(r.count_inert24 for r in rows) / total,
        sum(r.count_inert42 for r in rows) / total,
    )
    for got, want in zip(pooled, (0.125, 0.125, 0.75)):
        sigma = math.sqrt(want * (1 - want) / len(rows))
        assert abs(got - want) <= 3 * sigma, (got, want)


def test_ramified_rows_excluded_from_share_table(fam23_10k):
    # twists divisible by p sit out of row p
    rows = {r.p: r for r in splitting_share_table(fam23_10k, pmax=30)}
    divisible = sum(1 for q in fam23_10k.qs if q % 5 == 0)
    assert rows[5].n == fam23_10k.size - divisible
    assert divisible > 0


# ---------------------------------------------------------------------------
# one-level density of the twist family


def test_one_level_density_orthogonal_trend(p23):
    # the averaged density estimate moves toward 1 + sigma/2 as the
    # family grows; the prime sums are even in theta so S2 flips sign
    # relative to symplectic-type families
    deviations = []
    for qmax in (10**3, 10**4, 10**5):
        fam = QuaternionTwistFamily.build(p23, qmax)
        report = one_level_density(fam, sigma=0.25, symmetry="SO")
        assert report.symmetry == "SO"
        assert report.target == 1.125
        assert report.S_ram == 0.0
        assert report.S2 < 0
        assert 1.0 < report.density_estimate < 1.125
        deviations.append(abs(report.residual()))
    assert deviations[0] > deviations[1] > deviations[2]
    assert deviations[2] < 0.07


def test_family_view_protocol_fields(fam23_10k):
    assert fam23_10k.size == len(fam23_10k.qs)
    assert fam23_10k.height_cutoff == 10**4
    assert not hasattr(fam23_10k, "covered_prime_bound")
    logs = np.log(np.array(fam23_10k.conductors, dtype=float))
    assert fam23_10k.mean_log_conductor() == pytest.approx(float(logs.mean()))
