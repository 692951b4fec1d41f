import random
from fractions import Fraction

import pytest

from arithstat.cubicforms import (
    BinaryCubicForm,
    InsufficientTabulation,
    NotPMaximal,
    TotallyRamifiedSomewhere,
    canonical_form,
    cl3,
    cubic_form_census,
    disc_cubic,
    enumerate_cubic_fields,
    enumerate_reduced_forms,
    fundamental_discriminant,
    is_DH_maximal,
    is_DH_maximal_bruteforce,
    is_fundamental_discriminant,
    is_reduced,
    predicted_cubic_ramified_density,
    predicted_cubic_type_density,
    reduce_form,
    resolvent_splitting,
    splitting_symbol_cubic,
)
from arithstat.padic import legendre_symbol
from arithstat.polyfactor import (
    MonicPoly,
    ZeroDiscriminantError,
    discriminant,
    is_irreducible_over_Q,
    is_p_maximal,
    splitting_symbol,
)
from arithstat.primes import factorize


def random_unimodular(rng, steps=6):
    m = ((1, 0), (0, 1))
    gens = [((1, 0), (1, 1)), ((1, 0), (-1, 1)), ((0, 1), (-1, 0)), ((0, 1), (1, 0))]
    for _ in range(steps):
        g = rng.choice(gens)
        m = (
            (
                m[0][0] * g[0][0] + m[0][1] * g[1][0],
                m[0][0] * g[0][1] + m[0][1] * g[1][1],
            ),
            (
                m[1][0] * g[0][0] + m[1][1] * g[1][0],
                m[1][0] * g[0][1] + m[1][1] * g[1][1],
            ),
        )
    return m


def test_disc_examples():
    assert disc_cubic(BinaryCubicForm(1, 0, 0, 7)) == -1323
    assert disc_cubic(BinaryCubicForm(1, 0, 0, 7)) == discriminant(MonicPoly(3, (0, 0, 7)))
    assert disc_cubic(BinaryCubicForm(1, 0, -1, 0)) == 4
    assert disc_cubic(BinaryCubicForm(0, 0, 0, 1)) == 0
    assert disc_cubic(BinaryCubicForm(1, 0, -1, -1)) == -23
    assert disc_cubic(BinaryCubicForm(1, 1, -2, -1)) == 49


def test_transform_is_action_and_disc_invariant():
    rng = random.Random(5)
    for _ in range(150):
        f = BinaryCubicForm(*(rng.randint(-9, 9) for _ in range(4)))
        g = random_unimodular(rng)
        h = random_unimodular(rng)
        assert f.transformed(g).disc == f.disc
        # row-vector convention composes contravariantly
        hg = (
            (
                h[0][0] * g[0][0] + h[0][1] * g[1][0],
                h[0][0] * g[0][1] + h[0][1] * g[1][1],
            ),
            (
                h[1][0] * g[0][0] + h[1][1] * g[1][0],
                h[1][0] * g[0][1] + h[1][1] * g[1][1],
            ),
        )
        assert f.transformed(g).transformed(h) == f.transformed(hg)
    with pytest.raises(ValueError):
        BinaryCubicForm(1, 0, 0, 1).transformed(((2, 0), (0, 1)))


def test_hessian_covariance():
    rng = random.Random(9)
    for _ in range(60):
        f = BinaryCubicForm(*(rng.randint(-7, 7) for _ in range(4)))
        g = random_unimodular(rng)
        P, Q, R = f.hessian()
        P2, Q2, R2 = f.transformed(g).hessian()
        for x, y in ((1, 0), (0, 1), (1, 1), (2, -1), (3, 5)):
            u = x * g[0][0] + y * g[1][0]
            v = x * g[0][1] + y * g[1][1]
            assert P2 * x * x + Q2 * x * y + R2 * y * y == P * u * u + Q * u * v + R * v * v


def test_reduction_lands_in_domain_and_canonical_is_stable():
    rng = random.Random(11)
    checked = 0
    while checked < 120:
        f = BinaryCubicForm(*(rng.randint(-12, 12) for _ in range(4)))
        if f.disc == 0 or not f.is_irreducible():
            continue
        checked += 1
        red = reduce_form(f)
        assert red.disc == f.disc
        assert is_reduced(red)
        can = canonical_form(f)
        assert can.a > 0
        g = random_unimodular(rng, steps=8)
        assert canonical_form(f.transformed(g)) == can


def brute_orbit_representatives(box, xmax):
    """Canonical forms of every irreducible form with coefficients in
    [-box, box] and 0 < |disc| < xmax."""
    out = set()
    rng = range(-box, box + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    f = BinaryCubicForm(a, b, c, d)
                    if not 0 < abs(f.disc) < xmax:
                        continue
                    if not f.is_irreducible():
                        continue
                    out.add(canonical_form(f))
    return out


def test_enumeration_matches_bruteforce_orbits():
    xmax = 120
    enumerated = list(enumerate_reduced_forms(xmax))
    assert len(enumerated) == len(set(enumerated))
    for f in enumerated:
        assert 0 < abs(f.disc) < xmax
        assert f == canonical_form(f)
    brute = brute_orbit_representatives(6, xmax)
    # the box is wide enough to hit every orbit with |disc| < 120
    assert set(enumerated) == brute


def test_enumeration_sign_filter():
    pos = set(enumerate_reduced_forms(200, sign=1))
    neg = set(enumerate_reduced_forms(200, sign=-1))
    both = set(enumerate_reduced_forms(200))
    assert pos | neg == both and not pos & neg
    assert all(f.disc > 0 for f in pos)
    assert all(f.disc < 0 for f in neg)


def test_DH_maximality_examples():
    assert is_DH_maximal(BinaryCubicForm(1, 0, 0, 7), 3)
    assert not is_DH_maximal(BinaryCubicForm(25, 5, 1, 1), 5)
    # p does not divide the discriminant
    assert is_DH_maximal(BinaryCubicForm(1, 0, -1, -1), 5)
    with pytest.raises(ZeroDiscriminantError):
        is_DH_maximal(BinaryCubicForm(1, 2, 1, 0), 2)


def test_DH_maximality_agrees_with_monic_dedekind():
    rng = random.Random(17)
    checked = 0
    while checked < 200:
        f = MonicPoly(3, tuple(rng.randint(-15, 15) for _ in range(3)))
        if discriminant(f) == 0:
            continue
        form = BinaryCubicForm(1, *f.coeffs)
        for p in (2, 3, 5, 7):
            assert is_DH_maximal(form, p) == is_p_maximal(f, p), (f, p)
        checked += 1


def test_DH_maximality_agrees_with_group_bruteforce():
    rng = random.Random(23)
    cases = 0
    while cases < 25:
        f = BinaryCubicForm(*(rng.randint(-6, 6) for _ in range(4)))
        p = rng.choice((2, 3))
        if f.disc == 0 or f.disc % (p * p):
            continue
        assert is_DH_maximal(f, p) == is_DH_maximal_bruteforce(f, p), (f, p)
        cases += 1
    # targeted nonmaximal witnesses
    assert not is_DH_maximal_bruteforce(BinaryCubicForm(4, 2, 1, 1), 2)
    assert is_DH_maximal_bruteforce(BinaryCubicForm(1, 0, 0, 7), 3)


def test_splitting_symbol_examples():
    F = BinaryCubicForm(1, 0, 0, 7)
    assert splitting_symbol_cubic(F, 3).to_text() == "3:1"
    assert splitting_symbol_cubic(F, 7).to_text() == "3:1"
    assert splitting_symbol_cubic(F, 13).to_text() == "1:3"
    assert splitting_symbol_cubic(F, 2).to_text() == "1:2+1:1"
    assert splitting_symbol_cubic(BinaryCubicForm(1, 0, -1, 0), 5).cycle_type() == (1, 1, 1)
    with pytest.raises(NotPMaximal):
        splitting_symbol_cubic(BinaryCubicForm(25, 5, 1, 1), 5)


def test_splitting_symbol_handles_projective_root_at_infinity():
    # a = 5: the point [1:0] is rational of degree 1
    F = BinaryCubicForm(5, 1, -1, 1)
    for p in (5,):
        if is_DH_maximal(F, p):
            sym = splitting_symbol_cubic(F, p)
            assert sym.degree == 3
            assert any(f == 1 for e, f in sym.pairs)


def test_splitting_symbol_matches_monic_route():
    rng = random.Random(31)
    checked = 0
    while checked < 150:
        f = MonicPoly(3, tuple(rng.randint(-12, 12) for _ in range(3)))
        if discriminant(f) == 0:
            continue
        form = BinaryCubicForm(1, *f.coeffs)
        p = rng.choice((2, 3, 5, 7, 11))
        if not is_p_maximal(f, p):
            continue
        assert splitting_symbol_cubic(form, p) == splitting_symbol(f, p)
        checked += 1


def test_census_exact_ratios_p5():
    counts = cubic_form_census(5)
    nonzero = sum(v for k, v in counts.items() if k != "degenerate")
    for tau, size in (((1, 1, 1), 1), ((2, 1), 3), ((3,), 2)):
        assert Fraction(counts[tau], nonzero) == Fraction(size, 6)


def test_fundamental_discriminants():
    assert fundamental_discriminant(-23) == -23
    assert fundamental_discriminant(-44) == -11
    assert fundamental_discriminant(12) == 12
    assert fundamental_discriminant(8) == 8
    assert fundamental_discriminant(49) == 1
    assert is_fundamental_discriminant(-4)
    assert not is_fundamental_discriminant(12 * 4)
    assert not is_fundamental_discriminant(1)
    assert not is_fundamental_discriminant(-23 * 9)


def test_resolvent_splitting_table():
    assert resolvent_splitting((1, 1, 1)) == (1, 1)
    assert resolvent_splitting((3,)) == (1, 1)
    assert resolvent_splitting((2, 1)) == (2,)
    with pytest.raises(ValueError):
        resolvent_splitting((2, 2))


def test_field_enumeration_smallest_discriminants():
    records = list(enumerate_cubic_fields(101))
    discs = sorted(r.disc for r in records)
    assert discs == [-87, -83, -76, -59, -44, -31, -23, 49, 81]
    # each field appears exactly once
    assert len(records) == len({r.form for r in records})
    r23 = next(r for r in records if r.disc == -23)
    assert r23.ntr and r23.resolvent_disc() == -23
    assert r23.conductor == 23
    r81 = next(r for r in records if r.disc == 81)
    assert not r81.ntr  # cyclic field ramified totally at 3
    with pytest.raises(TotallyRamifiedSomewhere):
        r81.resolvent_disc()
    # disc -44 = -11 * 4: conductor 2 is totally ramified, yet the
    # fundamental resolvent disc is still recorded
    r44 = next(r for r in records if r.disc == -44)
    assert not r44.ntr
    assert r44.fundamental_resolvent_disc == -11
    with pytest.raises(TotallyRamifiedSomewhere):
        r44.resolvent_disc()


def test_ntr_records_have_fundamental_disc():
    for r in enumerate_cubic_fields(500):
        if r.ntr:
            assert is_fundamental_discriminant(r.disc)
            assert r.fundamental_resolvent_disc == r.disc


def test_field_records_cross_check_monic_fields():
    """Every maximal irreducible monic cubic's discriminant shows up among
    the field records (the field it generates is in the tabulation)."""
    records_discs = {r.disc for r in enumerate_cubic_fields(800)}
    rng = random.Random(41)
    found = 0
    while found < 40:
        f = MonicPoly(3, tuple(rng.randint(-6, 6) for _ in range(3)))
        D = discriminant(f)
        if D == 0 or abs(D) >= 800:
            continue
        if not is_irreducible_over_Q(f):
            continue
        if any(not is_p_maximal(f, p) for p, e in factorize(abs(D)).items() if e >= 2):
            continue
        assert D in records_discs, f
        found += 1


def test_cl3_values():
    tab = {}
    for r in enumerate_cubic_fields(600):
        if r.ntr:
            tab[r.disc] = tab.get(r.disc, 0) + 1
    assert cl3(-23, tab, 600) == 3
    assert cl3(-4, tab, 600) == 1
    assert cl3(5, tab, 600) == 1
    assert cl3(229, tab, 600) == 3
    assert cl3(257, tab, 600) == 3
    with pytest.raises(InsufficientTabulation):
        cl3(-607, tab, 600)
    with pytest.raises(ValueError):
        cl3(6, tab, 600)


def test_resolvent_quadratic_consistency():
    """Unramified splitting in the quadratic resolvent matches the map from
    the cubic splitting type (Legendre symbol route)."""
    for r in enumerate_cubic_fields(400):
        if not r.ntr:
            continue
        d = r.resolvent_disc()
        for p, sym in r.splitting.items():
            if p == 2 or r.disc % p == 0:
                continue
            expected = (1, 1) if legendre_symbol(d, p) == 1 else (2,)
            assert resolvent_splitting(sym.cycle_type()) == expected


def test_predicted_densities_sum_to_one():
    for p in (2, 3, 5, 7, 11):
        total = predicted_cubic_ramified_density(p) + sum(
            predicted_cubic_type_density(p, tau) for tau in ((1, 1, 1), (2, 1), (3,))
        )
        assert total == 1
