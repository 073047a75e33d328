"""Truncated series, Koszul homology, star maps, Golod tests, deviations."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powerhom.golod import (
    deviation_product,
    deviations_from_series,
    deviations_via_recursion,
    golod_series,
    golod_test,
    koszul_homology,
    poincare_actual,
    star_multiply,
    star_surjectivity_check,
    tor_product_check,
    wedge_product,
)
from powerhom.poly import PolyRing
from powerhom.powers import IdealPowers
from powerhom.quotient import QuotientRingCtx
from powerhom.resolutions import betti_diagram, resolve_quotient_by_ideal
from powerhom.series import TruncatedSeries, geometric


# -- series -------------------------------------------------------------------


def test_series_arith():
    a = TruncatedSeries([1, 2, 3], 4)
    b = TruncatedSeries([0, 1], 4)
    assert (a * b).coeffs == (0, 1, 2, 3, 0)
    assert (a - a).coeffs == (0,) * 5
    assert (a * a.inverse()).coeffs == (1, 0, 0, 0, 0)


def test_series_geometric():
    g = geometric([2], 6)
    assert [int(c) for c in g.coeffs] == [2**i for i in range(7)]


def test_series_log_exp_inverse():
    P = TruncatedSeries([1, 2, 5, 9, 14, 20], 5)
    assert P.log().exp() == P
    Q = TruncatedSeries([0, 3, -1, Fraction(7, 2)], 5)
    assert Q.exp().log() == Q


@settings(max_examples=40, deadline=None)
@given(cs=st.lists(st.fractions(min_value=-3, max_value=3), min_size=1, max_size=5))
def test_series_exp_log_random(cs):
    P = TruncatedSeries([1] + cs, len(cs) + 1)
    assert P.log().exp() == P


def test_series_requires_unit():
    with pytest.raises(ZeroDivisionError):
        TruncatedSeries([0, 1], 3).inverse()
    with pytest.raises(ValueError):
        TruncatedSeries([2, 1], 3).log()


# -- Koszul homology -----------------------------------------------------------


def test_homology_dims_square(R2, xy):
    x, y = xy
    H = koszul_homology(QuotientRingCtx(R2, [x**2, x * y, y**2]))
    assert H.graded_dims(1) == {2: 3}
    assert H.graded_dims(2) == {3: 2}


def test_homology_vanishes_for_regular_sequence(R2):
    H = koszul_homology(QuotientRingCtx(PolyRing(("x", "y")), []))
    assert H.total_dim(1) == 0 and H.total_dim(2) == 0


def test_homology_of_truncated_line():
    Rx = PolyRing(("x",))
    X = Rx.var(0)
    for s in (2, 3, 5):
        H = koszul_homology(QuotientRingCtx(Rx, [X**s]))
        assert H.graded_dims(1) == {s: 1}


def test_stored_representatives_are_cycles(R2, xy):
    x, y = xy
    H = koszul_homology(QuotientRingCtx(R2, [x**3, x * y, y**2]))
    for i in (1, 2):
        for cls in H.classes(i):
            assert H.is_cycle(cls.i, cls.degree, cls.vector)


def test_homology_matches_graded_betti(R2, R3, xy, xyz):
    x, y = xy
    X, Y, Z = xyz
    cases = [
        (R2, [x**2, x * y, y**2]),
        (R2, [x**2, y**2]),
        (R2, [x**3, x * y]),
        (R3, [X * Y, Y * Z, Z * X]),
    ]
    for ring, gens in cases:
        res = resolve_quotient_by_ideal(gens)
        b = betti_diagram(res)
        H = koszul_homology(QuotientRingCtx(ring, gens), resolution=res)
        for i in range(ring.ngens + 1):
            expected = {k: v for (j, k), v in b.data.items() if j == i}
            assert H.graded_dims(i) == expected, (gens, i)


def test_products_trivial_for_square(R2, xy):
    x, y = xy
    H = koszul_homology(QuotientRingCtx(R2, [x**2, x * y, y**2]))
    trivial, witnesses = tor_product_check(H)
    assert trivial and not witnesses


def test_products_nontrivial_for_complete_intersection(R2, xy):
    x, y = xy
    H = koszul_homology(QuotientRingCtx(R2, [x**2, y**2]))
    trivial, witnesses = tor_product_check(H)
    assert not trivial
    w = witnesses[0]
    assert (w.left.i, w.right.i) == (1, 1) and w.product_degree == 4
    assert "e1^e2" in w.description


def test_products_trivially_trivial_for_ring(R2):
    H = koszul_homology(QuotientRingCtx(PolyRing(("x", "y")), []))
    trivial, _ = tor_product_check(H)
    assert trivial


# -- star map ------------------------------------------------------------------


def test_star_one_variable_shifts_socle():
    Rx = PolyRing(("x",))
    X = Rx.var(0)
    P = IdealPowers([X])
    H2 = P.koszul_homology(2)
    (cls,) = H2.classes(1)
    out = star_multiply(P, X, cls, 2, 1)
    H3 = P.koszul_homology(3)
    coords = H3.class_coordinates(out.i, out.degree, out.vector)
    assert coords and out.degree == 3


def test_star_rejects_outsiders(R2, xy):
    x, y = xy
    P = IdealPowers([x**2, x * y, y**2])
    cls = P.koszul_homology(1).classes(1)[0]
    with pytest.raises(ValueError):
        star_multiply(P, x, cls, 1, 1)  # x is not in I


def test_star_is_multiplicative(R2, xy):
    x, y = xy
    P = IdealPowers([x**2, x * y, y**2])
    H = P.koszul_homology(1)
    rng = random.Random(2)
    pool = [x**2, x * y, y**2, x**2 + y**2]
    Htgt = P.koszul_homology(3)
    for cls in H.classes(1) + H.classes(2):
        a = pool[rng.randrange(len(pool))]
        b = pool[rng.randrange(len(pool))]
        lhs = star_multiply(P, a * b, cls, 1, 2)
        rhs = star_multiply(P, a, star_multiply(P, b, cls, 1, 1), 2, 1)
        lc = Htgt.class_coordinates(lhs.i, lhs.degree, lhs.vector)
        rc = Htgt.class_coordinates(rhs.i, rhs.degree, rhs.vector)
        assert lc == rc


def test_star_preserves_boundaries(R2, xy):
    x, y = xy
    P = IdealPowers([x**2, x * y, y**2])
    H1 = P.koszul_homology(1)
    H2 = P.koszul_homology(2)
    comp = H1._component(1, 3)  # degree-3 part of K_1 over R/m^2
    if comp is not None:
        for bvec in list(comp.boundaries.rows.values())[:3]:
            cls_vec = dict(bvec)
            from powerhom.golod import HomologyClass

            cls = HomologyClass(H1.A, 1, 3, cls_vec)
            out = star_multiply(P, x**2, cls, 1, 1)
            assert H2.is_boundary(out.i, out.degree, out.vector)


def test_star_surjectivity_square(R2, xy):
    x, y = xy
    P = IdealPowers([x**2, x * y, y**2])
    for j in (1, 2):
        rep = star_surjectivity_check(P, 2, j, i_max=2)
        assert rep.all_surjective


def test_star_surjectivity_identity_at_j0(R2, xy):
    x, y = xy
    P = IdealPowers([x**2, x * y, y**2])
    rep = star_surjectivity_check(P, 2, 0, i_max=2)
    assert rep.all_surjective


# -- Golod ---------------------------------------------------------------------


def test_golod_series_examples():
    assert [int(c) for c in golod_series(2, (3, 2), 3).coeffs] == [1, 2, 4, 8]
    assert [int(c) for c in golod_series(2, (2, 1), 3).coeffs] == [1, 2, 3, 5]
    assert [int(c) for c in golod_series(3, (0, 0, 0), 3).coeffs] == [1, 3, 3, 1]


def test_poincare_actual_examples(R2, xy):
    x, y = xy
    A = QuotientRingCtx(R2, [x**2, x * y, y**2])
    assert [int(c) for c in poincare_actual(A, 3).coeffs] == [1, 2, 4, 8]
    Aci = QuotientRingCtx(R2, [x**2, y**2])
    assert [int(c) for c in poincare_actual(Aci, 3).coeffs] == [1, 2, 3, 4]
    AR = QuotientRingCtx(R2, [])
    assert [int(c) for c in poincare_actual(AR, 2).coeffs] == [1, 2, 1]


def test_golod_positive(R2, xy):
    x, y = xy
    P = IdealPowers([x**2, x * y, y**2])
    v = golod_test(P, 1, 6)
    assert v.is_golod and v.series_equal and v.products_trivial
    assert [int(c) for c in v.actual.coeffs] == [1, 2, 4, 8, 16, 32, 64]


def test_golod_negative_complete_intersection(R2, xy):
    x, y = xy
    P = IdealPowers([x**2, y**2])
    v = golod_test(P, 1, 4)
    assert not v.is_golod
    assert v.first_discrepancy == 3
    assert int(v.actual[3]) == 4 and int(v.bound[3]) == 5
    assert not v.products_trivial and v.witnesses


def test_golod_powers_of_maximal_ideal(R2, xy):
    """R/m^k passes the Golod test for k <= 3, including the degenerate
    k = 1 case (the residue field itself)."""
    x, y = xy
    P = IdealPowers([x, y])
    for k in (1, 2, 3):
        v = golod_test(P, k, 6)
        assert v.is_golod, (k, v)
    assert [int(c) for c in golod_test(P, 1, 6).actual.coeffs] == [1, 0, 0, 0, 0, 0, 0]


def test_golod_rejects_nonminimal_presentation(R2, xy):
    x, y = xy
    P = IdealPowers([x - y, y**3])
    with pytest.raises(ValueError, match="minimal polynomial ring"):
        golod_test(P, 1, 4)


def test_golod_series_dominates_actual(R2, xy):
    """Classical extremality: actual coefficients never exceed the bound."""
    x, y = xy
    for gens, k, t in (
        ([x**2, y**2], 1, 5),
        ([x**2, x * y, y**2], 2, 4),
        ([x**3, x * y], 1, 4),
    ):
        P = IdealPowers(gens)
        v = golod_test(P, k, t)
        assert all(a <= b for a, b in zip(v.actual.coeffs, v.bound.coeffs))


def test_golod_consistency_series_implies_products(R2, R3, xy, xyz):
    """When the series agree through order >= 4, products are trivial too."""
    x, y = xy
    X, Y, Z = xyz
    cases = [
        ([x**2, x * y, y**2], 1, 4),
        ([x**2, x * y], 1, 4),
        ([x**2, x * y], 2, 4),
        ([X * Y, Y * Z, Z * X], 1, 4),
        ([x**2, y**2], 2, 4),
    ]
    for gens, k, t in cases:
        v = golod_test(IdealPowers(gens), k, t)
        if v.series_equal:
            assert v.products_trivial, (gens, k)


# -- deviations ------------------------------------------------------------


def test_deviations_of_geometric():
    eps = deviations_from_series(geometric([2], 4))
    assert eps == [2, 3, 2, 3]


def test_deviations_regular_ring():
    P = TruncatedSeries([1, 1], 5) ** 3
    assert deviations_from_series(P) == [3, 0, 0, 0, 0]
    assert deviations_from_series(TruncatedSeries.one(4)) == [0, 0, 0, 0]


def test_deviations_recursion_matches_peeling():
    assert deviations_via_recursion(2, (3, 2), 8) == deviations_from_series(
        golod_series(2, (3, 2), 8)
    )
    assert deviations_via_recursion(2, (2, 1), 8) == deviations_from_series(
        golod_series(2, (2, 1), 8)
    )
    assert deviations_via_recursion(3, (0, 0, 0), 6) == [3, 0, 0, 0, 0, 0]


@settings(max_examples=30, deadline=None)
@given(
    d=st.integers(1, 3),
    b1=st.integers(0, 4),
    b2=st.integers(0, 4),
    b3=st.integers(0, 4),
)
def test_deviations_round_trip_random(d, b1, b2, b3):
    betti = (b1, b2, b3)[:d]
    t = 8
    series = golod_series(d, betti, t)
    eps = deviations_from_series(series)
    assert eps == deviations_via_recursion(d, betti, t)
    assert deviation_product(eps, t) == series


def test_deviations_reject_invalid_series():
    bad = TruncatedSeries([1, 1, Fraction(1, 2)], 2)
    with pytest.raises(ValueError):
        deviations_from_series(bad)


def test_prime_field_pipeline():
    """The opt-in GF(p) mode runs the whole homological stack exactly."""
    from powerhom.artin_rees import artin_rees_number, artin_rees_oracle
    from powerhom.rings import PrimeField

    F = PrimeField(32003)
    R = PolyRing(("x", "y"), field=F)
    x, y = R.gens()
    P = IdealPowers([x**2, x * y, y**2])
    v = golod_test(P, 1, 5)
    assert v.is_golod
    assert [int(c) for c in v.actual.coeffs] == [1, 2, 4, 8, 16, 32]
    gens = [x**2, x * y, y**2]
    assert artin_rees_number(gens).rho == artin_rees_oracle(gens)[0] == 2
    assert star_surjectivity_check(P, 2, 1, i_max=2).all_surjective


def test_deviations_of_actual_poincare(R2, xy):
    x, y = xy
    P = IdealPowers([x**2, x * y, y**2])
    series = poincare_actual(P.quotient(2), 4)
    eps = deviations_from_series(series)
    assert eps[0] == 2  # embedding dimension
    assert eps[1] == len(P.power(2))  # first deviation = beta_1(R/I^2)
