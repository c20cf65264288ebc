import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import AMBIENT
from conicbundle.cremona import (
    RationalMap,
    cross_minors_divisible,
    fiber_singular_points,
    pole_minors,
    projectively_equal,
    sample_surface,
    satellite_curve,
    theta,
    theta_prime,
    verify_commute,
    verify_fixes_curve,
    verify_involution,
    verify_surface_invariance,
)
from conicbundle.exactalg import MultiPoly, poly_parse
from conicbundle.submonoidal import classify_fibers, small_discriminant_R

T = ("t0", "t1")


def test_eckardt_satellite_is_a_line(eckardt):
    sat = satellite_curve(eckardt)
    assert [str(f) for f in sat.forms] == ["t0", "t1", "-t0", "-t1"]
    assert sat.canceled == poly_parse("t0*t1", T)
    assert sat.degree == 1 and not sat.expected_generic_degree
    # every point of the image lies on V(x0 + x2, x1 + x3)
    for t in [(1, 2), (-3, 5), (7, 1)]:
        y = sat(t)
        assert y[0] + y[2] == 0 and y[1] + y[3] == 0


def test_satellite_hits_singular_point_of_line_pair(eckardt):
    rep = classify_fibers(eckardt)
    assert rep.P.evaluate([-1, 1]) == 0
    (pt,) = fiber_singular_points(eckardt, (-1, 1))
    assert projectively_equal(pt, satellite_curve(eckardt)((-1, 1)))


def test_eckardt_theta(eckardt):
    th = theta(eckardt)
    assert th.degree == 3
    assert th.algebraic_degree == 1
    cert = verify_surface_invariance(th, eckardt)
    assert cert.passed and cert.quotient_degree == 6
    assert verify_involution(th, "symbolic").passed


def test_first_pole_minor_is_minus_R(eckardt):
    for S in (eckardt, sample_surface(4, seed=2), sample_surface(5, seed=1)):
        d1, _, _ = pole_minors(S)
        assert d1 == -small_discriminant_R(S).rename(T)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_generic_degrees(d):
    S = sample_surface(d, seed=1)
    th = theta(S)
    assert th.degree == 2 * d - 3
    assert th.algebraic_degree == 2 * d - 3
    cert = verify_surface_invariance(th, S)
    assert cert.passed and cert.quotient_degree == d * (2 * d - 4)
    assert satellite_curve(S).degree == 2 * d - 3
    tp = theta_prime(S)
    assert tp.degree == 3 * d - 3
    ok, pairs = cross_minors_divisible(tp, S.equation())
    assert ok and len(pairs) == 6


@pytest.mark.parametrize("d", [3, 4])
def test_involutions_sampled(d):
    S = sample_surface(d, seed=3)
    assert verify_involution(theta(S), seed=d).passed
    assert verify_involution(theta_prime(S), seed=d, points=10).passed
    assert verify_commute(theta(S), theta_prime(S), seed=d, points=10).passed


def test_four_cycle_is_not_an_involution():
    x0, x1, x2, x3 = MultiPoly.gens(AMBIENT)
    cyc = RationalMap((x1, x2, x3, x0))
    v = verify_involution(cyc, "symbolic")
    assert not v.passed and v.witness
    s = verify_involution(cyc, seed=5)
    assert not s.passed and s.witness.startswith("x = ")
    assert verify_involution(cyc.compose(cyc), "symbolic").passed


def test_corrupted_map_has_witness(eckardt):
    th = theta(eckardt)
    x0 = MultiPoly.variable("x0", AMBIENT)
    bad = RationalMap((th.components[0] + x0**3,) + th.components[1:])
    cert = verify_surface_invariance(bad, eckardt)
    assert not cert.passed
    assert cert.witness.startswith("remainder term ")


def test_theta_prime_fixes_point_of_surface():
    pt = (1, 2, -1, 3)
    S = sample_surface(4, through=[pt], seed=4)
    assert S.equation().evaluate(pt) == 0
    tp = theta_prime(S)
    assert projectively_equal(tp(pt), pt)


def test_theta_prime_fixes_two_points_of_one_fiber():
    # both points lie in the plane x0 = x1
    S = sample_surface(3, through=[(1, 1, 2, 0), (1, 1, 0, 2)], seed=0)
    tp = theta_prime(S)
    for pt in [(1, 1, 2, 0), (1, 1, 0, 2)]:
        assert projectively_equal(tp(pt), pt)


def test_fixed_curve_check_on_a_line():
    x0, x1, x2, x3 = MultiPoly.gens(AMBIENT)
    swap = RationalMap((x1, x0, x3, x2))
    t0, t1 = MultiPoly.gens(T)
    assert verify_fixes_curve(swap, [t0, t0, t1, t1])
    assert not verify_fixes_curve(swap, [t0, t1, t1, t0])


def test_sample_surface_through_points():
    pts = [(1, 0, 2, 3), (0, 1, -1, 1), (2, -1, 0, 5)]
    S = sample_surface(5, through=pts, seed=9)
    F = S.equation()
    assert all(F.evaluate(p) == 0 for p in pts)
    assert S == sample_surface(5, through=pts, seed=9)


def test_sample_surface_overconstrained():
    with pytest.raises(ValueError):
        sample_surface(3, through=[(1, i, i * i, 1) for i in range(15)])


def test_reduced_flag_enforced():
    x0, x1, _, _ = MultiPoly.gens(AMBIENT)
    with pytest.raises(ValueError):
        RationalMap((x0 * x0, x0 * x1, x0 * x1, x0 * x0), reduced=True)
    m = RationalMap((x0 * x0, x0 * x1, x0 * x1, x0 * x0)).reduce()
    assert m.reduced and m.degree == 1


@given(st.integers(0, 500))
def test_theta_invariance_random_cubics(seed):
    S = sample_surface(3, seed=seed)
    assert verify_surface_invariance(theta(S), S).passed
