import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import AMBIENT, ECKARDT, from_sympy, to_sympy
from conicbundle.exactalg import QQ, MultiPoly, poly_parse, squarefree_decomposition
from conicbundle.submonoidal import (
    InvalidSurface,
    SubmonoidalSurface,
    check_nondegenerate,
    classify_fibers,
    discriminant_P,
    eckardt_locus,
    pinch_divisor,
    pluecker_surface,
    random_submonoidal,
    sigma_fiber_factor,
    small_discriminant_R,
    submonoidal_from_polynomial,
    verify_incidence,
)

X = ("x0", "x1")


def p(s, vars=X, field=QQ):
    return poly_parse(s, vars, field)


def test_eckardt_extraction(eckardt):
    S = eckardt
    assert S.d == 3
    assert S.forms == (p("0"), p("x0^2"), p("x1^2"), p("x0"), p("0"), p("x1"))
    assert S.equation() == poly_parse(ECKARDT, AMBIENT)


def test_eckardt_discriminants(eckardt):
    assert discriminant_P(eckardt) == p("-x0^4*x1 - x0*x1^4")
    assert small_discriminant_R(eckardt) == p("-x0*x1")
    rep = classify_fibers(eckardt)
    assert rep.s == (5, 0, 0)
    assert rep.verdict.passed
    assert eckardt_locus(eckardt) == p("x0*x1")


def test_multiplicity_rejected():
    with pytest.raises(InvalidSurface) as exc:
        submonoidal_from_polynomial(poly_parse("x0^3 + x2^3 + x1*x3^2", AMBIENT))
    assert exc.value.reason == "multiplicity"
    assert "x2^3" in exc.value.witness


def test_conic_matrix_determinant_matches_sympy():
    S = random_submonoidal(4, 3)
    sm = sympy.Matrix([[to_sympy(f)[0] for f in row] for row in S.conic_matrix()])
    assert from_sympy(sm.det(), X) == discriminant_P(S)


def test_equation_is_quadratic_form_in_conic_matrix():
    S = random_submonoidal(5, 7)
    M = [[f.with_vars(AMBIENT) for f in row] for row in S.conic_matrix()]
    _, _, x2, x3 = MultiPoly.gens(AMBIENT)
    v = [MultiPoly.one(AMBIENT), x2, x3]
    q = sum((v[i] * M[i][j] * v[j] for i in range(3) for j in range(3)), MultiPoly.zero(AMBIENT))
    assert q == S.equation()


def test_pluecker_package():
    S, data = pluecker_surface()
    K = S.field
    Fq = data.quartic
    for name, pt in data.nodes.items():
        assert Fq.evaluate(pt) == 0, name
        for v in Fq.vars:
            assert Fq.diff(v).evaluate(pt) == 0, name
    names = list(data.nodes)
    rep = verify_incidence([data.nodes[n] for n in names], list(data.tropes.values()), K)
    assert rep.configuration == (8, 4)
    for j, (t, members) in enumerate(data.trope_nodes.items()):
        on = {names[i] for i in range(8) if rep.matrix[i][j]}
        assert on == set(members), t
    r = classify_fibers(S)
    assert r.s == (0, 0, 4) and r.node_count == 8
    assert r.R_squarefree
    assert r.decomposition.max_multiplicity == 2
    assert r.decomposition.part(1).is_constant()
    # every torsal plane through the double line carries one pair of nodes
    for t in data.torsal_parameters:
        plane = (1, -1, t, 0) if t is not None else (0, 0, 1, 0)
        on = verify_incidence(list(data.nodes.values()), [plane], K).column_sums[0]
        assert on == 2


def test_pluecker_normalized_consistent():
    S, data = pluecker_surface()
    F = S.equation()
    for pt in data.nodes_normalized.values():
        assert F.evaluate(pt) == 0
    rep = verify_incidence(list(data.nodes_normalized.values()), list(data.tropes_normalized.values()), S.field)
    assert rep.configuration == (8, 4)


def test_perturbed_node_breaks_configuration():
    S, data = pluecker_surface()
    K = S.field
    pts = list(data.nodes.values())
    pts[0] = tuple(c + (K(1) if i == 3 else K(0)) for i, c in enumerate(pts[0]))
    rep = verify_incidence(pts, list(data.tropes.values()), K)
    assert rep.configuration is None
    assert sum(rep.row_sums) < 32


def test_cayley_cubic():
    F = poly_parse("x0*x1*x2 + x0*x1*x3 + x0*x2*x3 + x1*x2*x3", AMBIENT)
    S = submonoidal_from_polynomial(F, (poly_parse("x0 + x1", AMBIENT), poly_parse("x2 + x3", AMBIENT)))
    r = classify_fibers(S)
    assert r.s == (1, 0, 2)
    assert r.node_count == 4


@pytest.mark.parametrize("d", [3, 4, 5])
def test_tangent_everywhere_fails_nondegeneracy(d):
    S = SubmonoidalSurface.from_forms(
        p(f"x0^{d} + x1^{d}"), p(f"x1^{d - 1}"), p(f"x0^{d - 1}"), p("0"), p(f"x0^{d - 2}"), p("0"), d=d
    )
    v = check_nondegenerate(S)
    assert not v.passed
    assert "R is nonzero and squarefree" in v.failures
    assert v.unchecked


def test_generic_quartic_and_quintic():
    S4 = random_submonoidal(4, 1)
    assert eckardt_locus(S4).is_constant()
    assert pinch_divisor(S4).total_degree() == 4
    S5 = random_submonoidal(5, 1)
    assert pinch_divisor(S5).total_degree() == 8
    assert sigma_fiber_factor(S5).is_constant()


def test_cubic_pinch_divisor_is_trivial(eckardt):
    assert pinch_divisor(eckardt).is_constant()


@given(st.integers(3, 6), st.integers(0, 10**6))
def test_discriminant_degrees(d, seed):
    S = random_submonoidal(d, random.Random(seed))
    P = discriminant_P(S)
    R = small_discriminant_R(S)
    assert not P or (P.is_homogeneous() and P.total_degree() == 3 * d - 4)
    assert not R or (R.is_homogeneous() and R.total_degree() == 2 * d - 4)


@given(st.integers(3, 5), st.integers(0, 10**6))
def test_census_identity(d, seed):
    S = random_submonoidal(d, random.Random(seed))
    if not discriminant_P(S):
        return
    r = classify_fibers(S)
    dec = squarefree_decomposition(r.P, S.tvars)
    if dec.max_multiplicity <= 2:
        assert r.s1 + 2 * r.s2 + 2 * r.s3 == 3 * d - 4
    assert r.node_count == r.s2 + 2 * r.s3


@given(st.integers(0, 10**6))
def test_extraction_round_trip(seed):
    S = random_submonoidal(4, random.Random(seed))
    T = submonoidal_from_polynomial(S.equation())
    assert T.forms == S.forms
