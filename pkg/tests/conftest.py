from fractions import Fraction
from pathlib import Path

import pytest
import sympy
from hypothesis import HealthCheck, settings

from conicbundle.exactalg import QQ, MultiPoly, poly_parse
from conicbundle.submonoidal import submonoidal_from_polynomial

settings.register_profile(
    "repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

DATA = Path(__file__).resolve().parents[1] / "src" / "conicbundle" / "data"
AMBIENT = ("x0", "x1", "x2", "x3")
ECKARDT = "2*x0^2*x2 + 2*x1^2*x3 + x0*x2^2 + x1*x3^2"


def to_sympy(p: MultiPoly):
    syms = sympy.symbols(p.vars)
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        c = Fraction(c)
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            term *= s**k
        expr += term
    return expr, syms


def from_sympy(expr, vars) -> MultiPoly:
    P = sympy.Poly(sympy.expand(expr), *sympy.symbols(vars))
    terms = {m: Fraction(int(c.p), int(c.q)) for m, c in P.terms()}
    return MultiPoly(terms, vars, QQ)


@pytest.fixture
def eckardt():
    return submonoidal_from_polynomial(poly_parse(ECKARDT, AMBIENT))


@pytest.fixture
def data_dir():
    return DATA
