"""Monoidal surfaces: degree-d surfaces with a line of multiplicity d-1.

With the line at V(x0, x1) the equation is ``A + x2*B + x3*C`` for binary
forms A, B, C in (x0, x1) of degrees d, d-1, d-1.  The blow-up of the line
carries the curve ``B(t)*y1 + C(t)*y2 = 0`` on the exceptional surface; its
projection to the line has degree d-1 and its branch points are the pinch
points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._forms import InvalidSurface, check_form, to_binary, wronskian
from .exactalg import (
    QQ,
    Field,
    MultiPoly,
    binary_resultant,
    field_rank,
    poly_gcd,
    poly_gcd_many,
)

__all__ = [
    "CANONICAL_KINDS",
    "InvalidSurface",
    "MonoidalSurface",
    "SigmaCurve",
    "WebReport",
    "canonical_monoidal",
    "moduli_dimension",
    "monoidal_validate",
    "monoidal_web_invariants",
    "pair_intersection_profile",
    "pinch_divisor_monoidal",
    "sigma_curve_monoidal",
]

AMBIENT = ("x0", "x1", "x2", "x3")
TVARS = ("t0", "t1")
YVARS = ("y1", "y2")


@dataclass(frozen=True)
class MonoidalSurface:
    d: int
    A: MultiPoly
    B: MultiPoly
    C: MultiPoly
    kind: str = ""

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def vars(self) -> tuple[str, ...]:
        return self.A.vars + AMBIENT[2:]

    def equation(self) -> MultiPoly:
        """``A + x2*B + x3*C`` over (x0, x1, x2, x3)."""
        amb = self.vars
        x2 = MultiPoly.variable(amb[2], amb, self.field)
        x3 = MultiPoly.variable(amb[3], amb, self.field)
        return self.A.with_vars(amb) + x2 * self.B.with_vars(amb) + x3 * self.C.with_vars(amb)


@dataclass(frozen=True)
class WebReport:
    d: int
    alpha: int
    beta: int
    d_prime: int
    checks: tuple[tuple[str, int, int, bool], ...]

    @property
    def passed(self) -> bool:
        return all(ok for *_, ok in self.checks)


@dataclass(frozen=True)
class SigmaCurve:
    """``B(t)*y1 + C(t)*y2 = 0`` in (t0, t1) x (y1, y2).

    ``section`` is the map t -> [-C(t), B(t)].  ``fiber_factor`` is gcd(B, C):
    its roots are parameters whose whole fiber lies on the curve.
    """

    B: MultiPoly
    C: MultiPoly
    section: tuple[MultiPoly, MultiPoly]
    fiber_factor: MultiPoly
    projection_degree: int


def _coeff_vector(f: MultiPoly, degree: int) -> list[Fraction]:
    return [f.coefficient((degree - k, k)) for k in range(degree + 1)]


def monoidal_validate(A, B, C, d: int, field: Field = QQ, kind: str = "") -> MonoidalSurface:
    """Check the degree, cone and common-factor conditions and build the surface.

    Only the joint gcd of (A, B, C) is required to be constant: a common
    factor of all three splits off a plane, while two of the canonical
    equations have B and C sharing a factor.
    """
    if d < 2:
        raise InvalidSurface("degree", f"d = {d} is below 2")
    A, B, C = (to_binary(f, ("x0", "x1"), field) for f in (A, B, C))
    check_form(A, d, "A")
    check_form(B, d - 1, "B")
    check_form(C, d - 1, "C")
    if field_rank([_coeff_vector(B, d - 1), _coeff_vector(C, d - 1)], field) <= 1:
        raise InvalidSurface("cone", "B and C are proportional", f"B = {B}, C = {C}")
    g = poly_gcd_many([A, B, C])
    if not g.is_constant():
        raise InvalidSurface("reducible", "A, B, C share a factor", f"gcd = {g}")
    return MonoidalSurface(d, A, B, C, kind)


CANONICAL_KINDS = (
    "cubic-1",
    "cubic-2",
    "quartic-i",
    "quartic-ii",
    "quartic-iii",
    "quartic-iv",
    "quartic-v",
    "quartic-vi",
    "quartic-vii",
)


def canonical_monoidal(kind: str, lam=None, field: Field = QQ) -> MonoidalSurface:
    """Surface of a named canonical equation.

    ``lam`` is required for quartic-i and quartic-ii and must satisfy
    lam^2 not in {0, 1, 9}.
    """
    if kind not in CANONICAL_KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {CANONICAL_KINDS}")
    V = ("x0", "x1")
    x0, x1 = MultiPoly.gens(V, field)
    zero = MultiPoly.zero(V, field)
    if kind == "cubic-1":
        return monoidal_validate(zero, x0**2, x1**2, 3, field, kind)
    if kind == "cubic-2":
        return monoidal_validate(x1**3, x0 * x1, x0**2, 3, field, kind)
    if kind in ("quartic-i", "quartic-ii"):
        if lam is None:
            raise ValueError(f"{kind} needs the parameter lam")
        lam = field(lam)
        if lam * lam in (0, 1, 9):
            raise ValueError(f"lam = {lam} is excluded: lam^2 must avoid 0, 1, 9")
    elif lam is not None:
        raise ValueError(f"{kind} takes no parameter")
    if kind in ("quartic-iii", "quartic-iv"):
        lam = field(3)
    if kind in ("quartic-i", "quartic-ii", "quartic-iii", "quartic-iv"):
        A = x0**2 * x1**2 if kind in ("quartic-i", "quartic-iii") else zero
        B = x0**3 + x0 * x1**2 * lam
        C = x1**3 + x0**2 * x1 * lam
        return monoidal_validate(A, B, C, 4, field, kind)
    A = x0**2 * x1**2
    if kind == "quartic-v":
        q = x0**2 + x1**2
        return monoidal_validate(A, x0 * q, x1 * q, 4, field, kind)
    if kind == "quartic-vi":
        q = (x0 + x1) ** 2
        return monoidal_validate(A, x0 * q, x1 * q, 4, field, kind)
    return monoidal_validate(A, (x0 + x1) * x0**2, (x0 + x1) * x1**2, 4, field, kind)


def sigma_curve_monoidal(S: MonoidalSurface) -> SigmaCurve:
    B, C = S.B.rename(TVARS), S.C.rename(TVARS)
    return SigmaCurve(B, C, (-C, B), poly_gcd(B, C), S.d - 1)


def pinch_divisor_monoidal(S: MonoidalSurface) -> MultiPoly:
    """Branch divisor on the line, as a binary form in (y1, y2).

    The ramification points of t -> [-C(t), B(t)] are the roots of the
    Wronskian W of (B, C) (degree 2d-4); their images are cut out by
    Res_t(W, B(t)*y1 + C(t)*y2).  A common factor of B and C is removed first.
    """
    sig = sigma_curve_monoidal(S)
    B, C = sig.B, sig.C
    if not sig.fiber_factor.is_constant():
        B, C = B.exact_div(sig.fiber_factor), C.exact_div(sig.fiber_factor)
    n = B.total_degree()
    if n < 1:
        return MultiPoly.one(YVARS, S.field)
    W = wronskian(B, C)
    big = TVARS + YVARS
    y1, y2 = (MultiPoly.variable(v, big, S.field) for v in YVARS)
    G = B.with_vars(big) * y1 + C.with_vars(big) * y2
    Wb = W.with_vars(big)
    m = 2 * n - 2
    gc = [G.coefficients_in(TVARS).get((k, n - k), G * 0) for k in range(n + 1)]
    wc = [Wb.coefficients_in(TVARS).get((k, m - k), Wb * 0) for k in range(m + 1)]
    res = binary_resultant(wc, gc)
    return res.with_vars(YVARS).monic()


def monoidal_web_invariants(d: int, alpha: int, beta: int) -> WebReport:
    """Degree bookkeeping for a homaloidal web of monoidal surfaces.

    d' = 2d - 1 - alpha; failed identities are reported, never raised.
    """
    dp = 2 * d - 1 - alpha
    checks = (
        ("web dimension: 2*alpha + beta = 3(d-1)", 2 * alpha + beta, 3 * (d - 1)),
        ("inverse web: 2*beta + alpha = 3(d'-1)", 2 * beta + alpha, 3 * (dp - 1)),
        ("inverse points: beta = 2d' - d - 1", beta, 2 * dp - d - 1),
        ("jacobian balance: 4(d-1) - (d-1) - 2*alpha - beta = 0", 4 * (d - 1) - (d - 1) - 2 * alpha - beta, 0),
    )
    return WebReport(d, alpha, beta, dp, tuple((n, l, r, l == r) for n, l, r in checks))


def pair_intersection_profile(d: int) -> tuple[int, int]:
    """(degree of the residual curve, its intersection count with the line)."""
    if d < 2:
        raise ValueError("d must be at least 2")
    return 2 * d - 1, 2 * d - 2


def moduli_dimension(kind: str, d: int) -> int:
    if kind == "monoidal":
        if d < 4:
            raise ValueError("monoidal moduli count needs d >= 4")
        return 3 * d - 11
    if kind == "submonoidal":
        if d < 3:
            raise ValueError("submonoidal moduli count needs d >= 3")
        return 6 * d - 14
    raise ValueError(f"kind must be 'monoidal' or 'submonoidal', not {kind!r}")
