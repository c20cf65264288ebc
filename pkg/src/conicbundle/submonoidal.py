"""Submonoidal surfaces: degree-d surfaces with a line of multiplicity d-2.

With the line at V(x0, x1) the equation is

    A + 2*B*x2 + 2*C*x3 + D*x2^2 + 2*E*x2*x3 + F*x3^2

for binary forms A..F in (x0, x1) of degrees d, d-1, d-1, d-2, d-2, d-2.
The plane through the line with parameter t cuts a residual conic whose
symmetric matrix is ``[[A, B, C], [B, D, E], [C, E, F]]`` evaluated at t.

Everything below works with homogeneous binary forms, so parameters at
t = [1, 0] are never lost.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from ._forms import InvalidSurface, check_form, to_binary
from .exactalg import (
    QQ,
    Field,
    MultiPoly,
    SquarefreeDecomposition,
    binary_discriminant,
    determinant,
    field_inverse,
    field_rank,
    field_rref,
    is_squarefree,
    linear_substitution,
    minor_gcd_locus,
    poly_gcd_many,
    poly_parse,
    squarefree_decomposition,
)

__all__ = [
    "FiberReport",
    "FiberStratum",
    "IncidenceReport",
    "NondegeneracyVerdict",
    "PlueckerData",
    "SubmonoidalSurface",
    "check_nondegenerate",
    "classify_fibers",
    "discriminant_P",
    "eckardt_locus",
    "line_frame",
    "pinch_divisor",
    "pluecker_field",
    "pluecker_surface",
    "random_submonoidal",
    "sigma_equation",
    "sigma_fiber_factor",
    "small_discriminant_R",
    "submonoidal_from_polynomial",
    "verify_incidence",
]

AMBIENT = ("x0", "x1", "x2", "x3")
YVARS = ("y1", "y2")

UNCHECKED_NORMALITY = "no singular lines of the surface meet the multiple line"


@dataclass(frozen=True)
class SubmonoidalSurface:
    """Six binary forms A..F over ``vars[:2]``; the ambient variables are ``vars``.

    ``frame`` is the matrix T of the coordinate change that moved the line
    to V(x0, x1) (new coordinates are T*x), or None when none was applied.
    """

    d: int
    A: MultiPoly
    B: MultiPoly
    C: MultiPoly
    D: MultiPoly
    E: MultiPoly
    F: MultiPoly
    vars: tuple[str, ...] = AMBIENT
    frame: tuple[tuple, ...] | None = dc_field(default=None, compare=False)

    @classmethod
    def from_forms(cls, A, B, C, D, E, F, d: int | None = None, field: Field = QQ,
                   vars: Sequence[str] = AMBIENT) -> SubmonoidalSurface:
        vars = tuple(vars)
        names = vars[:2]
        forms = [to_binary(f, names, field) for f in (A, B, C, D, E, F)]
        if d is None:
            shifts = (0, 1, 1, 2, 2, 2)
            cands = {f.total_degree() + s for f, s in zip(forms, shifts) if f}
            if len(cands) != 1:
                raise InvalidSurface("degree", "cannot infer a common degree", str(sorted(cands)))
            d = cands.pop()
        S = cls(d, *forms, vars=vars)
        S.validate()
        return S

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def tvars(self) -> tuple[str, str]:
        return self.vars[:2]

    @property
    def forms(self) -> tuple[MultiPoly, ...]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    def validate(self) -> None:
        d = self.d
        if d < 3:
            raise InvalidSurface("degree", f"d = {d} is below 3")
        for f, deg, name in zip(self.forms, (d, d - 1, d - 1, d - 2, d - 2, d - 2), "ABCDEF"):
            if f.vars != self.tvars:
                raise InvalidSurface("degree", f"{name} is not a form in {self.tvars}", str(f))
            check_form(f, deg, name)
        if not (self.D or self.E or self.F):
            raise InvalidSurface("monoidal", "D = E = F = 0: the line has multiplicity d-1 or more")

    def conic_matrix(self) -> list[list[MultiPoly]]:
        A, B, C, D, E, F = self.forms
        return [[A, B, C], [B, D, E], [C, E, F]]

    def polar_matrix(self) -> list[list[MultiPoly]]:
        """Rows (B, D, E) and (C, E, F): the linear equations of the pole of the line."""
        _, B, C, D, E, F = self.forms
        return [[B, D, E], [C, E, F]]

    def equation(self) -> MultiPoly:
        amb, K = self.vars, self.field
        _, _, x2, x3 = MultiPoly.gens(amb, K)
        A, B, C, D, E, F = (f.with_vars(amb) for f in self.forms)
        return A + (B * x2 + C * x3) * 2 + D * x2**2 + E * x2 * x3 * 2 + F * x3**2

    def with_forms(self, **changes) -> SubmonoidalSurface:
        vals = dict(zip("ABCDEF", self.forms))
        vals.update({k: to_binary(v, self.tvars, self.field) for k, v in changes.items()})
        S = SubmonoidalSurface(self.d, *(vals[k] for k in "ABCDEF"), vars=self.vars)
        S.validate()
        return S


# ---------------------------------------------------------------------------
# extraction from a polynomial


def _linear_coeffs(L, vars: tuple, field: Field) -> list:
    if isinstance(L, str):
        L = poly_parse(L, vars, field)
    if isinstance(L, MultiPoly):
        L = L.with_vars(vars).over(field)
        if not L.is_homogeneous() or L.total_degree() != 1:
            raise InvalidSurface("line", "line equations must be linear forms", str(L))
        return [L.coefficient(tuple(int(i == j) for j in range(len(vars)))) for i in range(len(vars))]
    return [field(c) for c in L]


def line_frame(L1, L2, vars: Sequence[str] = AMBIENT, field: Field = QQ) -> list[list]:
    """Matrix T with rows L1, L2 and unit rows at the non-pivot columns.

    New coordinates x' = T*x put the line V(L1, L2) at V(x0', x1').
    """
    vars = tuple(vars)
    c1 = _linear_coeffs(L1, vars, field)
    c2 = _linear_coeffs(L2, vars, field)
    if field_rank([c1, c2], field) < 2:
        raise InvalidSurface("line", "the two linear forms are dependent", f"{c1}, {c2}")
    _, pivots = field_rref([c1, c2], field)
    T = [c1, c2]
    for j in range(len(vars)):
        if j not in pivots:
            T.append([field.one if k == j else field.zero for k in range(len(vars))])
    return T


def submonoidal_from_polynomial(F: MultiPoly, line=None) -> SubmonoidalSurface:
    """Move ``line`` (two linear forms; default V(x0, x1)) to V(x0, x1) and read off A..F."""
    if F.nvars != 4:
        raise InvalidSurface("degree", "expected a polynomial in four variables", str(F.vars))
    if not F or not F.is_homogeneous():
        raise InvalidSurface("degree", "F must be a nonzero homogeneous polynomial")
    d = F.total_degree()
    if d < 3:
        raise InvalidSurface("degree", f"degree {d} is below 3")
    K = F.field
    frame = None
    G = F
    if line is not None:
        T = line_frame(line[0], line[1], F.vars, K)
        G = linear_substitution(F, field_inverse(T, K))
        frame = tuple(tuple(r) for r in T)
    buckets: dict[tuple[int, int], dict] = {}
    for e, c in G.terms.items():
        k = e[2] + e[3]
        if k > 2:
            mono = MultiPoly._raw({e: c}, G.vars, K)
            raise InvalidSurface(
                "multiplicity", f"multiplicity along the line is {d - k} < d-2 = {d - 2}", str(mono)
            )
        buckets.setdefault((e[2], e[3]), {})[(e[0], e[1])] = c
    names = G.vars[:2]
    half = K(1) / 2

    def form(key, scale=1):
        return MultiPoly(buckets.get(key, {}), names, K).scale(scale)

    S = SubmonoidalSurface(
        d,
        form((0, 0)),
        form((1, 0), half),
        form((0, 1), half),
        form((2, 0)),
        form((1, 1), half),
        form((0, 2)),
        vars=G.vars,
        frame=frame,
    )
    if not (S.D or S.E or S.F):
        raise InvalidSurface("monoidal", "D = E = F = 0: monoidal or worse")
    S.validate()
    return S


def random_submonoidal(d: int, rng: random.Random | int = 0, field: Field = QQ, bound: int = 5) -> SubmonoidalSurface:
    """Surface with small pseudorandom integer coefficients (resampled until valid)."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    names = AMBIENT[:2]
    while True:
        forms = []
        for deg in (d, d - 1, d - 1, d - 2, d - 2, d - 2):
            forms.append(MultiPoly({(deg - k, k): rng.randint(-bound, bound) for k in range(deg + 1)}, names, field))
        try:
            return SubmonoidalSurface.from_forms(*forms, d=d, field=field)
        except InvalidSurface:
            continue


# ---------------------------------------------------------------------------
# discriminants and fiber census


def discriminant_P(S: SubmonoidalSurface) -> MultiPoly:
    """det of the conic matrix: zero or a form of degree 3d-4."""
    return determinant(S.conic_matrix())


def small_discriminant_R(S: SubmonoidalSurface) -> MultiPoly:
    """E^2 - D*F: zero or a form of degree 2(d-2)."""
    return S.E * S.E - S.D * S.F


@dataclass(frozen=True)
class NondegeneracyVerdict:
    """Each clause is (name, status) with status pass, fail or unchecked."""

    clauses: tuple[tuple[str, str], ...]

    @property
    def passed(self) -> bool:
        return all(s != "fail" for _, s in self.clauses)

    @property
    def failures(self) -> tuple[str, ...]:
        return tuple(n for n, s in self.clauses if s == "fail")

    @property
    def unchecked(self) -> tuple[str, ...]:
        return tuple(n for n, s in self.clauses if s == "unchecked")


@dataclass(frozen=True)
class FiberStratum:
    """Roots of P of one multiplicity, split by the rank of the conic there."""

    multiplicity: int
    form: MultiPoly
    rank_two: int
    rank_one: MultiPoly
    label: str


@dataclass(frozen=True)
class FiberReport:
    P: MultiPoly
    decomposition: SquarefreeDecomposition
    s1: int
    s2: int
    s3: int
    double_line_locus: MultiPoly
    strata: tuple[FiberStratum, ...]
    R: MultiPoly
    R_squarefree: bool
    eckardt: MultiPoly | None
    verdict: NondegeneracyVerdict

    @property
    def node_count(self) -> int:
        return self.s2 + 2 * self.s3

    @property
    def s(self) -> tuple[int, int, int]:
        return (self.s1, self.s2, self.s3)


def _stratum(S: SubmonoidalSurface, m: int, form: MultiPoly) -> FiberStratum:
    low = minor_gcd_locus(S.conic_matrix(), form, 1)
    r2 = form.total_degree() - low.total_degree()
    if m == 2:
        label = "line pairs (one node each) and double lines (two nodes each)"
    else:
        label = f"rank 2: A_{m - 1} points; rank 1: double lines, D-type or non-normal"
    return FiberStratum(m, form, r2, low, label)


def check_nondegenerate(S: SubmonoidalSurface) -> NondegeneracyVerdict:
    P = discriminant_P(S)
    R = small_discriminant_R(S)
    clauses = [("P is not identically zero", "pass" if P else "fail")]
    if P:
        ok = squarefree_decomposition(P, S.tvars).max_multiplicity <= 2
        clauses.append(("P has no roots of multiplicity 3 or more", "pass" if ok else "fail"))
    else:
        clauses.append(("P has no roots of multiplicity 3 or more", "fail"))
    clauses.append(("R is nonzero and squarefree", "pass" if is_squarefree(R, S.tvars) else "fail"))
    clauses.append((UNCHECKED_NORMALITY, "unchecked"))
    return NondegeneracyVerdict(tuple(clauses))


def classify_fibers(S: SubmonoidalSurface) -> FiberReport:
    """Census (s1, s2, s3) of singular fibers.

    s1 counts simple roots of P (line pairs, smooth surface there), s2 the
    double roots where the conic is a line pair and s3 the double roots where
    it is a double line.  Rank <= 1 is detected by gcds of the 2x2 minors with
    the squarefree double-root part, so nothing is factored.
    """
    P = discriminant_P(S)
    if not P:
        raise InvalidSurface("degenerate", "P = 0: every residual conic is singular")
    dec = squarefree_decomposition(P, S.tvars)
    s1 = dec.part(1).total_degree()
    P2 = dec.part(2)
    one = MultiPoly.one(S.tvars, S.field)
    g = minor_gcd_locus(S.conic_matrix(), P2, 1) if not P2.is_constant() else one
    s3 = g.total_degree()
    s2 = P2.total_degree() - s3
    strata = tuple(_stratum(S, m, f) for f, m in dec.factors if m >= 2)
    R = small_discriminant_R(S)
    eck = eckardt_locus(S) if R else None
    return FiberReport(
        P, dec, s1, s2, s3, g, strata, R, is_squarefree(R, S.tvars), eck, check_nondegenerate(S)
    )


def eckardt_locus(S: SubmonoidalSurface) -> MultiPoly:
    """Parameters whose residual conic is singular at a point of the line.

    gcd of the squarefree part of R with the 2x2 minors B*E - C*D and
    B*F - C*E of the polar matrix.
    """
    R = small_discriminant_R(S)
    if not R:
        raise InvalidSurface("degenerate", "R = 0: every residual conic is tangent to the line")
    rad = squarefree_decomposition(R, S.tvars).squarefree_part()
    return minor_gcd_locus(S.polar_matrix(), rad, 1)


# ---------------------------------------------------------------------------
# the curve of tangency directions and its branch points


def _sigma_form(D: MultiPoly, E: MultiPoly, F: MultiPoly) -> MultiPoly:
    big = D.vars + YVARS
    y1, y2 = (MultiPoly.variable(v, big, D.field) for v in YVARS)
    D, E, F = (f.with_vars(big) for f in (D, E, F))
    return D * y1**2 + E * y1 * y2 * 2 + F * y2**2


def sigma_equation(S: SubmonoidalSurface) -> MultiPoly:
    """D(t)*y1^2 + 2E(t)*y1*y2 + F(t)*y2^2 over (t0, t1, y1, y2)."""
    return _sigma_form(S.D, S.E, S.F)


def sigma_fiber_factor(S: SubmonoidalSurface) -> MultiPoly:
    """gcd(D, E, F): its roots are parameters whose whole fiber lies on the curve."""
    return poly_gcd_many([S.D, S.E, S.F])


def pinch_divisor(S: SubmonoidalSurface) -> MultiPoly:
    """Discriminant in t of D*y1^2 + 2E*y1*y2 + F*y2^2, a form in (y1, y2).

    Degree 4(d-3) when nothing degenerates; for d = 3 the cover has degree 1
    and the divisor is the constant 1.  A common factor of D, E, F is divided
    out first (see :func:`sigma_fiber_factor`).
    """
    D, E, F = S.D, S.E, S.F
    h = sigma_fiber_factor(S)
    if not h.is_constant():
        D, E, F = (f.exact_div(h) for f in (D, E, F))
    if S.d - 2 - h.total_degree() < 1:
        return MultiPoly.one(YVARS, S.field)
    return binary_discriminant(_sigma_form(D, E, F), S.tvars).with_vars(YVARS)


# ---------------------------------------------------------------------------
# incidences


@dataclass(frozen=True)
class IncidenceReport:
    matrix: tuple[tuple[bool, ...], ...]
    row_sums: tuple[int, ...]
    column_sums: tuple[int, ...]

    @property
    def configuration(self) -> tuple[int, int] | None:
        """(points, per-point count) when the incidence is a symmetric (n_k) configuration."""
        rs, cs = set(self.row_sums), set(self.column_sums)
        if len(rs) == 1 and rs == cs and len(self.row_sums) == len(self.column_sums):
            return len(self.row_sums), rs.pop()
        return None


def verify_incidence(points: Sequence[Sequence], hyperplanes: Sequence, field: Field = QQ) -> IncidenceReport:
    """Exact point-on-hyperplane matrix; rows are points, columns hyperplanes."""
    pts = [[field(c) for c in p] for p in points]
    planes = []
    for h in hyperplanes:
        if isinstance(h, MultiPoly):
            planes.append(_linear_coeffs(h, h.vars, field))
        else:
            planes.append([field(c) for c in h])
    for v in pts + planes:
        if not any(v):
            raise ValueError("zero vector in incidence data")
    M = tuple(
        tuple(not sum((a * b for a, b in zip(p, h)), field.zero) for h in planes) for p in pts
    )
    return IncidenceReport(M, tuple(sum(r) for r in M), tuple(sum(c) for c in zip(*M)) if M else ())


# ---------------------------------------------------------------------------
# the quartic with a double line and eight nodes


@dataclass(frozen=True)
class PlueckerData:
    """Reference data for the eight-nodal quartic, in both coordinate systems.

    ``nodes`` and ``tropes`` are in the input coordinates; the ``*_normalized``
    versions are in the coordinates where the double line is V(x0, x1)
    (points map by x -> T*x, linear forms by c -> c*T^-1).
    """

    quartic: MultiPoly
    matrix: tuple[tuple[MultiPoly, ...], ...]
    line: tuple[MultiPoly, MultiPoly]
    nodes: dict[str, tuple]
    tropes: dict[str, tuple]
    trope_nodes: dict[str, tuple[str, ...]]
    torsal_parameters: tuple
    nodes_normalized: dict[str, tuple]
    tropes_normalized: dict[str, tuple]


def pluecker_field() -> Field:
    return Field(-3)


def pluecker_surface() -> tuple[SubmonoidalSurface, PlueckerData]:
    """The quartic symmetroid with double line V(x0 - x1, x2) and eight nodes.

    The (0, 2) entry of the symmetric matrix is x0 - x1 + x3: with the
    entry x0 - x1 + x2 in both off-diagonal places of the first row the
    line V(x0 - x1, x2) is not double on the determinant.
    """
    K = pluecker_field()
    V = AMBIENT
    x0, x1, x2, x3 = MultiPoly.gens(V, K)
    z = MultiPoly.zero(V, K)
    M = (
        (z, x0 - x1 + x2, x0 - x1 + x3, x0),
        (x0 - x1 + x2, z, x3, x1),
        (x0 - x1 + x3, x3, z, x2),
        (x0, x1, x2, z),
    )
    quartic = determinant([list(r) for r in M])
    w = K.gen
    e = (1 + w) / 2
    eb = (1 - w) / 2
    nodes = {
        "P1": (0, e, 1, 0),
        "P1'": (-1, 0, eb, 1),
        "P2": (0, eb, 1, 0),
        "P2'": (-1, 0, e, 1),
        "P3": (0, 1, 1, 1),
        "P3'": (1, 0, -1, 0),
        "P4": (1, 0, 0, 0),
        "P4'": (0, 1, 0, 1),
    }
    nodes = {k: tuple(K(c) for c in v) for k, v in nodes.items()}
    tropes = {
        "T1": (1, 0, 0, 0),
        "T2": (0, 1, 0, 0),
        "T3": (0, 0, 0, 1),
        "T4": (1, -1, 0, 1),
        "T5": (0, -1, e, eb),
        "T6": (0, -1, eb, e),
        "T7": (1, -eb, 1, eb),
        "T8": (1, -e, 1, e),
    }
    tropes = {k: tuple(K(c) for c in v) for k, v in tropes.items()}
    trope_nodes = {
        "T1": ("P1", "P2", "P3", "P4'"),
        "T2": ("P1'", "P2'", "P3'", "P4"),
        "T3": ("P1", "P2", "P3'", "P4"),
        "T4": ("P1'", "P2'", "P3", "P4'"),
        "T5": ("P1", "P2'", "P3", "P4"),
        "T6": ("P1'", "P2", "P3", "P4"),
        "T7": ("P1", "P2'", "P3'", "P4'"),
        "T8": ("P1'", "P2", "P3'", "P4'"),
    }
    line = (x0 - x1, x2)
    S = submonoidal_from_polynomial(quartic, line)
    T = [list(r) for r in S.frame]
    N = field_inverse(T, K)
    nodes_n = {k: tuple(sum((T[i][j] * v[j] for j in range(4)), K.zero) for i in range(4)) for k, v in nodes.items()}
    tropes_n = {k: tuple(sum((c[i] * N[i][j] for i in range(4)), K.zero) for j in range(4)) for k, c in tropes.items()}
    data = PlueckerData(
        quartic, M, line, nodes, tropes, trope_nodes, (e, eb, K(1), None), nodes_n, tropes_n
    )
    return S, data
