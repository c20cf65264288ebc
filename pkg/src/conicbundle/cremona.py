"""The two Cremona involutions attached to a submonoidal surface.

For a parameter t the pole of the line with respect to the residual conic
is the cross product ``(D1, D2, D3)`` of the rows (B, D, E) and (C, E, F).
Θ reflects each fiber plane in that pole; Θ' fixes every residual conic
pointwise.  Both are exact polynomial maps of P^3, stored unreduced in the
form the defining formulas give.

Verification helpers return certificate objects rather than raising, so a
failed identity can be reported with a witness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .exactalg import (
    QQ,
    Field,
    MultiPoly,
    field_nullspace,
    poly_gcd_many,
)
from .submonoidal import (
    InvalidSurface,
    SubmonoidalSurface,
    discriminant_P,
)

__all__ = [
    "InvarianceCertificate",
    "InvolutionVerdict",
    "RationalMap",
    "SatelliteCurve",
    "cross_minors_divisible",
    "fiber_singular_points",
    "pole_minors",
    "projectively_equal",
    "sample_surface",
    "satellite_curve",
    "theta",
    "theta_prime",
    "verify_commute",
    "verify_fixes_curve",
    "verify_involution",
    "verify_surface_invariance",
]

TVARS = ("t0", "t1")


@dataclass(frozen=True)
class RationalMap:
    """A map of projective space given by equal-degree homogeneous components."""

    components: tuple[MultiPoly, ...]
    reduced: bool = False

    def __post_init__(self):
        comps = self.components
        if not comps:
            raise ValueError("a rational map needs components")
        ref = comps[0]
        for c in comps[1:]:
            ref._check(c)
        if not any(comps):
            raise ValueError("all components vanish identically")
        degs = {c.total_degree() for c in comps if c}
        if len(degs) != 1 or not all(c.is_homogeneous() for c in comps):
            raise ValueError("components must be homogeneous of one degree")
        if self.reduced and not poly_gcd_many(list(comps)).is_constant():
            raise ValueError("components flagged reduced share a factor")

    @property
    def vars(self) -> tuple[str, ...]:
        return self.components[0].vars

    @property
    def field(self) -> Field:
        return self.components[0].field

    @property
    def dimension(self) -> int:
        return len(self.components) - 1

    @property
    def degree(self) -> int:
        return max(c.total_degree() for c in self.components)

    def common_factor(self) -> MultiPoly:
        return poly_gcd_many(list(self.components))

    def reduce(self) -> RationalMap:
        g = self.common_factor()
        if g.is_constant():
            return RationalMap(self.components, True)
        return RationalMap(tuple(c.exact_div(g) for c in self.components), True)

    @property
    def algebraic_degree(self) -> int:
        return self.reduce().degree

    def __call__(self, point: Sequence) -> tuple:
        return tuple(c.evaluate(point) for c in self.components)

    def compose(self, inner: RationalMap | Sequence[MultiPoly]) -> RationalMap:
        """``self o inner``: substitute the components of ``inner``."""
        comps = inner.components if isinstance(inner, RationalMap) else tuple(inner)
        return RationalMap(tuple(c.compose(comps) for c in self.components))

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.components) + "]"


@dataclass(frozen=True)
class SatelliteCurve:
    forms: tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]
    canceled: MultiPoly
    raw_degree: int
    d: int

    @property
    def degree(self) -> int:
        return max(f.total_degree() for f in self.forms)

    @property
    def expected_generic_degree(self) -> bool:
        return self.degree == 2 * self.d - 3

    def __call__(self, t: Sequence) -> tuple:
        return tuple(f.evaluate(t) for f in self.forms)

    def __str__(self) -> str:
        return "[" + ", ".join(str(f) for f in self.forms) + "]"


def pole_minors(S: SubmonoidalSurface) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """(D*F - E^2, -(B*F - C*E), B*E - C*D) in (t0, t1).

    Degrees 2d-4, 2d-3, 2d-3.  The first equals -R.
    """
    _, B, C, D, E, F = (f.rename(TVARS) for f in S.forms)
    d1 = D * F - E * E
    d2 = C * E - B * F
    d3 = B * E - C * D
    if not (d1 or d2 or d3):
        raise InvalidSurface("degenerate", "all pole minors vanish: the pole is undefined on every fiber")
    return d1, d2, d3


def satellite_curve(S: SubmonoidalSurface) -> SatelliteCurve:
    """[t0*D1, t1*D1, D2, D3] divided by the gcd of the four forms."""
    d1, d2, d3 = pole_minors(S)
    t0, t1 = MultiPoly.gens(TVARS, S.field)
    raw = [t0 * d1, t1 * d1, d2, d3]
    g = poly_gcd_many(raw)
    forms = tuple(f.exact_div(g) for f in raw)
    return SatelliteCurve(forms, g, 2 * S.d - 3, S.d)


def fiber_singular_points(S: SubmonoidalSurface, t: Sequence) -> list[tuple]:
    """Kernel of the conic matrix at parameter t, as points [t0*y, t1*y, x2, x3] of P^3.

    Empty for a smooth conic, one point for a line pair, two spanning points
    for a double line.
    """
    t = [S.field(c) for c in t]
    M = [[f.evaluate(t) for f in row] for row in S.conic_matrix()]
    return [(t[0] * v[0], t[1] * v[0], v[1], v[2]) for v in field_nullspace(M, S.field)]


def _minors_in_ambient(S: SubmonoidalSurface) -> list[MultiPoly]:
    amb = S.vars
    return [m.rename(S.tvars).with_vars(amb) for m in pole_minors(S)]


def theta(S: SubmonoidalSurface) -> RationalMap:
    """Components (-x0*D1, -x1*D1, x2*D1 - 2*D2, x3*D1 - 2*D3), degree 2d-3."""
    d1, d2, d3 = _minors_in_ambient(S)
    x0, x1, x2, x3 = MultiPoly.gens(S.vars, S.field)
    return RationalMap((-(x0 * d1), -(x1 * d1), x2 * d1 - d2 * 2, x3 * d1 - d3 * 2))


def theta_prime(S: SubmonoidalSurface) -> RationalMap:
    """Components x0*(F*D1 - P), x1*(F*D1 - P), F*D2 - P*x2, F*D3 - P*x3.

    F is the surface equation and P the discriminant, both over the ambient
    variables; degree 3d-3.
    """
    P = discriminant_P(S)
    if not P:
        raise InvalidSurface("degenerate", "P = 0")
    P = P.with_vars(S.vars)
    F = S.equation()
    d1, d2, d3 = _minors_in_ambient(S)
    x0, x1, x2, x3 = MultiPoly.gens(S.vars, S.field)
    core = F * d1 - P
    return RationalMap((x0 * core, x1 * core, F * d2 - P * x2, F * d3 - P * x3))


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class InvarianceCertificate:
    passed: bool
    quotient_degree: int | None
    witness: str = ""


def verify_surface_invariance(phi: RationalMap, S: SubmonoidalSurface | MultiPoly) -> InvarianceCertificate:
    """Check that F divides F o phi by exact division."""
    F = S.equation() if isinstance(S, SubmonoidalSurface) else S
    G = F.compose(phi.components)
    q, r = G.divmod(F)
    if r:
        e, c = r.sorted_terms()[0]
        mono = MultiPoly._raw({e: c}, r.vars, r.field)
        return InvarianceCertificate(False, None, f"remainder term {mono}")
    return InvarianceCertificate(True, q.total_degree())


def projectively_equal(u: Sequence, v: Sequence) -> bool:
    """u and v are proportional (entries may be scalars or polynomials), neither zero."""
    if not any(u) or not any(v):
        return False
    n = len(u)
    return all(u[i] * v[j] == u[j] * v[i] for i in range(n) for j in range(i + 1, n))


def cross_minors_divisible(phi: RationalMap, F: MultiPoly) -> tuple[bool, list[tuple[int, int, bool]]]:
    """Whether every x_i'*x_j - x_j'*x_i is divisible by F."""
    xs = MultiPoly.gens(phi.vars, phi.field)
    out = []
    comps = phi.components
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            m = comps[i] * xs[j] - comps[j] * xs[i]
            out.append((i, j, F.divides(m)))
    return all(ok for *_, ok in out), out


@dataclass(frozen=True)
class InvolutionVerdict:
    passed: bool
    method: str
    trials: int
    successes: int
    resampled: int
    witness: str = ""


def _random_point(rng: random.Random, n: int, field: Field, bound: int) -> list:
    return [field(rng.randint(-bound, bound)) for _ in range(n)]


def verify_involution(phi: RationalMap, method: str = "sampled", seed: int = 1, points: int = 20,
                      bound: int = 10, max_tries: int = 400) -> InvolutionVerdict:
    """Check phi o phi = identity projectively.

    symbolic: the components of phi o phi are G*x_i for one polynomial G.
    sampled: phi(phi(x)) is proportional to x for ``points`` random integer
    points; points in the indeterminacy locus or on V(x0, x1) are resampled.
    """
    xs = MultiPoly.gens(phi.vars, phi.field)
    if method == "symbolic":
        comp = phi.compose(phi).components
        ok = projectively_equal(comp, xs)
        witness = "" if ok else "phi o phi is not a multiple of the identity"
        return InvolutionVerdict(ok, method, 1, int(ok), 0, witness)
    if method != "sampled":
        raise ValueError(f"method must be 'symbolic' or 'sampled', not {method!r}")
    rng = random.Random(seed)
    good = resampled = tries = 0
    while good < points:
        tries += 1
        if tries > max_tries:
            return InvolutionVerdict(False, method, good, good, resampled, "retry cap reached")
        x = _random_point(rng, len(xs), phi.field, bound)
        if not (x[0] or x[1]):
            resampled += 1
            continue
        y = phi(x)
        if not any(y):
            resampled += 1
            continue
        z = phi(y)
        if not any(z):
            resampled += 1
            continue
        if not projectively_equal(z, x):
            return InvolutionVerdict(False, method, good + 1, good, resampled, f"x = {_fmt(x)}, phi(phi(x)) = {_fmt(z)}")
        good += 1
    return InvolutionVerdict(True, method, good, good, resampled)


def verify_commute(phi: RationalMap, psi: RationalMap, seed: int = 1, points: int = 20,
                   bound: int = 10, max_tries: int = 400) -> InvolutionVerdict:
    """phi(psi(x)) proportional to psi(phi(x)) on random exact points."""
    rng = random.Random(seed)
    good = resampled = tries = 0
    n = len(phi.components)
    while good < points:
        tries += 1
        if tries > max_tries:
            return InvolutionVerdict(False, "sampled", good, good, resampled, "retry cap reached")
        x = _random_point(rng, n, phi.field, bound)
        if not (x[0] or x[1]):
            resampled += 1
            continue
        a, b = psi(x), phi(x)
        if not any(a) or not any(b):
            resampled += 1
            continue
        u, v = phi(a), psi(b)
        if not any(u) or not any(v):
            resampled += 1
            continue
        if not projectively_equal(u, v):
            return InvolutionVerdict(False, "sampled", good + 1, good, resampled, f"x = {_fmt(x)}")
        good += 1
    return InvolutionVerdict(True, "sampled", good, good, resampled)


def verify_fixes_curve(phi: RationalMap, param: Sequence[MultiPoly]) -> bool:
    """phi(r(t)) is proportional to r(t) as an identity of forms in t."""
    image = [c.compose(list(param)) for c in phi.components]
    return projectively_equal(image, list(param))


def _fmt(v) -> str:
    return "[" + ", ".join(str(c) for c in v) + "]"


# ---------------------------------------------------------------------------
# sampling


def _coefficient_slots(d: int) -> list[tuple[str, int, int]]:
    """(form name, x0-exponent, weight) for every unknown coefficient of A..F."""
    slots = []
    for name, deg, weight in (("A", d, 1), ("B", d - 1, 2), ("C", d - 1, 2),
                              ("D", d - 2, 1), ("E", d - 2, 2), ("F", d - 2, 1)):
        for k in range(deg + 1):
            slots.append((name, deg - k, weight))
    return slots


_X23 = {"A": (0, 0), "B": (1, 0), "C": (0, 1), "D": (2, 0), "E": (1, 1), "F": (0, 2)}
_DEG = {"A": 0, "B": 1, "C": 1, "D": 2, "E": 2, "F": 2}


def sample_surface(d: int, through: Sequence[Sequence] = (), seed: int = 0, field: Field = QQ,
                   bound: int = 5, max_tries: int = 100) -> SubmonoidalSurface:
    """Pseudorandom surface of degree d containing the given points.

    The coefficients of A..F span a space of dimension 6d-2, so at most
    6d-4 point conditions leave a pencil to choose from.
    """
    if d < 3:
        raise ValueError("d must be at least 3")
    through = [[field(c) for c in p] for p in through]
    if len(through) >= 6 * d - 3:
        raise ValueError(f"{len(through)} points over-constrain degree {d} (at most {6 * d - 4})")
    slots = _coefficient_slots(d)
    rows = []
    for p in through:
        if len(p) != 4:
            raise ValueError("points need four coordinates")
        row = []
        for name, a, w in slots:
            b = d - _DEG[name] - a
            e2, e3 = _X23[name]
            row.append(p[0] ** a * p[1] ** b * p[2] ** e2 * p[3] ** e3 * w)
        rows.append(row)
    if rows:
        basis = field_nullspace(rows, field)
    else:
        basis = [[field.one if i == j else field.zero for j in range(len(slots))] for i in range(len(slots))]
    rng = random.Random(seed)
    names = ("x0", "x1")
    for _ in range(max_tries):
        coeffs = [field.zero] * len(slots)
        for v in basis:
            c = rng.randint(-bound, bound)
            if c:
                coeffs = [x + y * c for x, y in zip(coeffs, v)]
        terms: dict[str, dict] = {k: {} for k in "ABCDEF"}
        for (name, a, _), c in zip(slots, coeffs):
            terms[name][(a, d - _DEG[name] - a)] = c
        forms = [MultiPoly(terms[k], names, field) for k in "ABCDEF"]
        try:
            return SubmonoidalSurface.from_forms(*forms, d=d, field=field)
        except InvalidSurface:
            continue
    raise ValueError("could not sample a valid surface through the given points")
