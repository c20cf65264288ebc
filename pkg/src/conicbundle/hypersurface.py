"""Hypersurfaces of P^{n+1} containing a codimension-m subspace with multiplicity d-2.

With the subspace at V(x0, ..., x_{m-1}) the equation reads

    A + 2*sum_i l_i*x_i + sum_{i,j} q_ij*x_i*x_j      (i, j = m .. n+1)

where A, l_i, q_ij are forms in x0..x_{m-1} of degrees d, d-1, d-2.  A point
of the fiber over t in P^{m-1} is [t*y, x_m, ..., x_{n+1}] and the fiber is
the quadric with Gram matrix [[A, l], [l, q]] in (y, x_m, ...).

The involutions are assembled literally from the fiberwise formulas
(reflection in the pole, and the map fixing the quadric pointwise); they are
not simplified, so they carry the Gram determinant as a common factor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Sequence

from ._forms import InvalidSurface
from .cremona import RationalMap
from .exactalg import QQ, Field, MultiPoly, determinant, poly_gcd_many

__all__ = [
    "BinaryPointPair",
    "SatelliteParameterization",
    "SubmonoidalHypersurface",
    "fiber_matrix",
    "first_polar",
    "harmonic_conjugate",
    "hypersurface_from_polynomial",
    "hypersurface_from_surface",
    "line_involutions",
    "random_hypersurface",
    "satellite_parameterization",
    "subspace_dimension_bound",
    "theta_general",
    "theta_prime_general",
]


def ambient_vars(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n + 2))


@dataclass(frozen=True)
class SubmonoidalHypersurface:
    """Forms are stored over the first m ambient variables."""

    n: int
    m: int
    d: int
    A: MultiPoly
    l: tuple[MultiPoly, ...]
    q: tuple[tuple[MultiPoly, ...], ...]

    def __post_init__(self):
        n, m, d = self.n, self.m, self.d
        if not 1 <= m <= n + 1:
            raise InvalidSurface("codimension", f"need 1 <= m <= n+1, got m = {m}, n = {n}")
        if d < 3:
            raise InvalidSurface("degree", f"d = {d} is below 3")
        k = n + 2 - m
        if len(self.l) != k or len(self.q) != k or any(len(r) != k for r in self.q):
            raise InvalidSurface("shape", f"expected {k} linear blocks and a {k}x{k} array")
        base = self.vars[:m]
        for f, deg, name in [(self.A, d, "A")] + [(g, d - 1, f"l{i + m}") for i, g in enumerate(self.l)] + [
            (g, d - 2, f"q{i + m}{j + m}") for i, r in enumerate(self.q) for j, g in enumerate(r)
        ]:
            if f.vars != base:
                raise InvalidSurface("variables", f"{name} must be a form in {', '.join(base)}")
            if f and (not f.is_homogeneous() or f.total_degree() != deg):
                raise InvalidSurface("degree", f"{name} must be zero or a form of degree {deg}", f"{name} = {f}")
        for i in range(k):
            for j in range(i):
                if self.q[i][j] != self.q[j][i]:
                    raise InvalidSurface("symmetry", f"q{i + m}{j + m} != q{j + m}{i + m}")
        if not any(g for r in self.q for g in r):
            raise InvalidSurface("monoidal", "all q_ij vanish: the multiplicity is d-1")

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def vars(self) -> tuple[str, ...]:
        return ambient_vars(self.n)

    @property
    def tvars(self) -> tuple[str, ...]:
        return tuple(f"t{i}" for i in range(self.m))

    @property
    def fiber_size(self) -> int:
        return self.n + 2 - self.m

    def gram(self) -> list[list[MultiPoly]]:
        """[[A, l], [l, q]] over the first m ambient variables."""
        return [[self.A, *self.l]] + [[self.l[i], *self.q[i]] for i in range(self.fiber_size)]

    def equation(self) -> MultiPoly:
        amb = self.vars
        xs = MultiPoly.gens(amb, self.field)[self.m:]
        out = self.A.with_vars(amb)
        for i, li in enumerate(self.l):
            out = out + li.with_vars(amb) * xs[i] * 2
        for i in range(self.fiber_size):
            for j in range(self.fiber_size):
                out = out + self.q[i][j].with_vars(amb) * xs[i] * xs[j]
        return out


def hypersurface_from_polynomial(F: MultiPoly, m: int) -> SubmonoidalHypersurface:
    """Read A, l, q off F, with the subspace V(x0, ..., x_{m-1})."""
    n = F.nvars - 2
    if not F.is_homogeneous() or not F:
        raise InvalidSurface("degree", "F must be a nonzero form")
    d = F.total_degree()
    base, fib = F.vars[:m], F.vars[m:]
    k = len(fib)
    blocks = F.coefficients_in(fib)
    for e in blocks:
        if sum(e) > 2:
            mono = "*".join(f"{v}^{a}" for v, a in zip(fib, e) if a)
            raise InvalidSurface("multiplicity", f"the subspace has multiplicity below {d - 2}", mono)
    zero = MultiPoly.zero(base, F.field)

    def block(e):
        g = blocks.get(tuple(e))
        return zero if g is None else g.with_vars(base)

    unit = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    A = block([0] * k)
    l = tuple(block(unit[i]) / 2 for i in range(k))
    q = tuple(
        tuple(block([2 * a for a in unit[i]]) if i == j else block([a + b for a, b in zip(unit[i], unit[j])]) / 2
              for j in range(k))
        for i in range(k)
    )
    return SubmonoidalHypersurface(n, m, d, A, l, q)


def hypersurface_from_surface(S) -> SubmonoidalHypersurface:
    """The (n, m) = (2, 2) view of a submonoidal surface."""
    A, B, C, D, E, F = S.forms
    return SubmonoidalHypersurface(2, 2, S.d, A, (B, C), ((D, E), (E, F)))


def random_hypersurface(n: int, m: int, d: int, seed: int = 0, field: Field = QQ,
                        bound: int = 5) -> SubmonoidalHypersurface:
    rng = random.Random(seed)
    base = ambient_vars(n)[:m]

    def form(deg):
        terms = {}
        for e in _exponents(m, deg):
            c = rng.randint(-bound, bound)
            if c:
                terms[e] = field(c)
        return MultiPoly(terms, base, field)

    k = n + 2 - m
    for _ in range(100):
        A = form(d)
        l = tuple(form(d - 1) for _ in range(k))
        q = [[None] * k for _ in range(k)]
        for i in range(k):
            for j in range(i, k):
                q[i][j] = q[j][i] = form(d - 2)
        try:
            return SubmonoidalHypersurface(n, m, d, A, l, tuple(tuple(r) for r in q))
        except InvalidSurface:
            continue
    raise ValueError("could not sample a valid hypersurface")


def _exponents(nv: int, deg: int):
    if nv == 1:
        yield (deg,)
        return
    for a in range(deg, -1, -1):
        for rest in _exponents(nv - 1, deg - a):
            yield (a,) + rest


def fiber_matrix(H: SubmonoidalHypersurface) -> list[list[MultiPoly]]:
    """Rows (l_i, q_i,m, ..., q_i,n+1) in (t0, ..., t_{m-1})."""
    tv = H.tvars
    return [[H.l[i].rename(tv), *(g.rename(tv) for g in H.q[i])] for i in range(H.fiber_size)]


def _signed_minors(H: SubmonoidalHypersurface) -> list[MultiPoly]:
    """p_j = (-1)^(j+1) * (minor deleting column j), j = 1 .. k+1."""
    M = fiber_matrix(H)
    k = H.fiber_size
    out = []
    for j in range(k + 1):
        cols = [c for c in range(k + 1) if c != j]
        out.append(determinant([[row[c] for c in cols] for row in M]) * (-1) ** j)
    if not any(out):
        raise InvalidSurface("degenerate", "all maximal minors of the fiber matrix vanish")
    return out


@dataclass(frozen=True)
class SatelliteParameterization:
    forms: tuple[MultiPoly, ...]
    canceled: MultiPoly
    raw_degree: int

    @property
    def degree(self) -> int:
        return max(f.total_degree() for f in self.forms)

    def __str__(self) -> str:
        return "[" + ", ".join(str(f) for f in self.forms) + "]"


def satellite_parameterization(H: SubmonoidalHypersurface) -> SatelliteParameterization:
    """[t0*D1, ..., t_{m-1}*D1, -D2, D3, ...] divided by the gcd; raw degree (n+2-m)(d-2)+1."""
    p = _signed_minors(H)
    ts = MultiPoly.gens(H.tvars, H.field)
    raw = [t * p[0] for t in ts] + p[1:]
    g = poly_gcd_many(raw)
    raw_degree = max(f.total_degree() for f in raw)
    return SatelliteParameterization(tuple(f.exact_div(g) for f in raw), g, raw_degree)


def first_polar(H: SubmonoidalHypersurface) -> MultiPoly:
    """Polar of the equation with respect to the point [0, ..., 0, 1] (the case m = n+1)."""
    if H.m != H.n + 1:
        raise ValueError("the subspace is not a point")
    return H.equation().diff(H.vars[-1])


def _fiber_data(H: SubmonoidalHypersurface):
    """Gram matrix and pole vector over the ambient ring, with y = 1 and t = x_<m."""
    amb = H.vars
    G = [[g.with_vars(amb) for g in row] for row in H.gram()]
    p = [f.rename(H.vars[: H.m]).with_vars(amb) for f in _signed_minors(H)]
    xs = MultiPoly.gens(amb, H.field)
    v = [MultiPoly.one(amb, H.field)] + list(xs[H.m:])
    return G, p, v, xs


def _bilinear(G, u, w) -> MultiPoly:
    k = len(G)
    total = u[0] * 0
    for i in range(k):
        if not u[i]:
            continue
        for j in range(k):
            if G[i][j] and w[j]:
                total = total + G[i][j] * u[i] * w[j]
    return total


def _rehomogenize(H: SubmonoidalHypersurface, xs, w) -> RationalMap:
    """Fiber vector (y', x'_m, ...) over t = x_<m back to P^{n+1}."""
    return RationalMap(tuple(xs[k] * w[0] for k in range(H.m)) + tuple(w[1:]))


def theta_general(H: SubmonoidalHypersurface) -> RationalMap:
    """Fiberwise reflection v -> q(p)*v - 2*b(v, p)*p in the pole p."""
    G, p, v, xs = _fiber_data(H)
    qp = _bilinear(G, p, p)
    bvp = _bilinear(G, v, p)
    return _rehomogenize(H, xs, [vi * qp - pi * bvp * 2 for vi, pi in zip(v, p)])


def theta_prime_general(H: SubmonoidalHypersurface) -> RationalMap:
    """Fiberwise v -> b(v, p)*v - q(v)*p, which fixes each fiber quadric pointwise."""
    G, p, v, xs = _fiber_data(H)
    qv = _bilinear(G, v, v)
    bvp = _bilinear(G, v, p)
    return _rehomogenize(H, xs, [vi * bvp - pi * qv for vi, pi in zip(v, p)])


# ---------------------------------------------------------------------------
# binary point pairs and line involutions


@dataclass(frozen=True)
class BinaryPointPair:
    """alpha*u^2 + 2*beta*u*v + gamma*v^2."""

    alpha: object
    beta: object
    gamma: object
    field: Field = QQ

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, self.field(getattr(self, name)))
        if not (self.alpha or self.beta or self.gamma):
            raise ValueError("the pair form is identically zero")

    @classmethod
    def from_points(cls, a: Sequence, b: Sequence, field: Field = QQ) -> BinaryPointPair:
        """The form (a1*u - a0*v)*(b1*u - b0*v) vanishing at a and b."""
        a0, a1 = (field(c) for c in a)
        b0, b1 = (field(c) for c in b)
        return cls(a1 * b1, -(a1 * b0 + a0 * b1) / 2, a0 * b0, field)

    def value(self, x: Sequence) -> object:
        u, v = x
        return self.alpha * u * u + 2 * self.beta * u * v + self.gamma * v * v

    def polar(self, x: Sequence) -> tuple:
        u, v = (self.field(c) for c in x)
        return (self.alpha * u + self.beta * v, self.beta * u + self.gamma * v)

    def apolar(self, other: BinaryPointPair) -> object:
        """alpha*gamma' - 2*beta*beta' + gamma*alpha': zero when the pairs are harmonic."""
        return self.alpha * other.gamma - 2 * self.beta * other.beta + self.gamma * other.alpha


def harmonic_conjugate(pair: BinaryPointPair, x: Sequence) -> tuple:
    """The point x' with {x, x'} harmonic to the pair: b(x, x') = 0.

    Roots of the pair are fixed.  Undefined when x is the double root of a
    square form.
    """
    a, b = pair.polar(x)
    if not (a or b):
        raise ValueError("x is the double point of a square pair form; conjugate undefined")
    return (b, -a)


def _apply(M, x):
    return (M[0][0] * x[0] + M[0][1] * x[1], M[1][0] * x[0] + M[1][1] * x[1])


def _mul2(M, N):
    return [[sum(M[i][k] * N[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def _conj(Bm, D):
    """Bm * D * adj(Bm): D in the basis of the columns of Bm, up to the scalar det(Bm)."""
    adj = [[Bm[1][1], -Bm[0][1]], [-Bm[1][0], Bm[0][0]]]
    return _mul2(_mul2(Bm, D), adj)


def line_involutions(a: Sequence, b: Sequence, p: Sequence | None = None,
                     field: Field = QQ) -> tuple[list[list], list[list] | None]:
    """(sigma_ab, sigma_ab;p) as 2x2 matrices.

    sigma_ab fixes a and b; sigma_ab;p swaps a and b and fixes p.
    """
    a = [field(c) for c in a]
    b = [field(c) for c in b]
    det = a[0] * b[1] - a[1] * b[0]
    if not det:
        raise ValueError("a and b coincide")
    Bm = [[a[0], b[0]], [a[1], b[1]]]
    one, zero = field.one, field.zero
    s1 = _conj(Bm, [[one, zero], [zero, -one]])
    if p is None:
        return s1, None
    p = [field(c) for c in p]
    # coordinates of p in the basis (a, b), scaled by det
    al = p[0] * b[1] - p[1] * b[0]
    be = a[0] * p[1] - a[1] * p[0]
    if not (al and be):
        raise ValueError("p coincides with a or b")
    s2 = _conj(Bm, [[zero, al * al], [be * be, zero]])
    return s1, s2


def subspace_dimension_bound(n: int, m: int, d: int) -> int:
    """(n+2-m)*m - C(n-m+d+1, d); may be negative."""
    if not 1 <= m <= n + 1:
        raise ValueError("need 1 <= m <= n+1")
    if d < 2:
        raise ValueError("need d >= 2")
    return (n + 2 - m) * m - comb(n - m + d + 1, d)
