"""Exact algorithms on :class:`MultiPoly`: gcd, squarefree parts, resultants,
determinants and minors, plus dense linear algebra over a coefficient field.

Nothing here factors polynomials.  Root-cluster questions on binary forms are
answered with gcds against squarefree moduli.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .field import QQ, Field
from .poly import MultiPoly

__all__ = [
    "SquarefreeDecomposition",
    "binary_discriminant",
    "binary_resultant",
    "determinant",
    "field_det",
    "field_inverse",
    "field_nullspace",
    "field_rank",
    "field_rref",
    "field_solve",
    "is_squarefree",
    "linear_substitution",
    "mat_mul",
    "minor_gcd_locus",
    "minors",
    "poly_gcd",
    "poly_gcd_many",
    "resultant",
    "squarefree_decomposition",
]


# ---------------------------------------------------------------------------
# dense univariate helpers (coefficient lists, constant term first)


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _udivmod(a: list, b: list, field: Field) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    inv = field.one / b[-1]
    q = [field.zero] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] = a[k + j] - c * b[j]
    return _trim(q), _trim(a[:db])


def _umonic(a: list, field: Field) -> list:
    if not a:
        return a
    inv = field.one / a[-1]
    return [c * inv for c in a]


def _ugcd(a: list, b: list, field: Field) -> list:
    # monic remainders keep coefficient growth in check
    a, b = _umonic(_trim(list(a)), field), _umonic(_trim(list(b)), field)
    while b:
        a, b = b, _umonic(_udivmod(a, b, field)[1], field)
    return a


def _uderiv(a: list) -> list:
    return _trim([a[i] * i for i in range(1, len(a))])


def _uexact(a: list, b: list, field: Field) -> list:
    q, r = _udivmod(a, b, field)
    if r:
        raise ArithmeticError("inexact univariate division")
    return q


def _to_dense(p: MultiPoly, i: int) -> list:
    if not p.terms:
        return []
    out = [p.field.zero] * (p.degree(i) + 1)
    for e, c in p.terms.items():
        out[e[i]] = c
    return out


def _from_dense(a: Sequence, i: int, vars: tuple, field: Field) -> MultiPoly:
    n = len(vars)
    terms = {}
    for k, c in enumerate(a):
        if c:
            e = [0] * n
            e[i] = k
            terms[tuple(e)] = c
    return MultiPoly._raw(terms, vars, field)


def _homogenize_dense(a: Sequence, i: int, j: int, vars: tuple, field: Field) -> MultiPoly:
    """Binary form ``sum a[k] * v_i^k * v_j^(deg-k)`` from a dense list in v_i."""
    n = len(vars)
    deg = len(a) - 1
    terms = {}
    for k, c in enumerate(a):
        if c:
            e = [0] * n
            e[i] += k
            e[j] += deg - k
            terms[tuple(e)] = c
    return MultiPoly._raw(terms, vars, field)


# ---------------------------------------------------------------------------
# gcd


def _active(p: MultiPoly) -> set[int]:
    out: set[int] = set()
    for e in p.terms:
        out.update(i for i, k in enumerate(e) if k)
    return out


def _content_in(p: MultiPoly, idx: Sequence[int]) -> list[MultiPoly]:
    """Coefficients of p viewed as a polynomial in the variables ``idx``."""
    return list(p.coefficients_in([p.vars[i] for i in idx]).values())


def _gcd_list(polys: Sequence[MultiPoly]) -> MultiPoly:
    g = None
    for q in polys:
        g = q.monic() if g is None else _gcd(g, q)
        if g.is_constant():
            return g
    return g


def _gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Monic gcd of two nonzero polynomials (recursive, primitive PRS)."""
    if p.is_constant() or q.is_constant():
        return MultiPoly.one(p.vars, p.field)
    ap, aq = _active(p), _active(q)
    only_p = sorted(ap - aq)
    if only_p:
        return _gcd_list([q] + _content_in(p, only_p))
    only_q = sorted(aq - ap)
    if only_q:
        return _gcd_list([p] + _content_in(q, only_q))
    act = sorted(ap)
    if len(act) == 1:
        i = act[0]
        g = _ugcd(_to_dense(p, i), _to_dense(q, i), p.field)
        return _from_dense(g, i, p.vars, p.field)
    if p.is_homogeneous() and q.is_homogeneous():
        return _gcd_homogeneous(p, q, act)
    return _gcd_prs(p, q, act)


def _gcd_homogeneous(p: MultiPoly, q: MultiPoly, act: list[int]) -> MultiPoly:
    # strip the last variable, dehomogenize, recurse, rehomogenize
    last = act[-1]
    name = p.vars[last]
    a, b = p.order(last), q.order(last)
    unit = [0] * p.nvars
    unit[last] = 1
    vpow = MultiPoly._raw({tuple(k * a for k in unit): p.field.one}, p.vars, p.field)
    p1 = p.exact_div(vpow) if a else p
    vpow = MultiPoly._raw({tuple(k * b for k in unit): p.field.one}, p.vars, p.field)
    q1 = q.exact_div(vpow) if b else q
    g = _gcd(p1.subs({name: 1}), q1.subs({name: 1}))
    deg = g.total_degree()
    terms = {}
    for e, c in g.terms.items():
        ne = list(e)
        ne[last] += deg - sum(e)
        terms[tuple(ne)] = c
    m = min(a, b)
    out = MultiPoly._raw(terms, p.vars, p.field)
    if m:
        out = out.mul_monomial(tuple(k * m for k in unit))
    return out.monic()


def _prem(f: MultiPoly, g: MultiPoly, i: int) -> MultiPoly:
    """Sparse pseudo-remainder of f by g in variable i."""
    dg = g.degree(i)
    gco = g.univariate_coeffs(i)
    lg = gco[-1]
    unit = [0] * f.nvars
    r = f
    while r and r.degree(i) >= dg:
        dr = r.degree(i)
        lr = r.univariate_coeffs(i)[-1]
        unit[i] = dr - dg
        r = r * lg - (g * lr).mul_monomial(tuple(unit))
    return r


def _primitive(p: MultiPoly, i: int) -> tuple[MultiPoly, MultiPoly]:
    coeffs = [c for c in p.univariate_coeffs(i) if c]
    cont = _gcd_list(coeffs)
    if cont.is_constant():
        return MultiPoly.one(p.vars, p.field), p.monic()
    return cont, p.exact_div(cont).monic()


def _gcd_prs(p: MultiPoly, q: MultiPoly, act: list[int]) -> MultiPoly:
    # lowest-degree main variable: fewest pseudo-division steps
    i = min(act, key=lambda k: (max(p.degree(k), q.degree(k)), k))
    cp, pp = _primitive(p, i)
    cq, qq = _primitive(q, i)
    cont = _gcd(cp, cq)
    if pp.degree(i) < qq.degree(i):
        pp, qq = qq, pp
    while qq.degree(i) > 0:
        r = _prem(pp, qq, i)
        if not r:
            return (cont * qq).monic()
        if r.degree(i) == 0:
            break
        pp, qq = qq, _primitive(r, i)[1]
    return cont


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor, monic in graded lex order; gcd(0, 0) = 0."""
    p._check(q)
    if not p:
        return q.monic()
    if not q:
        return p.monic()
    # shared monomial factor first: keeps the recursion on smaller supports
    n = p.nvars
    mp = [min(e[i] for e in p.terms) for i in range(n)]
    mq = [min(e[i] for e in q.terms) for i in range(n)]
    common = tuple(min(a, b) for a, b in zip(mp, mq))
    ps = MultiPoly._raw({tuple(x - y for x, y in zip(e, mp)): c for e, c in p.terms.items()}, p.vars, p.field)
    qs = MultiPoly._raw({tuple(x - y for x, y in zip(e, mq)): c for e, c in q.terms.items()}, q.vars, q.field)
    g = _gcd(ps, qs)
    return g.mul_monomial(common) if any(common) else g


def poly_gcd_many(polys: Sequence[MultiPoly]) -> MultiPoly:
    """gcd of a list; zero entries are skipped, all-zero input gives 0."""
    nz = [p for p in polys if p]
    if not nz:
        if not polys:
            raise ValueError("empty polynomial list")
        return polys[0]
    g = nz[0].monic()
    for p in nz[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, p)
    return g


# ---------------------------------------------------------------------------
# squarefree decomposition of binary forms


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """``unit * prod(factor ** mult)`` with monic, squarefree, coprime factors."""

    unit: object
    factors: tuple[tuple[MultiPoly, int], ...]
    source: MultiPoly

    def expand(self) -> MultiPoly:
        out = MultiPoly.constant(self.unit, self.source.vars, self.source.field)
        for f, m in self.factors:
            out = out * f**m
        return out

    def part(self, mult: int) -> MultiPoly:
        """The factor of exact multiplicity ``mult`` (1 if there is none)."""
        for f, m in self.factors:
            if m == mult:
                return f
        return MultiPoly.one(self.source.vars, self.source.field)

    def squarefree_part(self) -> MultiPoly:
        out = MultiPoly.one(self.source.vars, self.source.field)
        for f, _ in self.factors:
            out = out * f
        return out

    @property
    def max_multiplicity(self) -> int:
        return max((m for _, m in self.factors), default=0)

    def degree_profile(self) -> dict[int, int]:
        return {m: f.total_degree() for f, m in self.factors}


def _binary_indices(f: MultiPoly, tvars: Sequence[str] | None) -> tuple[int, int]:
    if tvars is None:
        if f.nvars == 2:
            return 0, 1
        used = f.variables_used()
        if len(used) > 2:
            raise ValueError(f"not a binary form: uses {used}")
        tvars = list(used) + [v for v in f.vars if v not in used][: 2 - len(used)]
        tvars = sorted(tvars, key=f.vars.index)
    i, j = f._index(tvars[0]), f._index(tvars[1])
    if set(f.variables_used()) - {f.vars[i], f.vars[j]}:
        raise ValueError(f"form involves variables outside {tuple(tvars)}")
    return i, j


def _yun(a: list, field: Field) -> list[list]:
    """Yun's algorithm: squarefree parts a_1, a_2, ... of a monic dense polynomial."""
    out = []
    da = _uderiv(a)
    g = _ugcd(a, da, field)
    b = _uexact(a, g, field)
    c = _uexact(da, g, field) if da else []
    d = _trim([x - y for x, y in _zip_pad(c, _uderiv(b), field)])
    while len(b) > 1:
        h = _ugcd(b, d, field)
        out.append(h)
        b = _uexact(b, h, field)
        c = _uexact(d, h, field) if d else []
        d = _trim([x - y for x, y in _zip_pad(c, _uderiv(b), field)])
    return out


def _zip_pad(a: list, b: list, field: Field):
    n = max(len(a), len(b))
    z = field.zero
    return [(a[k] if k < len(a) else z, b[k] if k < len(b) else z) for k in range(n)]


def squarefree_decomposition(f: MultiPoly, tvars: Sequence[str] | None = None) -> SquarefreeDecomposition:
    """Squarefree decomposition of a nonzero binary form.

    Roots at either end of the projective line are kept: the power of the
    second variable is split off before dehomogenizing.
    """
    if not f:
        raise ValueError("squarefree decomposition of the zero form")
    if not f.is_homogeneous():
        raise ValueError("squarefree decomposition needs a homogeneous binary form")
    i, j = _binary_indices(f, tvars)
    field = f.field
    unit = f.leading_coefficient()
    a = f.order(j)
    core = f if not a else f.exact_div(_monomial(f, j, a))
    dense = _umonic(_to_dense(core.subs({f.vars[j]: 1}), i), field)
    groups: dict[int, MultiPoly] = {}
    for k, h in enumerate(_yun(dense, field), start=1):
        if len(h) > 1:
            groups[k] = _homogenize_dense(h, i, j, f.vars, field).monic()
    if a:
        tj = _monomial(f, j, 1)
        groups[a] = groups[a] * tj if a in groups else tj
    factors = tuple((groups[k].monic(), k) for k in sorted(groups))
    return SquarefreeDecomposition(unit, factors, f)


def _monomial(f: MultiPoly, i: int, k: int) -> MultiPoly:
    e = [0] * f.nvars
    e[i] = k
    return MultiPoly._raw({tuple(e): f.field.one}, f.vars, f.field)


def is_squarefree(f: MultiPoly, tvars: Sequence[str] | None = None) -> bool:
    """True for a nonzero binary form without repeated linear factors."""
    if not f:
        return False
    return squarefree_decomposition(f, tvars).max_multiplicity <= 1


# ---------------------------------------------------------------------------
# determinants, minors, resultants


def _det_cofactor(M: list[list[MultiPoly]]) -> MultiPoly:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        if not M[0][j]:
            continue
        sub = [row[:j] + row[j + 1 :] for row in M[1:]]
        term = M[0][j] * _det_cofactor(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return MultiPoly.zero(M[0][0].vars, M[0][0].field)
    return total


def determinant(M: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Exact determinant of a square matrix of polynomials.

    Cofactor expansion up to 3x3, fraction-free Bareiss elimination above.
    """
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n <= 3:
        return _det_cofactor([list(r) for r in M])
    A = [list(r) for r in M]
    ref = A[0][0]
    sign = 1
    prev = MultiPoly.one(ref.vars, ref.field)
    for k in range(n - 1):
        if not A[k][k]:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(ref.vars, ref.field)
        pivot = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = num.exact_div(prev) if not prev.is_constant() else num / prev.constant_value()
            A[i][k] = MultiPoly.zero(ref.vars, ref.field)
        prev = pivot
    det = A[n - 1][n - 1]
    return det if sign > 0 else -det


def minors(M: Sequence[Sequence[MultiPoly]], k: int) -> list[MultiPoly]:
    """All k x k minors (row subsets outer, column subsets inner, lexicographic)."""
    rows, cols = len(M), len(M[0])
    out = []
    for ri in combinations(range(rows), k):
        for ci in combinations(range(cols), k):
            out.append(determinant([[M[r][c] for c in ci] for r in ri]))
    return out


def minor_gcd_locus(M: Sequence[Sequence[MultiPoly]], modulus: MultiPoly, r: int) -> MultiPoly:
    """gcd of ``modulus`` with every (r+1)-minor of ``M``, made monic.

    For a squarefree binary modulus the roots of the result are the roots of
    the modulus where rank M(t) <= r.  If r+1 exceeds a matrix dimension the
    rank bound always holds and the modulus itself is returned.
    """
    if r < 0:
        raise ValueError("rank bound must be non-negative")
    if not modulus:
        raise ValueError("zero modulus")
    k = r + 1
    if k > len(M) or k > len(M[0]):
        return modulus.monic()
    g = modulus.monic()
    rows, cols = len(M), len(M[0])
    for ri in combinations(range(rows), k):
        for ci in combinations(range(cols), k):
            m = determinant([[M[a][b] for b in ci] for a in ri])
            if m:
                g = poly_gcd(g, m)
                if g.is_constant():
                    return g
    return g


def _sylvester(fc: list, gc: list, zero: MultiPoly) -> list[list[MultiPoly]]:
    # fc, gc: coefficients from the constant term up (formal degrees len-1)
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    rows = []
    for k in range(n):
        row = [zero] * size
        for j, c in enumerate(fc):
            row[k + j] = c
        rows.append(row)
    for k in range(m):
        row = [zero] * size
        for j, c in enumerate(gc):
            row[k + j] = c
        rows.append(row)
    return rows


def resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant in ``var``.

    The matrix lists coefficients from the constant term upward, so
    ``resultant(t - a, t - b, "t") == b - a``.  This differs from the
    leading-coefficient-first layout by the sign (-1)^(m*n).
    """
    f._check(g)
    i = f._index(var)
    if f.degree(i) <= 0 or g.degree(i) <= 0:
        raise ValueError(f"resultant needs positive degree in {var!r}")
    zero = MultiPoly.zero(f.vars, f.field)
    return determinant(_sylvester(f.univariate_coeffs(i), g.univariate_coeffs(i), zero))


def binary_resultant(fc: Sequence[MultiPoly], gc: Sequence[MultiPoly]) -> MultiPoly:
    """Resultant of two binary forms given by formal coefficient lists.

    ``fc[k]`` multiplies ``u^k * v^(m-k)``; degrees are the formal ones, so
    roots at ``[0, 1]`` still count.  Leading-coefficient-first convention.
    """
    zero = fc[0] * 0
    m, n = len(fc) - 1, len(gc) - 1
    if m + n == 0:
        return MultiPoly.one(zero.vars, zero.field)
    det = determinant(_sylvester(list(fc), list(gc), zero))
    return -det if (m * n) % 2 else det


def binary_discriminant(G: MultiPoly, tvars: Sequence[str]) -> MultiPoly:
    """Discriminant of G as a binary form in ``tvars`` with polynomial coefficients.

    Uses disc = (-1)^(n(n-1)/2) Res(g, dg/du) / a_n for the formal degree n,
    after a unimodular change of the binary variables (which leaves the
    discriminant unchanged) whenever the leading coefficient vanishes
    identically.  Degree 1 forms have discriminant 1.
    """
    u, v = G._index(tvars[0]), G._index(tvars[1])
    groups = G.coefficients_in([G.vars[u], G.vars[v]])
    degs = {a + b for a, b in groups}
    if len(degs) != 1:
        raise ValueError("G is not homogeneous in the binary variables")
    n = degs.pop()
    if n < 1:
        raise ValueError("discriminant of a form of degree 0")
    one = MultiPoly.one(G.vars, G.field)
    if n == 1:
        return one
    coeffs = [groups.get((k, n - k), one * 0) for k in range(n + 1)]
    if not coeffs[-1]:
        coeffs = _unimodular_fix(coeffs, one)
    deriv = [coeffs[k + 1] * (k + 1) for k in range(n)]
    res = binary_resultant(coeffs, deriv)
    disc = res.exact_div(coeffs[-1])
    return disc if (n * (n - 1) // 2) % 2 == 0 else -disc


def _binomial_row(n: int) -> list[int]:
    row = [1]
    for k in range(n):
        row.append(row[-1] * (n - k) // (k + 1))
    return row


def _unimodular_fix(coeffs: list[MultiPoly], one: MultiPoly) -> list[MultiPoly]:
    """Apply u -> u, v -> v + c*u (determinant 1) until the u^n coefficient is nonzero."""
    n = len(coeffs) - 1
    binom = [_binomial_row(j) for j in range(n + 1)]
    for c in range(1, 2 * n + 3):
        # sum a_k u^k (v + c u)^(n-k): coefficient of u^j v^(n-j)
        new = [one * 0 for _ in range(n + 1)]
        for k, a in enumerate(coeffs):
            if not a:
                continue
            for s in range(n - k + 1):
                new[k + s] = new[k + s] + a * (binom[n - k][s] * c**s)
        if new[-1]:
            return new
    raise ValueError("binary form vanishes identically")


# ---------------------------------------------------------------------------
# dense linear algebra over a coefficient field


def _rref(rows: list[list], field: Field) -> tuple[list[list], list[int], int]:
    A = [[field(x) for x in r] for r in rows]
    nr = len(A)
    nc = len(A[0]) if A else 0
    pivots = []
    sign = 1
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if A[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
            sign = -sign
        inv = field.one / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(nr):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return A, pivots, sign


def field_rref(rows: Sequence[Sequence], field: Field = QQ) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    R, pivots, _ = _rref([list(r) for r in rows], field)
    return R, pivots


def field_rank(rows: Sequence[Sequence], field: Field = QQ) -> int:
    if not rows:
        return 0
    return len(_rref([list(r) for r in rows], field)[1])


def field_det(rows: Sequence[Sequence], field: Field = QQ):
    n = len(rows)
    A = [[field(x) for x in r] for r in rows]
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    det = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c]
        inv = field.one / A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return det


def field_inverse(rows: Sequence[Sequence], field: Field = QQ) -> list[list]:
    n = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    R, pivots, _ = _rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [r[n:] for r in R]


def field_nullspace(rows: Sequence[Sequence], field: Field = QQ) -> list[list]:
    """Basis of {x : rows * x = 0}, one vector per free column."""
    if not rows:
        raise ValueError("empty system")
    nc = len(rows[0])
    R, pivots, _ = _rref([list(r) for r in rows], field)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * nc
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def field_solve(rows: Sequence[Sequence], rhs: Sequence, field: Field = QQ) -> list:
    """One solution of rows * x = rhs (free variables set to 0)."""
    nc = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots, _ = _rref(aug, field)
    if nc in pivots:
        raise ValueError("inconsistent linear system")
    x = [field.zero] * nc
    for i, p in enumerate(pivots):
        x[p] = R[i][nc]
    return x


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence], field: Field = QQ) -> list[list]:
    return [
        [sum((field(A[i][k]) * field(B[k][j]) for k in range(len(B))), field.zero) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def linear_substitution(f: MultiPoly, M: Sequence[Sequence]) -> MultiPoly:
    """``f o M``, the polynomial x -> f(M x).

    Satisfies ``(f o M) o N == f o (M N)``.  Raises on singular M.
    """
    n = f.nvars
    if len(M) != n or any(len(r) != n for r in M):
        raise ValueError(f"substitution matrix must be {n}x{n}")
    if not field_det(M, f.field):
        raise ValueError("singular substitution matrix")
    images = [MultiPoly.linear_form(row, f.vars, f.field) for row in M]
    return f.compose(images)
