"""Sparse multivariate polynomials with exact coefficients.

A :class:`MultiPoly` is a dictionary from exponent tuples to nonzero
coefficients, together with the ordered variable names and the coefficient
:class:`~conicbundle.exactalg.field.Field`.  Monomials are compared in graded
lexicographic order with the first declared variable largest; "leading" and
"monic" always refer to that order.

Values are treated as immutable.  Nothing in this module mutates a
polynomial after construction.
"""

from __future__ import annotations

from fractions import Fraction
from operator import add, sub
from typing import Iterable, Mapping, Sequence

from .field import QQ, Field, FieldElement

__all__ = ["MultiPoly", "grlex_key"]


def grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class MultiPoly:
    __slots__ = ("vars", "field", "terms", "_hash")

    def __init__(self, terms: Mapping, vars: Sequence[str], field: Field = QQ):
        self.vars = tuple(vars)
        self.field = field
        n = len(self.vars)
        clean = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match {n} variables")
            c = field(c)
            if c:
                clean[e] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, vars: tuple, field: Field) -> MultiPoly:
        # caller guarantees: no zero coefficients, coefficients already in field
        p = object.__new__(cls)
        p.vars = vars
        p.field = field
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str], field: Field = QQ) -> MultiPoly:
        return cls._raw({}, tuple(vars), field)

    @classmethod
    def constant(cls, c, vars: Sequence[str], field: Field = QQ) -> MultiPoly:
        return cls({(0,) * len(vars): c}, vars, field)

    @classmethod
    def one(cls, vars: Sequence[str], field: Field = QQ) -> MultiPoly:
        return cls.constant(1, vars, field)

    @classmethod
    def variable(cls, name: str, vars: Sequence[str], field: Field = QQ) -> MultiPoly:
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls({tuple(e): 1}, vars, field)

    @classmethod
    def gens(cls, vars: Sequence[str], field: Field = QQ) -> list[MultiPoly]:
        return [cls.variable(v, vars, field) for v in vars]

    @classmethod
    def linear_form(cls, coeffs: Sequence, vars: Sequence[str], field: Field = QQ) -> MultiPoly:
        n = len(vars)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(terms, vars, field)

    @classmethod
    def from_binary_coeffs(cls, coeffs: Sequence, vars: Sequence[str], field: Field = QQ) -> MultiPoly:
        """Binary form ``sum c[i] * v0^(n-i) * v1^i`` for ``n = len(coeffs) - 1``."""
        n = len(coeffs) - 1
        return cls({(n - i, i): c for i, c in enumerate(coeffs)}, vars, field)

    # -- basic queries ----------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def total_degree(self) -> int:
        """Largest total degree of a monomial; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str | int) -> int:
        i = self._index(var)
        return max((e[i] for e in self.terms), default=-1)

    def order(self, var: str | int) -> int:
        """Largest k with var^k dividing the polynomial (0 for the zero polynomial)."""
        i = self._index(var)
        return min((e[i] for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def variables_used(self) -> tuple[str, ...]:
        used = [False] * self.nvars
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def _index(self, var: str | int) -> int:
        if isinstance(var, int):
            return var
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r}; declared {self.vars}") from None

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grlex_key)

    def leading_coefficient(self):
        if not self.terms:
            return self.field.zero
        return self.terms[self.leading_monomial()]

    def monic(self) -> MultiPoly:
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        return self.scale(1 / lc if isinstance(lc, FieldElement) else Fraction(1) / lc)

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), self.field.zero)

    # -- ring compatibility ----------------------------------------------

    def _check(self, other: MultiPoly) -> None:
        if other.vars != self.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def _lift(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return MultiPoly.constant(other, self.vars, self.field)
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        res = dict(self.terms)
        for e, c in o.terms.items():
            s = res.get(e)
            if s is None:
                res[e] = c
            else:
                s = s + c
                if s:
                    res[e] = s
                else:
                    del res[e]
        return MultiPoly._raw(res, self.vars, self.field)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.vars, self.field)

    def __pos__(self) -> MultiPoly:
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> MultiPoly:
        c = self.field(c)
        if not c:
            return MultiPoly.zero(self.vars, self.field)
        if c == 1:
            return self
        return MultiPoly._raw({e: v * c for e, v in self.terms.items()}, self.vars, self.field)

    def mul_monomial(self, exps: Sequence[int], c=1) -> MultiPoly:
        exps = tuple(exps)
        c = self.field(c)
        if not c:
            return MultiPoly.zero(self.vars, self.field)
        return MultiPoly._raw(
            {tuple(map(add, e, exps)): v * c for e, v in self.terms.items()},
            self.vars,
            self.field,
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (e, c), = b.items()
            return self.mul_monomial(e, c) if a is self.terms else other.mul_monomial(e, c)
        res: dict = {}
        get = res.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(add, e1, e2))
                s = get(e)
                res[e] = c1 * c2 if s is None else s + c1 * c2
        res = {e: c for e, c in res.items() if c}
        return MultiPoly._raw(res, self.vars, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = MultiPoly.one(self.vars, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        # division by a nonzero scalar only; polynomial division is `exact_div`
        if isinstance(other, MultiPoly):
            if other.is_constant() and other.terms:
                other = other.constant_value()
            else:
                return NotImplemented
        c = self.field(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(self.field.one / c)

    # -- division ---------------------------------------------------------

    def divmod(self, g: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
        """Multivariate division by a single divisor in grlex order.

        Returns ``(q, r)`` with ``self == q*g + r`` and no monomial of ``r``
        divisible by the leading monomial of ``g``.  ``r`` is zero exactly when
        ``g`` divides ``self``.
        """
        self._check(g)
        if not g.terms:
            raise ZeroDivisionError("polynomial division by zero")
        lm = g.leading_monomial()
        lc = g.terms[lm]
        inv = self.field.one / lc
        gterms = [(e, c) for e, c in g.terms.items() if e != lm]
        work = dict(self.terms)
        quot: dict = {}
        rem: dict = {}
        while work:
            e = max(work, key=grlex_key)
            c = work.pop(e)
            if all(x >= y for x, y in zip(e, lm)):
                shift = tuple(map(sub, e, lm))
                qc = c * inv
                quot[shift] = qc
                for ge, gc in gterms:
                    ne = tuple(map(add, ge, shift))
                    s = work.get(ne)
                    v = -qc * gc if s is None else s - qc * gc
                    if v:
                        work[ne] = v
                    elif s is not None:
                        del work[ne]
            else:
                rem[e] = c
        return (
            MultiPoly._raw(quot, self.vars, self.field),
            MultiPoly._raw(rem, self.vars, self.field),
        )

    def exact_div(self, g: MultiPoly) -> MultiPoly:
        q, r = self.divmod(g)
        if r.terms:
            raise ArithmeticError(f"{g} does not divide {self}")
        return q

    def divides(self, f: MultiPoly) -> bool:
        return not f.divmod(self)[1].terms

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction, FieldElement)):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, self.field, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution -----------------------------------------

    def diff(self, var: str | int) -> MultiPoly:
        i = self._index(var)
        res = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                res[tuple(ne)] = c * k
        return MultiPoly._raw(res, self.vars, self.field)

    def gradient(self) -> list[MultiPoly]:
        return [self.diff(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence | Mapping):
        """Value at a point given as a sequence (declared order) or a name map."""
        if isinstance(point, Mapping):
            point = [point[v] for v in self.vars]
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        point = [self.field(x) for x in point]
        powers: list[dict[int, object]] = [{0: self.field.one, 1: x} for x in point]

        def pw(i, k):
            cache = powers[i]
            v = cache.get(k)
            if v is None:
                v = point[i] ** k
                cache[k] = v
            return v

        total = self.field.zero
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            total = total + t
        return total

    def compose(self, images: Sequence[MultiPoly]) -> MultiPoly:
        """Substitute ``images[i]`` for the i-th variable.

        All images must share one variable list and field; the result lives
        there.
        """
        if len(images) != self.nvars:
            raise ValueError(f"need {self.nvars} images, got {len(images)}")
        target = images[0]
        for g in images[1:]:
            target._check(g)
        if target.field != self.field:
            raise ValueError("field mismatch in composition")
        cache: list[dict[int, MultiPoly]] = [{1: g} for g in images]

        def pw(i, k):
            c = cache[i]
            if k in c:
                return c[k]
            half = pw(i, k // 2)
            v = half * half
            if k % 2:
                v = v * images[i]
            c[k] = v
            return v

        # group monomials by their leading variables to share partial products
        result = MultiPoly.zero(target.vars, target.field)
        one = MultiPoly.one(target.vars, target.field)
        prefix_cache: dict[tuple[int, ...], MultiPoly] = {(): one}

        def prefix(e: tuple[int, ...]) -> MultiPoly:
            v = prefix_cache.get(e)
            if v is None:
                head = prefix(e[:-1])
                k = e[-1]
                v = head * pw(len(e) - 1, k) if k else head
                prefix_cache[e] = v
            return v

        for e, c in self.terms.items():
            result = result + prefix(e).scale(c)
        return result

    def subs(self, mapping: Mapping[str, object]) -> MultiPoly:
        """Substitute scalars or polynomials (same variable list) for named variables."""
        images = []
        for v in self.vars:
            if v in mapping:
                val = mapping[v]
                if isinstance(val, MultiPoly):
                    self._check(val)
                    images.append(val)
                else:
                    images.append(MultiPoly.constant(val, self.vars, self.field))
            else:
                images.append(MultiPoly.variable(v, self.vars, self.field))
        return self.compose(images)

    # -- variable bookkeeping --------------------------------------------

    def rename(self, new_vars: Sequence[str]) -> MultiPoly:
        """Same exponents, new names (positional)."""
        new_vars = tuple(new_vars)
        if len(new_vars) != self.nvars:
            raise ValueError("rename must keep the number of variables")
        return MultiPoly._raw(dict(self.terms), new_vars, self.field)

    def with_vars(self, new_vars: Sequence[str]) -> MultiPoly:
        """Re-express over another variable list containing every used variable."""
        new_vars = tuple(new_vars)
        idx = []
        for i, v in enumerate(self.vars):
            if v in new_vars:
                idx.append(new_vars.index(v))
            else:
                idx.append(None)
        res = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise ValueError(f"variable {self.vars[i]!r} is used but missing from {new_vars}")
                    ne[idx[i]] = k
            res[tuple(ne)] = c
        return MultiPoly._raw(res, new_vars, self.field)

    def over(self, field: Field) -> MultiPoly:
        if field == self.field:
            return self
        return MultiPoly(self.terms, self.vars, field)

    def coefficients_in(self, vars: Iterable[str]) -> dict[tuple[int, ...], MultiPoly]:
        """Split as ``sum m(vars) * coeff`` with coefficients free of ``vars``.

        Keys are exponent tuples in the given variables; coefficients keep the
        full variable list (with zero exponents in ``vars``).
        """
        idx = [self._index(v) for v in vars]
        groups: dict[tuple[int, ...], dict] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            ne = list(e)
            for i in idx:
                ne[i] = 0
            groups.setdefault(key, {})[tuple(ne)] = c
        return {k: MultiPoly._raw(v, self.vars, self.field) for k, v in groups.items()}

    def univariate_coeffs(self, var: str | int) -> list[MultiPoly]:
        """Coefficients of var^0, var^1, ..., var^deg (each free of var)."""
        i = self._index(var)
        deg = self.degree(i)
        out = [dict() for _ in range(max(deg + 1, 0))]
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] = 0
            out[e[i]][tuple(ne)] = c
        return [MultiPoly._raw(t, self.vars, self.field) for t in out]

    def homogeneous_part(self, degree: int) -> MultiPoly:
        return MultiPoly._raw(
            {e: c for e, c in self.terms.items() if sum(e) == degree}, self.vars, self.field
        )

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        from .printer import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r}, vars={list(self.vars)}, field={self.field!r})"
