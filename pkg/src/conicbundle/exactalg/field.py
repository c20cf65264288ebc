"""Exact coefficient fields: the rationals and quadratic extensions Q(w), w^2 = D.

Rational numbers are plain :class:`fractions.Fraction` values.  Elements of a
quadratic extension are :class:`FieldElement` instances carrying the pair
``(a, b)`` that stands for ``a + b*w``.  A :class:`Field` is the context that
coerces inputs and knows how to print and sample its elements.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from numbers import Rational

__all__ = ["Field", "FieldElement", "QQ", "as_fraction"]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    if n < 2:
        return n == 1
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


class FieldElement:
    """The number ``a + b*w`` in Q(w) with ``w*w == D``.

    Both coordinates are stored as reduced fractions, so equality is
    structural.  Arithmetic with ints and Fractions is allowed; mixing two
    different extensions raises ``ValueError``.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b=0, D: int = -3):
        self.a = as_fraction(a)
        self.b = as_fraction(b)
        self.D = D

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.D != self.D:
                raise ValueError(f"mixing Q(sqrt({self.D})) and Q(sqrt({other.D}))")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(other, 0, self.D)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.a * other, self.b * other, self.D)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.b:
            return FieldElement(self.a * o.a, self.b * o.a, self.D)
        if not self.b:
            return FieldElement(self.a * o.a, self.a * o.b, self.D)
        return FieldElement(
            self.a * o.a + self.D * self.b * o.b, self.a * o.b + self.b * o.a, self.D
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def conjugate(self) -> FieldElement:
        return FieldElement(self.a, -self.b, self.D)

    def inverse(self) -> FieldElement:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.b:
            if not o.a:
                raise ZeroDivisionError("division by zero")
            return FieldElement(self.a / o.a, self.b / o.a, self.D)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = FieldElement(1, 0, self.D)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.D == other.D and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __repr__(self) -> str:
        return f"FieldElement({self.a}, {self.b}, D={self.D})"

    def __str__(self) -> str:
        return format_element(self)


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_element(c) -> str:
    """Exact text for a field element: ``a/b`` or ``a/b + c/d*w``."""
    if isinstance(c, FieldElement):
        if not c.b:
            return _frac_str(c.a)
        if c.b == 1:
            bpart = "w"
        elif c.b == -1:
            bpart = "-w"
        else:
            bpart = f"{_frac_str(c.b)}*w"
        if not c.a:
            return bpart
        if bpart.startswith("-"):
            return f"{_frac_str(c.a)} - {bpart[1:]}"
        return f"{_frac_str(c.a)} + {bpart}"
    return _frac_str(as_fraction(c))


class Field:
    """Coefficient context: ``Field()`` is Q, ``Field(D)`` is Q(sqrt(D)).

    ``D`` must be a square-free integer different from 0 and 1.
    """

    __slots__ = ("D",)

    def __init__(self, D: int | None = None):
        if D is not None:
            D = int(D)
            if D in (0, 1) or not _is_squarefree(D):
                raise ValueError(f"D = {D} is not a square-free integer != 0, 1")
        self.D = D

    @classmethod
    def quadratic(cls, D: int) -> Field:
        return cls(D)

    @property
    def is_rational(self) -> bool:
        return self.D is None

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.D == self.D

    def __hash__(self) -> int:
        return hash(("Field", self.D))

    def __repr__(self) -> str:
        return "QQ" if self.D is None else f"Field({self.D})"

    def __str__(self) -> str:
        return "Q" if self.D is None else f"Q(sqrt, {self.D})"

    def __call__(self, a, b=0):
        """Coerce ``a + b*w`` into this field."""
        if isinstance(a, FieldElement):
            if self.D is None:
                if a.b:
                    raise ValueError(f"{a} does not lie in Q")
                return a.a
            if a.D != self.D:
                raise ValueError(f"{a} does not lie in {self}")
            return a if not b else a + FieldElement(0, b, self.D)
        if self.D is None:
            if b:
                raise ValueError("the generator w is not available over Q")
            return as_fraction(a)
        return FieldElement(a, b, self.D)

    def contains(self, c) -> bool:
        if isinstance(c, FieldElement):
            return c.D == self.D
        return isinstance(c, (int, Fraction))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def gen(self):
        if self.D is None:
            raise ValueError("the generator w is not available over Q")
        return FieldElement(0, 1, self.D)

    def is_rational_element(self, c) -> bool:
        return not isinstance(c, FieldElement) or not c.b

    def random_element(self, rng: random.Random, bound: int = 5, den: int = 1):
        """Small pseudorandom element (numerators in ``[-bound, bound]``)."""
        a = Fraction(rng.randint(-bound, bound), rng.randint(1, den))
        if self.D is None:
            return a
        b = Fraction(rng.randint(-bound, bound), rng.randint(1, den))
        return FieldElement(a, b, self.D)

    def format(self, c) -> str:
        return format_element(c)


QQ = Field()


def lcm_denominator(values) -> int:
    den = 1
    for v in values:
        if isinstance(v, FieldElement):
            den = math.lcm(den, v.a.denominator, v.b.denominator)
        else:
            den = math.lcm(den, as_fraction(v).denominator)
    return den
