"""Picard lattice of the blow-up model of a degree-d submonoidal surface.

Basis (e0, e1, ..., e_{3d-4}, e_{3d-3}) with form diag(1, -1, ..., -1);
e_{3d-3} is the exceptional curve over the distinguished point p0.  Special
sections are the classes n*e0 - sum_{i in I} e_i - (n-1)*e_{3d-3} with
#I = 2n.  Duality and the involution tau need d even.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple

import numpy as np

__all__ = [
    "LatticeClass",
    "all_classes",
    "SpecialSectionClass",
    "StandardClasses",
    "dual_section",
    "enumerate_special_sections",
    "intersection_form",
    "intersection_number",
    "rank",
    "section_counts",
    "standard_classes",
    "tau_action",
    "tau_matrix",
]


def rank(d: int) -> int:
    if d < 3:
        raise ValueError("d must be at least 3")
    return 3 * d - 2


def intersection_form(d: int) -> np.ndarray:
    g = -np.eye(rank(d), dtype=np.int64)
    g[0, 0] = 1
    return g


@dataclass(frozen=True)
class LatticeClass:
    d: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != rank(self.d):
            raise ValueError(f"degree {self.d} needs {rank(self.d)} coefficients, got {len(self.coeffs)}")

    @classmethod
    def basis(cls, d: int, i: int) -> LatticeClass:
        v = [0] * rank(d)
        v[i] = 1
        return cls(d, tuple(v))

    @classmethod
    def from_array(cls, d: int, a) -> LatticeClass:
        return cls(d, tuple(int(x) for x in a))

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def _same(self, other: LatticeClass) -> None:
        if self.d != other.d:
            raise ValueError(f"rank mismatch: d = {self.d} vs d = {other.d}")

    def __add__(self, other: LatticeClass) -> LatticeClass:
        self._same(other)
        return LatticeClass(self.d, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: LatticeClass) -> LatticeClass:
        return self + (-other)

    def __neg__(self) -> LatticeClass:
        return LatticeClass(self.d, tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int) -> LatticeClass:
        return LatticeClass(self.d, tuple(k * a for a in self.coeffs))

    def dot(self, other: LatticeClass) -> int:
        return intersection_number(self, other)

    @property
    def square(self) -> int:
        return self.dot(self)

    @property
    def degree(self) -> int:
        """Coefficient of e0: the degree of the plane model."""
        return self.coeffs[0]

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign} {mag}e{i}")
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def intersection_number(a: LatticeClass, b: LatticeClass) -> int:
    a._same(b)
    return int(a.array() @ intersection_form(a.d) @ b.array())


class StandardClasses(NamedTuple):
    H: LatticeClass
    Sigma: LatticeClass
    K: LatticeClass
    fiber: LatticeClass


def _combo(d: int, c0: int, ci: int, clast: int) -> LatticeClass:
    r = rank(d)
    return LatticeClass(d, (c0,) + (ci,) * (r - 2) + (clast,))


def standard_classes(d: int) -> StandardClasses:
    """Hyperplane H, the class Sigma, the canonical class K and the fiber class."""
    return StandardClasses(
        H=_combo(d, d, -1, -(d - 2)),
        Sigma=_combo(d, d - 1, -1, -(d - 3)),
        K=_combo(d, -3, 1, 1),
        fiber=_combo(d, 1, 0, -1),
    )


@dataclass(frozen=True)
class SpecialSectionClass:
    """n*e0 - sum_{i in I} e_i - (n-1)*e_{3d-3} with #I = 2n.

    n = 0 (empty I) is the exceptional curve over p0 itself.
    """

    d: int
    n: int
    I: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "I", frozenset(int(i) for i in self.I))
        top = 3 * self.d - 4
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if len(self.I) != 2 * self.n:
            raise ValueError(f"#I = {len(self.I)} but 2n = {2 * self.n}")
        if not all(1 <= i <= top for i in self.I):
            raise ValueError(f"indices must lie in 1..{top}")

    @property
    def lattice_class(self) -> LatticeClass:
        r = rank(self.d)
        v = [0] * r
        v[0] = self.n
        for i in self.I:
            v[i] = -1
        v[r - 1] = -(self.n - 1)
        return LatticeClass(self.d, tuple(v))

    def equations(self) -> dict[str, tuple[int, int]]:
        """The defining conditions as (value, required) pairs."""
        E = self.lattice_class
        H, Sig, K, fib = standard_classes(self.d)
        return {
            "E^2": (E.square, -1),
            "-K.E": (-E.dot(K), 1),
            "H.E": (E.dot(H), self.d - 2),
            "Sigma.E": (E.dot(Sig), self.d - 3),
            "fiber.E": (E.dot(fib), 1),
        }

    def satisfies_equations(self) -> bool:
        return all(v == w for v, w in self.equations().values())

    @classmethod
    def from_class(cls, c: LatticeClass) -> SpecialSectionClass:
        """Recognize a lattice class of the special-section shape, or raise."""
        n, *mid, last = c.coeffs
        if last != -(n - 1) or any(x not in (0, -1) for x in mid):
            raise ValueError(f"{c} is not of special-section shape")
        return cls(c.d, n, frozenset(i + 1 for i, x in enumerate(mid) if x == -1))

    def __str__(self) -> str:
        return f"n={self.n} I={sorted(self.I)}"


def enumerate_special_sections(d: int) -> dict[int, list[SpecialSectionClass]]:
    """All special-section classes grouped by n = 0, 1, ...; 2^{3d-5} in total."""
    top = 3 * d - 4
    out: dict[int, list[SpecialSectionClass]] = {}
    for n in range(top // 2 + 1):
        out[n] = [SpecialSectionClass(d, n, frozenset(I)) for I in combinations(range(1, top + 1), 2 * n)]
    return out


def section_counts(d: int) -> dict[int, int]:
    """Counts by n from the binomial formula, without enumerating."""
    top = 3 * d - 4
    return {n: comb(top, 2 * n) for n in range(top // 2 + 1)}


def _half(d: int) -> int:
    if d % 2:
        raise ValueError(f"d = {d} is odd; duality and tau need d even")
    return d // 2


def dual_section(s: SpecialSectionClass) -> SpecialSectionClass:
    """(m-1)H - (m-2)Sigma - E computed in the lattice, d = 2m."""
    m = _half(s.d)
    H, Sig, _, _ = standard_classes(s.d)
    return SpecialSectionClass.from_class((m - 1) * H - (m - 2) * Sig - s.lattice_class)


def tau_matrix(d: int) -> np.ndarray:
    """Integer matrix whose column j is the image of e_j."""
    m = _half(d)
    r = rank(d)
    T = np.zeros((r, r), dtype=np.int64)
    T[:, 0] = _combo(d, 3 * m - 1, -1, -(3 * m - 2)).coeffs
    for i in range(1, r - 1):
        T[0, i] = 1
        T[i, i] = -1
        T[r - 1, i] = -1
    T[:, r - 1] = _combo(d, 3 * m - 2, -1, -(3 * m - 3)).coeffs
    return T


def tau_action(a: LatticeClass) -> LatticeClass:
    return LatticeClass.from_array(a.d, tau_matrix(a.d) @ a.array())


def all_classes(d: int) -> Iterable[SpecialSectionClass]:
    for group in enumerate_special_sections(d).values():
        yield from group
