"""Small helpers shared by the surface modules: binary-form coercion and checks."""

from __future__ import annotations

from typing import Sequence

from .exactalg import Field, MultiPoly, poly_parse


class InvalidSurface(ValueError):
    """A rejected surface description.

    ``reason`` is a short machine-readable tag (``"cone"``, ``"reducible"``,
    ``"degree"``, ``"multiplicity"``, ``"monoidal"`` ...) and ``witness``
    carries the offending data as text.
    """

    def __init__(self, reason: str, message: str, witness: str = ""):
        self.reason = reason
        self.witness = witness
        super().__init__(f"{reason}: {message}" + (f" [{witness}]" if witness else ""))


def to_binary(f, names: Sequence[str], field: Field | None = None) -> MultiPoly:
    """Coerce ``f`` to a form over exactly the two variables ``names``.

    Accepts strings (parsed over ``names``), two-variable polynomials (renamed
    positionally) and polynomials over larger variable lists that only use
    ``names``.
    """
    names = tuple(names)
    if isinstance(f, str):
        if field is None:
            raise ValueError("a field is needed to parse a form")
        return poly_parse(f, names, field)
    if isinstance(f, MultiPoly):
        if f.vars == names:
            out = f
        elif set(f.vars) == set(names):
            out = f.with_vars(names)
        elif f.nvars == 2:
            out = f.rename(names)
        else:
            out = f.with_vars(names)
        return out.over(field) if field is not None else out
    if field is None:
        raise TypeError(f"cannot interpret {f!r} as a binary form")
    return MultiPoly.constant(f, names, field)


def check_form(f: MultiPoly, degree: int, label: str) -> None:
    if f and (not f.is_homogeneous() or f.total_degree() != degree):
        raise InvalidSurface(
            "degree", f"{label} must be zero or a form of degree {degree}", f"{label} = {f}"
        )


def wronskian(B: MultiPoly, C: MultiPoly) -> MultiPoly:
    """Jacobian determinant of (B, C) with respect to the two binary variables."""
    u, v = B.vars
    return B.diff(u) * C.diff(v) - B.diff(v) * C.diff(u)


def homogeneous_degree(f: MultiPoly) -> int | None:
    """Degree of a nonzero form, ``None`` for zero."""
    return f.total_degree() if f else None
