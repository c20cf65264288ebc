"""Canonical text for polynomials; the output is accepted by :func:`poly_parse`."""

from __future__ import annotations

from fractions import Fraction

from .field import FieldElement, _frac_str


def format_monomial(exps, names) -> str:
    parts = []
    for k, v in zip(exps, names):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def _w_term(mag: Fraction) -> str:
    return "w" if mag == 1 else f"{_frac_str(mag)}*w"


def _signed_coeff(c) -> tuple[int, str | None]:
    """Split a coefficient into a sign and a magnitude string.

    The magnitude is ``None`` for a unit coefficient.  Mixed quadratic
    coefficients are parenthesized and always carry sign +1.
    """
    if isinstance(c, FieldElement):
        if not c.b:
            c = c.a
        elif not c.a:
            return (1 if c.b > 0 else -1), _w_term(abs(c.b))
        else:
            op = "+" if c.b > 0 else "-"
            return 1, f"({_frac_str(c.a)} {op} {_w_term(abs(c.b))})"
    c = Fraction(c)
    sign = 1 if c > 0 else -1
    mag = abs(c)
    return sign, (None if mag == 1 else _frac_str(mag))


def format_poly(p) -> str:
    """Terms in descending graded lexicographic order, ``*`` and ``^`` explicit."""
    if not p.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms()):
        sign, mag = _signed_coeff(c)
        mono = format_monomial(e, p.vars)
        if mono and mag:
            body = f"{mag}*{mono}"
        elif mono:
            body = mono
        else:
            body = mag if mag else "1"
        if i == 0:
            out.append(body if sign > 0 else f"-{body}")
        else:
            out.append(f" + {body}" if sign > 0 else f" - {body}")
    return "".join(out)
