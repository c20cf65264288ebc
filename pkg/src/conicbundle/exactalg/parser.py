"""Recursive-descent parser for the polynomial expression language.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*       # "/" only by a nonzero constant
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | NAME | "w" | "(" expr ")"

Rational literals ``a/b`` are ordinary constant division.  Juxtaposition
(``2x0`` or ``x0 x1``) is rejected; multiplication needs an explicit ``*``.
"""

from __future__ import annotations

import re
from typing import Sequence

from .field import QQ, Field
from .poly import MultiPoly

__all__ = ["PolySyntaxError", "poly_parse", "tokenize"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class PolySyntaxError(ValueError):
    """Malformed polynomial text.  ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.message = message
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Tokens as ``(kind, value, offset)``; kinds are int, name, op, end."""
    out = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[i]!r}", i, text)
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
        if m.group(1):
            out.append(("int", m.group(1), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            if op == "**":
                raise PolySyntaxError("use '^' for powers", start, text)
            out.append(("op", op, start))
        i = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, vars: Sequence[str], field: Field):
        self.text = text
        self.vars = tuple(vars)
        self.field = field
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(message, tok[2], self.text)

    def expect(self, op: str):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            self.error("empty expression")
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("int", "name") or tok[1] == "(":
                self.error("implicit multiplication is not allowed; write '*'", tok)
            self.error(f"unexpected {tok[1]!r}", tok)
        return p

    def expr(self) -> MultiPoly:
        p = self.term()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if tok[1] == "+" else p - q
            else:
                return p

    def term(self) -> MultiPoly:
        p = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                p = p * self.unary()
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                rtok = self.peek()
                q = self.unary()
                if not q.is_constant():
                    self.error("division is only allowed by constants", rtok)
                if q.is_zero():
                    self.error("division by zero", rtok)
                p = p / q.constant_value()
            else:
                return p

    def unary(self) -> MultiPoly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            etok = self.take()
            if etok[0] != "int":
                self.error("exponent must be a non-negative integer literal", etok)
            return base ** int(etok[1])
        return base

    def atom(self) -> MultiPoly:
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return MultiPoly.constant(int(val), self.vars, self.field)
        if kind == "name":
            if val == "w":
                if self.field.is_rational:
                    self.error("the generator w is not available over Q", tok)
                return MultiPoly.constant(self.field.gen, self.vars, self.field)
            if val not in self.vars:
                self.error(f"unknown variable {val!r}", tok)
            return MultiPoly.variable(val, self.vars, self.field)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {val!r}", tok)


def poly_parse(text: str, vars: Sequence[str], field: Field = QQ) -> MultiPoly:
    """Parse ``text`` into a :class:`MultiPoly` over ``vars`` and ``field``."""
    if "w" in vars:
        raise ValueError("'w' is reserved for the field generator")
    return _Parser(text, vars, field).parse()
