"""Text grammar for descendent insertions.

Examples::

    ch4(1)*ch3(H)
    ch2(g1)*ch2(g2) - 1/3*ch2(H3)
    ch3(2*H + 1/3*H2)

A bare number inside ``chK(...)`` is that multiple of the unit class.
Symbols are looked up in the model: basis names, named symbols such as
``H2`` and formal odd classes ``g<i>``.  On surfaces ``h`` abbreviates
``h1`` and ``pt`` the point class.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .cohmodel import CohClass, CohModel
from .descalg import DescExpr, ch

__all__ = ["ParseError", "parse_insertion", "parse_class"]

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(ch\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        self.pos = pos
        super().__init__(f"{msg} at column {pos + 1}: {text!r}")


def _tokens(text: str):
    out = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None or mt.end() == pos:
            break
        num, chk, ident, other = mt.groups()
        start = mt.start(mt.lastindex)
        if num:
            out.append(("num", Fraction(num), start))
        elif chk:
            out.append(("ch", int(chk[2:]), start))
        elif ident:
            out.append(("sym", ident, start))
        elif other and not other.isspace():
            out.append(("op", other, start))
        pos = mt.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, m: CohModel):
        self.text, self.m = text, m
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        t = self.toks[self.i]
        if (kind and t[0] != kind) or (value is not None and t[1] != value):
            want = value if value is not None else kind
            self.fail(f"expected {want!r}")
        self.i += 1
        return t

    def fail(self, msg):
        raise ParseError(msg, self.text, self.peek()[2])

    def at(self, kind, value=None):
        t = self.peek()
        return t[0] == kind and (value is None or t[1] == value)

    # expr := ['-'] term (('+'|'-') term)*
    def expr(self) -> DescExpr:
        sign = 1
        if self.at("op", "-"):
            self.take()
            sign = -1
        out = self.term() * sign
        while self.at("op", "+") or self.at("op", "-"):
            s = 1 if self.take()[1] == "+" else -1
            out = out + self.term() * s
        return out

    def term(self) -> DescExpr:
        out = self.factor()
        while self.at("op", "*"):
            self.take()
            out = out * self.factor()
        return out

    def factor(self) -> DescExpr:
        t = self.peek()
        if t[0] == "num":
            self.take()
            return DescExpr.one(t[1])
        if t[0] == "ch":
            self.take()
            self.take("op", "(")
            cls = self.cls_expr()
            self.take("op", ")")
            return ch(self.m, t[1], cls)
        if t[0] == "op" and t[1] == "(":
            self.take()
            e = self.expr()
            self.take("op", ")")
            return e
        self.fail("expected a descendent, number or '('")

    # class expressions
    def cls_expr(self) -> CohClass:
        sign = 1
        if self.at("op", "-"):
            self.take()
            sign = -1
        out = self.cls_term() * sign
        while self.at("op", "+") or self.at("op", "-"):
            s = 1 if self.take()[1] == "+" else -1
            out = out + self.cls_term() * s
        return out

    def cls_term(self) -> CohClass:
        coeff = Fraction(1)
        if self.at("num"):
            coeff = self.take()[1]
            if not self.at("op", "*"):
                return self.m.unit * coeff
            self.take()
        t = self.take("sym") if self.at("sym") else self.fail("expected a class symbol")
        return self.symbol(t) * coeff

    def symbol(self, t) -> CohClass:
        name = t[1]
        aliases = {"h": "h1", "pt": "p"}
        for cand in (name, aliases.get(name)):
            if cand is None:
                continue
            try:
                return self.m.cls(cand)
            except KeyError:
                continue
        raise ParseError(f"unknown class symbol {name!r}", self.text, t[2])


def parse_insertion(text: str, m: CohModel) -> DescExpr:
    p = _Parser(text, m)
    if p.at("end"):
        raise ParseError("empty insertion", text, 0)
    out = p.expr()
    if not p.at("end"):
        p.fail("unexpected trailing input")
    return out


def parse_class(text: str, m: CohModel) -> CohClass:
    p = _Parser(text, m)
    out = p.cls_expr()
    if not p.at("end"):
        p.fail("unexpected trailing input")
    return out
