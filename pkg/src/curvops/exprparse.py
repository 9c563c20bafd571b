"""Recursive-descent parser for the expression grammar.

Grammar (EBNF)::

    expr    = term { ("+" | "-") term } ;
    term    = unary { ("*" | "/") unary } ;
    unary   = ("+" | "-") unary | power ;
    power   = primary [ "^" integer ] ;
    primary = number | name | "exp" "(" expr ")" | "(" expr ")" ;
    number  = digit { digit } [ "." digit { digit } ] ;
    name    = letter { letter | digit | "_" } ;

Exponents are non-negative integer literals.  ``exp`` takes a polynomial
argument.  Whitespace is insignificant.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .symkernel import (
    Coordinate,
    ExprSyntaxError,
    PoleError,
    Polynomial,
    RatExpr,
    UnknownSymbolError,
)


class _Parser:
    def __init__(self, text: str, names: set[str] | None):
        self.text = text
        self.pos = 0
        self.names = names  # None: accept any identifier

    def error(self, msg, pos=None):
        raise ExprSyntaxError(msg, self.pos if pos is None else pos, self.text)

    def skip(self):
        t = self.text
        while self.pos < len(t) and t[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> RatExpr:
        if not self.text.strip():
            self.error("empty expression")
        e = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return e

    def expr(self) -> RatExpr:
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> RatExpr:
        acc = self.unary()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            start = self.pos
            self.skip()
            start = self.pos
            rhs, literal = self.unary(report_literal=True)
            if op == "*":
                acc = acc * rhs
            else:
                if literal is not None and literal == 0:
                    self.error("division by zero literal", start)
                if rhs.is_zero():
                    raise PoleError(f"division by an identically zero expression at position {start}")
                acc = acc / rhs
        return acc

    def unary(self, report_literal=False):
        ch = self.peek()
        if ch in ("+", "-"):
            self.pos += 1
            inner = self.unary()
            out = -inner if ch == "-" else inner
            return (out, None) if report_literal else out
        return self.power(report_literal)

    def power(self, report_literal=False):
        base, literal = self.primary()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            t = self.text
            while self.pos < len(t) and t[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self.error("exponent must be a non-negative integer literal")
            n = int(t[start:self.pos])
            base = base ** n
            literal = None if literal is None else literal ** n
            if self.peek() == "^":
                self.error("chained exponents are ambiguous; use parentheses")
        return (base, literal) if report_literal else base

    def primary(self):
        ch = self.peek()
        t = self.text
        if not ch:
            self.error("unexpected end of input")
        if ch.isdigit() or ch == ".":
            start = self.pos
            while self.pos < len(t) and t[self.pos].isdigit():
                self.pos += 1
            if self.pos < len(t) and t[self.pos] == ".":
                self.pos += 1
                frac_start = self.pos
                while self.pos < len(t) and t[self.pos].isdigit():
                    self.pos += 1
                if frac_start == self.pos:
                    self.error("malformed number", start)
            lit = t[start:self.pos]
            if lit == ".":
                self.error("malformed number", start)
            value = Fraction(lit)
            return RatExpr(Polynomial.const(value)), value
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(t) and (t[self.pos].isalnum() or t[self.pos] == "_"):
                self.pos += 1
            name = t[start:self.pos]
            if name == "exp" and self.peek() == "(":
                self.pos += 1
                arg = self.expr()
                self.expect(")")
                if not arg.is_polynomial():
                    self.error("exp() argument must be a polynomial", start)
                if arg.num.has_atoms():
                    self.error("nested exp() is not supported", start)
                return RatExpr(Polynomial.exp(arg.num)), None
            if self.names is not None and name not in self.names:
                raise UnknownSymbolError(f"unknown symbol {name!r}", start, t)
            return RatExpr(Polynomial.var(name)), None
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            if inner.is_constant():
                return inner, inner.constant_value()
            return inner, None
        self.error(f"unexpected {ch!r}")


def parse_expr(text: str, coords: Iterable[Coordinate | str] | None = None) -> RatExpr:
    """Parse text into a canonical RatExpr.

    coords restricts the admissible symbol names; ``None`` accepts any.
    """
    names = None
    if coords is not None:
        names = {c.name if isinstance(c, Coordinate) else c for c in coords}
    return _Parser(text, names).parse()


def _parse_poly_text(text: str) -> Polynomial:
    e = _Parser(text, None).parse()
    if not e.is_polynomial():
        raise ValueError(f"not a polynomial: {text!r}")
    return e.num
