"""Coefficient-expression grammar.

::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | GENERATOR | "(" expr ")"

``GENERATOR`` matches ``t(0|[1-9][0-9]*)``; exponents are nonnegative integer
literals; whitespace is ignored.  ``str(FieldElement)`` emits this grammar.
"""
import re

from .errors import ExpressionSyntaxError, UndeclaredGeneratorError
from .field import ONE_F, FieldElement, Generator

_TOKEN = re.compile(r"\s*(?:(\d+)|(t\d+)|([-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {text[bad]!r}", text, bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("gen", m.group(2), start))
        else:
            out.append((m.group(3), None, start))
        pos = m.end()
    out.append(("end", None, n))
    return out


class _Parser:
    def __init__(self, text, declared):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.declared = declared

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind!r}")
        self.i += 1
        return tok

    def fail(self, msg):
        tok = self.toks[self.i]
        what = "end of input" if tok[0] == "end" else repr(self.text[tok[2]:tok[2] + 8])
        raise ExpressionSyntaxError(f"{msg}, found {what}", self.text, tok[2])

    def parse(self):
        if self.peek() == "end":
            self.fail("empty expression")
        v = self.expr()
        if self.peek() != "end":
            self.fail("unexpected token")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in "+-":
            op = self.take()[0]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op, _, pos = self.take()
            w = self.unary()
            if op == "*":
                v = v * w
            else:
                if not w:
                    raise ExpressionSyntaxError("division by zero", self.text, pos)
                v = v / w
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            if self.peek() != "int":
                self.fail("exponent must be a nonnegative integer literal")
            base = base ** self.take()[1]
        return base

    def atom(self):
        kind, val, pos = self.toks[self.i]
        if kind == "int":
            self.i += 1
            return FieldElement(val)
        if kind == "gen":
            self.i += 1
            try:
                g = Generator.parse(val)
            except ValueError:
                raise ExpressionSyntaxError(f"malformed generator name {val!r}", self.text, pos) from None
            if self.declared is not None and g.name not in self.declared:
                raise UndeclaredGeneratorError(g.name, sorted(self.declared))
            return FieldElement.gen(g)
        if kind == "(":
            self.i += 1
            v = self.expr()
            self.take(")")
            return v
        self.fail("expected a number, generator or '('")


def parse_expr(text, generators=None):
    """Parse ``text`` into a canonical :class:`FieldElement`.

    ``generators`` -- optional iterable of allowed generator names; any other
    generator raises :class:`UndeclaredGeneratorError`.
    """
    declared = None if generators is None else {str(g) for g in generators}
    if not isinstance(text, str):
        raise ExpressionSyntaxError("coefficient must be a string", repr(text), 0)
    return _Parser(text, declared).parse()


def format_expr(e):
    return str(e)


__all__ = ["parse_expr", "format_expr", "ONE_F"]
