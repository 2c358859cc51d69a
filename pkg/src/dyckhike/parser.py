"""Recursive-descent parser for boson expressions and Fock kets.

    expr   := term ("+" term)*
    term   := factor ("*" factor)*
    factor := ("a" | "ad") "[" mode "]" ("^" posint)?

Whitespace is ignored. Adjacent factors on the same mode with the same
dagger are merged into one power; factor order is otherwise preserved.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .boson import BosonExpr, BosonFactor, FockState, Monomial
from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]+)|(?P<op>[\[\]\^\*\+\-|,<>]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, expected, message=None):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(message or f"unexpected {found}", self.text, t.pos, expected)

    def expect_op(self, op: str) -> Token:
        if self.tok.kind != "op" or self.tok.text != op:
            self.fail([repr(op)])
        t = self.tok
        self.i += 1
        return t

    def expect_int(self, what: str) -> int:
        if self.tok.kind != "int":
            self.fail([what])
        value = int(self.tok.text)
        self.i += 1
        return value

    def at_op(self, op: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == op

    def expr(self) -> BosonExpr:
        terms = [self.term()]
        while self.at_op("+"):
            self.i += 1
            terms.append(self.term())
        if self.tok.kind != "end":
            self.fail(["'+'", "'*'", "end of input"])
        return BosonExpr(tuple(terms))

    def term(self) -> Monomial:
        factors = [self.factor()]
        while self.at_op("*"):
            self.i += 1
            factors.append(self.factor())
        merged: list[BosonFactor] = []
        for f in factors:
            if merged and merged[-1].mode == f.mode and merged[-1].dagger == f.dagger:
                merged[-1] = BosonFactor(f.mode, f.dagger, merged[-1].power + f.power)
            else:
                merged.append(f)
        return Monomial(tuple(merged))

    def factor(self) -> BosonFactor:
        t = self.tok
        if t.kind != "name" or t.text not in ("a", "ad"):
            self.fail(["'a'", "'ad'"])
        self.i += 1
        self.expect_op("[")
        mode = self.expect_int("mode index")
        self.expect_op("]")
        power = 1
        if self.at_op("^"):
            self.i += 1
            pos = self.tok.pos
            power = self.expect_int("positive integer")
            if power < 1:
                raise ParseError("exponent must be positive", self.text, pos, ["positive integer"])
        return BosonFactor(mode, t.text == "ad", power)


def parse_expr(text: str) -> BosonExpr:
    return _Parser(text).expr()


def format_expr(expr: BosonExpr) -> str:
    return str(expr)


_KET = re.compile(r"\s*\|\s*(?P<body>[^>]*)>\s*$")


def parse_vacuum(text: str) -> FockState:
    """``"|n0,n1,...>"`` to a Fock state."""
    m = _KET.match(text)
    if not m:
        raise ParseError("expected a ket like |0,0>", text, 0, ["'|n0,n1,...>'"])
    body = m.group("body")
    offset = m.start("body")
    occ = []
    pos = 0
    for item in body.split(","):
        stripped = item.strip()
        where = offset + pos + (len(item) - len(item.lstrip()))
        if not re.fullmatch(r"\d+", stripped):
            raise ParseError(
                f"occupation {stripped!r} is not a non-negative integer", text, where, ["non-negative integer"]
            )
        occ.append(int(stripped))
        pos += len(item) + 1
    return FockState(tuple(occ))
