"""Formula and sequent syntax: AST, parser, printer.

Grammar (ASCII):

    formula := disj
    disj    := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := ("box" | "dia" | "rhd" | "lhd") unary | primary
    primary := "top" | "bot" | ident | "(" formula ")"
    sequent := formula "|-" formula

Binary connectives are left-associative and unary binds tightest.  The
printer emits minimal parentheses so that parsing its output restores a
structurally identical tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Tuple

from .errors import InputError, ParseError

KEYWORDS = ("top", "bot", "box", "dia", "rhd", "lhd")
UNARY_OPS = ("box", "dia", "rhd", "lhd")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN_RE = re.compile(r"\|-|[&|()]|[A-Za-z_][A-Za-z0-9_]*")

_PRECEDENCE = {"or": 1, "and": 2, "box": 3, "dia": 3, "rhd": 3, "lhd": 3, "top": 4, "bot": 4, "atom": 4}


@dataclass(frozen=True)
class Formula:
    op: str
    args: Tuple["Formula", ...] = ()
    name: str = ""

    def atoms(self) -> tuple:
        """Sorted names of the atoms occurring in the formula."""
        out = set()
        stack = [self]
        while stack:
            f = stack.pop()
            if f.op == "atom":
                out.add(f.name)
            stack.extend(f.args)
        return tuple(sorted(out))

    def __str__(self):
        return print_formula(self)


TOP = Formula("top")
BOT = Formula("bot")


def atom(name: str) -> Formula:
    if not _IDENT_RE.match(name or "") or name in KEYWORDS:
        raise InputError(f"{name!r} is not a valid atom identifier")
    return Formula("atom", name=name)


def conj(lhs: Formula, rhs: Formula) -> Formula:
    return Formula("and", (lhs, rhs))


def disj(lhs: Formula, rhs: Formula) -> Formula:
    return Formula("or", (lhs, rhs))


def box(f: Formula) -> Formula:
    return Formula("box", (f,))


def dia(f: Formula) -> Formula:
    return Formula("dia", (f,))


def rhd(f: Formula) -> Formula:
    return Formula("rhd", (f,))


def lhd(f: Formula) -> Formula:
    return Formula("lhd", (f,))


@dataclass(frozen=True)
class Sequent:
    lhs: Formula
    rhs: Formula

    def atoms(self) -> tuple:
        return tuple(sorted(set(self.lhs.atoms()) | set(self.rhs.atoms())))

    def __str__(self):
        return print_sequent(self)


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.group(), pos))
        pos = m.end()
    tokens.append(("", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def formula(self) -> Formula:
        out = self.conj()
        while self.peek() == "|":
            self.take()
            out = disj(out, self.conj())
        return out

    def conj(self) -> Formula:
        out = self.unary()
        while self.peek() == "&":
            self.take()
            out = conj(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.peek()
        if tok in UNARY_OPS:
            self.take()
            return Formula(tok, (self.unary(),))
        return self.primary()

    def primary(self) -> Formula:
        tok, pos = self.take()
        if tok == "top":
            return TOP
        if tok == "bot":
            return BOT
        if tok == "(":
            out = self.formula()
            closing = self.take()
            if closing[0] != ")":
                raise ParseError("expected ')'", closing[1])
            return out
        if _IDENT_RE.match(tok) and tok not in KEYWORDS:
            return Formula("atom", name=tok)
        raise ParseError(f"expected a formula, found {tok!r}" if tok else "unexpected end of input", pos)

    def expect_end(self):
        tok, pos = self.tokens[self.i]
        if tok:
            raise ParseError(f"unexpected trailing token {tok!r}", pos)


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    out = parser.formula()
    parser.expect_end()
    return out


def parse_sequent(text: str) -> Sequent:
    parser = _Parser(text)
    lhs = parser.formula()
    tok, pos = parser.take()
    if tok != "|-":
        raise ParseError("expected '|-' between the two sides", pos)
    rhs = parser.formula()
    parser.expect_end()
    return Sequent(lhs, rhs)


def print_formula(f: Formula) -> str:
    return _render(f, 1)


def _render(f: Formula, min_prec: int) -> str:
    prec = _PRECEDENCE[f.op]
    if f.op == "atom":
        body = f.name
    elif f.op in ("top", "bot"):
        body = f.op
    elif f.op == "and":
        body = f"{_render(f.args[0], 2)} & {_render(f.args[1], 3)}"
    elif f.op == "or":
        body = f"{_render(f.args[0], 1)} | {_render(f.args[1], 2)}"
    else:
        body = f"{f.op} {_render(f.args[0], 3)}"
    if prec < min_prec:
        return f"({body})"
    return body


def print_sequent(s: Sequent) -> str:
    return f"{print_formula(s.lhs)} |- {print_formula(s.rhs)}"


_AXIOM_TEXTS = (
    "p |- p",
    "bot |- p",
    "p |- top",
    "p |- p | q",
    "q |- p | q",
    "p & q |- p",
    "p & q |- q",
    "top |- box top",
    "box p & box q |- box (p & q)",
    "dia bot |- bot",
    "dia (p | q) |- dia p | dia q",
)


def axiom_catalogue() -> tuple:
    """The axioms of the minimal normal system, as sequents over p and q."""
    return tuple(parse_sequent(text) for text in _AXIOM_TEXTS)
