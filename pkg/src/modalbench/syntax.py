"""Concrete syntax: lexer, parser, and printer for terms and statements.

Grammar, loosest to tightest: `->` (right associative), `|`, `&`, then the
prefix operators `~`, `[]`, `<>`, then atoms: variables [a-z][a-z0-9_]*, the
constants T and F, parenthesized formulas, and the macros tpow(k) / spow(m)
which expand to the k-th iterate of the chain step and the m-th pivot-free
approximant. Statements are `formula = formula` or `formula <= formula`.

The printer is the parser's inverse on term DAGs: parsing its output returns
the identical interned term. Printing expands sharing, so it is gated by a
node cap; deeply iterated terms are better handled as DAGs than as text.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import terms
from .errors import InputError
from .terms import (Statement, Term, TermStore, chain_term, iterate, s_term,
                    tree_size)

DISPLAY_NODE_CAP = 10_000
_MACRO_POWER_CAP = 200  # keeps macro expansions well under evaluation depth limits

_TWO_CHAR = ("[]", "<>", "->", "<=")
_ONE_CHAR = "~&|()="


class ParseError(InputError):
    """Syntax error with 1-based position and the token kinds that would have
    been accepted there."""

    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...]):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col
        self.expected = expected


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        pair = text[i:i + 2]
        if pair in _TWO_CHAR:
            tokens.append(Token(pair, pair, line, col))
            i += 2
            col += 2
            continue
        if c in _ONE_CHAR:
            tokens.append(Token(c, c, line, col))
            i += 1
            col += 1
            continue
        if c in ("T", "F"):
            tokens.append(Token("const", c, line, col))
            i += 1
            col += 1
            continue
        if c.islower() and c.isalpha() and c.isascii():
            j = i + 1
            while j < n and (text[j] == "_" or (text[j].isascii() and
                                                (text[j].islower() or text[j].isdigit()))):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("num", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", line, col, ())
    tokens.append(Token("eof", "", line, col))
    return tokens


_ATOM_EXPECTED = ("variable", "T", "F", "~", "[]", "<>", "(", "tpow", "spow")


class _Parser:
    def __init__(self, tokens: list[Token], store: TermStore):
        self.tokens = tokens
        self.pos = 0
        self.store = store

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: tuple[str, ...]):
        tok = self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"expected {' or '.join(expected)}, found {found}",
                         tok.line, tok.col, expected)

    def expect(self, kind: str, shown: str) -> Token:
        if self.peek().kind != kind:
            self.fail((shown,))
        return self.take()

    def formula(self) -> Term:
        lhs = self.disjunction()
        if self.peek().kind == "->":
            self.take()
            return self.store.imp(lhs, self.formula())
        return lhs

    def disjunction(self) -> Term:
        out = self.conjunction()
        while self.peek().kind == "|":
            self.take()
            out = self.store.or_(out, self.conjunction())
        return out

    def conjunction(self) -> Term:
        out = self.unary()
        while self.peek().kind == "&":
            self.take()
            out = self.store.and_(out, self.unary())
        return out

    def unary(self) -> Term:
        kind = self.peek().kind
        if kind == "~":
            self.take()
            return self.store.not_(self.unary())
        if kind == "[]":
            self.take()
            return self.store.box(self.unary())
        if kind == "<>":
            self.take()
            return self.store.dia(self.unary())
        return self.atom()

    def atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "const":
            self.take()
            return self.store.top() if tok.text == "T" else self.store.bot()
        if tok.kind == "ident":
            self.take()
            if tok.text in ("tpow", "spow"):
                return self.macro(tok.text)
            return self.store.var(tok.text)
        if tok.kind == "(":
            self.take()
            inner = self.formula()
            self.expect(")", ")")
            return inner
        self.fail(_ATOM_EXPECTED)

    def macro(self, name: str) -> Term:
        self.expect("(", "(")
        num = self.expect("num", "a number")
        self.expect(")", ")")
        power = int(num.text)
        if power > _MACRO_POWER_CAP:
            raise ParseError(f"macro power {power} exceeds the cap {_MACRO_POWER_CAP}",
                             num.line, num.col, ())
        if name == "tpow":
            return iterate(chain_term(self.store), "x", power)
        return s_term(power, self.store)


def parse_formula(text: str, store: TermStore | None = None) -> Term:
    parser = _Parser(tokenize(text), terms._store(store))
    out = parser.formula()
    if parser.peek().kind != "eof":
        parser.fail(("&", "|", "->", "end of input"))
    return out


def parse_statement(text: str, store: TermStore | None = None) -> Statement:
    parser = _Parser(tokenize(text), terms._store(store))
    lhs = parser.formula()
    op = parser.peek().kind
    if op not in ("=", "<="):
        parser.fail(("=", "<="))
    parser.take()
    rhs = parser.formula()
    if parser.peek().kind != "eof":
        parser.fail(("&", "|", "->", "end of input"))
    if op == "=":
        return terms.eq(lhs, rhs)
    return terms.leq(lhs, rhs)


_UNARY_SYM = {terms.NOT: "~", terms.BOX: "[]", terms.DIA: "<>"}


def format_term(term: Term, max_nodes: int = DISPLAY_NODE_CAP) -> str:
    """Render a term so that parsing the result rebuilds the identical DAG.
    Refuses terms whose printed tree form exceeds max_nodes."""
    size = tree_size(term)
    if size > max_nodes:
        raise InputError(f"term expands to {size} nodes, display cap is {max_nodes}")

    def go(t: Term, need: int) -> str:
        kind = t.kind
        if kind == terms.VAR:
            return t.name
        if kind == terms.TOP:
            return "T"
        if kind == terms.BOT:
            return "F"
        if kind in _UNARY_SYM:
            return _wrap(_UNARY_SYM[kind] + go(t.args[0], 4), 4, need)
        if kind == terms.AND:
            text = f"{go(t.args[0], 3)} & {go(t.args[1], 4)}"
            return _wrap(text, 3, need)
        if kind == terms.OR:
            text = f"{go(t.args[0], 2)} | {go(t.args[1], 3)}"
            return _wrap(text, 2, need)
        text = f"{go(t.args[0], 2)} -> {go(t.args[1], 1)}"
        return _wrap(text, 1, need)

    return go(term, 0)


def _wrap(text: str, prec: int, need: int) -> str:
    return f"({text})" if prec < need else text


def format_statement(stmt: Statement, max_nodes: int = DISPLAY_NODE_CAP) -> str:
    op = "=" if stmt.kind == terms.EQ else "<="
    return f"{format_term(stmt.lhs, max_nodes)} {op} {format_term(stmt.rhs, max_nodes)}"
