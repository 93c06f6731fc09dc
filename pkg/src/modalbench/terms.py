"""Hash-consed modal term DAGs and the named term families used throughout.

Terms are immutable and interned per store: building the same shape twice
returns the same object, so structural equality is identity equality and
iterated substitution shares subDAGs instead of exploding.
"""

from __future__ import annotations

import re
import threading
import warnings
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import InputError

_VAR_NAME = re.compile(r"[a-z][a-z0-9_]*")

VAR = "var"
TOP = "top"
BOT = "bot"
NOT = "not"
AND = "and"
OR = "or"
IMP = "imp"
BOX = "box"
DIA = "dia"

_ARITY = {VAR: 0, TOP: 0, BOT: 0, NOT: 1, BOX: 1, DIA: 1, AND: 2, OR: 2, IMP: 2}

EQ = "eq"
LEQ = "leq"


class Term:
    """One node of a hash-consed DAG. Never constructed directly; use a TermStore
    or the module-level builders, which intern nodes so that `a is b` holds
    exactly when a and b are structurally equal terms of the same store."""

    __slots__ = ("kind", "name", "args", "uid", "store", "_free", "_ftup", "_tree")

    def __init__(self, kind: str, name: str | None, args: tuple[Term, ...],
                 uid: int, store: "TermStore"):
        self.kind = kind
        self.name = name
        self.args = args
        self.uid = uid
        self.store = store
        self._free: frozenset[str] | None = None
        self._ftup: tuple[str, ...] | None = None
        self._tree: int | None = None

    def __repr__(self) -> str:
        from .syntax import format_term  # deferred, syntax imports this module

        try:
            text = format_term(self, max_nodes=400)
        except InputError:
            text = f"<{node_count(self)} DAG nodes, display cap exceeded>"
        if len(text) > 120:
            text = text[:117] + "..."
        return f"Term({text})"


class TermStore:
    """Interning table for terms. Identity comparisons are only meaningful
    between terms of the same store; mixing stores raises InputError."""

    def __init__(self) -> None:
        self._table: dict[tuple, Term] = {}
        self._lock = threading.Lock()
        self._next_uid = 0

    def make(self, kind: str, args: tuple[Term, ...] = (), name: str | None = None) -> Term:
        if kind not in _ARITY:
            raise InputError(f"unknown term kind {kind!r}")
        if len(args) != _ARITY[kind]:
            raise InputError(f"{kind} takes {_ARITY[kind]} children, got {len(args)}")
        if (kind == VAR) != (name is not None):
            raise InputError("name is given exactly for variable nodes")
        for a in args:
            if a.store is not self:
                raise InputError("child term belongs to a different store")
        key = (kind, name) + tuple(a.uid for a in args)
        with self._lock:
            hit = self._table.get(key)
            if hit is not None:
                return hit
            term = Term(kind, name, args, self._next_uid, self)
            self._next_uid += 1
            self._table[key] = term
            return term

    def var(self, name: str) -> Term:
        if not _VAR_NAME.fullmatch(name):
            raise InputError(f"variable names match [a-z][a-z0-9_]*, got {name!r}")
        return self.make(VAR, name=name)

    def top(self) -> Term:
        return self.make(TOP)

    def bot(self) -> Term:
        return self.make(BOT)

    def not_(self, t: Term) -> Term:
        return self.make(NOT, (t,))

    def and_(self, a: Term, b: Term) -> Term:
        return self.make(AND, (a, b))

    def or_(self, a: Term, b: Term) -> Term:
        return self.make(OR, (a, b))

    def imp(self, a: Term, b: Term) -> Term:
        return self.make(IMP, (a, b))

    def box(self, t: Term) -> Term:
        return self.make(BOX, (t,))

    def dia(self, t: Term) -> Term:
        return self.make(DIA, (t,))


DEFAULT_STORE = TermStore()


def _store(store: TermStore | None) -> TermStore:
    return DEFAULT_STORE if store is None else store


def mk(kind: str, *args: Term, name: str | None = None, store: TermStore | None = None) -> Term:
    """Generic node builder; children fix the store when present."""
    if args:
        store = args[0].store
    return _store(store).make(kind, args, name=name)


def var(name: str, store: TermStore | None = None) -> Term:
    return _store(store).var(name)


def top(store: TermStore | None = None) -> Term:
    return _store(store).top()


def bot(store: TermStore | None = None) -> Term:
    return _store(store).bot()


def not_(t: Term) -> Term:
    return t.store.not_(t)


def and_(a: Term, b: Term) -> Term:
    return a.store.and_(a, b)


def or_(a: Term, b: Term) -> Term:
    return a.store.or_(a, b)


def imp(a: Term, b: Term) -> Term:
    return a.store.imp(a, b)


def box(t: Term) -> Term:
    return t.store.box(t)


def dia(t: Term) -> Term:
    return t.store.dia(t)


def free_vars(term: Term) -> frozenset[str]:
    """Variable names occurring in the term (cached per node)."""
    cached = term._free
    if cached is not None:
        return cached
    if term.kind == VAR:
        out: frozenset[str] = frozenset((term.name,))
    elif not term.args:
        out = frozenset()
    else:
        out = frozenset().union(*(free_vars(a) for a in term.args))
    term._free = out
    return out


def free_tuple(term: Term) -> tuple[str, ...]:
    """free_vars as a sorted tuple, cached; handy as part of cache keys."""
    cached = term._ftup
    if cached is None:
        cached = tuple(sorted(free_vars(term)))
        term._ftup = cached
    return cached


def walk(term: Term) -> Iterator[Term]:
    """Each distinct DAG node exactly once, children before parents."""
    seen: set[int] = set()
    stack: list[tuple[Term, bool]] = [(term, False)]
    while stack:
        node, expanded = stack.pop()
        if node.uid in seen:
            continue
        if expanded or not node.args:
            seen.add(node.uid)
            yield node
        else:
            stack.append((node, True))
            for a in node.args:
                if a.uid not in seen:
                    stack.append((a, False))


def node_count(term: Term) -> int:
    """Number of distinct DAG nodes reachable from the term."""
    return sum(1 for _ in walk(term))


def tree_size(term: Term) -> int:
    """Size of the term expanded to a tree, i.e. with sharing printed out.
    Can be exponential in the DAG size, hence the display cap elsewhere."""
    cached = term._tree
    if cached is not None:
        return cached
    size = 1 + sum(tree_size(a) for a in term.args)
    term._tree = size
    return size


def substitute(term: Term, mapping: Mapping[str, Term]) -> Term:
    """Replace variables by terms, simultaneously; results stay in term's store."""
    store = term.store
    for repl in mapping.values():
        if repl.store is not store:
            raise InputError("substitution mixes term stores")
    memo: dict[int, Term] = {}

    def go(t: Term) -> Term:
        hit = memo.get(t.uid)
        if hit is not None:
            return hit
        if t.kind == VAR:
            out = mapping.get(t.name, t)
        elif not t.args:
            out = t
        else:
            new_args = tuple(go(a) for a in t.args)
            out = t if all(n is o for n, o in zip(new_args, t.args)) \
                else store.make(t.kind, new_args, name=t.name)
        memo[t.uid] = out
        return out

    return go(term)


def iterate(term: Term, pivot: str, k: int) -> Term:
    """k-fold self-composition in the pivot: step 0 is the pivot variable
    itself, step k+1 substitutes step k for the pivot in the term. Shares
    structure through the store, so DAG growth per step is constant."""
    if k < 0:
        raise InputError("iteration count must be nonnegative")
    if pivot not in free_vars(term):
        warnings.warn(f"pivot {pivot!r} does not occur in the term; iteration is constant",
                      stacklevel=2)
    current = var(pivot, term.store)
    for _ in range(k):
        current = substitute(term, {pivot: current})
    return current


@dataclass(frozen=True)
class Statement:
    """An equation lhs = rhs or an inequation lhs <= rhs between terms.
    lhs <= rhs is semantically the equation (lhs or rhs) = rhs."""

    kind: str
    lhs: Term
    rhs: Term

    def __post_init__(self) -> None:
        if self.kind not in (EQ, LEQ):
            raise InputError(f"statement kind must be {EQ!r} or {LEQ!r}, got {self.kind!r}")
        if self.lhs.store is not self.rhs.store:
            raise InputError("statement mixes term stores")

    def as_equation(self) -> "Statement":
        """The join form: s <= t becomes (s or t) = t, equations unchanged."""
        if self.kind == EQ:
            return self
        return Statement(EQ, or_(self.lhs, self.rhs), self.rhs)

    def __repr__(self) -> str:
        from .syntax import format_statement

        return f"Statement({format_statement(self, max_nodes=400)})"


def eq(lhs: Term, rhs: Term) -> Statement:
    return Statement(EQ, lhs, rhs)


def leq(lhs: Term, rhs: Term) -> Statement:
    return Statement(LEQ, lhs, rhs)


def statement_vars(stmt: Statement) -> frozenset[str]:
    return free_vars(stmt.lhs) | free_vars(stmt.rhs)


def chain_term(store: TermStore | None = None) -> Term:
    """The guarded chain step box(y or box(z or x)) or x in variables x, y, z.
    Increasing and monotone in x; iterating it probes how far information
    propagates down a frame two steps at a time."""
    s = _store(store)
    x, y, z = s.var("x"), s.var("y"), s.var("z")
    return s.or_(s.box(s.or_(y, s.box(s.or_(z, x)))), x)


def diamond_term(store: TermStore | None = None) -> Term:
    """The reachability step dia(x) or x."""
    s = _store(store)
    x = s.var("x")
    return s.or_(s.dia(x), x)


def s_term(m: int, store: TermStore | None = None) -> Term:
    """The pivot-free approximant: step 0 is bottom, step m+1 wraps step m in
    box(y or box(z or .)). Lies below the m-th iterate of the chain step."""
    if m < 0:
        raise InputError("approximant index must be nonnegative")
    s = _store(store)
    y, z = s.var("y"), s.var("z")
    out = s.bot()
    for _ in range(m):
        out = s.box(s.or_(y, s.box(s.or_(z, out))))
    return out


def boxdot_power(n: int, pivot: str = "x", store: TermStore | None = None) -> Term:
    """n applications of the reflexive box u -> u and box(u) to the pivot variable."""
    if n < 0:
        raise InputError("power must be nonnegative")
    s = _store(store)
    out = s.var(pivot)
    for _ in range(n):
        out = s.and_(out, s.box(out))
    return out


def plus_closure(term: Term, pivot: str) -> Term:
    """The inflationary variant pivot or term, increasing in the pivot by construction."""
    return or_(var(pivot, term.store), term)
