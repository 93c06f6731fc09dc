"""Finite Kripke frames, valuations, models, and bitset evaluation.

World sets are plain ints used as bitsets (bit w set means world w is in the
set), which keeps every Boolean connective a single machine operation and
makes evaluation results cheap to memoize and compare.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import terms
from .errors import CapExceededError, InputError, MissingVariableWarning
from .terms import Statement, Term

MAX_WORLDS = 64


@dataclass(frozen=True)
class Frame:
    """worlds many points 0..worlds-1; succ[w] is the bitset of R-successors of w."""

    worlds: int
    succ: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.worlds < 0:
            raise InputError("world count must be nonnegative")
        if len(self.succ) != self.worlds:
            raise InputError("successor table length must equal the world count")
        mask = self.mask
        for w, bits in enumerate(self.succ):
            if bits & ~mask:
                raise InputError(f"successors of world {w} fall outside the frame")

    @property
    def mask(self) -> int:
        return (1 << self.worlds) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(w, v) for w in range(self.worlds)
                for v in bits_to_worlds(self.succ[w])]


def frame_from_edges(worlds: int, edges: Iterable[tuple[int, int]],
                     max_worlds: int = MAX_WORLDS) -> Frame:
    """Build a frame from an edge list; edge order is irrelevant and duplicate
    edges collapse. Worlds beyond the configured cap are refused."""
    if worlds > max_worlds:
        raise CapExceededError(f"{worlds} worlds exceeds the {max_worlds}-world cap")
    succ = [0] * worlds
    for i, j in edges:
        if not (0 <= i < worlds and 0 <= j < worlds):
            raise InputError(f"edge ({i}, {j}) out of range for {worlds} worlds")
        succ[i] |= 1 << j
    return Frame(worlds, tuple(succ))


def frame_to_json(frame: Frame) -> dict:
    return {"worlds": frame.worlds, "edges": [[i, j] for i, j in frame.edges()]}


def frame_from_json(data: object, max_worlds: int = MAX_WORLDS) -> Frame:
    if not isinstance(data, dict):
        raise InputError("frame JSON must be an object")
    try:
        worlds = data["worlds"]
        edges = data["edges"]
    except KeyError as missing:
        raise InputError(f"frame JSON lacks key {missing}") from None
    if not isinstance(worlds, int):
        raise InputError("frame JSON 'worlds' must be an integer")
    if not isinstance(edges, list) or not all(
            isinstance(e, list) and len(e) == 2 and all(isinstance(c, int) for c in e)
            for e in edges):
        raise InputError("frame JSON 'edges' must be a list of [i, j] pairs")
    return frame_from_edges(worlds, [(i, j) for i, j in edges], max_worlds=max_worlds)


def load_frame(path: str, max_worlds: int = MAX_WORLDS) -> Frame:
    with open(path, encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: {exc}") from None
    return frame_from_json(data, max_worlds=max_worlds)


def worlds_to_bits(worlds: Iterable[int]) -> int:
    bits = 0
    for w in worlds:
        bits |= 1 << w
    return bits


def bits_to_worlds(bits: int) -> list[int]:
    return [w for w in range(bits.bit_length()) if bits >> w & 1]


class Valuation:
    """Immutable map from variable name to world bitset. Updates go through
    with_bits, which copies, so models can cache evaluations safely."""

    __slots__ = ("_bits",)

    def __init__(self, bits: Mapping[str, int] | None = None):
        table = {}
        for name, b in (bits or {}).items():
            if b < 0:
                raise InputError(f"negative bitset for variable {name!r}")
            table[name] = b
        self._bits = table

    @classmethod
    def from_sets(cls, sets: Mapping[str, Iterable[int]]) -> "Valuation":
        return cls({name: worlds_to_bits(ws) for name, ws in sets.items()})

    def bits(self, name: str) -> int:
        return self._bits.get(name, 0)

    def __contains__(self, name: str) -> bool:
        return name in self._bits

    def names(self) -> frozenset[str]:
        return frozenset(self._bits)

    def with_bits(self, name: str, bits: int) -> "Valuation":
        if bits < 0:
            raise InputError(f"negative bitset for variable {name!r}")
        table = dict(self._bits)
        table[name] = bits
        return Valuation(table)

    def to_sets(self) -> dict[str, list[int]]:
        return {name: bits_to_worlds(b) for name, b in sorted(self._bits.items())}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Valuation) and self._bits == other._bits

    def __hash__(self) -> int:
        return hash(frozenset(self._bits.items()))

    def __repr__(self) -> str:
        return f"Valuation({self.to_sets()})"


def valuation_from_json(data: object) -> Valuation:
    if not isinstance(data, dict) or not all(
            isinstance(ws, list) and all(isinstance(w, int) and w >= 0 for w in ws)
            for ws in data.values()):
        raise InputError("valuation JSON must map names to lists of worlds")
    return Valuation.from_sets(data)


def valuation_to_json(valuation: Valuation) -> dict[str, list[int]]:
    return valuation.to_sets()


class Model:
    """A frame plus a valuation, with a per-model evaluation cache keyed by
    term identity. The cache never needs invalidation because both halves
    are immutable."""

    __slots__ = ("frame", "valuation", "_memo", "_warned", "_store")

    def __init__(self, frame: Frame, valuation: Valuation):
        for name in valuation.names():
            if valuation.bits(name) & ~frame.mask:
                raise InputError(f"valuation of {name!r} mentions worlds outside the frame")
        self.frame = frame
        self.valuation = valuation
        self._memo: dict[int, int] = {}
        self._warned: set[str] = set()
        self._store = None


def _eval_on(frame: Frame, lookup, term: Term, memo: dict[int, int]) -> int:
    mask = frame.mask
    succ = frame.succ

    def go(t: Term) -> int:
        hit = memo.get(t.uid)
        if hit is not None:
            return hit
        kind = t.kind
        if kind == terms.VAR:
            out = lookup(t.name)
        elif kind == terms.TOP:
            out = mask
        elif kind == terms.BOT:
            out = 0
        elif kind == terms.NOT:
            out = mask ^ go(t.args[0])
        elif kind == terms.AND:
            out = go(t.args[0]) & go(t.args[1])
        elif kind == terms.OR:
            out = go(t.args[0]) | go(t.args[1])
        elif kind == terms.IMP:
            out = (mask ^ go(t.args[0])) | go(t.args[1])
        elif kind == terms.BOX:
            inner = go(t.args[0])
            out = 0
            for w in range(frame.worlds):
                if succ[w] & ~inner == 0:
                    out |= 1 << w
        elif kind == terms.DIA:
            inner = go(t.args[0])
            out = 0
            for w in range(frame.worlds):
                if succ[w] & inner:
                    out |= 1 << w
        else:  # pragma: no cover - store validates kinds
            raise InputError(f"unknown term kind {kind!r}")
        memo[t.uid] = out
        return out

    return go(term)


def evaluate(model: Model, term: Term) -> int:
    """Bitset of worlds where the term holds. Box is universal over successors,
    so it holds vacuously at worlds with none; variables missing from the
    valuation evaluate to the empty set, with a one-shot warning each."""
    # caches key on term identity, which only makes sense within one store
    if model._store is None:
        model._store = term.store
    elif model._store is not term.store:
        raise InputError("model cache already bound to a different term store")

    def lookup(name: str) -> int:
        if name not in model.valuation and name not in model._warned:
            model._warned.add(name)
            warnings.warn(f"variable {name!r} not in valuation, treating as empty set",
                          MissingVariableWarning, stacklevel=4)
        return model.valuation.bits(name)

    return _eval_on(model.frame, lookup, term, model._memo)


def evaluate_orbit(model: Model, term: Term, pivot: str, base_bits: int, k: int) -> list[int]:
    """The k+1 bitsets of the semantic iteration: start at base_bits, then
    repeatedly evaluate the term with the pivot bound to the previous value."""
    if base_bits & ~model.frame.mask:
        raise InputError("base bitset mentions worlds outside the frame")
    orbit = [base_bits]
    evaluator = Evaluator(model.frame)
    assignment = {name: model.valuation.bits(name)
                  for name in terms.free_vars(term) if name != pivot}
    for _ in range(k):
        assignment[pivot] = orbit[-1]
        orbit.append(evaluator.evaluate(term, assignment))
    return orbit


def evaluate_iterated(model: Model, term: Term, pivot: str, base: Term, k: int) -> int:
    """Evaluate the k-th iterate of the term with the pivot seeded by evaluating
    base. Agrees bit for bit with evaluating the syntactic iterate directly."""
    return evaluate_orbit(model, term, pivot, evaluate(model, base), k)[-1]


def holds_globally(model: Model, stmt: Statement) -> bool:
    """Truth of a statement at every world: equality of the two bitsets for
    equations, bitset inclusion for inequations."""
    lhs = evaluate(model, stmt.lhs)
    rhs = evaluate(model, stmt.rhs)
    if stmt.kind == terms.EQ:
        return lhs == rhs
    return lhs & ~rhs == 0


class Evaluator:
    """Evaluation cache for one frame across many assignments. Entries are
    keyed by term identity plus the assignment restricted to the term's free
    variables, so enumeration loops pay for each distinct projection once.
    Assignments are plain dicts of bitsets; absent variables mean empty,
    silently, since enumeration callers control the variable set."""

    __slots__ = ("frame", "_memo", "_store")

    def __init__(self, frame: Frame):
        self.frame = frame
        self._memo: dict[tuple, int] = {}
        self._store = None

    def evaluate(self, term: Term, assignment: Mapping[str, int]) -> int:
        if self._store is None:
            self._store = term.store
        elif self._store is not term.store:
            raise InputError("evaluator cache already bound to a different term store")
        frame = self.frame
        mask = frame.mask
        succ = frame.succ
        worlds = frame.worlds
        memo = self._memo

        def go(t: Term) -> int:
            key = (t.uid,) + tuple(assignment.get(n, 0) for n in terms.free_tuple(t))
            hit = memo.get(key)
            if hit is not None:
                return hit
            kind = t.kind
            if kind == terms.VAR:
                out = assignment.get(t.name, 0) & mask
            elif kind == terms.TOP:
                out = mask
            elif kind == terms.BOT:
                out = 0
            elif kind == terms.NOT:
                out = mask ^ go(t.args[0])
            elif kind == terms.AND:
                out = go(t.args[0]) & go(t.args[1])
            elif kind == terms.OR:
                out = go(t.args[0]) | go(t.args[1])
            elif kind == terms.IMP:
                out = (mask ^ go(t.args[0])) | go(t.args[1])
            elif kind == terms.BOX:
                inner = go(t.args[0])
                out = 0
                for w in range(worlds):
                    if succ[w] & ~inner == 0:
                        out |= 1 << w
            else:
                inner = go(t.args[0])
                out = 0
                for w in range(worlds):
                    if succ[w] & inner:
                        out |= 1 << w
            memo[key] = out
            return out

        return go(term)

    def statement_gap(self, stmt: Statement, assignment: Mapping[str, int]) -> int:
        """Bitset of worlds where the statement fails under the assignment."""
        lhs = self.evaluate(stmt.lhs, assignment)
        rhs = self.evaluate(stmt.rhs, assignment)
        if stmt.kind == terms.EQ:
            return lhs ^ rhs
        return lhs & ~rhs
