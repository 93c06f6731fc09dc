"""Frames, valuations, models, and bitset evaluation against the naive oracle."""

import json

import pytest
from hypothesis import given, strategies as st

from modalbench.errors import CapExceededError, InputError, MissingVariableWarning
from modalbench.kripke import (Evaluator, Frame, Model, Valuation,
                               bits_to_worlds, evaluate, evaluate_iterated,
                               evaluate_orbit, frame_from_edges, frame_from_json,
                               frame_to_json, holds_globally, load_frame,
                               valuation_from_json, worlds_to_bits)
from modalbench.chains import lemma_valuation, make_chain
from modalbench.terms import TermStore, chain_term, eq, iterate, leq

from oracles import naive_eval, naive_fails
from strategies import build_term, frames, term_plans, valuations_for


def test_frame_validation():
    with pytest.raises(InputError):
        Frame(-1, ())
    with pytest.raises(InputError):
        Frame(2, (0,))
    with pytest.raises(InputError):
        Frame(2, (0, 0b100))


def test_frame_from_edges_collapses_duplicates():
    f = frame_from_edges(3, [(0, 1), (0, 1), (1, 2)])
    assert f.succ == (0b010, 0b100, 0)
    assert f.edges() == [(0, 1), (1, 2)]
    with pytest.raises(InputError):
        frame_from_edges(2, [(0, 2)])
    with pytest.raises(CapExceededError):
        frame_from_edges(65, [])


def test_frame_json_round_trip(tmp_path):
    f = make_chain(3, (1,))
    assert frame_from_json(frame_to_json(f)) == f
    path = tmp_path / "frame.json"
    path.write_text(json.dumps(frame_to_json(f)))
    assert load_frame(str(path)) == f
    for bad in ([], {"worlds": 2}, {"worlds": "2", "edges": []},
                {"worlds": 2, "edges": [[0]]}, {"worlds": 2, "edges": [0, 1]}):
        with pytest.raises(InputError):
            frame_from_json(bad)


@given(st.sets(st.integers(0, 63)))
def test_world_bitset_round_trip(worlds):
    assert set(bits_to_worlds(worlds_to_bits(worlds))) == worlds


def test_valuation_basics():
    v = Valuation.from_sets({"x": [0, 2]})
    assert v.bits("x") == 0b101
    assert v.bits("missing") == 0
    assert "x" in v and "missing" not in v
    w = v.with_bits("y", 0b10)
    assert v.bits("y") == 0 and w.bits("y") == 0b10
    assert w.to_sets() == {"x": [0, 2], "y": [1]}
    assert v == Valuation({"x": 0b101}) and hash(v) == hash(Valuation({"x": 0b101}))
    with pytest.raises(InputError):
        Valuation({"x": -1})
    with pytest.raises(InputError):
        valuation_from_json({"x": [0, -1]})
    assert valuation_from_json({"x": [1]}) == Valuation({"x": 0b10})


def test_model_rejects_out_of_frame_valuation():
    with pytest.raises(InputError):
        Model(make_chain(2), Valuation({"x": 0b100}))


def test_chain_step_iterates_on_three_chain(store):
    # the alternating valuation on the 3-chain: x = z = {1}, y = {0, 2}
    model = Model(make_chain(3), lemma_valuation(1))
    t = chain_term(store)
    assert evaluate(model, iterate(t, "x", 1)) == 0b110
    assert evaluate(model, iterate(t, "x", 2)) == 0b111


def test_box_and_diamond_edges(store):
    model = Model(make_chain(3), Valuation({"x": 0b100}))
    assert evaluate(model, store.dia(store.var("x"))) == 0b011
    # box holds vacuously at the top world, which has no successors
    assert evaluate(model, store.box(store.bot())) == 0b100
    assert evaluate(model, store.box(store.var("x"))) == 0b110


def test_missing_variable_warns_once(store):
    model = Model(make_chain(2), Valuation())
    with pytest.warns(MissingVariableWarning):
        assert evaluate(model, store.var("q")) == 0
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert evaluate(model, store.or_(store.var("q"), store.var("q"))) == 0


def test_model_is_bound_to_one_store(store):
    model = Model(make_chain(2), Valuation())
    evaluate(model, store.top())
    with pytest.raises(InputError):
        evaluate(model, TermStore().top())


@given(frame=frames(), plan=term_plans())
def test_diamond_is_dual_of_box(frame, plan):
    store = TermStore()
    t = build_term(plan, store)
    model = Model(frame, Valuation({n: 0 for n in ("x", "y", "z")}))
    assert evaluate(model, store.dia(t)) == \
        evaluate(model, store.not_(store.box(store.not_(t))))


@given(data=st.data(), plan=term_plans())
def test_evaluate_agrees_with_naive_oracle(data, plan):
    frame = data.draw(frames())
    valuation = data.draw(valuations_for(frame))
    store = TermStore()
    t = build_term(plan, store)
    got = evaluate(Model(frame, valuation), t)
    sets = {n: set(bits_to_worlds(valuation.bits(n))) for n in ("x", "y", "z")}
    assert got == worlds_to_bits(naive_eval(frame, sets, t))


@given(data=st.data(), k=st.integers(0, 12))
def test_iterated_evaluation_matches_syntactic_iterate(data, k):
    frame = data.draw(frames())
    valuation = data.draw(valuations_for(frame))
    store = TermStore()
    t = chain_term(store)
    model = Model(frame, valuation)
    assert evaluate_iterated(model, t, "x", store.var("x"), k) == \
        evaluate(model, iterate(t, "x", k))


def test_orbit_shape_and_base_check(store):
    model = Model(make_chain(3), lemma_valuation(1))
    orbit = evaluate_orbit(model, chain_term(store), "x", 0, 3)
    assert len(orbit) == 4 and orbit[0] == 0
    with pytest.raises(InputError):
        evaluate_orbit(model, chain_term(store), "x", 0b1000, 1)


def test_holds_globally(store):
    model = Model(make_chain(2, (0, 1)), Valuation({"x": 0b10}))
    x = store.var("x")
    assert holds_globally(model, leq(x, store.top()))
    assert not holds_globally(model, eq(x, store.top()))
    assert holds_globally(model, eq(store.dia(x), store.top()))


class TestEvaluator:
    def test_projection_memo_ignores_irrelevant_variables(self, store):
        ev = Evaluator(make_chain(3))
        t = store.box(store.var("x"))
        a = ev.evaluate(t, {"x": 0b100, "y": 0})
        b = ev.evaluate(t, {"x": 0b100, "y": 0b111})
        assert a == b == 0b110

    def test_statement_gap(self, store):
        ev = Evaluator(make_chain(2))
        x, y = store.var("x"), store.var("y")
        assert ev.statement_gap(leq(x, y), {"x": 0b11, "y": 0b10}) == 0b01
        assert ev.statement_gap(eq(x, y), {"x": 0b11, "y": 0b10}) == 0b01
        assert ev.statement_gap(leq(x, y), {"x": 0b10, "y": 0b11}) == 0

    def test_store_binding(self, store):
        ev = Evaluator(make_chain(2))
        ev.evaluate(store.top(), {})
        with pytest.raises(InputError):
            ev.evaluate(TermStore().top(), {})

    @given(data=st.data(), plan=term_plans())
    def test_gap_matches_naive_failure_set(self, data, plan):
        frame = data.draw(frames())
        assignment = {n: data.draw(st.integers(0, frame.mask)) for n in ("x", "y", "z")}
        store = TermStore()
        lhs = build_term(plan, store)
        stmt = data.draw(st.sampled_from([leq, eq]))(lhs, store.var("y"))
        sets = {n: set(bits_to_worlds(b)) for n, b in assignment.items()}
        assert Evaluator(frame).statement_gap(stmt, assignment) == \
            worlds_to_bits(naive_fails(frame, sets, stmt))
