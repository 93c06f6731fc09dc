"""
Frames, models, and bitset evaluation
=====================================
"""

from modalbench import (Model, TermStore, bits_to_worlds, chain_term, evaluate,
                        evaluate_orbit, holds_globally, lemma_valuation,
                        make_chain, parse_formula, parse_statement)

# A frame is a world count plus one successor bitset per world. make_chain
# builds the transitive strict order; here 0 sees 1 and 2, 1 sees 2.
frame = make_chain(3)
print("successors:", [bin(s) for s in frame.succ])

# Valuations map variable names to world bitsets. The alternating valuation
# used on odd chains puts x and z on the odd worlds and y on the even ones.
val = lemma_valuation(1)
print("alternating valuation:", val.to_sets())

store = TermStore()
model = Model(frame, val)

# Evaluation returns a bitset: bit w set means the term holds at world w.
t = chain_term(store)
print("t holds at:", bits_to_worlds(evaluate(model, t)))

box_y = parse_formula("[]y", store)
print("[]y holds at:", bits_to_worlds(evaluate(model, box_y)))

# Semantic iteration without building the big syntactic iterate: rebind the
# pivot to the previous value and evaluate the small step again.
orbit = evaluate_orbit(model, t, "x", val.bits("x"), 2)
for k, bits in enumerate(orbit):
    print(f"iterate {k} from x:", bits_to_worlds(bits))

# Statements hold globally when the bitsets line up at every world.
print("x <= <>x | x globally:",
      holds_globally(model, parse_statement("x <= <>x | x", store)))
print("[]x <= x globally:",
      holds_globally(model, parse_statement("[]x <= x", store)))
