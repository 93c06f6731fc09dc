"""
Global consequence over frame families
======================================

Premises hold at every world of a model; does the conclusion then hold at
every world too? The checker scans whole valuation spaces per frame and
reports either coverage or the first countermodel in scan order.
"""

from modalbench import (CapExceededError, ConsequenceProblem, TermStore,
                        build_sigma_pi, chain_term, check_consequence,
                        enumerate_chains, format_statement, make_chain)

store = TermStore()

# build_sigma_pi renames the step's own y and z out of the way (y1, z1),
# pins the pivot between fresh bounds y and z, and lists the iterate bounds.
sigma, pi = build_sigma_pi(chain_term(store), "x", 3)
print("pinning statements:")
for stmt in sigma:
    print("  ", format_statement(stmt))
print("iterate bounds:")
for k in range(3):
    print(f"  pi[{k}]:", format_statement(pi[k]))

frames = [frame for size in range(1, 5) for frame in enumerate_chains(size)]
print(f"checking over {len(frames)} chains with up to 4 worlds")

# A pivot that is its own step and sits between y and z bounds every iterate
# seeded at y.
result = check_consequence(ConsequenceProblem(sigma, pi[2], frames))
print("sigma forces pi[2]:", result.holds,
      f"({result.assignments} assignments covered)")

# Dropping the pinning, one iterate bound does not force the next.
result = check_consequence(ConsequenceProblem([pi[1]], pi[2], frames))
print("pi[1] alone forces pi[2]:", result.holds)
print("countermodel on frame", result.frame_index,
      "failing at world", result.failure_world)
print("valuation:", result.valuation.to_sets())

# Frames whose valuation spaces exceed the bit budget are refused up front,
# never silently truncated.
try:
    check_consequence(ConsequenceProblem(sigma, pi[2], [make_chain(9)]))
except CapExceededError as exc:
    print("refused:", exc)
