"""
Terms as hash-consed DAGs
=========================

Build terms through a store, parse them, substitute into them, and iterate
them. Everything is interned, so structural equality is object identity.
"""

from modalbench import (InputError, TermStore, chain_term, format_term,
                        iterate, node_count, parse_formula, substitute,
                        tree_size)

store = TermStore()
x = store.var("x")
y = store.var("y")

# Building the same term twice gives the same object.
a = store.or_(store.box(x), y)
b = store.or_(store.box(x), y)
print("interned:", a is b)

# The parser targets the same store, so parsed text joins the same DAG.
t = chain_term(store)
print("chain step:", format_term(t))
print("parse is identity:", parse_formula("[](y | [](z | x)) | x", store) is t)

# Substitution is simultaneous. Swapping y and z does not capture.
swapped = substitute(t, {"y": store.var("z"), "z": y})
print("swapped roles:", format_term(swapped))

# Iterating in the pivot x substitutes the term into itself. As a DAG this
# grows linearly, while the printed tree doubles each step.
for k in range(5):
    tk = iterate(t, "x", k)
    print(f"t^{k}: {node_count(tk)} DAG nodes, {tree_size(tk)} tree nodes")

# The printer expands sharing, so it refuses terms whose tree form is huge.
big = iterate(t, "x", 11)
print("t^11:", node_count(big), "DAG nodes,", tree_size(big), "tree nodes")
try:
    format_term(big)
except InputError as exc:
    print("printer says:", exc)
