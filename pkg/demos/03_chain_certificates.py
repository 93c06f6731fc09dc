"""
Non-stabilization certificates on odd chains
============================================

On the chain with 2n+1 worlds, under the alternating valuation, the n-th
iterate of the chain step still fails at world 0 while the (n+1)-th holds
everywhere. check_lemma packages the full evidence and its own validity bit.
"""

from modalbench import (bits_to_worlds, check_lemma, falsifying_path_starts,
                        lemma_valuation, make_chain)

cert = check_lemma(2)
print(cert.render_table())
print("certificate valid:", cert.valid)
print()

# The table rows above show each world's membership in t^0 .. t^3. The claim
# table records, per iterate, which even worlds it still misses.
for level, worlds in sorted(cert.claim_table.items()):
    print(f"t^{level} misses even worlds {list(worlds)}")

# Nothing depends on which points carry self-loops: all 32 decorations of the
# 5-chain certify the same way.
size = 5
all_valid = all(check_lemma(2, [w for w in range(size) if mask >> w & 1]).valid
                for mask in range(1 << size))
print("all 32 loop choices valid:", all_valid)

# Cross-check for the pivot-free approximants: s_m fails exactly at the
# worlds that start a relation path of length 2m alternating between worlds
# outside y and worlds outside z. The path search is independent of the
# evaluator, which is the point.
frame = make_chain(size)
val = lemma_valuation(2)
for m in range(4):
    starts = falsifying_path_starts(frame, val, m)
    print(f"s_{m} fails at:", bits_to_worlds(starts))
