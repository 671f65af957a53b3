"""Anatomy of the three absorbing stagnation events.

Each event is a first-bit pattern from which selection rejects every
offspring that could move the state anywhere new.  The classifier pattern-
matches the proven conditions; the oracle re-derives absorption from fitness
bounds alone, and at small n the two agree on every single state.
"""

import numpy as np

import tlonemax as tl
from tlonemax.core import TLState

CASES = [
    ("event1: stored 0, current first 1, tail ones in [w+n .. n-2]",
     tl.ONE_PLUS_ONE_EA, -6, TLState(0, tl.as_bits("110111"))),
    ("event2: stored 1, current all ones (local optimum of the stored-1 slab)",
     tl.ONE_PLUS_ONE_EA, -3, TLState(1, tl.as_bits("111111"))),
    ("event3: stored 1, current first 0, tail ones in [n-w+1 .. n-1]",
     tl.ONE_PLUS_ONE_EA, 3, TLState(1, tl.as_bits("011111"))),
]

for title, kind, w, s in CASES:
    ev = tl.classify(kind, w, s)
    orc = tl.is_absorbing_oracle(kind, w, s)
    print(f"{title}\n  w={w:+d}, state=({s.prev_first}, {''.join(map(str, s.current))})"
          f" -> classified {ev.value if ev else None}, oracle confirms: {orc}\n")

print("Borderline weights where the events vanish:")
print("  w=-1, one-bit search, (0,1) pattern: a tail-zero flip ties and is accepted ->",
      tl.classify(tl.RLS, -1, TLState(0, tl.as_bits("110100"))))
print("  w=+1: the event3 interval [n .. n-1] is empty ->",
      tl.classify(tl.ONE_PLUS_ONE_EA, 1, TLState(1, tl.as_bits("011111"))))

print("\nExhaustive cross-check at n=6, w in [-8..8]: classified == absorbing-and-not-optimal")
mismatches = 0
for kind in (tl.RLS, tl.ONE_PLUS_ONE_EA):
    for w in range(-8, 9):
        for prev in (0, 1):
            for value in range(1 << 6):
                cur = np.array([(value >> i) & 1 for i in range(6)], dtype=np.uint8)
                s = TLState(prev, cur)
                lhs = tl.classify(kind, w, s) is not None
                rhs = tl.is_absorbing_oracle(kind, w, s) and not tl.is_global_optimum(w, s)
                mismatches += lhs != rhs
print(f"  mismatches: {mismatches} (out of {2 * 17 * 2 * 64} states per kind)")
