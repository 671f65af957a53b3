"""Tour of the benchmark: the weighted fitness, its optima, and one trial.

The objective couples the current bitstring with the first bit of the
previous decision: fitness = ones(current) + w * previous_first_bit.  The
sign of w decides which stored bit the optimum needs, and that mismatch
between what the current step rewards and what the next step will inherit is
what makes the problem hard.
"""

import numpy as np

import tlonemax as tl

print("Fitness examples (w, stored bit, current -> value)")
for w, prev, cur in [(-5, 1, "11111"), (3, 1, "10110"), (-2, 0, "01100"), (0, 0, "11111")]:
    print(f"  w={w:+d} prev={prev} x={cur}: fitness = {tl.fitness(w, prev, tl.as_bits(cur))}")

print("\nGlobal optima by weight sign (current must be all ones):")
for w in (-4, 0, 4):
    for prev in (0, 1):
        s = tl.TLState(prev, tl.as_bits("1111"))
        print(f"  w={w:+d} stored={prev}: optimal = {tl.is_global_optimum(w, s)}")

print("\nOne seeded trial, generation by generation (n=8, w=-8, one-bit search):")


def show(g, state, accepted, event):
    bits = "".join(map(str, state.current))
    tag = f" <- {event.value}" if event is not None else ""
    print(f"  g={g:3d} t={state.t:3d} stored={state.prev_first} x={bits} "
          f"fit={state.fitness(-8):3d} accepted={int(accepted)}{tag}")


outcome = tl.run_trial(tl.RLS, -8, 8, budget=200, seed=11, observer=show)
print(f"outcome: {outcome.status.value} at generation {outcome.generations}")
