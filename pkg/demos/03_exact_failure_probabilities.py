"""Exact failure probabilities across the weight range, from the lumped chain.

The 4n-state chain (stored bit, current first bit, tail ones) is exact
because fitness and both mutation operators treat positions 2..n
interchangeably.  A brute-force chain over all 2 * 2**n full states confirms
the lumping, and the one-bit-search failure probability matches the closed
form 1/4 + 1/(2n) for every weight above 1.
"""

import numpy as np

import tlonemax as tl

n = 10
print(f"n = {n}: overall failure probability by weight")
print("   w   one-bit      bit-wise   dominant sink")
for w in (-10, -6, -3, -1, 0, 1, 2, 5, 10):
    rows = []
    for kind in (tl.RLS, tl.ONE_PLUS_ONE_EA):
        res = tl.absorption_probabilities(kind, w, n)
        rows.append(res)
    sink = max(tl.CLASS_NAMES[1:], key=lambda c: rows[1].overall[c])
    share = rows[1].overall[sink]
    print(f"  {w:+3d}  {rows[0].p_failure:10.6f} {rows[1].p_failure:11.6f}"
          f"   {sink if share > 0 else '-'}")

print("\nLumping validation against the brute-force full-state chain (n=8, w=-5):")
lump = tl.absorption_probabilities(tl.ONE_PLUS_ONE_EA, -5, 8)
brute = tl.brute_force_absorption(tl.ONE_PLUS_ONE_EA, -5, 8)
for c in tl.CLASS_NAMES:
    print(f"  {c:8s}: lumped {lump.overall[c]:.12f}  brute {brute.overall[c]:.12f}")
print(f"  max per-state difference: {np.abs(lump.per_state - brute.per_state).max():.2e}")
print(f"  within-group spread of the full chain: {brute.lumping_spread:.2e}")

print("\nClosed form for one-bit search at w >= 2: failure = 1/4 + 1/(2n)")
for n in (10, 50, 200):
    res = tl.absorption_probabilities(tl.RLS, 2, n)
    print(f"  n={n:4d}: exact {res.p_failure:.10f} vs closed form {0.25 + 0.5 / n:.10f}")
