"""A population rescues what a single parent cannot solve.

At strongly negative weights the single-parent algorithms stagnate almost
surely, but a (mu+1) population keeps members with different stored bits
alive simultaneously, and one of them eventually lands the all-ones string on
a stored 0.  Fitness ranks are weight-independent below -n, so runs at
w = -n and w = -2n follow bit-for-bit identical trajectories under one seed.
"""

import tlonemax as tl

n = 20
budget = tl.default_budget(n)
print(f"n={n}, w={-n}: single parent vs population (150 trials each)")
for kind, label in ((tl.ONE_PLUS_ONE_EA, "single parent"),
                    (tl.mu_plus_one_ea(30), "population mu=30")):
    cfg = tl.ExperimentConfig(kind=kind, n=n, w=-n, trials=150,
                              budget=max(budget, 50 * 30 * n), master_seed=9)
    r = tl.estimate(cfg)
    print(f"  {label:18s}: success {r.p_success:.3f}  stagnated {r.p_fail_proven:.3f}"
          f"  undecided {r.undecided}")

print("\nSeed-identical trajectories below -n (outcome generation per seed):")
print("  seed   w=-20   w=-40")
for seed in range(5):
    outs = [tl.run_trial(tl.mu_plus_one_ea(10), w, n, 50000, seed).generations
            for w in (-n, -2 * n)]
    print(f"  {seed:4d}  {outs[0]:6d}  {outs[1]:6d}")
