"""Time-linkage OneMax laboratory.

A numpy/scipy library for the weighted time-linkage OneMax benchmark family:
single-parent and population evolutionary algorithms whose fitness couples the
current bitstring with the first bit of the previous decision, detectors for
the proven absorbing stagnation events, exact absorbing-Markov-chain analysis
on a symmetry-lumped state space, and reproducible Monte Carlo estimation.
"""

__version__ = "0.1.0"

from .algorithms import (ONE_PLUS_ONE_EA, RLS, AlgorithmKind, PopulationMember,
                         TrialOutcome, TrialStatus, accept, mu_plus_one_ea,
                         mutate_ea, mutate_rls, random_population, run_trial,
                         split_seed, step, step_mu_plus_one)
from .core import (MAX_WEIGHT, TLState, as_bits, fitness, is_global_optimum,
                   ones_count, random_bitstring, random_init)
from .markov import (CLASS_NAMES, AbsorptionResult, HittingTimeResult,
                     LumpedState, absorption_probabilities,
                     brute_force_absorption, build_transition_matrix,
                     conditional_hitting_time, initial_distribution,
                     transition_row)
from .montecarlo import (EstimateResult, ExperimentConfig, ScalingRow,
                         default_budget, estimate, runtime_scaling, wilson_ci)
from .stagnation import StagnationEvent, classify, is_absorbing_oracle
from .verify import (LemmaReport, check_mutation_facts, check_rank_equivalence,
                     check_selection_equivalence)

__all__ = [
    "__version__",
    "AlgorithmKind", "RLS", "ONE_PLUS_ONE_EA", "mu_plus_one_ea",
    "TLState", "PopulationMember", "TrialOutcome", "TrialStatus",
    "MAX_WEIGHT", "as_bits", "ones_count", "fitness", "is_global_optimum",
    "random_bitstring", "random_init",
    "mutate_rls", "mutate_ea", "accept", "step", "step_mu_plus_one",
    "random_population", "run_trial", "split_seed",
    "StagnationEvent", "classify", "is_absorbing_oracle",
    "CLASS_NAMES", "LumpedState", "AbsorptionResult", "HittingTimeResult",
    "transition_row", "build_transition_matrix", "initial_distribution",
    "absorption_probabilities", "brute_force_absorption",
    "conditional_hitting_time",
    "ExperimentConfig", "EstimateResult", "ScalingRow",
    "estimate", "wilson_ci", "runtime_scaling", "default_budget",
    "LemmaReport", "check_mutation_facts", "check_selection_equivalence",
    "check_rank_equivalence",
]
