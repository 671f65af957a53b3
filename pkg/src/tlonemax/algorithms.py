"""Steppers for the time-linkage RLS, (1+1) EA, and (mu+1) EA, plus trials.

All three algorithms evaluate an offspring against its parent's *current*
first bit as the stored history, and accept when the offspring fitness is at
least the parent's ("at least as good" selection).  A trial runs one seeded
optimization to absorption: global optimum, a proven stagnation event, or
budget exhaustion.  The generation counter g counts offspring fitness
evaluations; the implicit evaluation of the initial state is not counted.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import TLState, _is_optimum_parts, fitness, is_global_optimum, random_init
from .stagnation import StagnationEvent, classify


@dataclass(frozen=True)
class AlgorithmKind:
    """Algorithm selector: "rls", "ea" (1+1), or "mu-ea" with population size mu."""

    name: str
    mu: int | None = None

    def __post_init__(self):
        if self.name not in ("rls", "ea", "mu-ea"):
            raise ValueError(f"unknown algorithm kind {self.name!r}")
        if self.name == "mu-ea":
            if self.mu is None or self.mu < 1:
                raise ValueError("mu-ea requires mu >= 1")
        elif self.mu is not None:
            raise ValueError(f"{self.name} takes no mu")

    @property
    def single_parent(self) -> bool:
        return self.name in ("rls", "ea")


RLS = AlgorithmKind("rls")
ONE_PLUS_ONE_EA = AlgorithmKind("ea")


def mu_plus_one_ea(mu: int) -> AlgorithmKind:
    return AlgorithmKind("mu-ea", mu)


def mutate_rls(x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Flip exactly one uniformly chosen bit."""
    y = x.copy()
    i = int(rng.integers(x.shape[0]))
    y[i] ^= 1
    return y


def mutate_ea(x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Flip each bit independently with probability 1/n."""
    n = x.shape[0]
    return x ^ (rng.random(n) < 1.0 / n)


def accept(w: int, state: TLState, offspring: np.ndarray) -> bool:
    """Selection rule: offspring evaluated with the parent's current first bit
    as stored history, accepted iff its fitness is >= the incumbent's."""
    if offspring.shape[0] != state.n:
        raise ValueError("offspring length must match the state")
    return fitness(w, int(state.current[0]), offspring) >= state.fitness(w)


def step(kind: AlgorithmKind, w: int, state: TLState, rng: np.random.Generator) -> TLState:
    """One generation of a single-parent algorithm.

    Always increments g.  On acceptance the decision advances: the stored bit
    becomes the parent's current first bit, the offspring becomes current, and
    t increments; otherwise only g changes.
    """
    if kind.name == "rls":
        offspring = mutate_rls(state.current, rng)
    elif kind.name == "ea":
        offspring = mutate_ea(state.current, rng)
    else:
        raise ValueError("step() is for single-parent kinds; use step_mu_plus_one")
    if accept(w, state, offspring):
        return TLState(int(state.current[0]), offspring, state.t + 1, state.g + 1)
    return TLState(state.prev_first, state.current, state.t, state.g + 1)


@dataclass(eq=False, slots=True)
class PopulationMember:
    """One (mu+1) EA individual: its own stored bit plus current bitstring."""

    prev_first: int
    current: np.ndarray

    def fitness(self, w: int) -> int:
        return fitness(w, self.prev_first, self.current)


def random_population(mu: int, n: int, rng: np.random.Generator) -> list[PopulationMember]:
    """mu members, each with an independent uniform (stored bit, bitstring).

    The distribution of the initial stored solutions is not pinned down
    anywhere authoritative; independent uniform initialization per member is
    this package's choice.
    """
    members = []
    for _ in range(mu):
        s = random_init(n, rng)
        members.append(PopulationMember(s.prev_first, s.current))
    return members


def step_mu_plus_one(mu: int, w: int, pop: list[PopulationMember],
                     rng: np.random.Generator) -> list[PopulationMember]:
    """One (mu+1) EA generation.

    A uniformly chosen parent produces one bit-wise-mutation offspring that
    stores the parent's current first bit; the single worst-fitness member of
    the mu+1 (offspring included) is removed, ties broken uniformly at random.
    With mu=1 this differs from the (1+1) EA's ">=" rule: a strictly worse
    offspring can survive a fitness tie-break.
    """
    if len(pop) != mu:
        raise ValueError(f"population must have {mu} members, got {len(pop)}")
    parent = pop[int(rng.integers(mu))]
    offspring = PopulationMember(int(parent.current[0]), mutate_ea(parent.current, rng))
    fits = [m.fitness(w) for m in pop] + [offspring.fitness(w)]
    worst = min(fits)
    candidates = [i for i, f in enumerate(fits) if f == worst]
    removed = candidates[int(rng.integers(len(candidates)))]
    survivors = pop + [offspring]
    del survivors[removed]
    return survivors


class TrialStatus(str, Enum):
    OPTIMUM = "optimum"
    STAGNATED = "stagnated"
    BUDGET = "budget"


@dataclass(eq=False, slots=True)
class TrialOutcome:
    """Result of one trial: how it ended, at which generation, and where."""

    status: TrialStatus
    generations: int
    event: StagnationEvent | None
    final_state: TLState | list[PopulationMember]


def split_seed(master_seed: int, index: int) -> int:
    """Stable order-independent per-trial seed from (master seed, trial index)."""
    ss = np.random.SeedSequence([int(master_seed), int(index)])
    return int(ss.generate_state(1, np.uint64)[0])


def run_trial(kind: AlgorithmKind, w: int, n: int, budget: int, seed: int,
              observer=None) -> TrialOutcome:
    """Run one seeded trial to absorption or budget.

    The optimum test runs after initialization and after every acceptance;
    stagnation classification (single-parent kinds only) runs at the same
    points.  Deterministic given (kind, w, n, budget, seed).  ``observer``,
    when given, is called as observer(g, state_or_population, accepted, event)
    after initialization (g=0) and after every generation.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    rng = np.random.default_rng(int(seed))
    if kind.single_parent:
        return _run_single_parent(kind, w, n, budget, rng, observer)
    return _run_mu_plus_one(kind.mu, w, n, budget, rng, observer)


def _run_single_parent(kind, w, n, budget, rng, observer):
    state = random_init(n, rng)
    event = classify(kind, w, state)
    if observer is not None:
        observer(0, state, True, event)
    if is_global_optimum(w, state):
        return TrialOutcome(TrialStatus.OPTIMUM, 0, None, state)
    if event is not None:
        return TrialOutcome(TrialStatus.STAGNATED, 0, event, state)
    for _ in range(budget):
        new = step(kind, w, state, rng)
        accepted = new.t > state.t
        state = new
        event = None
        if accepted:
            if _is_optimum_parts(w, state.prev_first, int(state.current.sum()), n):
                if observer is not None:
                    observer(state.g, state, True, None)
                return TrialOutcome(TrialStatus.OPTIMUM, state.g, None, state)
            event = classify(kind, w, state)
        if observer is not None:
            observer(state.g, state, accepted, event)
        if event is not None:
            return TrialOutcome(TrialStatus.STAGNATED, state.g, event, state)
    return TrialOutcome(TrialStatus.BUDGET, budget, None, state)


def _run_mu_plus_one(mu, w, n, budget, rng, observer):
    # Hot path mirrors step_mu_plus_one exactly (same rng draw discipline:
    # parent index, mutation mask, tie-break index) on cached fitness arrays.
    prevs = np.empty(mu + 1, dtype=np.int64)
    currents = np.empty((mu + 1, n), dtype=np.uint8)
    ones = np.zeros(mu + 1, dtype=np.int64)
    for i in range(mu):
        s = random_init(n, rng)
        prevs[i] = s.prev_first
        currents[i] = s.current
    ones[:mu] = currents[:mu].sum(axis=1)
    fits = np.empty(mu + 1, dtype=np.int64)
    fits[:mu] = ones[:mu] + w * prevs[:mu]

    def snapshot():
        return [PopulationMember(int(prevs[i]), currents[i].copy()) for i in range(mu)]

    if observer is not None:
        observer(0, snapshot(), True, None)
    for i in range(mu):
        if _is_optimum_parts(w, int(prevs[i]), int(ones[i]), n):
            return TrialOutcome(TrialStatus.OPTIMUM, 0, None, snapshot())

    inv_n = 1.0 / n
    for g in range(1, budget + 1):
        j = int(rng.integers(mu))
        offspring = currents[j] ^ (rng.random(n) < inv_n)
        off_ones = int(offspring.sum())
        off_prev = int(currents[j, 0])
        prevs[mu] = off_prev
        currents[mu] = offspring
        ones[mu] = off_ones
        fits[mu] = off_ones + w * off_prev
        worst = int(fits.min())
        candidates = np.flatnonzero(fits == worst)
        removed = int(candidates[int(rng.integers(candidates.size))])
        if removed != mu:
            # keep the exact ordering of step_mu_plus_one: shift the tail left
            # over the removed slot, the offspring ends up last
            prevs[removed:mu] = prevs[removed + 1:mu + 1]
            currents[removed:mu] = currents[removed + 1:mu + 1]
            ones[removed:mu] = ones[removed + 1:mu + 1]
            fits[removed:mu] = fits[removed + 1:mu + 1]
        survived = removed != mu
        if observer is not None:
            observer(g, snapshot(), survived, None)
        if survived and _is_optimum_parts(w, off_prev, off_ones, n):
            return TrialOutcome(TrialStatus.OPTIMUM, g, None, snapshot())
    return TrialOutcome(TrialStatus.BUDGET, budget, None, snapshot())
