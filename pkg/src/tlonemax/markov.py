"""Exact absorption analysis of the single-parent algorithms.

Both mutation operators and the fitness are exchangeable over positions 2..n,
so the full chain over (stored first bit, current bitstring) lumps exactly to
4n states (stored first bit, current first bit, ones among positions 2..n).
This module builds those lumped chains with exact transition probabilities,
solves the standard absorbing-chain linear systems for per-start and overall
absorption probabilities (optimum vs each proven stagnation event), and
computes expected generations to the optimum conditioned on reaching it via
the h-transform of the transient chain.  A brute-force full-state chain
(every bitstring enumerated) validates the lumping at small n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .core import _is_optimum_parts, check_weight
from .stagnation import classify_lumped

#: Absorbing classes, in fixed column order.
CLASS_NAMES = ("optimum", "event1", "event2", "event3")

#: Full-state (unlumped) chains are enumerable up to this length.
BRUTE_FORCE_MAX_N = 12

_SOLVE_RESIDUAL_TOL = 1e-10
_HIT_RESIDUAL_TOL = 1e-8
_ABSORB_MASS_TOL = 1e-8
_PROB_RANGE_TOL = 1e-12
_ROW_SUM_TOL = 1e-10


@dataclass(frozen=True)
class LumpedState:
    """Symmetry-reduced state: stored bit, current first bit, tail ones-count."""

    prev_first: int
    cur_first: int
    k: int

    def index(self, n: int) -> int:
        return (self.prev_first * 2 + self.cur_first) * n + self.k


def lumped_index(prev_first: int, cur_first: int, k: int, n: int) -> int:
    return (prev_first * 2 + cur_first) * n + k


def state_from_index(idx: int, n: int) -> LumpedState:
    pc, k = divmod(idx, n)
    return LumpedState(pc // 2, pc % 2, k)


def binomial_pmf(m: int, p: float) -> np.ndarray:
    """Binomial(m, p) pmf over 0..m, computed through log-factorials so that
    no term overflows even for m in the thousands."""
    if m == 0:
        return np.ones(1)
    k = np.arange(m + 1)
    logpmf = (gammaln(m + 1) - gammaln(k + 1) - gammaln(m - k + 1)
              + k * math.log(p) + (m - k) * math.log1p(-p))
    return np.exp(logpmf)


def initial_distribution(n: int) -> np.ndarray:
    """Lumped law of uniform initialization: stored bit and current first bit
    fair coins, tail ones Binomial(n-1, 1/2), all independent."""
    pk = binomial_pmf(n - 1, 0.5)
    pi = np.empty(4 * n)
    for pc in range(4):
        pi[pc * n:(pc + 1) * n] = 0.25 * pk
    return pi


def _require_single_parent(kind):
    if not kind.single_parent:
        raise ValueError("exact chains exist for single-parent kinds only")


def transition_row(kind, w: int, n: int, s: LumpedState) -> np.ndarray:
    """Exact one-generation transition distribution out of ``s``.

    Rejected offspring mass stays on ``s``.  One-bit mutation yields at most
    n+1 nonzero entries; bit-wise mutation splits mass over the first bit
    (flip probability 1/n) times the exact convolution of the down-flip and
    up-flip binomial counts over positions 2..n.
    """
    _require_single_parent(kind)
    w = check_weight(w)
    p, c, k = s.prev_first, s.cur_first, s.k
    if not (0 <= k <= n - 1):
        raise ValueError(f"k must lie in [0..{n - 1}], got {k}")
    incumbent = c + k + w * p
    row = np.zeros(4 * n)
    self_idx = lumped_index(p, c, k, n)

    if kind.name == "rls":
        # first-bit flip
        if (1 - c) + k + w * c >= incumbent:
            row[lumped_index(c, 1 - c, k, n)] += 1.0 / n
        else:
            row[self_idx] += 1.0 / n
        # one of the k tail ones flips down
        if k > 0:
            if c + k - 1 + w * c >= incumbent:
                row[lumped_index(c, c, k - 1, n)] += k / n
            else:
                row[self_idx] += k / n
        # one of the n-1-k tail zeros flips up
        if k < n - 1:
            if c + k + 1 + w * c >= incumbent:
                row[lumped_index(c, c, k + 1, n)] += (n - 1 - k) / n
            else:
                row[self_idx] += (n - 1 - k) / n
        return row

    # bit-wise mutation: tail ones move k -> k' with the convolution of
    # Binomial(k, 1/n) down-flips and Binomial(n-1-k, 1/n) up-flips
    inv_n = 1.0 / n
    down = binomial_pmf(k, inv_n)
    up = binomial_pmf(n - 1 - k, inv_n)
    tail = np.convolve(down[::-1], up)  # index k' in [0..n-1]
    kp = np.arange(n)
    for cp, p_first in ((c, 1.0 - inv_n), (1 - c, inv_n)):
        accepted = (cp + kp + w * c) >= incumbent
        mass = p_first * tail
        base = lumped_index(c, cp, 0, n)
        row[base:base + n] += np.where(accepted, mass, 0.0)
        row[self_idx] += float(mass[~accepted].sum())
    # mathematically the row is exactly stochastic; dividing out the ~1e-15
    # float dust keeps absorption solves accurate at large n
    row /= row.sum()
    return row


def build_transition_matrix(kind, w: int, n: int) -> np.ndarray:
    """Row-stochastic 4n x 4n lumped transition matrix."""
    m = 4 * n
    P = np.empty((m, m))
    for idx in range(m):
        P[idx] = transition_row(kind, w, n, state_from_index(idx, n))
    return P


def state_classes(kind, w: int, n: int) -> np.ndarray:
    """Absorbing class per lumped state: CLASS_NAMES index, or -1 if transient.

    The absorbing set is exactly the optimum states plus the classified
    stagnation events -- nothing speculative.
    """
    _require_single_parent(kind)
    cls = np.full(4 * n, -1, dtype=np.int64)
    for idx in range(4 * n):
        s = state_from_index(idx, n)
        if _is_optimum_parts(w, s.prev_first, s.cur_first + s.k, n):
            cls[idx] = 0
        else:
            ev = classify_lumped(kind.name, w, n, s.prev_first, s.cur_first, s.k)
            if ev is not None:
                cls[idx] = CLASS_NAMES.index(ev.value)
    return cls


@dataclass(eq=False)
class AbsorptionResult:
    """Absorption probabilities of one chain.

    per_state[i, c] is the probability of ending in class CLASS_NAMES[c] when
    started from lumped state i; rows of absorbing states are one-hot.
    ``overall`` weights per_state by the uniform-initialization law (so a
    start that is already optimal or already stagnated counts at g = 0).
    ``lumping_spread`` (brute force only) is the largest deviation of any
    full state's absorption probability from its lumped group's mean.
    """

    kind: object
    w: int
    n: int
    state_class: np.ndarray
    per_state: np.ndarray
    overall: dict
    lumping_spread: float | None = None

    @property
    def p_optimum(self) -> float:
        return self.overall["optimum"]

    @property
    def p_failure(self) -> float:
        return 1.0 - self.overall["optimum"]


def _transient_system(P: np.ndarray, tr: np.ndarray):
    """Equilibrated (I - Q) over the transient states ``tr``.

    The diagonal 1 - P[i, i] is assembled as the direct sum of off-diagonal
    mass rather than by subtraction: states whose escape probability is many
    orders below 1 (deep quasi-traps at intermediate negative weights) would
    otherwise cancel to a singular diagonal.  Rows are then scaled by the
    escape mass, which turns the system into the well-conditioned embedded
    jump chain; right-hand sides must be scaled by the same ``esc`` vector.
    """
    off = P[tr].copy()
    off[np.arange(tr.size), tr] = 0.0
    esc = off.sum(axis=1)
    if esc.min() <= 0.0:
        raise RuntimeError(
            "a transient state has no representable escape probability; "
            "the chain does not absorb from it in double precision")
    A = -off[:, tr]
    A[np.arange(tr.size), np.arange(tr.size)] = esc
    A /= esc[:, None]
    return A, esc, off


def _solve_absorption(P: np.ndarray, cls: np.ndarray) -> np.ndarray:
    """Per-state absorption probabilities for a chain with labelled classes."""
    m = P.shape[0]
    per = np.zeros((m, len(CLASS_NAMES)))
    absorbing = cls >= 0
    per[absorbing, cls[absorbing]] = 1.0
    tr = np.flatnonzero(~absorbing)
    if tr.size:
        A, esc, off = _transient_system(P, tr)
        R = np.zeros((tr.size, len(CLASS_NAMES)))
        for c in range(len(CLASS_NAMES)):
            cols = np.flatnonzero(cls == c)
            if cols.size:
                R[:, c] = off[:, cols].sum(axis=1)
        R /= esc[:, None]
        try:
            H = np.linalg.solve(A, R)
        except np.linalg.LinAlgError as exc:
            raise RuntimeError("transient chain is singular: some states never absorb") from exc
        if np.abs(A @ H - R).max() > _SOLVE_RESIDUAL_TOL:
            raise RuntimeError("absorption solve residual exceeds tolerance")
        mass = H.sum(axis=1)
        if mass.min() < 1.0 - _ABSORB_MASS_TOL:
            raise RuntimeError(
                "chain is not almost surely absorbed (transient absorption mass "
                f"{mass.min():.12f}); the dynamics model is inconsistent")
        per[tr] = H
    sums = per.sum(axis=1)
    if np.abs(sums - 1.0).max() > _ROW_SUM_TOL:
        raise RuntimeError("per-state class probabilities do not sum to 1")
    if per.min() < -_PROB_RANGE_TOL or per.max() > 1.0 + _PROB_RANGE_TOL:
        raise RuntimeError("absorption probabilities outside [0, 1] beyond tolerance")
    np.clip(per, 0.0, 1.0, out=per)
    return per


def absorption_probabilities(kind, w: int, n: int) -> AbsorptionResult:
    """Exact per-start and overall absorption probabilities on the lumped chain."""
    _require_single_parent(kind)
    w = check_weight(w)
    P = build_transition_matrix(kind, w, n)
    cls = state_classes(kind, w, n)
    per = _solve_absorption(P, cls)
    pi = initial_distribution(n)
    overall = {name: float(pi @ per[:, c]) for c, name in enumerate(CLASS_NAMES)}
    return AbsorptionResult(kind, w, n, cls, per, overall)


def _popcounts(n_bits: int) -> np.ndarray:
    return np.array([bin(v).count("1") for v in range(1 << n_bits)], dtype=np.int64)


def brute_force_absorption(kind, w: int, n: int) -> AbsorptionResult:
    """Absorption on the unlumped chain over all 2 * 2**n full states.

    Used solely to validate the lumping: results are aggregated back to
    lumped indexing, with the within-group spread reported.  One-bit rows are
    built by exhaustive offspring enumeration; bit-wise rows by the exact
    per-bit product formula.
    """
    _require_single_parent(kind)
    w = check_weight(w)
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force supports n <= {BRUTE_FORCE_MAX_N}, got {n}")
    B = 1 << n
    m = 2 * B
    ones = _popcounts(n)
    first = (np.arange(B) & 1).astype(np.int64)

    P = np.zeros((m, m))
    if kind.name == "rls":
        for prev in (0, 1):
            for x in range(B):
                row = prev * B + x
                incumbent = ones[x] + w * prev
                x1 = x & 1
                for i in range(n):
                    y = x ^ (1 << i)
                    if ones[y] + w * x1 >= incumbent:
                        P[row, x1 * B + y] += 1.0 / n
                    else:
                        P[row, row] += 1.0 / n
    else:
        inv_n = 1.0 / n
        xor = np.arange(B)[:, None] ^ np.arange(B)[None, :]
        dist = ones[xor]
        M = (inv_n ** dist) * ((1.0 - inv_n) ** (n - dist))
        X = np.arange(B)
        for prev in (0, 1):
            incumbent = ones + w * prev
            acc = (ones[None, :] + (w * first)[:, None]) >= incumbent[:, None]
            vals = np.where(acc, M, 0.0)
            rows = (prev * B + X)[:, None]
            cols = (first * B)[:, None] + X[None, :]
            np.add.at(P, (np.broadcast_to(rows, vals.shape), np.broadcast_to(cols, vals.shape)), vals)
            rejected = 1.0 - vals.sum(axis=1)
            P[prev * B + X, prev * B + X] += rejected
    P /= P.sum(axis=1, keepdims=True)

    cls_full = np.full(m, -1, dtype=np.int64)
    for prev in (0, 1):
        for x in range(B):
            idx = prev * B + x
            if _is_optimum_parts(w, prev, int(ones[x]), n):
                cls_full[idx] = 0
            else:
                ev = classify_lumped(kind.name, w, n, prev, int(x & 1), int(ones[x] - (x & 1)))
                if ev is not None:
                    cls_full[idx] = CLASS_NAMES.index(ev.value)
    per_full = _solve_absorption(P, cls_full)
    overall = {name: float(per_full[:, c].mean()) for c, name in enumerate(CLASS_NAMES)}

    # aggregate back to lumped indexing; exchangeability means every group is constant
    gidx = np.empty(m, dtype=np.int64)
    for prev in (0, 1):
        gidx[prev * B:(prev + 1) * B] = (prev * 2 + first) * n + (ones - first)
    per_lumped = np.zeros((4 * n, len(CLASS_NAMES)))
    spread = 0.0
    for lidx in range(4 * n):
        members = np.flatnonzero(gidx == lidx)
        if members.size == 0:
            continue
        group = per_full[members]
        mean = group.mean(axis=0)
        per_lumped[lidx] = mean
        spread = max(spread, float(np.abs(group - mean[None, :]).max()))
    return AbsorptionResult(kind, w, n, state_classes(kind, w, n), per_lumped, overall,
                            lumping_spread=spread)


@dataclass(eq=False)
class HittingTimeResult:
    """Expected generations to reach the optimum, conditioned on reaching it.

    per_state[i] is NaN for states that never reach the optimum (stagnation
    states and transient states with zero optimum mass) and 0 for states that
    already are optima; ``overall`` conditions the uniform-initialization law
    on eventual success.
    """

    kind: object
    w: int
    n: int
    per_state: np.ndarray
    overall: float


def conditional_hitting_time(kind, w: int, n: int) -> HittingTimeResult:
    """Doob h-transform of the transient chain: reweight transitions by the
    optimum-absorption vector, then solve for expected steps to absorption."""
    _require_single_parent(kind)
    w = check_weight(w)
    P = build_transition_matrix(kind, w, n)
    cls = state_classes(kind, w, n)
    per = _solve_absorption(P, cls)
    h = per[:, 0]
    m = 4 * n
    times = np.full(m, np.nan)
    times[cls == 0] = 0.0
    tr = np.flatnonzero(cls < 0)
    pos = tr[h[tr] > 1e-12]
    if pos.size:
        # same cancellation-free diagonal and row scaling as the absorption
        # solve, with off-diagonal transitions reweighted by the h-transform
        off = P[pos].copy()
        off[np.arange(pos.size), pos] = 0.0
        esc = off.sum(axis=1)
        hp = h[pos]
        A = -off[:, pos] * (hp[None, :] / hp[:, None])
        A[np.arange(pos.size), np.arange(pos.size)] = esc
        b = np.ones(pos.size)
        A /= esc[:, None]
        b /= esc
        tau = np.linalg.solve(A, b)
        # the residual of the unscaled system (I - Qh) tau = 1
        if (np.abs(A @ tau - b) * esc).max() > _HIT_RESIDUAL_TOL:
            raise RuntimeError("conditioned hitting-time solve residual exceeds tolerance")
        times[pos] = tau
    pi = initial_distribution(n)
    weights = pi * h
    reachable = weights > 0
    overall = float((weights[reachable] * times[reachable]).sum() / weights[reachable].sum())
    return HittingTimeResult(kind, w, n, times, overall)
