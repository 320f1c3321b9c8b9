"""Device-stance likelihood: per-context multinomial action predictors.

A reactive device is an association from contexts to actions, where a context
is the pair (cell kind faced, last action) — 24 contexts in all. Mixing over
all such devices with per-context action-noise under a uniform prior gives,
per context, a Dirichlet(1,1,1,1)-multinomial: the one-step predictive is the
Laplace rule (T_ca + 1) / (T_c + 4) and the batch likelihood the closed form

    prod_c 3! * prod_i T_ci! / (T_c + 3)!

Both routes are implemented; all accumulation happens in natural-log space.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from .gridworld import (
    INITIAL_ACTION,
    Action,
    CellKind,
    Trajectory,
    observe,
)

N_ACTIONS = 4
N_CONTEXTS = 24

_KIND_LABELS = ["wall", "empty", "red", "green", "blue", "magenta"]
_ACTION_LABELS = ["up", "down", "left", "right"]


def context_index(obs: CellKind, last_action: Action) -> int:
    """Stable bijection from the 24 (observation, last action) pairs to 0..23."""
    return int(obs) * N_ACTIONS + int(last_action)


def context_label(index: int) -> str:
    return f"{_KIND_LABELS[index // N_ACTIONS]},{_ACTION_LABELS[index % N_ACTIONS]}"


class ContextStats:
    """Visit counts T[c, a] for each context/action pair."""

    __slots__ = ("counts",)

    def __init__(self, counts: np.ndarray | None = None):
        self.counts = (
            np.zeros((N_CONTEXTS, N_ACTIONS), dtype=np.int64)
            if counts is None
            else counts
        )

    def copy(self) -> "ContextStats":
        return ContextStats(self.counts.copy())

    def update(self, context: int, action: Action) -> None:
        self.counts[context, int(action)] += 1

    def total(self, context: int) -> int:
        return int(self.counts[context].sum())

    def map_action(self, context: int) -> Action:
        """Most-seen action in a context (posterior mode over devices)."""
        return Action(int(self.counts[context].argmax()))


def predictive(stats: ContextStats, context: int, action: Action) -> float:
    """One-step posterior predictive, Laplace rule (T_ca + 1) / (T_c + A)."""
    return (stats.counts[context, int(action)] + 1.0) / (stats.total(context) + N_ACTIONS)


def context_sequence(traj: Trajectory) -> list[int]:
    """Context active before each action of the trajectory.

    The context for step t is (x_{t-1}, y_{t-1}); before the first step the
    system faces in the INITIAL_ACTION direction from the start cell.
    """
    first_obs = observe(traj.grid, traj.start, INITIAL_ACTION)
    contexts = [context_index(first_obs, INITIAL_ACTION)]
    for t in range(1, len(traj)):
        contexts.append(context_index(traj.observations[t - 1], traj.actions[t - 1]))
    return contexts


class DeviceScorer:
    """Sequential device-mixture scorer; nll is in nats and only ever grows."""

    def __init__(self):
        self.stats = ContextStats()
        self.nll = 0.0

    def advance(self, context: int, action: Action) -> float:
        """Score one step and fold it into the counts; returns the step NLL."""
        p = predictive(self.stats, context, action)
        step_nll = -math.log(p)
        self.nll += step_nll
        self.stats.update(context, action)
        return step_nll


def log_marginal(traj: Trajectory) -> float:
    """Negative log likelihood of the action sequence under the device mixture."""
    scorer = DeviceScorer()
    for context, action in zip(context_sequence(traj), traj.actions):
        scorer.advance(context, action)
    return scorer.nll


def log_marginal_batch(stats: ContextStats) -> float:
    """Closed-form NLL from final counts: -sum_c ln[(A-1)! prod_i T_ci!/(T_c+A-1)!]."""
    counts = stats.counts
    totals = counts.sum(axis=1)
    log_like = (
        math.lgamma(N_ACTIONS)  # (A-1)!
        + gammaln(counts + 1.0).sum(axis=1)
        - gammaln(totals + N_ACTIONS)
    )
    return float(-log_like.sum())


def stats_of(traj: Trajectory) -> ContextStats:
    stats = ContextStats()
    for context, action in zip(context_sequence(traj), traj.actions):
        stats.update(context, action)
    return stats


def context_hits_csv(stats: ContextStats) -> str:
    """Context-hit table as CSV: 24 labeled rows x 4 action columns, 0 as '-'."""
    lines = ["context," + ",".join(_ACTION_LABELS)]
    for c in range(N_CONTEXTS):
        row = ["-" if n == 0 else str(int(n)) for n in stats.counts[c]]
        lines.append(f'"{context_label(c)}",' + ",".join(row))
    return "\n".join(lines) + "\n"
