"""Agent-stance likelihood: epsilon-greedy goal policies and their mixtures.

A goal agent takes an optimal action with probability 1-eps (uniform over the
optimal set) and otherwise a uniform non-optimal action. A trajectory's
likelihood under that policy depends only on how many steps were greedy and
the sizes of the optimal sets, so the exploration rate integrates out in
closed form via the Beta function:

    prod_greedy 1/|A*_k| * prod_miss 1/(4-|A*_k|) * 1/(T+1) * C(T, T+)^-1

The agent mixture averages the integrated likelihood uniformly over goals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.special import logsumexp

from .gridworld import CellKind, Trajectory
from .planner import GoalPlan, optimal_actions

N_ACTIONS = 4


@dataclass
class GreedyProfile:
    """Per-step optimal-set sizes and greedy flags for one goal, plus totals."""

    sizes: list[int] = field(default_factory=list)
    greedy: list[bool] = field(default_factory=list)
    t_plus: int = 0
    t_minus: int = 0
    log_size_greedy: float = 0.0   # sum of ln|A*_k| over greedy steps
    log_size_miss: float = 0.0     # sum of ln(4-|A*_k|) over non-greedy steps

    def record(self, size: int, is_greedy: bool) -> None:
        if not 1 <= size <= N_ACTIONS:
            raise ValueError(f"optimal-set size out of range: {size}")
        if not is_greedy and size == N_ACTIONS:
            raise ValueError("non-greedy step impossible when all actions are optimal")
        self.sizes.append(size)
        self.greedy.append(is_greedy)
        if is_greedy:
            self.t_plus += 1
            self.log_size_greedy += math.log(size)
        else:
            self.t_minus += 1
            self.log_size_miss += math.log(N_ACTIONS - size)

    @property
    def steps(self) -> int:
        return self.t_plus + self.t_minus


def greedy_profile(traj: Trajectory, plan: GoalPlan) -> GreedyProfile:
    """Classify each step of `traj` against the goal's optimal-action sets.

    The action at step t is checked at the pre-action position positions[t-1].
    """
    profile = GreedyProfile()
    for t, action in enumerate(traj.actions):
        best = optimal_actions(plan, traj.positions[t])
        profile.record(len(best), action in best)
    return profile


def log_policy_eps(profile: GreedyProfile, eps: float) -> float:
    """Log likelihood of the profile under a fixed exploration rate.

    Returns -inf when eps makes an observed step impossible (eps=0 with a
    non-greedy step or eps=1 with a greedy step).
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must be in [0,1], got {eps}")
    if eps == 0.0 and profile.t_minus > 0:
        return -math.inf
    if eps == 1.0 and profile.t_plus > 0:
        return -math.inf
    total = -profile.log_size_greedy - profile.log_size_miss
    if profile.t_plus:
        total += profile.t_plus * math.log1p(-eps)
    if profile.t_minus:
        total += profile.t_minus * math.log(eps)
    return total


def log_policy_integrated(profile: GreedyProfile) -> float:
    """Log likelihood with the exploration rate integrated out (uniform prior)."""
    t = profile.steps
    log_binom = (
        math.lgamma(t + 1)
        - math.lgamma(profile.t_plus + 1)
        - math.lgamma(profile.t_minus + 1)
    )
    return (
        -profile.log_size_greedy
        - profile.log_size_miss
        - math.log(t + 1)
        - log_binom
    )


def map_epsilon(profile: GreedyProfile) -> float:
    """Maximum-likelihood exploration rate: the non-greedy step fraction."""
    if profile.steps < 1:
        raise ValueError("empty profile has no maximum-likelihood rate")
    return profile.t_minus / profile.steps


def log_mixture_from_profiles(profiles: dict[CellKind, GreedyProfile]) -> float:
    """Log likelihood of the uniform goal mixture given per-goal profiles."""
    if not profiles:
        raise ValueError("goal mixture needs at least one goal")
    terms = [
        -math.log(len(profiles)) + log_policy_integrated(p) for p in profiles.values()
    ]
    return float(logsumexp(terms))


def log_mixture_goals(traj: Trajectory, plans: dict[CellKind, GoalPlan]) -> float:
    """Log likelihood of the trajectory under the uniform mixture over goals."""
    profiles = {color: greedy_profile(traj, plan) for color, plan in plans.items()}
    return log_mixture_from_profiles(profiles)


class AgentScorer:
    """Sequential goal-mixture scorer built from running greedy profiles."""

    def __init__(self, colors: list[CellKind]):
        if not colors:
            raise ValueError("goal mixture needs at least one goal")
        self.profiles: dict[CellKind, GreedyProfile] = {
            color: GreedyProfile() for color in colors
        }

    def advance(self, step_info: dict[CellKind, tuple[int, bool]]) -> None:
        """Fold in one step; step_info maps color -> (|A*|, greedy)."""
        for color, (size, is_greedy) in step_info.items():
            self.profiles[color].record(size, is_greedy)

    @property
    def nll(self) -> float:
        return -log_mixture_from_profiles(self.profiles)

    def goal_log_likelihoods(self) -> dict[CellKind, float]:
        return {c: log_policy_integrated(p) for c, p in self.profiles.items()}
