"""Switching-prior agent mixture over goal policies.

Exploration does not integrate out once the pursued goal may change
mid-trajectory, so a fixed grid of exploration rates is used instead: for
each rate, a switching mixture tracks the four goal policies, moving to a
fresh goal with probability 1/(t+1) at step t (the simplified update rule,
whose extra loss per switch is log(t+1) + log of the policy-set size). The
outer mixture over the grid is uniform.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import logsumexp

from .agent_model import GreedyProfile, greedy_profile, log_policy_eps
from .gridworld import CellKind, Trajectory
from .planner import GoalPlan

N_ACTIONS = 4
N_EPS_DEFAULT = 50


def eps_grid(n_eps: int = N_EPS_DEFAULT) -> np.ndarray:
    """The rate grid k/(n_eps-1), k = 0..n_eps-1; includes both endpoints."""
    if n_eps < 2:
        raise ValueError(f"need at least 2 grid points, got {n_eps}")
    return np.arange(n_eps) / (n_eps - 1)


class SwitchScorer:
    """Per-rate switching mixtures over goal policies, advanced step by step.

    State per rate component: a weight vector over the goal policies (starts
    uniform, always sums to 1) and a cumulative log likelihood. A component
    whose one-step mixture probability hits exactly 0 (only possible at the
    grid endpoints) is carried as -inf and its weights reset to uniform.
    """

    def __init__(self, colors: list[CellKind], n_eps: int = N_EPS_DEFAULT):
        if not colors:
            raise ValueError("switching mixture needs at least one goal policy")
        self.colors = list(colors)
        self.eps = eps_grid(n_eps)[:, None]        # (n_eps, 1)
        n_goals = len(colors)
        self.weights = np.full((n_eps, n_goals), 1.0 / n_goals)
        self.cum_log = np.zeros(n_eps)
        self.t = 1

    @property
    def n_eps(self) -> int:
        return self.eps.shape[0]

    def advance(self, step_info: dict[CellKind, tuple[int, bool]]) -> np.ndarray:
        """Fold in one step; step_info maps color -> (|A*|, greedy).

        Returns the per-rate one-step mixture probabilities.
        """
        probs = np.empty((self.n_eps, len(self.colors)))
        for g, color in enumerate(self.colors):
            size, is_greedy = step_info[color]
            if is_greedy:
                probs[:, g] = (1.0 - self.eps[:, 0]) / size
            else:
                probs[:, g] = self.eps[:, 0] / (N_ACTIONS - size)

        switch = (self.weights * probs).sum(axis=1)
        dead = switch == 0.0
        with np.errstate(divide="ignore"):
            self.cum_log += np.where(dead, -np.inf, np.log(np.where(dead, 1.0, switch)))

        t = self.t
        live = ~dead
        uniform = 1.0 / len(self.colors)
        self.weights[live] = (
            (t / (t + 1.0))
            * self.weights[live] * probs[live] / switch[live, None]
            + uniform / (t + 1.0)
        )
        self.weights[dead] = uniform
        self.t += 1
        return switch

    @property
    def nll(self) -> float:
        """NLL of the uniform mixture over the rate grid."""
        return -float(logsumexp(self.cum_log - math.log(self.n_eps)))

    def goal_posterior(self) -> np.ndarray:
        """Posterior over current goals: rate components weighted by evidence."""
        log_omega = self.cum_log - logsumexp(self.cum_log)
        omega = np.exp(log_omega)
        return omega @ self.weights


def _step_infos(
    traj: Trajectory, plans: dict[CellKind, GoalPlan]
) -> list[dict[CellKind, tuple[int, bool]]]:
    profiles = {color: greedy_profile(traj, plan) for color, plan in plans.items()}
    return [
        {color: (p.sizes[t], p.greedy[t]) for color, p in profiles.items()}
        for t in range(len(traj))
    ]


def switching_log_likelihood(
    traj: Trajectory, plans: dict[CellKind, GoalPlan], n_eps: int = N_EPS_DEFAULT
) -> float:
    """NLL of the trajectory under the switching agent mixture, in nats."""
    scorer = SwitchScorer(sorted(plans), n_eps)
    for info in _step_infos(traj, plans):
        scorer.advance(info)
    return scorer.nll


def goal_posterior_trace(
    traj: Trajectory, plans: dict[CellKind, GoalPlan], n_eps: int = N_EPS_DEFAULT
) -> np.ndarray:
    """(T+1, n_goals) matrix of per-goal posteriors, row 0 being the prior."""
    scorer = SwitchScorer(sorted(plans), n_eps)
    rows = [scorer.goal_posterior()]
    for info in _step_infos(traj, plans):
        scorer.advance(info)
        rows.append(scorer.goal_posterior())
    return np.vstack(rows)


def log_grid_mixture_single_goal(profile: GreedyProfile, n_eps: int) -> float:
    """Rate-grid mixture of one goal's product policy (no switching).

    Used to compare the discretized mixture against the exact integrated
    form; the gap shrinks as the grid is refined.
    """
    terms = [log_policy_eps(profile, e) for e in eps_grid(n_eps)]
    return float(logsumexp(terms) - math.log(n_eps))


def goal_trace_csv(trace: np.ndarray, colors: list[CellKind]) -> str:
    """Goal-posterior trace as CSV with columns (t, <color names>)."""
    header = "t," + ",".join(c.name.lower() for c in colors)
    lines = [header]
    for t, row in enumerate(trace):
        lines.append(f"{t}," + ",".join(f"{x:.12g}" for x in row))
    return "\n".join(lines) + "\n"
