"""Combine device and agent likelihoods into stance posteriors and reports.

The two mixtures get equal prior weight; everything downstream is computed
from log quantities because trajectory likelihoods underflow quickly (a
100-step trajectory sits near e^-140).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from . import device_model
from .agent_model import AgentScorer, greedy_profile, log_policy_integrated
from .device_model import DeviceScorer, context_index
from .gridworld import (
    INITIAL_ACTION,
    Action,
    CellKind,
    GridMap,
    Trajectory,
    observe,
    step,
)
from .planner import DEFAULT_GAMMA, optimal_actions, solve_all
from .switch_mixture import N_EPS_DEFAULT, SwitchScorer


class UndefinedPosteriorError(ValueError):
    """Both mixtures assign probability zero, so no posterior exists."""


def combine(nll_dev: float, nll_agt: float) -> tuple[float, float]:
    """Posteriors of the two stances from their NLLs, under the half/half prior.

    posterior_agt = 1 / (1 + exp(nll_agt - nll_dev)), computed without ever
    exponentiating the raw likelihoods.
    """
    if math.isinf(nll_dev) and math.isinf(nll_agt):
        raise UndefinedPosteriorError("both mixtures assign zero probability")
    gap = nll_agt - nll_dev  # may be +-inf
    if gap >= 0:
        e = math.exp(-gap)
        post_agt = e / (1.0 + e)
    else:
        post_agt = 1.0 / (1.0 + math.exp(gap))
    return 1.0 - post_agt, post_agt


@dataclass
class StepReadout:
    """What one incremental step reports back."""

    t: int
    position: tuple[int, int]
    observation: CellKind
    nll_dev: float
    nll_agt: float
    posterior_agt: float
    goal_posteriors: dict[CellKind, float]


class TrajectoryScorer:
    """Drives all incremental scorers over a stream of actions.

    Owns the environment bookkeeping (position, last action, faced cell) and
    feeds the device scorer its contexts and the agent scorers their
    optimal-set memberships. State after T steps matches batch assessment of
    the same prefix exactly.
    """

    def __init__(
        self,
        grid: GridMap,
        switching: bool = False,
        gamma: float = DEFAULT_GAMMA,
        n_eps: int = N_EPS_DEFAULT,
    ):
        self.grid = grid
        self.switching = switching
        self.gamma = gamma
        self.n_eps = n_eps
        self.plans = solve_all(grid, gamma)
        self.colors = sorted(self.plans)
        self.pos = grid.start
        self.last_action = INITIAL_ACTION
        self.faced = observe(grid, grid.start, INITIAL_ACTION)
        self.t = 0
        self.device = DeviceScorer()
        self.agent = AgentScorer(self.colors)
        self.switch = SwitchScorer(self.colors, n_eps)

    @property
    def nll_agt(self) -> float:
        return self.switch.nll if self.switching else self.agent.nll

    def goal_posteriors(self) -> dict[CellKind, float]:
        """Posterior over goals conditional on the agent stance (sums to 1)."""
        if self.switching:
            vec = self.switch.goal_posterior()
            return {c: float(p) for c, p in zip(self.colors, vec)}
        logs = np.array(
            [log_policy_integrated(self.agent.profiles[c]) for c in self.colors]
        )
        vec = np.exp(logs - logsumexp(logs))
        vec /= vec.sum()
        return {c: float(p) for c, p in zip(self.colors, vec)}

    def step(self, action: Action) -> StepReadout:
        context = context_index(self.faced, self.last_action)
        self.device.advance(context, action)

        pre_pos = self.pos
        info = {}
        for color in self.colors:
            best = optimal_actions(self.plans[color], pre_pos)
            info[color] = (len(best), action in best)
        self.agent.advance(info)
        self.switch.advance(info)

        self.pos = step(self.grid, pre_pos, action)
        self.last_action = action
        self.faced = observe(self.grid, self.pos, action)
        self.t += 1

        _, post_agt = combine(self.device.nll, self.nll_agt)
        return StepReadout(
            t=self.t,
            position=self.pos,
            observation=self.faced,
            nll_dev=self.device.nll,
            nll_agt=self.nll_agt,
            posterior_agt=post_agt,
            goal_posteriors=self.goal_posteriors(),
        )


@dataclass
class VerdictReport:
    """Final and per-step quantities for one trajectory."""

    nll_dev: float
    nll_agt: float
    posterior_dev: float
    posterior_agt: float
    neg_log_posterior_dev: float
    neg_log_posterior_agt: float
    steps: int
    actions: str
    switching: bool
    gamma: float
    n_eps: int
    nll_dev_trace: list[float]
    nll_agt_trace: list[float]
    posterior_agt_trace: list[float]
    goal_colors: list[CellKind]
    goal_posterior_trace: list[list[float]] = field(repr=False)
    goal_posteriors: dict[CellKind, float] = field(default_factory=dict)
    context_hits: list[list[int]] = field(default_factory=list, repr=False)

    def to_json(self, indent: int | None = 2) -> str:
        doc = {
            "nll_dev": self.nll_dev,
            "nll_agt": self.nll_agt,
            "posterior_dev": self.posterior_dev,
            "posterior_agt": self.posterior_agt,
            "neg_log_posterior_dev": self.neg_log_posterior_dev,
            "neg_log_posterior_agt": self.neg_log_posterior_agt,
            "steps": self.steps,
            "actions": self.actions,
            "config": {
                "switching": self.switching,
                "gamma": self.gamma,
                "n_eps": self.n_eps,
            },
            "nll_dev_trace": self.nll_dev_trace,
            "nll_agt_trace": self.nll_agt_trace,
            "posterior_agt_trace": self.posterior_agt_trace,
            "goal_colors": [c.name.lower() for c in self.goal_colors],
            "goal_posterior_trace": self.goal_posterior_trace,
            "goal_posteriors": {
                c.name.lower(): p for c, p in self.goal_posteriors.items()
            },
            "context_hits": self.context_hits,
        }
        return json.dumps(doc, indent=indent)

    def render_table(self) -> str:
        """The three report rows (NLL, posterior, -ln posterior) per mixture."""
        rows = [
            ("v1 (NLL, nats)", self.nll_dev, self.nll_agt),
            ("v2 (posterior)", self.posterior_dev, self.posterior_agt),
            ("v3 (-ln v2)", self.neg_log_posterior_dev, self.neg_log_posterior_agt),
        ]
        out = [f"{'':16s} {'M_dev':>12s} {'M_agt':>12s}"]
        for label, dev, agt in rows:
            out.append(f"{label:16s} {dev:12.4f} {agt:12.4f}")
        return "\n".join(out)


def goal_posterior(traj: Trajectory, plans) -> dict[CellKind, float]:
    """Absolute per-goal posteriors (they sum with posterior_dev to 1)."""
    nll_dev = device_model.log_marginal(traj)
    colors = sorted(plans)
    goal_logs = {}
    for color in colors:
        goal_logs[color] = log_policy_integrated(greedy_profile(traj, plans[color]))
    log_terms = [math.log(0.5) - nll_dev] + [
        math.log(0.5) - math.log(len(colors)) + goal_logs[c] for c in colors
    ]
    log_sys = float(logsumexp(log_terms))
    return {
        c: math.exp(math.log(0.5) - math.log(len(colors)) + goal_logs[c] - log_sys)
        for c in colors
    }


def assess(
    traj: Trajectory,
    switching: bool = False,
    gamma: float = DEFAULT_GAMMA,
    n_eps: int = N_EPS_DEFAULT,
) -> VerdictReport:
    """Full report for a trajectory: final values plus incremental traces."""
    scorer = TrajectoryScorer(traj.grid, switching=switching, gamma=gamma, n_eps=n_eps)
    nll_dev_trace: list[float] = []
    nll_agt_trace: list[float] = []
    post_trace: list[float] = []
    first = scorer.goal_posteriors()
    goal_trace: list[list[float]] = [[first[c] for c in scorer.colors]]
    for action in traj.actions:
        readout = scorer.step(action)
        nll_dev_trace.append(readout.nll_dev)
        nll_agt_trace.append(readout.nll_agt)
        post_trace.append(readout.posterior_agt)
        goal_trace.append([readout.goal_posteriors[c] for c in scorer.colors])

    nll_dev = scorer.device.nll
    nll_agt = scorer.nll_agt
    post_dev, post_agt = combine(nll_dev, nll_agt)
    return VerdictReport(
        nll_dev=nll_dev,
        nll_agt=nll_agt,
        posterior_dev=post_dev,
        posterior_agt=post_agt,
        neg_log_posterior_dev=-math.log(post_dev) if post_dev > 0 else math.inf,
        neg_log_posterior_agt=-math.log(post_agt) if post_agt > 0 else math.inf,
        steps=len(traj),
        actions=traj.action_string,
        switching=switching,
        gamma=gamma,
        n_eps=n_eps,
        nll_dev_trace=nll_dev_trace,
        nll_agt_trace=nll_agt_trace,
        posterior_agt_trace=post_trace,
        goal_colors=scorer.colors,
        goal_posterior_trace=goal_trace,
        goal_posteriors=goal_posterior(traj, scorer.plans),
        context_hits=[[int(n) for n in row] for row in scorer.device.stats.counts],
    )
