import math

import numpy as np
import pytest

from agency import behaviors
from agency.agent_model import greedy_profile, log_policy_eps, log_policy_integrated
from agency.gridworld import CellKind, parse_map, replay, Action
from agency.maps import default_map
from agency.switch_mixture import (
    SwitchScorer,
    eps_grid,
    goal_posterior_trace,
    goal_trace_csv,
    log_grid_mixture_single_goal,
    switching_log_likelihood,
)
from agency.planner import solve_all

GRID = default_map()
PLANS = solve_all(GRID, 0.99)
COLORS = sorted(PLANS)


def test_eps_grid_includes_both_endpoints():
    grid = eps_grid(50)
    assert grid[0] == 0.0 and grid[-1] == 1.0
    assert len(grid) == 50


def test_switch_step_hand_example():
    # two policies with step probabilities (1, 0) at rate 0 and weights
    # (1/2, 1/2): the mixture probability is 1/2 and the new weights (3/4, 1/4)
    scorer = SwitchScorer([CellKind.RED, CellKind.GREEN], n_eps=2)
    switch = scorer.advance(
        {CellKind.RED: (1, True), CellKind.GREEN: (1, False)}
    )
    assert switch[0] == pytest.approx(0.5)  # eps = 0 component
    assert scorer.weights[0].tolist() == pytest.approx([0.75, 0.25])


def test_single_policy_switch_keeps_weight_one():
    scorer = SwitchScorer([CellKind.BLUE], n_eps=3)
    switch = scorer.advance({CellKind.BLUE: (2, True)})
    # per-rate probability is (1-eps)/2
    assert switch == pytest.approx((1 - eps_grid(3)) / 2)
    assert np.allclose(scorer.weights, 1.0)


def test_equal_probabilities_leave_weights_unchanged():
    scorer = SwitchScorer(COLORS, n_eps=5)
    scorer.advance({c: (2, True) for c in COLORS})
    assert np.allclose(scorer.weights, 0.25)


def test_weights_stay_normalized():
    traj = behaviors.random_walk(GRID, 200, seed=6)
    scorer = SwitchScorer(COLORS, n_eps=50)
    for t in range(len(traj)):
        info = {
            c: (
                len(PLANS[c].action_sets[traj.positions[t]]),
                traj.actions[t] in PLANS[c].action_sets[traj.positions[t]],
            )
            for c in COLORS
        }
        scorer.advance(info)
        assert np.abs(scorer.weights.sum(axis=1) - 1.0).max() < 1e-12


def test_first_step_equals_plain_grid_mixture():
    traj = behaviors.goal_seeker(GRID, CellKind.GREEN, steps=1, epsilon=0.0, seed=0)
    nll_switch = switching_log_likelihood(traj, PLANS, 50)
    probs = []
    for e in eps_grid(50):
        for c in COLORS:
            prof = greedy_profile(traj, PLANS[c])
            probs.append(math.log(1 / 50) + math.log(1 / 4) + log_policy_eps(prof, float(e)))
    from scipy.special import logsumexp

    assert nll_switch == pytest.approx(-float(logsumexp(probs)), abs=1e-10)


def test_no_switch_regret_bound():
    grid_eps = eps_grid(50)
    for i in range(20):
        color = COLORS[i % len(COLORS)]
        eps = float(grid_eps[(7 * i) % 50])
        steps = 20 + 3 * i
        traj = behaviors.goal_seeker(GRID, color, steps=steps, epsilon=eps, seed=100 + i)
        nll_switch = switching_log_likelihood(traj, PLANS, 50)
        best = min(
            -log_policy_eps(greedy_profile(traj, PLANS[c]), float(e))
            for c in COLORS
            for e in grid_eps
        )
        bound = math.log(steps + 1) + math.log(4) + math.log(50)
        assert nll_switch - best <= bound + 1e-9


def test_grid_mixture_approaches_exact_integral():
    traj = behaviors.goal_seeker(GRID, CellKind.BLUE, steps=40, epsilon=0.2, seed=7)
    prof = greedy_profile(traj, PLANS[CellKind.BLUE])
    exact = log_policy_integrated(prof)
    gaps = {
        n: abs(log_grid_mixture_single_goal(prof, n) - exact) for n in (10, 50, 200)
    }
    for n, gap in gaps.items():
        assert gap <= math.log(n) + 1.0
    assert gaps[200] <= gaps[50] <= gaps[10]


def test_goal_trace_prior_row_is_uniform():
    traj = behaviors.random_walk(GRID, 10, seed=1)
    trace = goal_posterior_trace(traj, PLANS, 50)
    assert trace.shape == (11, 4)
    assert trace[0].tolist() == pytest.approx([0.25] * 4)
    assert np.allclose(trace.sum(axis=1), 1.0, atol=1e-10)


def test_long_greedy_run_concentrates_on_its_goal():
    traj = behaviors.goal_seeker(GRID, CellKind.BLUE, steps=36, epsilon=0.0, seed=3)
    trace = goal_posterior_trace(traj, PLANS, 50)
    assert trace[-1][COLORS.index(CellKind.BLUE)] > 0.9
    # the much nearer green balloon still ends up the clear favorite
    short = behaviors.goal_seeker(GRID, CellKind.GREEN, steps=7, epsilon=0.0, seed=3)
    short_trace = goal_posterior_trace(short, PLANS, 50)
    assert int(short_trace[-1].argmax()) == COLORS.index(CellKind.GREEN)


def test_symmetric_two_goal_start_ties():
    grid = parse_map("#####\n#R.G#\n#.A.#\n#####")
    plans = solve_all(grid, 0.99)
    traj = replay(grid, [Action.UP])
    trace = goal_posterior_trace(traj, plans, 50)
    colors = sorted(plans)
    r, g = colors.index(CellKind.RED), colors.index(CellKind.GREEN)
    assert trace[-1][r] == pytest.approx(trace[-1][g], abs=1e-12)


def test_dead_rate_components_reset_and_stay_dead():
    # a step no policy can explain at rate 0 kills that component only
    scorer = SwitchScorer(COLORS, n_eps=50)
    scorer.advance({c: (1, False) for c in COLORS})
    assert scorer.cum_log[0] == -math.inf
    assert np.all(np.isfinite(scorer.cum_log[1:]))
    assert np.allclose(scorer.weights[0], 0.25)  # reset to uniform
    scorer.advance({c: (1, True) for c in COLORS})
    assert scorer.cum_log[0] == -math.inf  # once dead, always dead


def test_blocked_move_keeps_switching_likelihood_finite():
    # walk into the top-left room corner, then push into the wall: the
    # blocked move is greedy for no goal, so only the endpoint rates die
    traj = replay(GRID, [Action.LEFT] * 4 + [Action.UP] * 3)
    assert traj.positions[-1] == (1, 1)
    nll = switching_log_likelihood(traj, PLANS, 50)
    assert math.isfinite(nll)


def test_goal_trace_csv_layout():
    traj = behaviors.random_walk(GRID, 3, seed=2)
    trace = goal_posterior_trace(traj, PLANS, 50)
    csv = goal_trace_csv(trace, COLORS)
    lines = csv.strip().split("\n")
    assert lines[0] == "t,red,green,blue,magenta"
    assert len(lines) == 5
    assert lines[1].startswith("0,0.25,0.25,0.25,0.25")
