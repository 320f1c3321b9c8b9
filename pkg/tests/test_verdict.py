import json
import math

import pytest

from agency import behaviors, scenarios
from agency.gridworld import Action, CellKind, parse_map, replay
from agency.maps import default_map
from agency.planner import solve_all
from agency.verdict import (
    TrajectoryScorer,
    UndefinedPosteriorError,
    assess,
    combine,
    goal_posterior,
)

GRID = default_map()
PLANS = solve_all(GRID, 0.99)


def test_combine_equal_nlls_is_even():
    assert combine(12.5, 12.5) == (0.5, 0.5)


def test_combine_logistic_gap():
    post_dev, post_agt = combine(math.log(9), 0.0)
    assert post_agt == pytest.approx(0.9, rel=1e-12)
    assert post_dev == pytest.approx(0.1, rel=1e-12)


def test_combine_with_impossible_agent():
    assert combine(3.0, math.inf) == (1.0, 0.0)
    assert combine(math.inf, 3.0) == (0.0, 1.0)


def test_combine_rejects_double_zero():
    with pytest.raises(UndefinedPosteriorError):
        combine(math.inf, math.inf)


def test_goal_posteriors_sum_with_device_to_one():
    traj = behaviors.goal_seeker(GRID, CellKind.MAGENTA, steps=11, epsilon=0.0, seed=0)
    rep = assess(traj)
    total = rep.posterior_dev + sum(rep.goal_posteriors.values())
    assert total == pytest.approx(1.0, abs=1e-12)


def test_symmetric_goals_get_equal_posterior():
    grid = parse_map("#####\n#R.G#\n#.A.#\n#####")
    plans = solve_all(grid, 0.99)
    posts = goal_posterior(replay(grid, [Action.UP]), plans)
    assert posts[CellKind.RED] == pytest.approx(posts[CellKind.GREEN], abs=1e-12)


def test_straight_magenta_run_makes_magenta_top_goal():
    traj = behaviors.goal_seeker(GRID, CellKind.MAGENTA, steps=11, epsilon=0.0, seed=0)
    posts = goal_posterior(traj, PLANS)
    assert max(posts, key=posts.get) == CellKind.MAGENTA


def test_circle_gives_goals_less_mass_than_device():
    rep = assess(behaviors.circle(GRID, 25))
    assert sum(rep.goal_posteriors.values()) < rep.posterior_dev


def test_assess_scenario_orderings():
    circle = assess(behaviors.circle(GRID, 25))
    assert circle.posterior_dev > circle.posterior_agt

    magenta = assess(
        behaviors.goal_seeker(GRID, CellKind.MAGENTA, steps=11, epsilon=0.0, seed=0)
    )
    assert magenta.posterior_agt > magenta.posterior_dev

    walls = assess(behaviors.follow_walls(GRID, 60))
    assert walls.posterior_dev > walls.posterior_agt


def test_report_invariants():
    rep = assess(behaviors.random_walk(GRID, 40, seed=2))
    assert rep.posterior_dev + rep.posterior_agt == pytest.approx(1.0, abs=1e-12)
    assert rep.neg_log_posterior_agt == pytest.approx(
        -math.log(rep.posterior_agt), abs=1e-12
    )
    assert rep.neg_log_posterior_dev == pytest.approx(
        -math.log(rep.posterior_dev), abs=1e-12
    )
    assert len(rep.posterior_agt_trace) == 40
    assert len(rep.goal_posterior_trace) == 41
    assert rep.steps == 40


def test_final_trace_entry_matches_batch_posterior():
    for switching in (False, True):
        traj = behaviors.switching_seeker(
            GRID, CellKind.MAGENTA, CellKind.GREEN, switch_step=10, steps=27, seed=1
        )
        rep = assess(traj, switching=switching)
        assert rep.posterior_agt_trace[-1] == pytest.approx(
            rep.posterior_agt, abs=1e-10
        )


def test_nll_traces_are_monotone():
    rep = assess(behaviors.random_walk(GRID, 80, seed=5), switching=True)
    for trace in (rep.nll_dev_trace, rep.nll_agt_trace):
        assert all(b >= a - 1e-9 for a, b in zip(trace, trace[1:]))


def test_incremental_scorer_matches_assess():
    traj = behaviors.suboptimal_route(GRID, CellKind.BLUE, detours=15, seed=0)
    scorer = TrajectoryScorer(GRID)
    last = None
    for action in traj.actions:
        last = scorer.step(action)
    rep = assess(traj)
    assert last.posterior_agt == pytest.approx(rep.posterior_agt, abs=1e-10)
    assert last.nll_dev == pytest.approx(rep.nll_dev, abs=1e-10)
    assert last.position == traj.positions[-1]


def test_report_json_round_trip():
    rep = assess(behaviors.circle(GRID, 10))
    doc = json.loads(rep.to_json())
    assert doc["steps"] == 10
    assert doc["config"] == {"switching": False, "gamma": 0.99, "n_eps": 50}
    assert set(doc["goal_posteriors"]) == {"red", "green", "blue", "magenta"}
    assert len(doc["context_hits"]) == 24
    assert doc["actions"] == rep.actions


def test_render_table_mentions_all_three_rows():
    rep = assess(behaviors.circle(GRID, 10))
    table = rep.render_table()
    assert "M_dev" in table and "M_agt" in table
    for row in ("v1", "v2", "v3"):
        assert row in table


def test_assess_handles_an_unreachable_goal():
    # blue is walled off: its action sets are all-4 everywhere, so every step
    # counts as greedy with an empty complement; scoring must stay finite
    grid = parse_map("#######\n#A.#.B#\n#..#..#\n#G.#..#\n#######")
    traj = replay(grid, [Action.DOWN, Action.DOWN])
    rep = assess(traj)
    assert math.isfinite(rep.nll_agt) and math.isfinite(rep.nll_dev)
    assert rep.goal_posteriors[CellKind.GREEN] > rep.goal_posteriors[CellKind.BLUE]


def test_fully_antigreedy_seeker_scores_finite():
    traj = behaviors.goal_seeker(GRID, CellKind.MAGENTA, steps=15, epsilon=1.0, seed=2)
    rep = assess(traj, switching=True)
    assert math.isfinite(rep.nll_agt)
    assert rep.posterior_dev + rep.posterior_agt == pytest.approx(1.0, abs=1e-12)


def test_scenarios_build_with_expected_lengths():
    assert len(scenarios.build("circle").trajectory) == 25
    assert len(scenarios.build("epsblue").trajectory) == 66
    assert len(scenarios.build("random").trajectory) == 100
    assert scenarios.build("switchB").switching is True
    with pytest.raises(ValueError, match="unknown scenario"):
        scenarios.build("juggling")
