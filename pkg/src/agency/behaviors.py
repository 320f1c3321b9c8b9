"""Built-in behaviour generators: circling, wall following, random walks,
and (possibly goal-switching) epsilon-greedy seekers."""
from __future__ import annotations

import random

from .gridworld import (
    INITIAL_ACTION,
    Action,
    CellKind,
    GridMap,
    Trajectory,
    observe,
    replay,
    step,
)
from .planner import DEFAULT_GAMMA, bfs_distances, optimal_actions, solve_goal

_CIRCLE_PATTERN = (
    Action.RIGHT, Action.RIGHT, Action.DOWN, Action.DOWN,
    Action.LEFT, Action.LEFT, Action.UP, Action.UP,
)

# Wall ahead -> turn; anything else -> keep going (the wall-following device).
_WALL_TURN = {
    Action.UP: Action.LEFT,
    Action.DOWN: Action.RIGHT,
    Action.LEFT: Action.DOWN,
    Action.RIGHT: Action.UP,
}


def circle(grid: GridMap, steps: int = 25) -> Trajectory:
    """Loop clockwise around a 3x3 block, starting from the start cell."""
    actions = [_CIRCLE_PATTERN[t % len(_CIRCLE_PATTERN)] for t in range(steps)]
    return replay(grid, actions)


def follow_walls(grid: GridMap, steps: int = 60) -> Trajectory:
    """Deterministic wall follower: go straight, turn when facing a wall."""
    pos = grid.start
    last = INITIAL_ACTION
    actions = []
    for _ in range(steps):
        faced = observe(grid, pos, last)
        action = _WALL_TURN[last] if faced == CellKind.WALL else last
        actions.append(action)
        pos = step(grid, pos, action)
        last = action
    return replay(grid, actions)


def random_walk(grid: GridMap, steps: int = 100, seed: int = 0) -> Trajectory:
    """Uniformly random actions; deterministic for a given seed."""
    rng = random.Random(seed)
    actions = [Action(rng.randrange(4)) for _ in range(steps)]
    return replay(grid, actions)


def _eps_greedy_action(
    rng: random.Random, best: frozenset[Action], epsilon: float
) -> Action:
    others = [a for a in Action if a not in best]
    if others and rng.random() < epsilon:
        return rng.choice(others)
    return rng.choice(sorted(best))


def goal_seeker(
    grid: GridMap,
    color: CellKind,
    steps: int,
    epsilon: float = 0.0,
    seed: int = 0,
    gamma: float = DEFAULT_GAMMA,
) -> Trajectory:
    """Epsilon-greedy seeker: optimal action with prob 1-epsilon, else a
    uniformly random non-optimal one."""
    plan = solve_goal(grid, color, gamma)
    rng = random.Random(seed)
    pos = grid.start
    actions = []
    for _ in range(steps):
        action = _eps_greedy_action(rng, optimal_actions(plan, pos), epsilon)
        actions.append(action)
        pos = step(grid, pos, action)
    return replay(grid, actions)


def switching_seeker(
    grid: GridMap,
    color1: CellKind,
    color2: CellKind,
    switch_step: int,
    steps: int,
    epsilon: float = 0.0,
    seed: int = 0,
    gamma: float = DEFAULT_GAMMA,
) -> Trajectory:
    """Seeker that pursues color1 for switch_step steps, then color2."""
    plan1 = solve_goal(grid, color1, gamma)
    plan2 = solve_goal(grid, color2, gamma)
    rng = random.Random(seed)
    pos = grid.start
    actions = []
    for t in range(steps):
        plan = plan1 if t < switch_step else plan2
        action = _eps_greedy_action(rng, optimal_actions(plan, pos), epsilon)
        actions.append(action)
        pos = step(grid, pos, action)
    return replay(grid, actions)


def suboptimal_route(
    grid: GridMap,
    color: CellKind,
    detours: int,
    seed: int = 0,
) -> Trajectory:
    """A route to the goal that wastes exactly 2*detours steps.

    Walks the shortest path but occasionally steps onto a strictly-farther
    open cell before resuming; the walk re-covers each detour, so the total
    length is the shortest distance plus twice the detour count.
    """
    goal = grid.goal_cell(color)
    dist = bfs_distances(grid, goal)
    if dist[grid.start] == float("inf"):
        raise ValueError(f"{color.name.lower()} balloon unreachable from start")
    rng = random.Random(seed)
    pos = grid.start
    actions: list[Action] = []
    remaining = detours
    while pos != goal:
        away = [
            a for a in Action
            if step(grid, pos, a) != pos and dist[step(grid, pos, a)] == dist[pos] + 1
        ]
        # Spread detours over the walk; the odds reach 1 as the goal nears so
        # the full budget is always spent.
        spend = (
            remaining
            and away
            and rng.random() < 2.0 * remaining / (2.0 * remaining + dist[pos] - 1.0)
        )
        if spend:
            action = rng.choice(away)
            remaining -= 1
        else:
            action = next(
                a for a in Action
                if step(grid, pos, a) != pos and dist[step(grid, pos, a)] == dist[pos] - 1
            )
        actions.append(action)
        pos = step(grid, pos, action)
    return replay(grid, actions)


def generate_behavior(kind: str, grid: GridMap, **params) -> Trajectory:
    """Dispatch by generator name.

    Kinds: circle, follow_walls, random, goal_seeker, switching_seeker.
    """
    generators = {
        "circle": circle,
        "follow_walls": follow_walls,
        "random": random_walk,
        "goal_seeker": goal_seeker,
        "switching_seeker": switching_seeker,
    }
    if kind not in generators:
        raise ValueError(f"unknown behavior kind {kind!r}")
    return generators[kind](grid, **params)
