"""Named demonstration scenarios on the shipped map.

Each regenerates a characteristic trajectory: circling in place, a straight
run to the magenta balloon, a suboptimal 66-step route to the blue balloon
(shortest: 36), deterministic wall following, a magenta-then-green goal
switch, and a uniformly random walk. Seeds below are the fixed demo defaults;
all generators accept overrides.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import behaviors
from .gridworld import CellKind, GridMap, Trajectory
from .maps import default_map

SCENARIO_NAMES = ("circle", "magenta", "epsblue", "followwalls", "switchB", "random")

CIRCLE_STEPS = 25
MAGENTA_STEPS = 11
EPSBLUE_DETOURS = 15
EPSBLUE_SEED = 0
FOLLOWWALLS_STEPS = 60
SWITCHB_SWITCH_STEP = 10
SWITCHB_STEPS = 27
SWITCHB_SEED = 1
RANDOM_STEPS = 100
RANDOM_SEED = 0


@dataclass(frozen=True)
class Scenario:
    name: str
    trajectory: Trajectory
    switching: bool


def build(name: str, grid: GridMap | None = None, steps: int | None = None,
          seed: int | None = None) -> Scenario:
    """Construct a named scenario, optionally overriding steps/seed."""
    grid = grid or default_map()
    if name == "circle":
        traj = behaviors.circle(grid, steps or CIRCLE_STEPS)
        return Scenario(name, traj, switching=False)
    if name == "magenta":
        traj = behaviors.goal_seeker(
            grid, CellKind.MAGENTA, steps=steps or MAGENTA_STEPS,
            epsilon=0.0, seed=seed if seed is not None else 0,
        )
        return Scenario(name, traj, switching=False)
    if name == "epsblue":
        traj = behaviors.suboptimal_route(
            grid, CellKind.BLUE, detours=EPSBLUE_DETOURS,
            seed=seed if seed is not None else EPSBLUE_SEED,
        )
        return Scenario(name, traj, switching=False)
    if name == "followwalls":
        traj = behaviors.follow_walls(grid, steps or FOLLOWWALLS_STEPS)
        return Scenario(name, traj, switching=False)
    if name == "switchB":
        traj = behaviors.switching_seeker(
            grid, CellKind.MAGENTA, CellKind.GREEN,
            switch_step=SWITCHB_SWITCH_STEP, steps=steps or SWITCHB_STEPS,
            epsilon=0.0, seed=seed if seed is not None else SWITCHB_SEED,
        )
        return Scenario(name, traj, switching=True)
    if name == "random":
        traj = behaviors.random_walk(
            grid, steps or RANDOM_STEPS, seed=seed if seed is not None else RANDOM_SEED
        )
        return Scenario(name, traj, switching=False)
    raise ValueError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIO_NAMES)}")
