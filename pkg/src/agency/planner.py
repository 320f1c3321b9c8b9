"""Per-goal MDP planning over grid cells.

Each balloon color defines a goal: reward 1 on the transition into its cell,
0 elsewhere, with the goal cell absorbing (zero continuation value). Value
iteration on the deterministic dynamics yields state values gamma^(d-1) for
cells at shortest-path distance d, so the optimal-action sets coincide with
the shortest-path action sets; a BFS oracle is provided for verification.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .gridworld import Action, CellKind, GridMap, step

DEFAULT_GAMMA = 0.99
SWEEP_TOL = 1e-12
# Relative tie tolerance on Q when collecting optimal-action sets.
TIE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class GoalPlan:
    grid: GridMap
    color: CellKind
    goal_cell: tuple[int, int]
    gamma: float
    values: np.ndarray          # (rows, cols), walls 0
    q_values: np.ndarray        # (4, rows, cols)
    action_sets: dict[tuple[int, int], frozenset[Action]] = field(repr=False)

    def value(self, pos: tuple[int, int]) -> float:
        return float(self.values[pos])

    def q(self, pos: tuple[int, int], action: Action) -> float:
        return float(self.q_values[action, pos[0], pos[1]])


def _transition_tables(grid: GridMap):
    """Next-cell row/col index arrays and rewards-into-goal, per action."""
    rows, cols = grid.rows, grid.cols
    nr = np.zeros((4, rows, cols), dtype=np.intp)
    nc = np.zeros((4, rows, cols), dtype=np.intp)
    for r in range(rows):
        for c in range(cols):
            for a in Action:
                if grid.cells[r][c] == CellKind.WALL:
                    nr[a, r, c], nc[a, r, c] = r, c
                else:
                    nr[a, r, c], nc[a, r, c] = step(grid, (r, c), a)
    return nr, nc


def solve_goal(grid: GridMap, color: CellKind, gamma: float = DEFAULT_GAMMA) -> GoalPlan:
    """Value-iterate the goal MDP for one balloon color.

    Sweeps until the sup-norm change drops below 1e-12; on this deterministic
    world the fixed point is reached after about one sweep per unit of grid
    diameter. Raises KeyError when the color has no balloon on the map.
    """
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must be in (0,1), got {gamma}")
    goal = grid.goal_cell(color)
    rows, cols = grid.rows, grid.cols
    nr, nc = _transition_tables(grid)
    wall = np.array(
        [[grid.cells[r][c] == CellKind.WALL for c in range(cols)] for r in range(rows)]
    )
    reward = np.zeros((4, rows, cols))
    for a in Action:
        reward[a][(nr[a] == goal[0]) & (nc[a] == goal[1])] = 1.0
    reward[:, goal[0], goal[1]] = 0.0  # absorbing: no reward for leaving/looping

    # Deterministic dynamics reach their fixed point exactly within one sweep
    # per unit of diameter; keep sweeping past the tolerance to the exact
    # fixed point so that values at depth d stay distinguishable even when
    # gamma^d underflows the tolerance (small gamma on a deep map).
    v = np.zeros((rows, cols))
    for _ in range(rows * cols + 8):
        q = reward + gamma * v[nr, nc]
        v_new = q.max(axis=0)
        v_new[wall] = 0.0
        v_new[goal] = 0.0
        delta = np.abs(v_new - v).max()
        v = v_new
        if delta == 0.0:
            break
    if delta >= SWEEP_TOL:  # pragma: no cover - diameter bound guarantees this
        raise RuntimeError("value iteration failed to converge")

    q = reward + gamma * v[nr, nc]
    q[:, goal[0], goal[1]] = 0.0
    q[:, wall] = 0.0

    action_sets: dict[tuple[int, int], frozenset[Action]] = {}
    for r in range(rows):
        for c in range(cols):
            if wall[r, c]:
                continue
            action_sets[(r, c)] = _near_argmax(q[:, r, c])
    return GoalPlan(
        grid=grid, color=color, goal_cell=goal, gamma=gamma,
        values=v, q_values=q, action_sets=action_sets,
    )


def _near_argmax(qs: np.ndarray) -> frozenset[Action]:
    best = qs.max()
    tol = TIE_TOL * abs(best)
    return frozenset(Action(a) for a in range(4) if qs[a] >= best - tol)


def optimal_actions(plan: GoalPlan, pos: tuple[int, int]) -> frozenset[Action]:
    """Actions within tie tolerance of the best Q at `pos` (never empty)."""
    return plan.action_sets[pos]


@lru_cache(maxsize=64)
def solve_all(grid: GridMap, gamma: float = DEFAULT_GAMMA) -> dict[CellKind, GoalPlan]:
    """Plans for every balloon on the map, cached per (map, gamma)."""
    plans = {color: solve_goal(grid, color, gamma) for color in grid.goal_colors}
    if not plans:
        raise ValueError("map has no balloons, so no goals to plan for")
    return plans


def bfs_distances(grid: GridMap, goal_cell: tuple[int, int]) -> dict[tuple[int, int], float]:
    """Shortest-path step counts from every open cell to `goal_cell`.

    Walls block; blocked moves are self-loops and never shorten a path.
    Unreachable cells get math.inf.
    """
    dist = {pos: float("inf") for pos in grid.open_cells()}
    dist[goal_cell] = 0.0
    frontier = [goal_cell]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for pos in frontier:
            for a in Action:
                nb = (pos[0] + a.delta[0], pos[1] + a.delta[1])
                if grid.kind(nb) != CellKind.WALL and dist[nb] == float("inf"):
                    dist[nb] = d
                    nxt.append(nb)
        frontier = nxt
    return dist


def shortest_path_action_sets(
    grid: GridMap, goal_cell: tuple[int, int]
) -> dict[tuple[int, int], frozenset[Action]]:
    """BFS-derived oracle for the optimal-action sets.

    For a cell at finite distance d >= 1 these are the moves onto distance
    d-1 cells. At the goal cell itself the MDP is absorbed, so every action
    is optimal; for cells that cannot reach the goal, likewise all four.
    """
    dist = bfs_distances(grid, goal_cell)
    out: dict[tuple[int, int], frozenset[Action]] = {}
    for pos, d in dist.items():
        if pos == goal_cell or d == float("inf"):
            out[pos] = frozenset(Action)
            continue
        best = min(1.0 + dist[step(grid, pos, a)] for a in Action)
        out[pos] = frozenset(a for a in Action if 1.0 + dist[step(grid, pos, a)] == best)
    return out


def shortest_path_actions(
    grid: GridMap, start: tuple[int, int], goal_cell: tuple[int, int]
) -> list[Action]:
    """One concrete shortest path, breaking ties by U,D,L,R order."""
    dist = bfs_distances(grid, goal_cell)
    if dist[start] == float("inf"):
        raise ValueError(f"goal {goal_cell} unreachable from {start}")
    pos = start
    path = []
    while pos != goal_cell:
        for a in Action:
            nb = step(grid, pos, a)
            if nb != pos and dist[nb] == dist[pos] - 1:
                path.append(a)
                pos = nb
                break
    return path


def value_table_csv(plan: GoalPlan) -> str:
    """Debug dump: V per cell as CSV (walls blank)."""
    lines = [",".join(["row\\col"] + [str(c) for c in range(plan.grid.cols)])]
    for r in range(plan.grid.rows):
        cells = []
        for c in range(plan.grid.cols):
            if plan.grid.cells[r][c] == CellKind.WALL:
                cells.append("")
            else:
                cells.append(f"{plan.values[r, c]:.6g}")
        lines.append(",".join([str(r)] + cells))
    return "\n".join(lines) + "\n"
