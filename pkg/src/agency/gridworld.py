"""Deterministic grid environment: map parsing, movement, observations, replay.

The world is a rectangular grid of cells (wall, empty, or one of four balloon
colors) with a walled border. A system occupies one cell, moves in the four
cardinal directions (blocked by walls), and observes the kind of the cell it
is facing, i.e. the adjacent cell in the direction of its last action.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path

import yaml


class CellKind(IntEnum):
    WALL = 0
    EMPTY = 1
    RED = 2
    GREEN = 3
    BLUE = 4
    MAGENTA = 5

    @property
    def is_balloon(self) -> bool:
        return self in BALLOON_KINDS


BALLOON_KINDS = (CellKind.RED, CellKind.GREEN, CellKind.BLUE, CellKind.MAGENTA)


class Action(IntEnum):
    UP = 0
    DOWN = 1
    LEFT = 2
    RIGHT = 3

    @property
    def delta(self) -> tuple[int, int]:
        return _DELTAS[self]

    @property
    def char(self) -> str:
        return "UDLR"[self]


_DELTAS = {
    Action.UP: (-1, 0),
    Action.DOWN: (1, 0),
    Action.LEFT: (0, -1),
    Action.RIGHT: (0, 1),
}

_CHAR_TO_ACTION = {a.char: a for a in Action}

_CHAR_TO_KIND = {
    "#": CellKind.WALL,
    ".": CellKind.EMPTY,
    "R": CellKind.RED,
    "G": CellKind.GREEN,
    "B": CellKind.BLUE,
    "M": CellKind.MAGENTA,
}

# Last-action convention before the first step: the system starts facing up,
# which keeps the context space at exactly 6 kinds x 4 actions.
INITIAL_ACTION = Action.UP


class MapError(ValueError):
    """Raised when a map text violates the grid format."""


@dataclass(frozen=True)
class GridMap:
    """Immutable parsed world. `goals` maps balloon colors to cell positions."""

    rows: int
    cols: int
    cells: tuple[tuple[CellKind, ...], ...]
    start: tuple[int, int]
    goals: tuple[tuple[CellKind, tuple[int, int]], ...]

    def kind(self, pos: tuple[int, int]) -> CellKind:
        return self.cells[pos[0]][pos[1]]

    def goal_cell(self, color: CellKind) -> tuple[int, int]:
        for kind, pos in self.goals:
            if kind == color:
                return pos
        raise KeyError(f"no {color.name.lower()} balloon on this map")

    @property
    def goal_colors(self) -> tuple[CellKind, ...]:
        return tuple(kind for kind, _ in self.goals)

    def open_cells(self) -> list[tuple[int, int]]:
        return [
            (r, c)
            for r in range(self.rows)
            for c in range(self.cols)
            if self.cells[r][c] != CellKind.WALL
        ]

    def render(self) -> str:
        """Back to the text form (start shown as 'A')."""
        kind_chars = {v: k for k, v in _CHAR_TO_KIND.items()}
        lines = []
        for r in range(self.rows):
            row = [kind_chars[self.cells[r][c]] for c in range(self.cols)]
            if r == self.start[0]:
                row[self.start[1]] = "A"
            lines.append("".join(row))
        return "\n".join(lines)


def parse_map(text: str) -> GridMap:
    """Parse a map text into a GridMap.

    Characters: '#' wall, '.' empty, R/G/B/M balloons, 'A' the start cell
    (stored as empty). The border must be all wall, 'A' must appear exactly
    once and each balloon color at most once.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MapError("empty map text")
    cols = len(lines[0])
    rows = len(lines)
    if rows < 3 or cols < 3:
        raise MapError(f"map too small: {rows}x{cols}")

    start = None
    goals: dict[CellKind, tuple[int, int]] = {}
    grid: list[tuple[CellKind, ...]] = []
    for r, line in enumerate(lines):
        if len(line) != cols:
            raise MapError(f"ragged rows: row {r} has length {len(line)}, expected {cols}")
        row = []
        for c, ch in enumerate(line):
            if ch == "A":
                if start is not None:
                    raise MapError(f"duplicate start marker 'A' at ({r},{c})")
                start = (r, c)
                row.append(CellKind.EMPTY)
                continue
            kind = _CHAR_TO_KIND.get(ch)
            if kind is None:
                raise MapError(f"unknown map character {ch!r} at ({r},{c})")
            if kind.is_balloon:
                if kind in goals:
                    raise MapError(f"duplicate {kind.name.lower()} balloon at ({r},{c})")
                goals[kind] = (r, c)
            row.append(kind)
        grid.append(tuple(row))

    if start is None:
        raise MapError("missing start marker 'A'")
    for c in range(cols):
        if grid[0][c] != CellKind.WALL or grid[rows - 1][c] != CellKind.WALL:
            raise MapError("non-wall border: top or bottom row is not all wall")
    for r in range(rows):
        if grid[r][0] != CellKind.WALL or grid[r][cols - 1] != CellKind.WALL:
            raise MapError("non-wall border: left or right column is not all wall")

    goal_items = tuple(sorted(goals.items()))
    return GridMap(rows=rows, cols=cols, cells=tuple(grid), start=start, goals=goal_items)


def step(grid: GridMap, pos: tuple[int, int], action: Action) -> tuple[int, int]:
    """Move one cell in `action` direction; walls block (position unchanged).

    Balloon cells are passable. The attempted action is still the system's
    output even when blocked.
    """
    dr, dc = action.delta
    target = (pos[0] + dr, pos[1] + dc)
    if grid.kind(target) == CellKind.WALL:
        return pos
    return target


def observe(grid: GridMap, pos: tuple[int, int], last_action: Action) -> CellKind:
    """Kind of the cell faced from `pos` in the direction of `last_action`."""
    dr, dc = last_action.delta
    return grid.kind((pos[0] + dr, pos[1] + dc))


@dataclass(frozen=True)
class Trajectory:
    """An interaction history: actions taken and what they produced.

    positions[0] is the start; positions[t] is where the system sits after
    action t; observations[t-1] is the cell faced there (1-based step t).
    """

    grid: GridMap
    start: tuple[int, int]
    actions: tuple[Action, ...]
    positions: tuple[tuple[int, int], ...]
    observations: tuple[CellKind, ...]

    def __len__(self) -> int:
        return len(self.actions)

    @property
    def action_string(self) -> str:
        return "".join(a.char for a in self.actions)


def replay(grid: GridMap, actions: list[Action] | tuple[Action, ...]) -> Trajectory:
    """Run an action sequence from the map's start cell.

    Pure function of (grid, actions): repeated calls give identical results.
    """
    pos = grid.start
    positions = [pos]
    observations = []
    for a in actions:
        pos = step(grid, pos, a)
        positions.append(pos)
        observations.append(observe(grid, pos, a))
    return Trajectory(
        grid=grid,
        start=grid.start,
        actions=tuple(actions),
        positions=tuple(positions),
        observations=tuple(observations),
    )


def actions_from_string(s: str) -> tuple[Action, ...]:
    """Decode an action string over the alphabet UDLR (case-insensitive)."""
    out = []
    for ch in s.strip():
        a = _CHAR_TO_ACTION.get(ch.upper())
        if a is None:
            raise ValueError(f"bad action character {ch!r}; expected one of U,D,L,R")
        out.append(a)
    return tuple(out)


def load_trajectory_file(path: str | Path) -> Trajectory:
    """Load a trajectory document: YAML with fields map (inline text or path),
    actions (string over U,D,L,R) and optional seed (kept for provenance)."""
    doc = yaml.safe_load(Path(path).read_text())
    if not isinstance(doc, dict) or "map" not in doc or "actions" not in doc:
        raise ValueError(f"{path}: trajectory file needs 'map' and 'actions' fields")
    map_field = str(doc["map"])
    if "\n" in map_field:
        grid = parse_map(map_field)
    else:
        grid = parse_map(Path(map_field).read_text())
    actions = actions_from_string(str(doc["actions"]))
    if not actions:
        raise ValueError(f"{path}: empty action string")
    return replay(grid, actions)
