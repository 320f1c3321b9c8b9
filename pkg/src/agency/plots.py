"""Dependency-free SVG emission: map/trajectory overlay and posterior charts."""
from __future__ import annotations

from .gridworld import Action, CellKind, GridMap, Trajectory

CELL = 24
_FILL = {
    CellKind.WALL: "#444444",
    CellKind.EMPTY: "#f8f8f4",
    CellKind.RED: "#d43d3d",
    CellKind.GREEN: "#3dae4e",
    CellKind.BLUE: "#3d6fd4",
    CellKind.MAGENTA: "#c43dc4",
}
_GOAL_STROKE = {
    CellKind.RED: "#d43d3d",
    CellKind.GREEN: "#3dae4e",
    CellKind.BLUE: "#3d6fd4",
    CellKind.MAGENTA: "#c43dc4",
}

# Triangle vertices per orientation, in cell-relative coordinates.
_TRIANGLES = {
    Action.UP: [(0.5, 0.15), (0.85, 0.85), (0.15, 0.85)],
    Action.DOWN: [(0.5, 0.85), (0.15, 0.15), (0.85, 0.15)],
    Action.LEFT: [(0.15, 0.5), (0.85, 0.15), (0.85, 0.85)],
    Action.RIGHT: [(0.85, 0.5), (0.15, 0.15), (0.15, 0.85)],
}


def _svg(width: int, height: int, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _center(pos: tuple[int, int]) -> tuple[float, float]:
    return (pos[1] + 0.5) * CELL, (pos[0] + 0.5) * CELL


def grid_svg(grid: GridMap, traj: Trajectory | None = None) -> str:
    """The world as colored cells, optionally overlaid with a trajectory
    polyline and the triangle at its final position/orientation."""
    body = []
    for r in range(grid.rows):
        for c in range(grid.cols):
            kind = grid.cells[r][c]
            body.append(
                f'<rect x="{c * CELL}" y="{r * CELL}" width="{CELL}" height="{CELL}" '
                f'fill="{_FILL[kind]}" stroke="#ddd" stroke-width="0.5"/>'
            )
    if traj is not None:
        points = " ".join(f"{x:.1f},{y:.1f}" for x, y in map(_center, traj.positions))
        body.append(
            f'<polyline points="{points}" fill="none" stroke="#e6a817" '
            'stroke-width="3" stroke-opacity="0.75" stroke-linejoin="round"/>'
        )
        sx, sy = _center(traj.start)
        body.append(f'<circle cx="{sx:.1f}" cy="{sy:.1f}" r="4" fill="#e6a817"/>')
        last = traj.actions[-1] if traj.actions else Action.UP
        r, c = traj.positions[-1]
        pts = " ".join(
            f"{(c + dx) * CELL:.1f},{(r + dy) * CELL:.1f}" for dx, dy in _TRIANGLES[last]
        )
        body.append(f'<polygon points="{pts}" fill="#f2c511" stroke="#8a6d00"/>')
    return _svg(grid.cols * CELL, grid.rows * CELL, body)


def _line_chart(
    series: list[tuple[str, str, list[float]]],
    width: int = 640,
    height: int = 240,
    y_label: str = "",
) -> str:
    pad, body = 36, []
    n = max((len(vals) for _, _, vals in series), default=1)
    x_span, y_span = width - 2 * pad, height - 2 * pad
    body.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    for frac in (0.0, 0.5, 1.0):
        y = height - pad - frac * y_span
        body.append(
            f'<line x1="{pad}" y1="{y:.1f}" x2="{width - pad}" y2="{y:.1f}" '
            'stroke="#ccc" stroke-width="1"/>'
        )
        body.append(
            f'<text x="{pad - 6}" y="{y + 4:.1f}" font-size="11" text-anchor="end" '
            f'fill="#555">{frac:g}</text>'
        )
    for name, color, vals in series:
        if not vals:
            continue
        step = x_span / max(n - 1, 1)
        points = " ".join(
            f"{pad + i * step:.1f},{height - pad - v * y_span:.1f}"
            for i, v in enumerate(vals)
        )
        body.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
    legend_x = pad
    for name, color, _ in series:
        body.append(
            f'<text x="{legend_x}" y="{pad - 10}" font-size="12" fill="{color}">{name}</text>'
        )
        legend_x += 9 * len(name) + 18
    if y_label:
        body.append(
            f'<text x="{width / 2:.0f}" y="{height - 6}" font-size="11" '
            f'text-anchor="middle" fill="#555">{y_label}</text>'
        )
    return _svg(width, height, body)


def posterior_svg(posterior_agt_trace: list[float]) -> str:
    """Agent posterior over time, with the 0.5 decision line visible."""
    return _line_chart(
        [("P(agent)", "#2a7a2a", [0.5, *posterior_agt_trace])], y_label="step"
    )


def goal_trace_svg(trace: list[list[float]], colors: list[CellKind]) -> str:
    """Per-goal posterior strips over time, one line per balloon color."""
    series = [
        (color.name.lower(), _GOAL_STROKE[color], [row[i] for row in trace])
        for i, color in enumerate(colors)
    ]
    return _line_chart(series, y_label="step")
