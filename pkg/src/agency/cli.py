"""Command line front end: replay action strings, run named scenarios, serve."""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import device_model, plots, scenarios, switch_mixture
from .gridworld import (
    GridMap,
    MapError,
    Trajectory,
    actions_from_string,
    load_trajectory_file,
    parse_map,
    replay,
)
from .maps import default_map
from .planner import DEFAULT_GAMMA
from .switch_mixture import N_EPS_DEFAULT
from .verdict import VerdictReport, assess

MAP_ENV_VAR = "AGENCY_DEFAULT_MAP"


def _resolve_map(path: str | None) -> GridMap:
    if path and path != "default":
        return parse_map(Path(path).read_text())
    env = os.environ.get(MAP_ENV_VAR)
    if env:
        return parse_map(Path(env).read_text())
    return default_map()


def _emit(report: VerdictReport, traj: Trajectory, args) -> None:
    print(report.render_table())
    goals = ", ".join(
        f"{c.name.lower()}={p:.4f}" for c, p in report.goal_posteriors.items()
    )
    print(f"goal posteriors: {goals}")
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n", encoding="utf-8")
    if args.hits_csv:
        Path(args.hits_csv).write_text(
            device_model.context_hits_csv(device_model.stats_of(traj)),
            encoding="utf-8",
        )
    if args.goals_csv:
        Path(args.goals_csv).write_text(
            switch_mixture.goal_trace_csv(
                report.goal_posterior_trace, report.goal_colors
            ),
            encoding="utf-8",
        )
    if args.svg:
        Path(args.svg).write_text(plots.grid_svg(traj.grid, traj), encoding="utf-8")
    if args.posteriors_svg:
        Path(args.posteriors_svg).write_text(
            plots.posterior_svg(report.posterior_agt_trace), encoding="utf-8"
        )
    if args.goals_svg:
        Path(args.goals_svg).write_text(
            plots.goal_trace_svg(report.goal_posterior_trace, report.goal_colors),
            encoding="utf-8",
        )


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", metavar="PATH", help="write the full report as JSON")
    p.add_argument("--hits-csv", metavar="PATH", help="write the context-hit table as CSV")
    p.add_argument("--goals-csv", metavar="PATH", help="write the goal-posterior trace as CSV")
    p.add_argument("--svg", metavar="PATH", help="write the trajectory overlay as SVG")
    p.add_argument("--posteriors-svg", metavar="PATH", help="write the agent-posterior chart as SVG")
    p.add_argument("--goals-svg", metavar="PATH", help="write the goal-posterior chart as SVG")


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--switching", action="store_true", help="use the switching agent mixture")
    p.add_argument("--gamma", type=float, default=DEFAULT_GAMMA, help="discount factor")
    p.add_argument("--n-eps", type=int, default=N_EPS_DEFAULT, help="exploration-rate grid size")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agency",
        description="Score gridworld trajectories as agent-like vs device-like.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rp = sub.add_parser("replay", help="score an explicit action sequence")
    rp.add_argument("--map", default="default", help="map file path, or 'default'")
    rp.add_argument("--actions", help="action string over U,D,L,R")
    rp.add_argument("--traj", help="trajectory file (YAML: map, actions, seed)")
    _add_model_flags(rp)
    _add_output_flags(rp)

    sc = sub.add_parser("scenario", help="run a named demonstration scenario")
    sc.add_argument("name", choices=scenarios.SCENARIO_NAMES)
    sc.add_argument("--map", default="default", help="map file path, or 'default'")
    sc.add_argument("--steps", type=int, help="trajectory length override")
    sc.add_argument("--seed", type=int, help="generator seed override")
    _add_model_flags(sc)
    _add_output_flags(sc)

    sv = sub.add_parser("serve", help="start the HTTP steering service")
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=8080)
    sv.add_argument("--map", default="default", help="map file path, or 'default'")
    sv.add_argument("--static-dir", help="directory of web UI assets to serve")
    return parser


def cmd_replay(args) -> int:
    if bool(args.actions) == bool(args.traj):
        print("replay: need exactly one of --actions or --traj", file=sys.stderr)
        return 2
    if args.traj:
        traj = load_trajectory_file(args.traj)
    else:
        grid = _resolve_map(args.map)
        actions = actions_from_string(args.actions)
        if not actions:
            raise ValueError("empty action string")
        traj = replay(grid, actions)
    report = assess(traj, switching=args.switching, gamma=args.gamma, n_eps=args.n_eps)
    _emit(report, traj, args)
    return 0


def cmd_scenario(args) -> int:
    grid = _resolve_map(args.map)
    scenario = scenarios.build(args.name, grid, steps=args.steps, seed=args.seed)
    switching = args.switching or scenario.switching
    report = assess(
        scenario.trajectory, switching=switching, gamma=args.gamma, n_eps=args.n_eps
    )
    print(f"scenario {scenario.name}: T={len(scenario.trajectory)} switching={switching}")
    _emit(report, scenario.trajectory, args)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    grid = _resolve_map(args.map)
    app = create_app(grid, static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "replay":
            return cmd_replay(args)
        if args.command == "scenario":
            return cmd_scenario(args)
        return cmd_serve(args)
    except (MapError, ValueError, OSError) as exc:
        print(f"agency: {exc}", file=sys.stderr)
        return 2
    except SystemExit:
        raise
    except Exception as exc:  # pragma: no cover - port conflicts and the like
        print(f"agency: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
