"""Bayesian stance classification: is a gridworld system an agent or a device?

Given only a trajectory (actions plus what the system observed), compute the
posterior probability that the behaviour is goal-directed (an agent pursuing
one of the map's balloons, approximately rationally) versus reactive (a
context-conditioned input-output device).
"""
from .gridworld import (
    Action,
    CellKind,
    GridMap,
    MapError,
    Trajectory,
    actions_from_string,
    parse_map,
    replay,
)
from .verdict import VerdictReport, assess

__all__ = [
    "Action",
    "CellKind",
    "GridMap",
    "MapError",
    "Trajectory",
    "VerdictReport",
    "actions_from_string",
    "assess",
    "parse_map",
    "replay",
]

__version__ = "0.1.0"
