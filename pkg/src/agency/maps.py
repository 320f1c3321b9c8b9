"""The shipped default world.

A 17x21 grid: a large open room holding the start cell, the red, green and
magenta balloons, and a door on the east wall into a winding corridor (with
a few dead-end alcoves) that ends at the blue balloon, 36 steps from the
start at its shortest.
"""
from __future__ import annotations

from .gridworld import GridMap, parse_map

DEFAULT_MAP_TEXT = "\n".join(
    [
        "#####################",
        "#.........G##########",
        "#..........##########",
        "#....A.....##########",
        "#..........#####.####",
        "#..........####....##",
        "#..........###..##.##",
        "#..........####.#..##",
        "#R...........##.##.##",
        "#..........#.#..##.##",
        "#..........#..#.##B##",
        "#..........#.##.#####",
        "#..........#.##..####",
        "#..........#....#####",
        "#....M.....##########",
        "#..........##########",
        "#####################",
    ]
)


def default_map() -> GridMap:
    return parse_map(DEFAULT_MAP_TEXT)
