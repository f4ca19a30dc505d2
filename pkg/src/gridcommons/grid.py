"""Cell vocabulary and ASCII map parsing.

A map is UTF-8 text, one row per line.  Legend:

    W wall        . floor (space also reads as floor)   P spawn
    A apple       R river            D pre-polluted river
    I iron ore    G gold ore
    m red / g green / b blue / o orange mushroom
    T token       C cooperate-resource   X defect-resource

Terrain and items live in separate layers: terrain is static for the whole
episode (walls, floor, spawn pads, river bed) while the item layer holds
whatever currently sits on each cell.  Observation windows and the renderer
use the single merged `Cell` code per grid cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np


class Terrain(IntEnum):
    FLOOR = 0
    WALL = 1
    SPAWN = 2
    RIVER = 3


class Cell(IntEnum):
    """Categorical cell codes seen in observations and frames."""

    FLOOR = 0
    WALL = 1
    SPAWN = 2
    RIVER = 3
    RIVER_POLLUTED = 4
    APPLE = 5
    COIN_RED = 6
    COIN_BLUE = 7
    IRON = 8
    GOLD = 9
    GOLD_PARTIAL = 10
    MUSH_RED = 11
    MUSH_GREEN = 12
    MUSH_BLUE = 13
    MUSH_ORANGE = 14
    TOKEN = 15
    RES_COOP = 16
    RES_DEFECT = 17
    SELF = 18
    AGENT0 = 19  # other agents render as AGENT0 + id


ITEM_EMPTY = 0

_LEGEND_TERRAIN = {
    "W": Terrain.WALL,
    ".": Terrain.FLOOR,
    " ": Terrain.FLOOR,
    "P": Terrain.SPAWN,
    "R": Terrain.RIVER,
    "D": Terrain.RIVER,
}

_LEGEND_ITEM = {
    "A": Cell.APPLE,
    "I": Cell.IRON,
    "G": Cell.GOLD,
    "m": Cell.MUSH_RED,
    "g": Cell.MUSH_GREEN,
    "b": Cell.MUSH_BLUE,
    "o": Cell.MUSH_ORANGE,
    "T": Cell.TOKEN,
    "C": Cell.RES_COOP,
    "X": Cell.RES_DEFECT,
}


class MapError(ValueError):
    pass


@dataclass
class MapSpec:
    """Parsed static layout: terrain, initial items, pre-polluted river cells."""

    terrain: np.ndarray  # (H, W) uint8 Terrain codes
    items: np.ndarray  # (H, W) uint8 Cell codes, 0 = empty
    polluted: np.ndarray  # (H, W) bool, subset of river cells
    spawn_cells: np.ndarray  # (S, 2) int16, row-major order

    @property
    def shape(self) -> tuple[int, int]:
        return self.terrain.shape


def parse_map(text: str) -> MapSpec:
    rows = [line for line in text.splitlines() if line.strip("\r")]
    if not rows:
        raise MapError("map has no rows")
    height = len(rows)
    width = max(len(r) for r in rows)
    terrain = np.full((height, width), Terrain.WALL, dtype=np.uint8)
    items = np.zeros((height, width), dtype=np.uint8)
    polluted = np.zeros((height, width), dtype=bool)
    for r, line in enumerate(rows):
        for c, ch in enumerate(line):
            if ch in _LEGEND_TERRAIN:
                terrain[r, c] = _LEGEND_TERRAIN[ch]
                if ch == "D":
                    polluted[r, c] = True
            elif ch in _LEGEND_ITEM:
                terrain[r, c] = Terrain.FLOOR
                items[r, c] = _LEGEND_ITEM[ch]
            else:
                raise MapError(f"unknown map character {ch!r} at row {r}, col {c}")
    spawns = np.argwhere(terrain == Terrain.SPAWN).astype(np.int16)
    return MapSpec(terrain=terrain, items=items, polluted=polluted, spawn_cells=spawns)


def walkable_mask(terrain: np.ndarray) -> np.ndarray:
    """Cells an agent may stand on (floor and spawn pads; river is not)."""
    return (terrain == Terrain.FLOOR) | (terrain == Terrain.SPAWN)


def render_base(terrain: np.ndarray) -> np.ndarray:
    """Static part of the merged cell-code grid."""
    base = np.empty_like(terrain)
    base[terrain == Terrain.FLOOR] = Cell.FLOOR
    base[terrain == Terrain.WALL] = Cell.WALL
    base[terrain == Terrain.SPAWN] = Cell.SPAWN
    base[terrain == Terrain.RIVER] = Cell.RIVER
    return base
