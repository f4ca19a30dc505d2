"""Third-person frame rendering to binary PPM (P6) files.

Plain portable pixmaps need no image library; one frame per step, fixed
palette per cell code, agents tinted by id.
"""

from __future__ import annotations

import colorsys
import os

import numpy as np

from .grid import Cell

_PALETTE = {
    Cell.FLOOR: (40, 40, 40),
    Cell.WALL: (120, 120, 120),
    Cell.SPAWN: (60, 60, 70),
    Cell.RIVER: (50, 90, 200),
    Cell.RIVER_POLLUTED: (90, 70, 30),
    Cell.APPLE: (40, 180, 60),
    Cell.COIN_RED: (220, 60, 60),
    Cell.COIN_BLUE: (70, 90, 230),
    Cell.IRON: (170, 170, 180),
    Cell.GOLD: (212, 175, 55),
    Cell.GOLD_PARTIAL: (255, 225, 120),
    Cell.MUSH_RED: (200, 40, 40),
    Cell.MUSH_GREEN: (60, 200, 80),
    Cell.MUSH_BLUE: (70, 110, 240),
    Cell.MUSH_ORANGE: (240, 140, 30),
    Cell.TOKEN: (230, 210, 90),
    Cell.RES_COOP: (40, 200, 120),
    Cell.RES_DEFECT: (220, 70, 50),
    Cell.SELF: (255, 255, 255),
}

_MAX_AGENTS = 16


def _agent_colors(n: int = _MAX_AGENTS) -> list[tuple[int, int, int]]:
    colors = []
    for i in range(n):
        r, g, b = colorsys.hsv_to_rgb(i / n, 0.85, 0.95)
        colors.append((int(r * 255), int(g * 255), int(b * 255)))
    return colors


def palette_array() -> np.ndarray:
    table = np.zeros((Cell.AGENT0 + _MAX_AGENTS, 3), dtype=np.uint8)
    for code, rgb in _PALETTE.items():
        table[code] = rgb
    for i, rgb in enumerate(_agent_colors()):
        table[Cell.AGENT0 + i] = rgb
    return table


def cells_to_rgb(cells: np.ndarray, scale: int = 8) -> np.ndarray:
    """(H, W) cell codes -> (H*scale, W*scale, 3) uint8 image."""
    img = palette_array()[cells]
    return np.repeat(np.repeat(img, scale, axis=0), scale, axis=1)


def write_ppm(path, image: np.ndarray) -> None:
    h, w = image.shape[:2]
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode())
        fh.write(image.astype(np.uint8).tobytes())


def render_trajectory(env_name: str, records, out_dir, seed: int,
                      overrides=None, scale: int = 8) -> int:
    """Replay recorded actions and write one frame per record."""
    from .envs import make_vec

    os.makedirs(out_dir, exist_ok=True)
    env = make_vec(env_name, batch=1, overrides=overrides)
    state, _ = env.reset(seed)
    count = 0
    for rec in records:
        actions = np.asarray(rec.actions, dtype=np.int64).reshape(1, -1)
        state, _ = env.step(state, actions)
        frame = cells_to_rgb(env.render_cells(state)[0], scale)
        write_ppm(os.path.join(out_dir, f"frame_{rec.step:06d}.ppm"), frame)
        count += 1
    return count
