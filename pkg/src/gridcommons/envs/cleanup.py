"""Clean Up: a public-good game between an orchard and a polluting river.

The river stays clean for the first `pollution_free_steps` steps; after
that one random clean river tile turns dirty with probability 0.5 per
step.  Apple growth on empty orchard cells scales linearly from the full
rate alpha (dirt fraction at or below the restoration threshold) down to
zero (at or above the depletion threshold).  Action 8 fires a short clean
beam that scrubs the first polluted tile it reaches.
"""

from __future__ import annotations

import numpy as np

from ..engine import cast_beam, cell_draws, open_cells, place_on_cells
from ..grid import Cell, Terrain
from ..rng import rng_uniform
from .base import ACTIONS_BASE, ConfigError
from .harvest import HarvestEnv


def cleanup_growth_prob(dirt_count, river_count, theta_d=0.4, theta_r=0.0,
                        alpha=0.05):
    """Per-cell apple growth probability given river pollution.

    Linear ramp clipped to [0, alpha]: full rate while the dirt fraction is
    at or below theta_r, zero once it reaches theta_d.  Monotone
    non-increasing in dirt.
    """
    if theta_r >= theta_d:
        raise ValueError("restoration threshold must be below depletion threshold")
    river = np.asarray(river_count, dtype=np.float64)
    if np.any(river <= 0):
        raise ValueError("river_count must be positive")
    frac = np.asarray(dirt_count, dtype=np.float64) / river
    p = alpha * np.clip((theta_d - frac) / (theta_d - theta_r), 0.0, 1.0)
    return float(p) if np.isscalar(dirt_count) else p


class CleanUpEnv(HarvestEnv):
    name = "clean_up"
    default_agents = 7
    action_names = ACTIONS_BASE + ("zap", "clean")
    param_defaults = {
        "apple_reward": 1.0,
        "growth_alpha": 0.05,
        "depletion_threshold": 0.4,
        "restoration_threshold": 0.0,
        "pollution_free_steps": 50.0,
        "pollution_prob": 0.5,
        "clean_length": 3.0,
        "zap_length": 3.0,
        "zap_respawn_delay": 25.0,
    }

    def _prepare(self):
        super()._prepare()
        self._river = self.map.terrain == Terrain.RIVER
        self._river_cells = np.argwhere(self._river)
        if len(self._river_cells) == 0:
            raise ConfigError("clean_up map needs river cells")

    def _reset_extra(self, state):
        state.extra["polluted"] = np.broadcast_to(
            self.map.polluted, state.items.shape).copy()

    def _polluted(self, state):
        return state.extra["polluted"]

    def _beam_phase(self, state, actions, active, rewards, events, scratch):
        self._zap_phase(state, actions, active)
        polluted = state.extra["polluted"]
        length = int(self.p["clean_length"])
        lanes = np.arange(self.batch)
        cleaned = np.zeros((self.batch, self.num_agents), dtype=np.float64)
        for i in range(self.num_agents):
            fire = (actions[:, i] == 8) & active[:, i]
            if not fire.any():
                continue
            # live pollution mask: an already-scrubbed tile is transparent
            # to later cleaners this same step
            cell, found = cast_beam(
                state.terrain, state.pos[:, i], state.orient[:, i],
                polluted, length, fire)
            hit = lanes[found]
            polluted[hit, cell[found, 0], cell[found, 1]] = False
            cleaned[hit, i] += 1
        self._add_event(events, "CLEANED", cleaned)

    def _regrow_phase(self, state, rewards, events, scratch):
        polluted = state.extra["polluted"]
        rc = self._river_cells

        # Pollution drift: one random clean river tile per step, coin-flip
        # gated, only after the grace period.
        state.rng, tick_u = rng_uniform(state.rng, 2)
        pollute = (state.step >= int(self.p["pollution_free_steps"])) & (
            tick_u[:, 0] < self.p["pollution_prob"])
        clean_tiles = ~polluted[:, rc[:, 0], rc[:, 1]]  # (B, R)
        n_clean = clean_tiles.sum(axis=1)
        pollute &= n_clean > 0
        if pollute.any():
            lanes = np.nonzero(pollute)[0]
            k = np.minimum((tick_u[lanes, 1] * n_clean[lanes]).astype(np.int64),
                           n_clean[lanes] - 1)
            pick = np.argmax(np.cumsum(clean_tiles[lanes], axis=1) > k[:, None], axis=1)
            polluted[lanes, rc[pick, 0], rc[pick, 1]] = True

        dirt = polluted[:, rc[:, 0], rc[:, 1]].sum(axis=1)
        prob = cleanup_growth_prob(
            dirt, len(rc), self.p["depletion_threshold"],
            self.p["restoration_threshold"], self.p["growth_alpha"])
        cells = self._orchard_cells
        u = cell_draws(state, cells)
        grow = (u < prob[:, None]) & open_cells(state, cells)
        place_on_cells(state, cells, grow, Cell.APPLE)
