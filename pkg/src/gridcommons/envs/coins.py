"""Two-player coin collecting.

Each empty floor tile can sprout a coin of either player's color (0.0005
per type per step).  Any pickup pays the collector +1; taking the other
player's color additionally costs that player -2.  Own-color pickups feed
the cooperation metric.
"""

from __future__ import annotations

import numpy as np

from ..engine import cell_draws, open_cells, place_on_cells
from ..grid import Cell, Terrain
from .base import ACTIONS_BASE, ConfigError, EnvConfig, VecEnv


class CoinsEnv(VecEnv):
    name = "coins"
    default_agents = 2
    action_names = ACTIONS_BASE
    param_defaults = {
        "coin_respawn_prob": 0.0005,
        "coin_reward": 1.0,
        "cross_coin_penalty": -2.0,
    }

    def __init__(self, config: EnvConfig, batch: int = 1):
        if config.num_agents != 2:
            raise ConfigError("coins is a two-player environment")
        super().__init__(config, batch)

    def _prepare(self):
        self._floor_cells = np.argwhere(self.map.terrain == Terrain.FLOOR)

    def _consume_phase(self, state, actions, active, rewards, events, scratch):
        B = self.batch
        own = np.zeros((B, 2), dtype=np.float64)
        lanes = np.arange(B)
        for i in range(2):
            r, c = state.pos[:, i, 0], state.pos[:, i, 1]
            here = state.items[lanes, r, c]
            for coin, owner in ((Cell.COIN_RED, 0), (Cell.COIN_BLUE, 1)):
                take = (here == coin) & active[:, i]
                if not take.any():
                    continue
                rewards[take, i] += self.p["coin_reward"]
                if owner != i:
                    rewards[take, owner] += self.p["cross_coin_penalty"]
                else:
                    own[take, i] += 1
                state.items[lanes[take], r[take], c[take]] = 0
        self._add_event(events, "OWN_COLOR_COIN", own)

    def _regrow_phase(self, state, rewards, events, scratch):
        p = self.p["coin_respawn_prob"]
        cells = self._floor_cells
        u = cell_draws(state, cells)
        free = open_cells(state, cells)
        # One draw decides both colors on disjoint intervals, so each type
        # lands at exactly `p` and never collides with the other.
        place_on_cells(state, cells, free & (u < p), Cell.COIN_RED)
        place_on_cells(state, cells, free & (u >= p) & (u < 2 * p), Cell.COIN_BLUE)
