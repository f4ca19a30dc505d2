"""Gift Refinement: tokens triple in value when given away.

Tokens spawn on empty floor (0.0002 per cell per step) and are picked up
into a three-level inventory capped at 15 per level.  The gift beam sends
the giver's entire lowest refinable level to the first agent it hits:
the recipient gains three times the count at the next level up, clipped
to its cap (overflow is lost, the giver's stock is spent either way).
The consume action cashes the whole inventory at +1 per token.
"""

from __future__ import annotations

import numpy as np

from ..engine import cast_beam, cell_draws, open_cells, place_on_cells
from ..grid import Cell, Terrain
from .base import ACTIONS_BASE, VecEnv

LEVELS = 3


class GiftEnv(VecEnv):
    name = "gift_refinement"
    default_agents = 7
    action_names = ACTIONS_BASE + ("gift", "consume")
    param_defaults = {
        "token_spawn_prob": 0.0002,
        "level_cap": 15.0,
        "gift_multiplier": 3.0,
        "token_reward": 1.0,
        "gift_length": 3.0,
    }

    def _prepare(self):
        self._floor_cells = np.argwhere(self.map.terrain == Terrain.FLOOR)

    def _reset_extra(self, state):
        state.extra["inv"] = np.zeros(
            (self.batch, self.num_agents, LEVELS), dtype=np.int16)

    def _beam_phase(self, state, actions, active, rewards, events, scratch):
        inv = state.extra["inv"]
        cap = int(self.p["level_cap"])
        mult = int(self.p["gift_multiplier"])
        length = int(self.p["gift_length"])
        snapshot = state.occ.copy()
        agent_mask = snapshot >= 0
        lanes = np.arange(self.batch)
        received = np.zeros((self.batch, self.num_agents), dtype=np.float64)
        for i in range(self.num_agents):
            giftable = (inv[:, i, 0] > 0) | (inv[:, i, 1] > 0)
            fire = (actions[:, i] == 7) & active[:, i] & giftable
            if not fire.any():
                continue
            cell, found = cast_beam(
                state.terrain, state.pos[:, i], state.orient[:, i],
                agent_mask, length, fire)
            hit = lanes[found]
            target = snapshot[hit, cell[found, 0], cell[found, 1]]
            level = np.where(inv[hit, i, 0] > 0, 0, 1)
            q = inv[hit, i, level]
            gain = np.minimum(mult * q.astype(np.int64),
                              cap - inv[hit, target, level + 1])
            inv[hit, i, level] = 0
            inv[hit, target, level + 1] += gain.astype(np.int16)
            np.add.at(received, (hit, target), gain.astype(np.float64))
        self._add_event(events, "RECEIVED", received)

    def _consume_phase(self, state, actions, active, rewards, events, scratch):
        inv = state.extra["inv"]
        cap = int(self.p["level_cap"])
        lanes = np.arange(self.batch)
        for i in range(self.num_agents):
            r, c = state.pos[:, i, 0], state.pos[:, i, 1]
            take = (
                (state.items[lanes, r, c] == Cell.TOKEN)
                & active[:, i]
                & (inv[:, i, 0] < cap)
            )
            inv[take, i, 0] += 1
            state.items[lanes[take], r[take], c[take]] = 0

            cash = (actions[:, i] == 8) & active[:, i]
            rewards[cash, i] += self.p["token_reward"] * inv[cash, i].sum(axis=1)
            inv[cash, i] = 0

    def _regrow_phase(self, state, rewards, events, scratch):
        cells = self._floor_cells
        u = cell_draws(state, cells)
        land = (u < self.p["token_spawn_prob"]) & open_cells(state, cells)
        place_on_cells(state, cells, land, Cell.TOKEN)
