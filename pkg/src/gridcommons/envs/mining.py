"""Coop Mining: solo iron versus coordinated gold.

A mine beam on iron pays +1 immediately.  A beam on fresh gold opens a
3-step window (shown as partially-mined ore); distinct miners accumulate
while it is open.  When the window closes the ore pays +8 to every miner
if 2 to 4 of them joined, otherwise it reverts untouched.  Ore respawns on
empty floor at 0.0004 (iron) and 0.00016 (gold) per cell per step.

The base zap action exists in the table but is a no-op here.
"""

from __future__ import annotations

import numpy as np

from ..engine import cast_beam, cell_draws, open_cells, place_on_cells
from ..grid import Cell, Terrain
from .base import ACTIONS_BASE, VecEnv

_POPCOUNT = np.array([bin(v).count("1") for v in range(1 << 16)], dtype=np.uint8)


class CoopMiningEnv(VecEnv):
    name = "coop_mining"
    default_agents = 7
    action_names = ACTIONS_BASE + ("zap", "mine")
    param_defaults = {
        "iron_reward": 1.0,
        "gold_reward": 8.0,
        "iron_respawn_prob": 0.0004,
        "gold_respawn_prob": 0.00016,
        "gold_window": 3.0,
        "min_miners": 2.0,
        "max_miners": 4.0,
        "mine_length": 3.0,
    }

    def _prepare(self):
        if self.num_agents > 16:
            raise ValueError("coop_mining tracks miners as 16-bit masks")
        self._floor_cells = np.argwhere(self.map.terrain == Terrain.FLOOR)

    def _reset_extra(self, state):
        B, (H, W) = self.batch, self.map.shape
        state.extra["window_start"] = np.full((B, H, W), -1, dtype=np.int32)
        state.extra["miners"] = np.zeros((B, H, W), dtype=np.uint16)

    def _beam_phase(self, state, actions, active, rewards, events, scratch):
        length = int(self.p["mine_length"])
        lanes = np.arange(self.batch)
        start = state.extra["window_start"]
        miners = state.extra["miners"]
        for i in range(self.num_agents):
            fire = (actions[:, i] == 8) & active[:, i]
            if not fire.any():
                continue
            ore = (
                (state.items == Cell.IRON)
                | (state.items == Cell.GOLD)
                | (state.items == Cell.GOLD_PARTIAL)
            )
            cell, found = cast_beam(
                state.terrain, state.pos[:, i], state.orient[:, i],
                ore, length, fire)
            hit = lanes[found]
            r, c = cell[found, 0], cell[found, 1]
            kind = state.items[hit, r, c]

            iron = kind == Cell.IRON
            rewards[hit[iron], i] += self.p["iron_reward"]
            state.items[hit[iron], r[iron], c[iron]] = 0

            fresh = kind == Cell.GOLD
            state.items[hit[fresh], r[fresh], c[fresh]] = Cell.GOLD_PARTIAL
            start[hit[fresh], r[fresh], c[fresh]] = state.step[hit[fresh]]
            miners[hit[fresh], r[fresh], c[fresh]] = np.uint16(1 << i)

            part = kind == Cell.GOLD_PARTIAL
            miners[hit[part], r[part], c[part]] |= np.uint16(1 << i)

    def _regrow_phase(self, state, rewards, events, scratch):
        B = self.batch
        start = state.extra["window_start"]
        miners = state.extra["miners"]

        # Settle windows whose three beam phases have elapsed.
        window = int(self.p["gold_window"])
        closing = (start >= 0) & (
            state.step[:, None, None] - start >= window - 1)
        gold_done = np.zeros(B, dtype=np.float64)
        if closing.any():
            counts = _POPCOUNT[miners]
            ok = closing & (counts >= int(self.p["min_miners"])) & (
                counts <= int(self.p["max_miners"]))
            for i in range(self.num_agents):
                mined = ok & ((miners >> np.uint16(i)) & np.uint16(1)).astype(bool)
                rewards[:, i] += self.p["gold_reward"] * mined.sum(axis=(1, 2))
            gold_done = ok.sum(axis=(1, 2)).astype(np.float64)
            b, r, c = np.nonzero(ok)
            state.items[b, r, c] = 0
            fail = closing & ~ok
            b, r, c = np.nonzero(fail)
            state.items[b, r, c] = Cell.GOLD  # reverts untouched
            start[closing] = -1
            miners[closing] = 0
        self._add_event(events, "GOLD_MINED", gold_done)

        p_iron = self.p["iron_respawn_prob"]
        p_gold = self.p["gold_respawn_prob"]
        cells = self._floor_cells
        u = cell_draws(state, cells)
        free = open_cells(state, cells)
        place_on_cells(state, cells, free & (u < p_iron), Cell.IRON)
        place_on_cells(state, cells, free & (u >= p_iron) & (u < p_iron + p_gold),
                       Cell.GOLD)
