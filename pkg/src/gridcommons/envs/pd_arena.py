"""Prisoners Dilemma: Arena — inventories compared through a zap.

Agents gather cooperate/defect resources into an inventory.  Zapping
another agent settles both sides with bilinear payoffs over the matrix
[[3, -1], [5, 1]] (column player gets the transpose), using each side's
inventory mix as its strategy weights.  Both inventories then restart
from zero and both agents are sent back to spawn pads, frozen for a
uniform 10 to 100 steps.  An empty inventory on either side makes the
zap a no-op.  Collected resource cells regrow their original type.
"""

from __future__ import annotations

import numpy as np

from ..engine import cast_beam, cell_draws, open_cells, place_on_cells
from ..grid import Cell, Terrain
from ..rng import rng_uniform
from .base import ACTIONS_BASE, VecEnv

PAYOFF_ROW = np.array([[3.0, -1.0], [5.0, 1.0]])


def pd_payoffs(rho_row, rho_col, matrix=PAYOFF_ROW):
    """Bilinear inventory payoffs (r_row, r_col).

    Each inventory is normalized to strategy weights v = rho / sum(rho);
    the row player scores v_row^T A v_col and the column player the same
    form with A transposed.  Inventories must have positive totals.
    """
    v_row = np.asarray(rho_row, dtype=np.float64)
    v_col = np.asarray(rho_col, dtype=np.float64)
    tr, tc = v_row.sum(), v_col.sum()
    if tr <= 0 or tc <= 0:
        raise ValueError("pd_payoffs needs positive inventory totals")
    v_row, v_col = v_row / tr, v_col / tc
    return float(v_row @ matrix @ v_col), float(v_row @ matrix.T @ v_col)


class PdArenaEnv(VecEnv):
    name = "pd_arena"
    default_agents = 4
    action_names = ACTIONS_BASE + ("zap",)
    param_defaults = {
        "payoff_cc": 3.0,
        "payoff_cd": -1.0,
        "payoff_dc": 5.0,
        "payoff_dd": 1.0,
        "freeze_min": 10.0,
        "freeze_max": 100.0,
        "resource_respawn_prob": 0.02,
        "zap_length": 3.0,
    }

    def _prepare(self):
        self._original = self.map.items.copy()
        self._res_cells = np.argwhere(self._original != 0)
        self._res_kind = self._original[self._res_cells[:, 0], self._res_cells[:, 1]]
        self._matrix = np.array([
            [self.p["payoff_cc"], self.p["payoff_cd"]],
            [self.p["payoff_dc"], self.p["payoff_dd"]],
        ])
        self._spawns = np.argwhere(self.map.terrain == Terrain.SPAWN).astype(np.int16)

    def _reset_extra(self, state):
        state.extra["inv"] = np.zeros(
            (self.batch, self.num_agents, 2), dtype=np.int32)

    def _teleport(self, state, lanes, agent, u):
        """Send one agent per lane to a free spawn pad (stays put if none)."""
        if lanes.size == 0:
            return
        sp = self._spawns
        free = state.occ[lanes][:, sp[:, 0], sp[:, 1]] < 0
        n_free = free.sum(axis=1)
        ok = n_free > 0
        lanes, agent = lanes[ok], agent[ok]
        if lanes.size == 0:
            return
        k = np.minimum((u[ok] * n_free[ok]).astype(np.int64), n_free[ok] - 1)
        pick = np.argmax(np.cumsum(free[ok], axis=1) > k[:, None], axis=1)
        state.occ[lanes, state.pos[lanes, agent, 0], state.pos[lanes, agent, 1]] = -1
        state.pos[lanes, agent, 0] = sp[pick, 0]
        state.pos[lanes, agent, 1] = sp[pick, 1]
        state.occ[lanes, sp[pick, 0], sp[pick, 1]] = agent.astype(np.int8)

    def _beam_phase(self, state, actions, active, rewards, events, scratch):
        N = self.num_agents
        inv = state.extra["inv"]
        lanes_all = np.arange(self.batch)
        # Fixed draw schedule: freeze and teleport material every step.
        state.rng, freeze_u = rng_uniform(state.rng, N)
        state.rng, tele_u = rng_uniform(state.rng, N)
        f_lo = int(self.p["freeze_min"])
        f_hi = int(self.p["freeze_max"])
        length = int(self.p["zap_length"])
        snapshot = state.occ.copy()
        agent_mask = snapshot >= 0

        for i in range(N):
            fire = (actions[:, i] == 7) & active[:, i] & (inv[:, i].sum(axis=1) > 0)
            if not fire.any():
                continue
            cell, found = cast_beam(
                state.terrain, state.pos[:, i], state.orient[:, i],
                agent_mask, length, fire)
            hit = lanes_all[found]
            target = snapshot[hit, cell[found, 0], cell[found, 1]]
            ok = (target != i) & (inv[hit, target].sum(axis=1) > 0) & (
                inv[hit, i].sum(axis=1) > 0) & state.alive[hit, target]
            hit, target = hit[ok], target[ok]
            if hit.size == 0:
                continue
            v_row = inv[hit, i].astype(np.float64)
            v_row /= v_row.sum(axis=1, keepdims=True)
            v_col = inv[hit, target].astype(np.float64)
            v_col /= v_col.sum(axis=1, keepdims=True)
            rewards[hit, i] += np.einsum("bi,ij,bj->b", v_row, self._matrix, v_col)
            rewards[hit, target] += np.einsum(
                "bi,ij,bj->b", v_row, self._matrix.T, v_col)
            inv[hit, i] = 0
            inv[hit, target] = 0
            for lanes, agents in ((hit, np.full(hit.shape, i)), (hit, target)):
                dur = f_lo + (freeze_u[lanes, agents] * (f_hi - f_lo + 1)).astype(int)
                self._freeze(state, lanes, agents, dur)
                self._teleport(state, lanes, agents, tele_u[lanes, agents])

    def _consume_phase(self, state, actions, active, rewards, events, scratch):
        inv = state.extra["inv"]
        lanes = np.arange(self.batch)
        coop = np.zeros((self.batch, self.num_agents), dtype=np.float64)
        for i in range(self.num_agents):
            r, c = state.pos[:, i, 0], state.pos[:, i, 1]
            here = state.items[lanes, r, c]
            take_c = (here == Cell.RES_COOP) & active[:, i]
            take_d = (here == Cell.RES_DEFECT) & active[:, i]
            inv[take_c, i, 0] += 1
            inv[take_d, i, 1] += 1
            coop[take_c, i] += 1
            took = take_c | take_d
            state.items[lanes[took], r[took], c[took]] = 0
        self._add_event(events, "COOP_COLLECTED", coop)

    def _regrow_phase(self, state, rewards, events, scratch):
        cells = self._res_cells
        u = cell_draws(state, cells)
        land = (u < self.p["resource_respawn_prob"]) & open_cells(state, cells)
        place_on_cells(state, cells, land, self._res_kind)
