"""Commons Harvest: apples regrow at a rate set by local apple density.

Regrowth only happens on cells that held an apple in the initial layout
(the orchard).  The probability per empty orchard cell depends on how many
apples sit within Euclidean distance 2: 0 -> 0, 1 -> 0.001, 2 -> 0.005,
3 or more -> 0.025.  A fully emptied patch therefore never comes back.

The zap beam removes the struck agent for `zap_respawn_delay` steps; it
then reappears on a free spawn pad.  The open/closed/partnership variants
differ only in their default maps.
"""

from __future__ import annotations

import numpy as np

from ..engine import cast_beam, cell_draws, count_disc, open_cells, place_on_cells
from ..grid import Cell
from .base import ACTIONS_BASE, VecEnv


def apple_regrowth_prob(neighbor_apples, one=0.001, two=0.005, three_plus=0.025):
    """Regrowth probability for an empty orchard cell given nearby apples.

    Accepts scalars or arrays; the count is over the 12-cell disc of
    Euclidean radius 2.
    """
    table = np.array([0.0, one, two, three_plus])
    idx = np.minimum(np.asarray(neighbor_apples, dtype=np.int64), 3)
    if np.any(idx < 0):
        raise ValueError("neighbor count must be >= 0")
    out = table[idx]
    return float(out) if np.isscalar(neighbor_apples) else out


class HarvestEnv(VecEnv):
    name = "harvest_open"
    default_agents = 7
    action_names = ACTIONS_BASE + ("zap",)
    param_defaults = {
        "apple_reward": 1.0,
        "regrow_one": 0.001,
        "regrow_two": 0.005,
        "regrow_three_plus": 0.025,
        "zap_length": 3.0,
        "zap_respawn_delay": 25.0,
    }

    def _prepare(self):
        self._orchard = self.map.items == Cell.APPLE
        self._orchard_cells = np.argwhere(self._orchard)

    def _zap_phase(self, state, actions, active, zap_code=7):
        """Shared attack beam: hit agents are removed until their timer."""
        snapshot = state.occ.copy()
        agent_mask = snapshot >= 0
        delay = int(self.p["zap_respawn_delay"])
        length = int(self.p["zap_length"])
        lanes = np.arange(self.batch)
        for i in range(self.num_agents):
            fire = (actions[:, i] == zap_code) & active[:, i]
            if not fire.any():
                continue
            cell, found = cast_beam(
                state.terrain, state.pos[:, i], state.orient[:, i],
                agent_mask, length, fire)
            hit_lanes = lanes[found]
            victims = snapshot[hit_lanes, cell[found, 0], cell[found, 1]]
            still = state.alive[hit_lanes, victims]
            hit_lanes, victims = hit_lanes[still], victims[still]
            state.alive[hit_lanes, victims] = False
            state.respawn_at[hit_lanes, victims] = state.step[hit_lanes] + delay
            vr = state.pos[hit_lanes, victims, 0]
            vc = state.pos[hit_lanes, victims, 1]
            state.occ[hit_lanes, vr, vc] = -1

    def _beam_phase(self, state, actions, active, rewards, events, scratch):
        self._zap_phase(state, actions, active)

    def _consume_phase(self, state, actions, active, rewards, events, scratch):
        lanes = np.arange(self.batch)
        for i in range(self.num_agents):
            r, c = state.pos[:, i, 0], state.pos[:, i, 1]
            take = (state.items[lanes, r, c] == Cell.APPLE) & active[:, i]
            if take.any():
                rewards[take, i] += self.p["apple_reward"]
                state.items[lanes[take], r[take], c[take]] = 0

    def _regrow_phase(self, state, rewards, events, scratch):
        cells = self._orchard_cells
        apples = state.items == Cell.APPLE
        n = count_disc(apples)[:, cells[:, 0], cells[:, 1]]
        prob = apple_regrowth_prob(
            n, self.p["regrow_one"], self.p["regrow_two"],
            self.p["regrow_three_plus"])
        u = cell_draws(state, cells)
        grow = (u < prob) & open_cells(state, cells)
        place_on_cells(state, cells, grow, Cell.APPLE)
        self._add_event(
            events, "APPLES_ON_MAP",
            (state.items == Cell.APPLE).sum(axis=(1, 2)).astype(np.float64))


class HarvestClosedEnv(HarvestEnv):
    name = "harvest_closed"


class HarvestPartnershipEnv(HarvestEnv):
    name = "harvest_partnership"
