"""Four mushroom types with private, shared, and altruistic payoffs.

Red pays +1 to the eater, green +2 split equally over everyone, blue +3
split over everyone except the eater, orange costs every agent 0.2.
Eating freezes the eater while digesting (10/15/20 steps; orange none).
Mushrooms regrow at their original map cells when triggered: any
consumption triggers missing reds at 0.25, green-or-blue triggers greens
at 0.4, blue triggers blues at 0.6, orange triggers oranges at 1.
"""

from __future__ import annotations

import numpy as np

from ..engine import cell_draws, open_cells, place_on_cells
from ..grid import Cell
from .base import ACTIONS_BASE, VecEnv


class MushroomsEnv(VecEnv):
    name = "mushrooms"
    default_agents = 7
    action_names = ACTIONS_BASE
    param_defaults = {
        "red_reward": 1.0,
        "green_reward": 2.0,
        "blue_reward": 3.0,
        "orange_penalty": -0.2,
        "digest_red": 10.0,
        "digest_green": 15.0,
        "digest_blue": 20.0,
        "regrow_red": 0.25,
        "regrow_green": 0.4,
        "regrow_blue": 0.6,
        "regrow_orange": 1.0,
    }

    def _prepare(self):
        self._original = self.map.items.copy()
        self._mush_cells = np.argwhere(self._original != 0)
        self._cell_kind = self._original[
            self._mush_cells[:, 0], self._mush_cells[:, 1]]

    def _consume_phase(self, state, actions, active, rewards, events, scratch):
        B, N = self.batch, self.num_agents
        lanes = np.arange(B)
        eaten = np.zeros((B, 4), dtype=bool)  # red/green/blue/orange this step
        blue_eaten = np.zeros((B, N), dtype=np.float64)
        for i in range(N):
            r, c = state.pos[:, i, 0], state.pos[:, i, 1]
            here = state.items[lanes, r, c]

            red = (here == Cell.MUSH_RED) & active[:, i]
            rewards[red, i] += self.p["red_reward"]
            self._freeze(state, lanes[red], i, int(self.p["digest_red"]))

            green = (here == Cell.MUSH_GREEN) & active[:, i]
            rewards[green, :] += self.p["green_reward"] / N
            self._freeze(state, lanes[green], i, int(self.p["digest_green"]))

            blue = (here == Cell.MUSH_BLUE) & active[:, i]
            if N > 1:
                share = self.p["blue_reward"] / (N - 1)
                rewards[blue, :] += share
                rewards[blue, i] -= share  # eater gets nothing
            blue_eaten[blue, i] += 1
            self._freeze(state, lanes[blue], i, int(self.p["digest_blue"]))

            orange = (here == Cell.MUSH_ORANGE) & active[:, i]
            rewards[orange, :] += self.p["orange_penalty"]

            any_eaten = red | green | blue | orange
            state.items[lanes[any_eaten], r[any_eaten], c[any_eaten]] = 0
            eaten[:, 0] |= red
            eaten[:, 1] |= green
            eaten[:, 2] |= blue
            eaten[:, 3] |= orange
        scratch["eaten"] = eaten
        self._add_event(events, "BLUE_EATEN", blue_eaten)

    def _regrow_phase(self, state, rewards, events, scratch):
        eaten = scratch["eaten"]
        any_eaten = eaten.any(axis=1)
        green_or_blue = eaten[:, 1] | eaten[:, 2]

        # Per-cell probability = type rate gated by this step's trigger.
        cells = self._mush_cells
        prob = np.zeros((self.batch, len(cells)), dtype=np.float64)
        triggers = (
            (Cell.MUSH_RED, self.p["regrow_red"], any_eaten),
            (Cell.MUSH_GREEN, self.p["regrow_green"], green_or_blue),
            (Cell.MUSH_BLUE, self.p["regrow_blue"], eaten[:, 2]),
            (Cell.MUSH_ORANGE, self.p["regrow_orange"], eaten[:, 3]),
        )
        for kind, rate, trig in triggers:
            sel = trig[:, None] & (self._cell_kind == kind)[None, :]
            prob[sel] = rate

        u = cell_draws(state, cells)
        grow = (u < prob) & open_cells(state, cells)
        place_on_cells(state, cells, grow, self._cell_kind)
