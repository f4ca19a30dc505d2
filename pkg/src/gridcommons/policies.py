"""Scripted per-environment cooperator/defector heuristics, plus random.

Policies are reactive maps from the egocentric 11x11 window to an action,
vectorized over a batch of episodes.  They substitute for trained agents
when probing incentive structure: cooperators follow the restraint rule
of their environment (sustainable harvesting, cleaning, gold mining,
gifting...), defectors grab private value and attack on sight.

All geometry below is in window coordinates: the observer sits at
(9, 5) facing up, so dr = row - 9 is negative ahead of the agent and
dc = col - 5 is positive to its right.
"""

from __future__ import annotations

import numpy as np

from .engine import ANCHOR, OBS_H, OBS_W, count_disc
from .grid import Cell
from .rng import Rng, rng_uniform

NOOP, FORWARD, BACKWARD, STRAFE_L, STRAFE_R, TURN_L, TURN_R = range(7)

_FAR = 10_000


class Policy:
    """Behavioral contract: (window, private memory, rng) -> action.

    act() is vectorized over a batch of B seats holding the same role;
    memory is per-seat and opaque to the harness.
    """

    role = "external"

    def init_mem(self, batch: int):
        return None

    def act(self, obs: np.ndarray, mem, rng: Rng, agent_id: int):
        raise NotImplementedError


class NoopPolicy(Policy):
    role = "random"

    def act(self, obs, mem, rng, agent_id):
        return np.zeros(obs.shape[0], dtype=np.int64), mem, rng


class RandomPolicy(Policy):
    role = "random"

    def __init__(self, num_actions: int):
        self.num_actions = num_actions

    def act(self, obs, mem, rng, agent_id):
        rng, u = rng_uniform(rng, 1)
        return (u[:, 0] * self.num_actions).astype(np.int64), mem, rng


def _mask_of(obs, codes) -> np.ndarray:
    mask = np.zeros(obs.shape, dtype=bool)
    for code in codes:
        mask |= obs == code
    return mask


def _nearest(mask: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nearest set cell by Manhattan distance from the anchor.

    Returns (found (B,), dr (B,), dc (B,)); dr/dc are 0 when nothing is set.
    Ties break toward the top-left of the window, deterministically.
    """
    B = mask.shape[0]
    rr, cc = np.meshgrid(np.arange(OBS_H), np.arange(OBS_W), indexing="ij")
    dist = np.abs(rr - ANCHOR[0]) + np.abs(cc - ANCHOR[1])
    scores = np.where(mask, dist, _FAR).reshape(B, -1)
    idx = scores.argmin(axis=1)
    found = scores[np.arange(B), idx] < _FAR
    dr = idx // OBS_W - ANCHOR[0]
    dc = idx % OBS_W - ANCHOR[1]
    return found, np.where(found, dr, 0), np.where(found, dc, 0)


def _approach(dr, dc) -> np.ndarray:
    """Greedy step toward a window offset, longest axis first."""
    act = np.full(dr.shape, NOOP, dtype=np.int64)
    row_first = np.abs(dr) >= np.abs(dc)
    act[(dr < 0) & row_first] = FORWARD
    act[(dr > 0) & row_first] = BACKWARD
    act[(dc < 0) & ~row_first] = STRAFE_L
    act[(dc > 0) & ~row_first] = STRAFE_R
    # degenerate axes: fall through to the other one
    zero_row = row_first & (dr == 0)
    act[zero_row & (dc < 0)] = STRAFE_L
    act[zero_row & (dc > 0)] = STRAFE_R
    zero_col = ~row_first & (dc == 0)
    act[zero_col & (dr < 0)] = FORWARD
    act[zero_col & (dr > 0)] = BACKWARD
    return act


def _aim(dr, dc, beam_len=3) -> tuple[np.ndarray, np.ndarray]:
    """(aligned, action) for pointing the forward beam at a target.

    Aligned means straight ahead within beam range.  Otherwise strafe to
    close the lateral gap while ahead, or turn toward the target's side.
    """
    aligned = (dc == 0) & (dr < 0) & (dr >= -beam_len)
    act = np.full(dr.shape, NOOP, dtype=np.int64)
    ahead = dr < 0
    act[ahead & (dc < 0)] = STRAFE_L
    act[ahead & (dc > 0)] = STRAFE_R
    act[ahead & (dc == 0) & (dr < -beam_len)] = FORWARD
    act[~ahead & (dc <= 0)] = TURN_L
    act[~ahead & (dc > 0)] = TURN_R
    return aligned, act


def _wander(rng: Rng) -> tuple[np.ndarray, Rng]:
    rng, u = rng_uniform(rng, 1)
    # forward-biased drift: mostly forward, sometimes turn
    roll = u[:, 0]
    act = np.full(roll.shape, FORWARD, dtype=np.int64)
    act[roll > 0.7] = TURN_L
    act[roll > 0.85] = TURN_R
    return act, rng


_DESTINATION = {
    FORWARD: (ANCHOR[0] - 1, ANCHOR[1]),
    BACKWARD: (ANCHOR[0] + 1, ANCHOR[1]),
    STRAFE_L: (ANCHOR[0], ANCHOR[1] - 1),
    STRAFE_R: (ANCHOR[0], ANCHOR[1] + 1),
}


def _avoid(act: np.ndarray, avoid_mask: np.ndarray) -> np.ndarray:
    """Turn instead of stepping onto a cell the role must not consume."""
    out = act.copy()
    for code, (r, c) in _DESTINATION.items():
        bad = (act == code) & avoid_mask[:, r, c]
        out[bad] = TURN_L
    return out


def _others_mask(obs) -> np.ndarray:
    return obs >= Cell.AGENT0


class _Scripted(Policy):
    def __init__(self, role: str, fire_action: int | None = None):
        self.role = role
        self.fire_action = fire_action

    def _fallback(self, obs, rng):
        return _wander(rng)


class HarvestPolicy(_Scripted):
    """Cooperators only take apples whose window disc still shows >= 3
    others; defectors take anything and zap agents on sight."""

    def __init__(self, role):
        super().__init__(role, fire_action=7)

    def act(self, obs, mem, rng, agent_id):
        apples = _mask_of(obs, [Cell.APPLE])
        if self.role == "cooperator":
            rich = count_disc(apples) >= 3
            found, dr, dc = _nearest(apples & rich)
            act, rng = self._fallback(obs, rng)
            sel = _approach(dr, dc)
            act[found] = sel[found]
            # never take an apple whose local patch has thinned out
            return _avoid(act, apples & ~rich), mem, rng
        act, rng = self._fallback(obs, rng)
        found_a, dr_a, dc_a = _nearest(apples)
        sel = _approach(dr_a, dc_a)
        act[found_a] = sel[found_a]
        found_z, dr_z, dc_z = _nearest(_others_mask(obs))
        aligned, _ = _aim(dr_z, dc_z)
        act[found_z & aligned] = self.fire_action
        return act, mem, rng


class CleanUpPolicy(_Scripted):
    """Cooperators clean any polluted tile they can see, else harvest;
    defectors only harvest."""

    def act(self, obs, mem, rng, agent_id):
        apples = _mask_of(obs, [Cell.APPLE])
        act, rng = self._fallback(obs, rng)
        found_a, dr_a, dc_a = _nearest(apples)
        sel = _approach(dr_a, dc_a)
        act[found_a] = sel[found_a]
        if self.role == "cooperator":
            found_p, dr_p, dc_p = _nearest(_mask_of(obs, [Cell.RIVER_POLLUTED]))
            aligned, aim_act = _aim(dr_p, dc_p)
            act[found_p] = aim_act[found_p]
            act[found_p & aligned] = 8  # clean
        return act, mem, rng


class CoinsPolicy(_Scripted):
    """Cooperators chase only their own color; defectors take the nearest."""

    def act(self, obs, mem, rng, agent_id):
        own = Cell.COIN_RED if agent_id == 0 else Cell.COIN_BLUE
        other = Cell.COIN_BLUE if agent_id == 0 else Cell.COIN_RED
        if self.role == "cooperator":
            targets = _mask_of(obs, [own])
        else:
            targets = _mask_of(obs, [Cell.COIN_RED, Cell.COIN_BLUE])
        act, rng = self._fallback(obs, rng)
        found, dr, dc = _nearest(targets)
        sel = _approach(dr, dc)
        act[found] = sel[found]
        if self.role == "cooperator":
            act = _avoid(act, _mask_of(obs, [other]))
        return act, mem, rng


class MiningPolicy(_Scripted):
    """Cooperators work gold (and loiter at partially mined ore);
    defectors stick to iron."""

    def act(self, obs, mem, rng, agent_id):
        if self.role == "cooperator":
            targets = _mask_of(obs, [Cell.GOLD_PARTIAL, Cell.GOLD])
        else:
            targets = _mask_of(obs, [Cell.IRON])
        act, rng = self._fallback(obs, rng)
        found, dr, dc = _nearest(targets)
        aligned, aim_act = _aim(dr, dc)
        act[found] = aim_act[found]
        act[found & aligned] = 8  # mine
        return act, mem, rng


class MushroomsPolicy(_Scripted):
    """Cooperators prefer blue then green mushrooms; defectors eat red."""

    def act(self, obs, mem, rng, agent_id):
        act, rng = self._fallback(obs, rng)
        if self.role == "cooperator":
            for codes in ([Cell.MUSH_GREEN], [Cell.MUSH_BLUE]):
                found, dr, dc = _nearest(_mask_of(obs, codes))
                sel = _approach(dr, dc)
                act[found] = sel[found]
            act = _avoid(act, _mask_of(obs, [Cell.MUSH_ORANGE]))
        else:
            found, dr, dc = _nearest(_mask_of(obs, [Cell.MUSH_RED]))
            sel = _approach(dr, dc)
            act[found] = sel[found]
            act = _avoid(act, _mask_of(
                obs, [Cell.MUSH_GREEN, Cell.MUSH_BLUE, Cell.MUSH_ORANGE]))
        return act, mem, rng


class GiftPolicy(_Scripted):
    """Cooperators hand their stock to the first agent they line up;
    defectors bank it with consume."""

    def act(self, obs, mem, rng, agent_id):
        act = np.full(obs.shape[0], 8, dtype=np.int64)  # consume by default
        tokens = _mask_of(obs, [Cell.TOKEN])
        found_t, dr_t, dc_t = _nearest(tokens)
        sel = _approach(dr_t, dc_t)
        act[found_t] = sel[found_t]
        if self.role == "cooperator":
            found_g, dr_g, dc_g = _nearest(_others_mask(obs))
            aligned, aim_act = _aim(dr_g, dc_g)
            give = found_g & ~found_t
            act[give] = aim_act[give]
            act[give & aligned] = 7  # gift
        return act, mem, rng


class PdArenaPolicy(_Scripted):
    """Cooperators stock green, defectors red; both zap on sight."""

    def act(self, obs, mem, rng, agent_id):
        if self.role == "cooperator":
            code, shun = Cell.RES_COOP, Cell.RES_DEFECT
        else:
            code, shun = Cell.RES_DEFECT, Cell.RES_COOP
        act, rng = self._fallback(obs, rng)
        found, dr, dc = _nearest(_mask_of(obs, [code]))
        sel = _approach(dr, dc)
        act[found] = sel[found]
        act = _avoid(act, _mask_of(obs, [shun]))
        found_z, dr_z, dc_z = _nearest(_others_mask(obs))
        aligned, _ = _aim(dr_z, dc_z)
        act[found_z & aligned] = 7  # interact
        return act, mem, rng


_POLICY_CLASSES = {
    "coins": CoinsPolicy,
    "harvest_open": HarvestPolicy,
    "harvest_closed": HarvestPolicy,
    "harvest_partnership": HarvestPolicy,
    "clean_up": CleanUpPolicy,
    "coop_mining": MiningPolicy,
    "mushrooms": MushroomsPolicy,
    "gift_refinement": GiftPolicy,
    "pd_arena": PdArenaPolicy,
}


def scripted_policy(env_name: str, role: str) -> Policy:
    """Documented heuristic for the env, role in {cooperator, defector,
    random}."""
    if role == "random":
        from .envs import ENV_CLASSES
        return RandomPolicy(len(ENV_CLASSES[env_name].action_names))
    if role not in ("cooperator", "defector"):
        raise ValueError(f"unknown role {role!r}")
    if env_name not in _POLICY_CLASSES:
        raise ValueError(f"unknown environment {env_name!r}")
    return _POLICY_CLASSES[env_name](role)
