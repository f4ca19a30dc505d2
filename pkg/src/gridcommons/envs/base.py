"""Batched environment base: reset/step contract and the per-step phase order.

Each step applies, in this fixed order:

    1. timers       (unfreeze, respawn dead agents onto spawn pads)
    2. turns        (orientation changes)
    3. movement     (simultaneous, conflict-resolved)
    4. beams        (zap / clean / mine / gift / interact, agent-id order
                     on a snapshot of positions)
    5. consumption  (whatever the agent now stands on)
    6. regrowth     (stochastic item spawning, pollution drift)
    7. compose      (rewards, observations, step counter, done flag)

Per-instance RNG streams draw a fixed, state-independent number of values
in every phase, so a trajectory depends only on (config, seed, actions) —
never on batch size or scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..engine import (
    SimState,
    WindowGather,
    apply_turns,
    compose_cells,
    move_targets,
    resolve_moves,
    tick_timers,
)
from ..grid import parse_map, render_base
from ..rng import make_rng, rng_uniform

ACTIONS_BASE = (
    "noop",
    "forward",
    "backward",
    "strafe_left",
    "strafe_right",
    "turn_left",
    "turn_right",
)


class ConfigError(ValueError):
    pass


@dataclass
class EnvConfig:
    env_name: str
    num_agents: int
    episode_len: int
    map_text: str
    params: dict[str, float]

    def validate(self, min_spawns: int) -> None:
        if self.episode_len < 1:
            raise ConfigError("episode_len must be >= 1")
        if self.num_agents < 1:
            raise ConfigError("num_agents must be >= 1")
        if min_spawns < self.num_agents:
            raise ConfigError(
                f"map has {min_spawns} spawn cells but num_agents={self.num_agents}"
            )


@dataclass
class EnvState(SimState):
    """SimState plus environment-specific arrays (inventories, pollution...)."""

    extra: dict[str, np.ndarray] = field(default_factory=dict)

    def copy(self) -> "EnvState":
        return replace(
            self,
            items=self.items.copy(),
            occ=self.occ.copy(),
            step=self.step.copy(),
            pos=self.pos.copy(),
            orient=self.orient.copy(),
            frozen_until=self.frozen_until.copy(),
            alive=self.alive.copy(),
            respawn_at=self.respawn_at.copy(),
            rng=self.rng.copy(),
            extra={k: v.copy() for k, v in self.extra.items()},
        )


@dataclass
class VecStepOutput:
    obs: np.ndarray  # (B, N, 11, 11) uint8
    rewards: np.ndarray  # (B, N) float64
    done: np.ndarray  # (B,) bool
    events: dict[str, np.ndarray]


class VecEnv:
    """A batch of B identical-config instances stepped in lockstep.

    Subclasses define the action table, parameter defaults, and the three
    env-specific phases (beams, consumption, regrowth).
    """

    name = "base"
    default_agents = 7
    action_names: tuple[str, ...] = ACTIONS_BASE
    param_defaults: dict[str, float] = {}

    def __init__(self, config: EnvConfig, batch: int = 1):
        if batch < 1:
            raise ConfigError("batch must be >= 1")
        self.config = config
        self.batch = batch
        self.num_agents = config.num_agents
        self.episode_len = config.episode_len
        self.map = parse_map(config.map_text)
        config.validate(len(self.map.spawn_cells))
        self.p = dict(self.param_defaults)
        self.p.update(config.params)
        self._base_cells = render_base(self.map.terrain)
        self._gather = WindowGather(self.map.shape, batch)
        self._prepare()

    # -- subclass hooks -----------------------------------------------------

    def _prepare(self) -> None:
        """Precompute static masks from the parsed map."""

    def _reset_extra(self, state: EnvState) -> None:
        """Allocate env-specific arrays on a freshly reset state."""

    def _beam_phase(self, state: EnvState, actions, active, rewards, events, scratch) -> None:
        pass

    def _consume_phase(self, state: EnvState, actions, active, rewards, events, scratch) -> None:
        pass

    def _regrow_phase(self, state: EnvState, rewards, events, scratch) -> None:
        pass

    def _polluted(self, state: EnvState):
        return None

    # -- public API ----------------------------------------------------------

    @property
    def num_actions(self) -> int:
        return len(self.action_names)

    def reset(self, seed) -> tuple[EnvState, np.ndarray]:
        """Fresh state for the whole batch.

        A scalar seed derives instance i's stream from (seed, i), so the
        same instance replays identically in any batch size.  An array of
        per-instance seeds keys each lane independently.
        """
        B, N = self.batch, self.num_agents
        H, W = self.map.shape
        seed_arr = np.asarray(seed)
        if seed_arr.ndim == 1 and seed_arr.shape[0] != B:
            raise ValueError(f"need one seed per instance ({B})")
        rng = make_rng(seed_arr, B)

        spawns = self.map.spawn_cells
        S = len(spawns)
        rng, shuffle_u = rng_uniform(rng, S)
        order = np.argsort(shuffle_u, axis=1, kind="stable")  # (B, S)
        picked = spawns[order[:, :N]]  # (B, N, 2)
        rng, orient_u = rng_uniform(rng, N)

        occ = np.full((B, H, W), -1, dtype=np.int8)
        b_idx = np.repeat(np.arange(B), N)
        a_idx = np.tile(np.arange(N), B)
        occ[b_idx, picked[:, :, 0].ravel(), picked[:, :, 1].ravel()] = a_idx.astype(np.int8)

        state = EnvState(
            terrain=self.map.terrain,
            items=np.broadcast_to(self.map.items, (B, H, W)).copy(),
            occ=occ,
            step=np.zeros(B, dtype=np.int32),
            pos=picked.astype(np.int16),
            orient=(orient_u * 4).astype(np.int8),
            frozen_until=np.zeros((B, N), dtype=np.int32),
            alive=np.ones((B, N), dtype=bool),
            respawn_at=np.zeros((B, N), dtype=np.int32),
            rng=rng,
        )
        self._reset_extra(state)
        return state, self._observe(state)

    def step(self, state: EnvState, actions: np.ndarray) -> tuple[EnvState, VecStepOutput]:
        actions = np.asarray(actions)
        if actions.shape != (self.batch, self.num_agents):
            raise ValueError(f"actions must have shape {(self.batch, self.num_agents)}")
        if actions.min() < 0 or actions.max() >= self.num_actions:
            raise ValueError(f"action out of range for {self.name} "
                             f"(got {int(actions.max())}, table size {self.num_actions})")
        state = state.copy()
        rewards = np.zeros((self.batch, self.num_agents), dtype=np.float64)
        events: dict[str, np.ndarray] = {}

        tick_timers(state)
        active = state.active()
        apply_turns(state, actions, active)
        targets = move_targets(state.pos, state.orient, actions, active)
        state.occ, state.pos, state.rng = resolve_moves(
            state.terrain, state.occ, state.pos, targets, state.alive, state.rng)
        scratch: dict = {}
        self._beam_phase(state, actions, active, rewards, events, scratch)
        self._consume_phase(state, actions, active, rewards, events, scratch)
        self._regrow_phase(state, rewards, events, scratch)

        state.step = state.step + 1
        done = state.step >= self.episode_len
        return state, VecStepOutput(self._observe(state), rewards, done, events)

    def _observe(self, state: EnvState) -> np.ndarray:
        cells = compose_cells(state, self._base_cells, self._polluted(state))
        return self._gather.extract(cells, state)

    def render_cells(self, state: EnvState) -> np.ndarray:
        """(B, H, W) merged cell-code grids, as a third-person view."""
        return compose_cells(state, self._base_cells, self._polluted(state))

    # -- shared helpers ------------------------------------------------------

    def _occupied_snapshot(self, state: EnvState) -> np.ndarray:
        return state.occ >= 0

    def _freeze(self, state: EnvState, lanes, agents, steps) -> None:
        """Make agents inactive for `steps` subsequent step() calls."""
        state.frozen_until[lanes, agents] = state.step[lanes] + steps + 1

    def _add_event(self, events: dict, kind: str, value: np.ndarray) -> None:
        if kind in events:
            events[kind] = events[kind] + value
        else:
            events[kind] = value
