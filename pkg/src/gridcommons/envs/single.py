"""Single-instance wrapper over the batched engine (batch size 1)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..metrics import MetricEvent, events_from_arrays
from .base import EnvConfig, EnvState
from . import ENV_CLASSES, make_env


@dataclass
class StepOutput:
    obs: np.ndarray  # (N, 11, 11) uint8
    rewards: np.ndarray  # (N,) float64
    done: bool
    events: list[MetricEvent]


class Env:
    """reset/step over one instance; same trajectories as lane 0 of a batch."""

    def __init__(self, config: EnvConfig | str, overrides: dict | None = None):
        if isinstance(config, str):
            config = make_env(config, overrides)
        self.config = config
        self.vec = ENV_CLASSES[config.env_name](config, batch=1)

    @property
    def num_agents(self) -> int:
        return self.vec.num_agents

    @property
    def num_actions(self) -> int:
        return self.vec.num_actions

    @property
    def action_names(self):
        return self.vec.action_names

    def reset(self, seed: int) -> tuple[EnvState, np.ndarray]:
        state, obs = self.vec.reset(seed)
        return state, obs[0]

    def step(self, state: EnvState, actions) -> tuple[EnvState, StepOutput]:
        acts = np.asarray(actions, dtype=np.int64).reshape(1, self.num_agents)
        step_index = int(state.step[0])
        state, out = self.vec.step(state, acts)
        events = events_from_arrays(out.events, step_index)
        return state, StepOutput(
            obs=out.obs[0],
            rewards=out.rewards[0],
            done=bool(out.done[0]),
            events=events,
        )

    def render_cells(self, state: EnvState) -> np.ndarray:
        return self.vec.render_cells(state)[0]
