"""Embedding boundary for external RL trainers.

Four flat, versioned calls exchange contiguous numeric buffers with the
simulator:

    handle = v1_create(config_text)      # the flat key/value config format
    obs    = v1_reset(handle, seed)      # (num_agents, 11, 11) uint8
    obs, rewards, done, events = v1_step(handle, actions)
    v1_close(handle)                     # idempotent

Observations are categorical cell-code grids (row-major uint8), rewards
float64, actions any integer sequence of length num_agents.  Events come
back as (kind, agent_or_None, amount) tuples.  All shapes are discoverable
from the handle.  Handles are independent of each other; a single handle
must not be driven by concurrent callers.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from gridcommons.config import parse_config_text
from gridcommons.envs import ENV_CLASSES, EnvConfig
from gridcommons.metrics import events_from_arrays

__version__ = "0.1.0"

OBS_SHAPE = (11, 11)


class BindingsError(RuntimeError):
    pass


@dataclass
class EnvHandle:
    """Opaque instance id plus cached shapes."""

    handle_id: int
    num_agents: int
    obs_shape: tuple[int, int]
    num_actions: int
    _config: EnvConfig = field(repr=False, default=None)
    _env: object = field(repr=False, default=None)
    _state: object = field(repr=False, default=None)
    _closed: bool = field(repr=False, default=False)


_registry: dict[int, EnvHandle] = {}
_next_id = 1
_lock = threading.Lock()
_config_cache: dict[str, EnvConfig] = {}


def _live(handle) -> EnvHandle:
    h = handle if isinstance(handle, EnvHandle) else _registry.get(handle)
    if h is None or h._closed or h.handle_id not in _registry:
        raise BindingsError("operation on a closed or unknown handle")
    return h


def v1_create(config_text: str) -> EnvHandle:
    """Parse a config document and return a live handle.

    Parse errors from the config layer carry the offending line and key.
    """
    global _next_id
    config = _config_cache.get(config_text)
    if config is None:
        config, _ = parse_config_text(config_text)
        if len(_config_cache) < 256:
            _config_cache[config_text] = config
    cls = ENV_CLASSES[config.env_name]
    with _lock:
        handle_id = _next_id
        _next_id += 1
        h = EnvHandle(
            handle_id=handle_id,
            num_agents=config.num_agents,
            obs_shape=OBS_SHAPE,
            num_actions=len(cls.action_names),
            _config=config,
        )
        _registry[handle_id] = h
    return h


def v1_reset(handle, seed: int) -> np.ndarray:
    """(num_agents, 11, 11) uint8 observation buffer, row-major."""
    h = _live(handle)
    if h._env is None:
        h._env = ENV_CLASSES[h._config.env_name](h._config, batch=1)
    state, obs = h._env.reset(int(seed))
    h._state = state
    return np.ascontiguousarray(obs[0])


def v1_step(handle, actions):
    """Advance one step; returns (obs, rewards, done, events).

    actions must hold num_agents integers, each within the action table.
    On a bad action the call raises and the handle's state is unchanged.
    """
    h = _live(handle)
    if h._state is None:
        raise BindingsError("step before reset")
    acts = np.asarray(actions)
    if acts.shape != (h.num_agents,):
        raise BindingsError(
            f"actions buffer must have length {h.num_agents}, got {acts.shape}")
    step_index = int(h._state.step[0])
    new_state, out = h._env.step(h._state, acts.reshape(1, -1))
    h._state = new_state
    events = [(e.kind, e.agent, e.amount)
              for e in events_from_arrays(out.events, step_index)]
    return (
        np.ascontiguousarray(out.obs[0]),
        np.ascontiguousarray(out.rewards[0]),
        bool(out.done[0]),
        events,
    )


def v1_close(handle) -> None:
    """Release a handle; closing twice is fine."""
    h = handle if isinstance(handle, EnvHandle) else _registry.get(handle)
    if h is None:
        return
    with _lock:
        _registry.pop(h.handle_id, None)
    h._closed = True
    h._env = None
    h._state = None


def v1_live_handles() -> int:
    """Resource probe used by the leak soak test."""
    return len(_registry)
