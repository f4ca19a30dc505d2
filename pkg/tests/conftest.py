import numpy as np
import pytest

from gridcommons.envs import ENV_CLASSES, make_env


def build_env(name, map_text=None, batch=1, **overrides):
    if map_text is not None:
        overrides["map"] = map_text
    config = make_env(name, overrides)
    return ENV_CLASSES[name](config, batch)


def place(env, state, cells, orients=None):
    """Put agents at explicit cells (facing north unless given)."""
    n = env.num_agents
    assert len(cells) == n
    state.occ[:] = -1
    for i, (r, c) in enumerate(cells):
        state.pos[:, i] = (r, c)
        state.occ[:, r, c] = i
    state.orient[:] = 0
    if orients is not None:
        for i, o in enumerate(orients):
            state.orient[:, i] = o
    return state


@pytest.fixture
def lanes():
    return np.arange


def noop_actions(env):
    return np.zeros((env.batch, env.num_agents), dtype=np.int64)
