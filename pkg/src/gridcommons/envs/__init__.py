"""Environment registry and construction."""

from __future__ import annotations

from .base import ConfigError, EnvConfig, EnvState, VecEnv, VecStepOutput
from .cleanup import CleanUpEnv, cleanup_growth_prob
from .coins import CoinsEnv
from .gift import GiftEnv
from .harvest import HarvestClosedEnv, HarvestEnv, HarvestPartnershipEnv, apple_regrowth_prob
from .maps import DEFAULT_MAPS
from .mining import CoopMiningEnv
from .mushrooms import MushroomsEnv
from .pd_arena import PdArenaEnv, pd_payoffs

ENV_CLASSES: dict[str, type[VecEnv]] = {
    cls.name: cls
    for cls in (
        CoinsEnv,
        HarvestEnv,
        HarvestClosedEnv,
        HarvestPartnershipEnv,
        CleanUpEnv,
        CoopMiningEnv,
        MushroomsEnv,
        GiftEnv,
        PdArenaEnv,
    )
}

ENV_NAMES = tuple(ENV_CLASSES)


def make_env(name: str, overrides: dict | None = None) -> EnvConfig:
    """Config with this environment's defaults merged with overrides.

    Recognized override keys: num_agents, episode_len, map, plus the
    environment's parameter table.  Anything else is rejected.
    """
    if name not in ENV_CLASSES:
        raise ConfigError(f"unknown environment {name!r}; choose from {ENV_NAMES}")
    cls = ENV_CLASSES[name]
    overrides = dict(overrides or {})
    config = EnvConfig(
        env_name=name,
        num_agents=int(overrides.pop("num_agents", cls.default_agents)),
        episode_len=int(overrides.pop("episode_len", 1000)),
        map_text=str(overrides.pop("map", DEFAULT_MAPS[name])),
        params={},
    )
    for key, value in overrides.items():
        if key not in cls.param_defaults:
            raise ConfigError(f"unknown parameter {key!r} for {name}")
        config.params[key] = float(value)
    return config


def make_vec(name: str, batch: int = 1, overrides: dict | None = None) -> VecEnv:
    config = make_env(name, overrides)
    return ENV_CLASSES[name](config, batch)


__all__ = [
    "ConfigError",
    "EnvConfig",
    "EnvState",
    "VecEnv",
    "VecStepOutput",
    "ENV_CLASSES",
    "ENV_NAMES",
    "DEFAULT_MAPS",
    "make_env",
    "make_vec",
    "apple_regrowth_prob",
    "cleanup_growth_prob",
    "pd_payoffs",
]
