"""gridcommons: batch-vectorized social-dilemma gridworld simulators.

Nine multi-agent environments with deterministic, counter-based RNG;
reward shaping (individual / common / social-value-orientation); per-env
cooperation metrics; a Schelling-curve harness that certifies dilemma
properties; and a throughput benchmark CLI.
"""

from .engine import OBS_H, OBS_W
from .envs import (
    ENV_NAMES,
    ConfigError,
    EnvConfig,
    EnvState,
    VecEnv,
    apple_regrowth_prob,
    cleanup_growth_prob,
    make_env,
    make_vec,
    pd_payoffs,
)
from .envs.single import Env, StepOutput
from .grid import Cell, MapError, Terrain, parse_map
from .metrics import MetricEvent, MetricReport, record, summarize
from .rewards import (
    COMMON,
    INDIVIDUAL,
    RewardMode,
    SvoConfig,
    common_reward,
    reward_angle,
    shape_rewards,
    svo_utility,
)
from .rng import Rng, make_rng, rng_split, rng_uniform

__version__ = "0.1.0"

__all__ = [
    "ENV_NAMES",
    "OBS_H",
    "OBS_W",
    "Cell",
    "ConfigError",
    "Env",
    "EnvConfig",
    "EnvState",
    "MapError",
    "MetricEvent",
    "MetricReport",
    "RewardMode",
    "Rng",
    "StepOutput",
    "SvoConfig",
    "Terrain",
    "VecEnv",
    "COMMON",
    "INDIVIDUAL",
    "apple_regrowth_prob",
    "cleanup_growth_prob",
    "common_reward",
    "make_env",
    "make_rng",
    "make_vec",
    "parse_map",
    "pd_payoffs",
    "record",
    "reward_angle",
    "rng_split",
    "rng_uniform",
    "shape_rewards",
    "summarize",
    "svo_utility",
]
