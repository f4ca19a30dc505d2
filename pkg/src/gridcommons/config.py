"""Flat key/value config documents.

One `key = value` pair per line; blank lines and `#` comments ignored.
Map rows are given as repeated `map_row` keys (in order) or via
`map_file`.  Reward shaping keys (reward_mode, svo_w,
svo_ideal_angle_degrees, svo_target_agents) ride in the same document.

Example:

    env = clean_up
    num_agents = 7
    episode_len = 1000
    reward_mode = svo
    svo_ideal_angle_degrees = 90
    svo_w = 0.5
"""

from __future__ import annotations

from .envs import ConfigError, EnvConfig, make_env
from .rewards import COMMON, INDIVIDUAL, RewardMode, SvoConfig

_META_KEYS = {"env", "num_agents", "episode_len", "map_file"}
_REWARD_KEYS = {"reward_mode", "svo_w", "svo_ideal_angle_degrees",
                "svo_target_agents"}


def parse_config_text(text: str) -> tuple[EnvConfig, RewardMode]:
    """Parse a config document; errors name the offending line and key."""
    pairs: list[tuple[int, str, str]] = []
    map_rows: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key == "map_row":
            map_rows.append(value)
        else:
            pairs.append((lineno, key, value))

    kv = {}
    for lineno, key, value in pairs:
        if key in kv:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        kv[(key)] = (lineno, value)

    if "env" not in kv:
        raise ConfigError("missing required key 'env'")
    env_name = kv.pop("env")[1]

    overrides: dict = {}
    reward_kv: dict[str, str] = {}
    for key, (lineno, value) in kv.items():
        if key in _REWARD_KEYS:
            reward_kv[key] = value
        elif key == "map_file":
            with open(value) as fh:
                overrides["map"] = fh.read()
        elif key in ("num_agents", "episode_len"):
            try:
                overrides[key] = int(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: {key} must be an integer") from None
        else:
            try:
                overrides[key] = float(value)
            except ValueError:
                raise ConfigError(
                    f"line {lineno}: value for {key!r} is not numeric") from None
    if map_rows:
        overrides["map"] = "\n".join(map_rows)

    config = make_env(env_name, overrides)
    return config, _parse_reward(reward_kv)


def _parse_reward(kv: dict[str, str]) -> RewardMode:
    kind = kv.get("reward_mode", "individual")
    if kind == "individual":
        return INDIVIDUAL
    if kind == "common":
        return COMMON
    if kind != "svo":
        raise ConfigError(f"unknown reward_mode {kind!r}")
    targets = None
    if "svo_target_agents" in kv and kv["svo_target_agents"].strip():
        targets = [int(v) for v in kv["svo_target_agents"].split(",")]
    svo = SvoConfig.from_degrees(
        float(kv.get("svo_ideal_angle_degrees", 45.0)),
        float(kv.get("svo_w", 0.5)),
        targets,
    )
    return RewardMode("svo", svo)


def reward_mode_from_flags(kind: str, angle_deg: float, w: float,
                           targets=None) -> RewardMode:
    if kind == "individual":
        return INDIVIDUAL
    if kind == "common":
        return COMMON
    if kind == "svo":
        return RewardMode("svo", SvoConfig.from_degrees(angle_deg, w, targets))
    raise ConfigError(f"unknown reward_mode {kind!r}")
