"""Reward shaping: individual, common, and social-value-orientation modes.

The reward angle theta(R) = atan2(mean of others' rewards, own reward),
clamped into [0, pi/2]; when both arguments are zero there is no defined
angle and no penalty is applied.  The shaped utility is

    U_i = r_i - w * |theta_target - theta(R)|        (angles in radians)

so w = 0 and exact-angle matches both leave rewards untouched, and the
penalty can only ever lower a reward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class SvoConfig:
    theta: float  # target angle, radians in [0, pi/2]
    w: float
    targets: frozenset[int] | None = None  # None = every agent

    def __post_init__(self):
        if not 0.0 <= self.theta <= HALF_PI:
            raise ValueError("target angle must lie in [0, pi/2] radians")
        if self.w < 0:
            raise ValueError("svo weight must be nonnegative")

    @classmethod
    def from_degrees(cls, degrees: float, w: float, targets=None) -> "SvoConfig":
        return cls(math.radians(degrees), w,
                   None if targets is None else frozenset(targets))


@dataclass(frozen=True)
class RewardMode:
    kind: str  # individual | common | svo
    svo: SvoConfig | None = None

    def __post_init__(self):
        if self.kind not in ("individual", "common", "svo"):
            raise ValueError(f"unknown reward mode {self.kind!r}")
        if self.kind == "svo" and self.svo is None:
            raise ValueError("svo mode needs an SvoConfig")


INDIVIDUAL = RewardMode("individual")
COMMON = RewardMode("common")


def common_reward(rewards):
    """Every agent receives the sum of all agents' rewards."""
    r = np.asarray(rewards, dtype=np.float64)
    return np.broadcast_to(r.sum(axis=-1, keepdims=True), r.shape).copy()


def reward_angle(r_i: float, r_others_mean: float) -> float | None:
    """Angle of the reward pair in the non-negative quadrant.

    Returns None when both inputs are zero (neutral: no angle, no penalty).
    """
    if r_i == 0.0 and r_others_mean == 0.0:
        return None
    return min(max(math.atan2(r_others_mean, r_i), 0.0), HALF_PI)


def svo_utility(rewards, i: int, cfg: SvoConfig) -> float:
    """Shaped utility for agent i given the whole reward vector."""
    r = np.asarray(rewards, dtype=np.float64)
    n = r.shape[-1]
    r_i = float(r[i])
    if cfg.targets is not None and i not in cfg.targets:
        return r_i
    if n < 2:
        return r_i
    others = (float(r.sum()) - r_i) / (n - 1)
    angle = reward_angle(r_i, others)
    if angle is None:
        return r_i
    return r_i - cfg.w * abs(cfg.theta - angle)


def shape_rewards(rewards, mode: RewardMode):
    """Apply a reward mode to a (..., N) reward array (vectorized)."""
    r = np.asarray(rewards, dtype=np.float64)
    if mode.kind == "individual":
        return r.copy()
    if mode.kind == "common":
        return common_reward(r)
    cfg = mode.svo
    n = r.shape[-1]
    if n < 2:
        return r.copy()
    others = (r.sum(axis=-1, keepdims=True) - r) / (n - 1)
    neutral = (r == 0.0) & (others == 0.0)
    angle = np.clip(np.arctan2(others, r), 0.0, HALF_PI)
    penalty = cfg.w * np.abs(cfg.theta - angle)
    penalty[neutral] = 0.0
    if cfg.targets is not None:
        mask = np.zeros(n, dtype=bool)
        mask[list(cfg.targets)] = True
        penalty = penalty * mask
    return r - penalty
