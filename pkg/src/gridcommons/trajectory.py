"""Line-delimited trajectory records (one JSON object per step).

Stable field order and float formatting make re-runs byte-identical, so
trajectory files double as golden regression artifacts and as the oracle
for the embedding boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


@dataclass
class TrajectoryRecord:
    step: int
    actions: list[int]
    rewards: list[float]
    done: bool
    events: list[list]  # [kind, agent or None, amount]
    obs: list[int] | None = None  # flattened N*11*11 codes when kept


def record_to_line(rec: TrajectoryRecord) -> str:
    payload = {
        "step": rec.step,
        "actions": rec.actions,
        "rewards": rec.rewards,
        "done": rec.done,
        "events": rec.events,
    }
    if rec.obs is not None:
        payload["obs"] = rec.obs
    return json.dumps(payload, separators=(",", ":"))


def line_to_record(line: str) -> TrajectoryRecord:
    d = json.loads(line)
    return TrajectoryRecord(
        step=d["step"],
        actions=d["actions"],
        rewards=d["rewards"],
        done=d["done"],
        events=d["events"],
        obs=d.get("obs"),
    )


def write_trajectory(path, records) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(record_to_line(rec) + "\n")


def read_trajectory(path) -> list[TrajectoryRecord]:
    with open(path) as fh:
        records = [line_to_record(line) for line in fh if line.strip()]
    last = -1
    for rec in records:
        if rec.step <= last:
            raise ValueError("trajectory steps must be strictly increasing")
        last = rec.step
    return records


def rollout_records(env_name: str, policy, seed: int, overrides=None,
                    include_obs: bool = False):
    """Play one episode with a policy and yield one record per step."""
    from .envs import make_vec
    from .rng import Rng, make_rng

    env = make_vec(env_name, batch=1, overrides=overrides)
    state, obs = env.reset(seed)
    base = make_rng(seed ^ 0x5EED, env.num_agents)
    rngs = [Rng(base.key[n:n + 1].copy(), base.counter[n:n + 1].copy())
            for n in range(env.num_agents)]
    mems = [policy.init_mem(1) for _ in range(env.num_agents)]
    for t in range(env.episode_len):
        actions = np.zeros((1, env.num_agents), dtype=np.int64)
        for n in range(env.num_agents):
            act, mems[n], rngs[n] = policy.act(obs[:, n], mems[n], rngs[n], n)
            actions[0, n] = act[0]
        step_index = int(state.step[0])
        state, out = env.step(state, actions)
        events = []
        for kind, arr in out.events.items():
            if arr.ndim == 2:
                for agent in np.nonzero(arr[0])[0]:
                    events.append([kind, int(agent), float(arr[0, agent])])
            elif arr[0] != 0 or kind == "APPLES_ON_MAP":
                events.append([kind, None, float(arr[0])])
        rec = TrajectoryRecord(
            step=step_index,
            actions=[int(a) for a in actions[0]],
            rewards=[float(r) for r in out.rewards[0]],
            done=bool(out.done[0]),
            events=events,
            obs=[int(v) for v in out.obs[0].ravel()] if include_obs else None,
        )
        obs = out.obs
        yield rec
