"""Per-environment cooperation metrics accumulated from step events.

Event kinds and their aggregation:

    coins               OWN_COLOR_COIN   total own-color pickups
    harvest_*           APPLES_ON_MAP    mean apples on the map per step
    clean_up            CLEANED          total tiles scrubbed
    coop_mining         GOLD_MINED       total gold ores completed
    mushrooms           BLUE_EATEN       total blue mushrooms eaten
    gift_refinement     RECEIVED         total tokens received as gifts
    pd_arena            COOP_COLLECTED   total cooperate resources picked up

All metrics except harvest are sums, so they add over episode
concatenation; harvest concatenates as the step-weighted mean.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

EVENT_KINDS = (
    "OWN_COLOR_COIN",
    "APPLES_ON_MAP",
    "CLEANED",
    "GOLD_MINED",
    "BLUE_EATEN",
    "RECEIVED",
    "COOP_COLLECTED",
)

METRIC_FOR_ENV = {
    "coins": "OWN_COLOR_COIN",
    "harvest_open": "APPLES_ON_MAP",
    "harvest_closed": "APPLES_ON_MAP",
    "harvest_partnership": "APPLES_ON_MAP",
    "clean_up": "CLEANED",
    "coop_mining": "GOLD_MINED",
    "mushrooms": "BLUE_EATEN",
    "gift_refinement": "RECEIVED",
    "pd_arena": "COOP_COLLECTED",
}

_MEAN_KINDS = {"APPLES_ON_MAP"}


@dataclass(frozen=True)
class MetricEvent:
    kind: str
    agent: int | None
    step: int
    amount: float


@dataclass
class MetricReport:
    env_name: str
    value: float
    per_agent: dict[int, float] | None = None
    episodes: int = 1


def record(events: list[MetricEvent], event: MetricEvent) -> list[MetricEvent]:
    """Append an event; duplicates are kept and order is preserved."""
    events.append(event)
    return events


def summarize(events: list[MetricEvent], env_name: str, num_steps: int) -> MetricReport:
    """Aggregate one episode's events into the environment's metric."""
    if env_name not in METRIC_FOR_ENV:
        raise ValueError(f"unknown environment {env_name!r}")
    kind = METRIC_FOR_ENV[env_name]
    total = 0.0
    per_agent: dict[int, float] = {}
    for ev in events:
        if ev.kind != kind:
            continue
        total += ev.amount
        if ev.agent is not None:
            per_agent[ev.agent] = per_agent.get(ev.agent, 0.0) + ev.amount
    if kind in _MEAN_KINDS:
        total = total / num_steps if num_steps else 0.0
        per_agent = {}
    return MetricReport(env_name=env_name, value=total,
                        per_agent=per_agent or None)


class MetricAccumulator:
    """Streaming form of summarize for batched runs.

    Feed each step's event arrays; yields one value per batch lane, equal
    to summarize() over the materialized event list.
    """

    def __init__(self, env_name: str, batch: int, num_agents: int):
        if env_name not in METRIC_FOR_ENV:
            raise ValueError(f"unknown environment {env_name!r}")
        self.env_name = env_name
        self.kind = METRIC_FOR_ENV[env_name]
        self.total = np.zeros(batch, dtype=np.float64)
        self.per_agent = np.zeros((batch, num_agents), dtype=np.float64)
        self.steps = 0

    def update(self, events: dict[str, np.ndarray]) -> None:
        self.steps += 1
        arr = events.get(self.kind)
        if arr is None:
            return
        if arr.ndim == 2:
            self.per_agent += arr
            self.total += arr.sum(axis=1)
        else:
            self.total += arr

    def values(self) -> np.ndarray:
        if self.kind in _MEAN_KINDS and self.steps:
            return self.total / self.steps
        return self.total.copy()


def events_from_arrays(arrays: dict[str, np.ndarray], step: int,
                       lane: int = 0) -> list[MetricEvent]:
    """Materialize one lane's event records from a step's event arrays."""
    out: list[MetricEvent] = []
    for kind, arr in arrays.items():
        if arr.ndim == 2:
            for agent in np.nonzero(arr[lane])[0]:
                out.append(MetricEvent(kind, int(agent), step, float(arr[lane, agent])))
        elif arr[lane] != 0 or kind == "APPLES_ON_MAP":
            out.append(MetricEvent(kind, None, step, float(arr[lane])))
    return out


def write_reports_csv(path, rows):
    """One CSV row per (env, mode, seed, episode) with value and per-agent columns.

    rows: iterables of (env, mode, seed, episode, MetricReport, num_agents).
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        max_agents = max((r[5] for r in rows), default=0)
        writer.writerow(["env", "mode", "seed", "episode", "value"]
                        + [f"agent_{i}" for i in range(max_agents)])
        for env, mode, seed, episode, report, num_agents in rows:
            per = report.per_agent or {}
            writer.writerow(
                [env, mode, seed, episode, f"{report.value:.10g}"]
                + [f"{per.get(i, 0.0):.10g}" for i in range(num_agents)])
