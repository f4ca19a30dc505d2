"""Schelling curves and social-dilemma certification.

For N players, the cooperator curve Rc[l] is the average return of a
cooperating agent when l co-players cooperate (so l+1 cooperators are
seated), and Rd[l] the average return of a defecting agent against l
cooperators.  An environment behaves as a sequential social dilemma
under the probing policies iff

    condition 1:  Rc[N-1] > Rd[0]   (mutual cooperation beats mutual defection)
    condition 2:  Rc[N-1] > Rc[0]   (mutual cooperation beats being exploited)
    fear          Rd[0]  > Rc[0]    (defection pays against defectors)
    greed         Rd[N-1] > Rc[N-1] (defection pays against cooperators)

and at least one of fear/greed holds.  The full per-l dominance vector is
reported so stricter readings of "sufficiently small/large" can be applied.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .envs import ENV_CLASSES, EnvConfig
from .metrics import METRIC_FOR_ENV, MetricAccumulator, MetricReport
from .policies import Policy
from .rewards import INDIVIDUAL, RewardMode, shape_rewards
from .rng import make_rng


@dataclass
class SchellingCurves:
    n_players: int
    rc: np.ndarray  # (N,) Rc[l] = R_c(l+1)
    rd: np.ndarray  # (N,) Rd[l] = R_d(l)
    episodes: int
    stderr_c: np.ndarray
    stderr_d: np.ndarray


@dataclass
class DilemmaReport:
    cond1: bool
    cond2: bool
    fear: bool
    greed: bool
    dominance: np.ndarray  # (N,) bool, Rd[l] > Rc[l]

    @property
    def is_ssd(self) -> bool:
        return self.cond1 and self.cond2 and (self.fear or self.greed)


def _episode_seed(seed: int, *parts: int) -> int:
    h = seed & 0xFFFFFFFFFFFFFFFF
    for p in parts:
        h = ((h * 0x100000001B3) ^ (p + 1)) & 0xFFFFFFFFFFFFFFFF
    return h & 0x7FFFFFFFFFFFFFFF


def run_batch(config: EnvConfig, roles: np.ndarray, policies: dict[str, Policy],
              mode: RewardMode, seeds: np.ndarray,
              ) -> tuple[np.ndarray, np.ndarray]:
    """Play full episodes for a batch of seat assignments.

    roles: (B, N) array of role keys into `policies` (e.g. "cooperator").
    seeds must be per-episode; every lane evolves independently.
    Returns (returns (B, N) of shaped rewards summed over the episode,
    metric values (B,)).
    """
    B, N = roles.shape
    env_cls = ENV_CLASSES[config.env_name]
    if seeds.shape != (B,):
        raise ValueError("one seed per episode")
    env = env_cls(config, batch=B)
    state, obs = env.reset(np.asarray(seeds, dtype=np.uint64))

    role_names = sorted(policies)
    rngs = {
        role: make_rng(np.asarray([_episode_seed(int(s), 77, ri) for s in seeds],
                                  dtype=np.uint64))
        for ri, role in enumerate(role_names)
    }
    mems = {role: [policies[role].init_mem(B) for _ in range(N)]
            for role in role_names}

    returns = np.zeros((B, N), dtype=np.float64)
    acc = (MetricAccumulator(config.env_name, B, N)
           if config.env_name in METRIC_FOR_ENV else None)
    actions = np.zeros((B, N), dtype=np.int64)
    for _ in range(config.episode_len):
        for n in range(N):
            per_seat = np.zeros(B, dtype=np.int64)
            for role in role_names:
                sel = roles[:, n] == role
                if not sel.any():
                    continue
                acts, mems[role][n], rngs[role] = policies[role].act(
                    obs[:, n], mems[role][n], rngs[role], n)
                per_seat[sel] = acts[sel]
            actions[:, n] = per_seat
        state, out = env.step(state, actions)
        returns += shape_rewards(out.rewards, mode)
        if acc is not None:
            acc.update(out.events)
        obs = out.obs
    return returns, acc.values() if acc is not None else np.zeros(B)


def run_episode(config: EnvConfig, policies: list[Policy], mode: RewardMode,
                seed: int) -> tuple[np.ndarray, MetricReport]:
    """One episode with an explicit per-seat policy list (batch of one)."""
    if len(policies) != config.num_agents:
        raise ValueError("one policy per agent")
    keyed = {f"seat{i}": p for i, p in enumerate(policies)}
    roles = np.array([[f"seat{i}" for i in range(config.num_agents)]])
    returns, values = run_batch(
        config, roles, keyed, mode, np.asarray([seed], dtype=np.int64))
    report = MetricReport(env_name=config.env_name, value=float(values[0]))
    return returns[0], report


def schelling_curves(config: EnvConfig, coop: Policy, defect: Policy,
                     episodes: int = 30, seed: int = 0,
                     mode: RewardMode = INDIVIDUAL) -> SchellingCurves:
    """Estimate Rc/Rd over `episodes` seat-shuffled episodes per point."""
    N = config.num_agents
    if N < 2:
        raise ValueError("schelling curves need at least two players")
    policies = {"cooperator": coop, "defector": defect}
    rc = np.zeros(N)
    rd = np.zeros(N)
    se_c = np.zeros(N)
    se_d = np.zeros(N)
    for l in range(N):
        for variant, n_coop in (("c", l + 1), ("d", l)):
            roles = np.empty((episodes, N), dtype=object)
            seeds = np.empty(episodes, dtype=np.int64)
            for e in range(episodes):
                ep_seed = _episode_seed(seed, l, 0 if variant == "c" else 1, e)
                seeds[e] = ep_seed
                perm = np.random.default_rng(ep_seed).permutation(N)
                seat_roles = np.array(["defector"] * N, dtype=object)
                seat_roles[perm[:n_coop]] = "cooperator"
                roles[e] = seat_roles
            returns, _ = run_batch(config, roles, policies, mode, seeds)
            target = "cooperator" if variant == "c" else "defector"
            mask = roles == target
            per_ep = np.array([
                returns[e, mask[e]].mean() for e in range(episodes)])
            mean = per_ep.mean()
            se = per_ep.std(ddof=1) / np.sqrt(episodes) if episodes > 1 else 0.0
            if variant == "c":
                rc[l], se_c[l] = mean, se
            else:
                rd[l], se_d[l] = mean, se
    return SchellingCurves(N, rc, rd, episodes, se_c, se_d)


def certify(curves: SchellingCurves) -> DilemmaReport:
    """Evaluate the dilemma conditions on estimated curves."""
    rc, rd = curves.rc, curves.rd
    n = curves.n_players
    dominance = rd > rc
    return DilemmaReport(
        cond1=bool(rc[n - 1] > rd[0]),
        cond2=bool(rc[n - 1] > rc[0]),
        fear=bool(dominance[0]),
        greed=bool(dominance[n - 1]),
        dominance=dominance,
    )


def write_curves_csv(path, curves: SchellingCurves) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["l", "Rc", "Rd", "stderr_c", "stderr_d"])
        for l in range(curves.n_players):
            writer.writerow([
                l, f"{curves.rc[l]:.10g}", f"{curves.rd[l]:.10g}",
                f"{curves.stderr_c[l]:.10g}", f"{curves.stderr_d[l]:.10g}"])


def format_report(curves: SchellingCurves, report: DilemmaReport) -> str:
    lines = [
        f"n_players = {curves.n_players}",
        f"episodes_per_point = {curves.episodes}",
        f"cond1_mutual_coop_beats_mutual_defect = {report.cond1}",
        f"cond2_mutual_coop_beats_exploited = {report.cond2}",
        f"fear = {report.fear}",
        f"greed = {report.greed}",
        f"is_ssd = {report.is_ssd}",
        "dominance_by_l = " + ",".join(str(bool(v)) for v in report.dominance),
    ]
    return "\n".join(lines) + "\n"
