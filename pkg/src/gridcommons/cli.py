"""Command-line front end: bench, rollout, render, schelling."""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .bench import bench, bench_csv_row
from .config import reward_mode_from_flags
from .envs import ENV_NAMES, ConfigError, make_env
from .policies import RandomPolicy, scripted_policy
from .render import render_trajectory
from .schelling import certify, format_report, schelling_curves, write_curves_csv
from .trajectory import read_trajectory, rollout_records, write_trajectory


def _env_arg(parser):
    parser.add_argument("--env", required=True, choices=ENV_NAMES)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--num-agents", type=int, default=None)
    parser.add_argument("--episode-len", type=int, default=None)


def _overrides(args) -> dict:
    out = {}
    if args.num_agents is not None:
        out["num_agents"] = args.num_agents
    if getattr(args, "episode_len", None) is not None:
        out["episode_len"] = args.episode_len
    return out


def _policy(args, env_name):
    if args.policy == "random":
        from .envs import ENV_CLASSES
        return RandomPolicy(len(ENV_CLASSES[env_name].action_names))
    return scripted_policy(env_name, {"coop": "cooperator",
                                      "defect": "defector"}[args.policy])


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gridcommons",
        description="social-dilemma gridworld simulators: benchmark, "
                    "rollout, render, schelling analysis")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bench", help="steps-per-second of batched random stepping")
    _env_arg(p)
    p.add_argument("--num-envs", type=int, default=1)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None, help="append CSV row here")

    p = sub.add_parser("rollout", help="play one episode and dump a trajectory")
    _env_arg(p)
    p.add_argument("--policy", choices=("random", "coop", "defect"),
                   default="random")
    p.add_argument("--out", required=True)
    p.add_argument("--include-obs", action="store_true")

    p = sub.add_parser("render", help="replay a trajectory into PPM frames")
    _env_arg(p)
    p.add_argument("--trajectory", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--scale", type=int, default=8)

    p = sub.add_parser("schelling", help="estimate curves and certify dilemma")
    _env_arg(p)
    p.add_argument("--episodes", type=int, default=30)
    p.add_argument("--reward-mode", choices=("individual", "common", "svo"),
                   default="individual")
    p.add_argument("--svo-angle-deg", type=float, default=45.0)
    p.add_argument("--svo-w", type=float, default=0.5)
    p.add_argument("--out", default=None,
                   help="prefix for <out>.csv and <out>_report.txt")

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "bench":
        result = bench(args.env, args.num_envs, args.steps, args.seed,
                       overrides=_overrides(args), workers=args.workers)
        row = bench_csv_row(result)
        print(row)
        print(f"# elapsed {result.elapsed:.3f}s digest {result.state_digest[:16]}",
              file=sys.stderr)
        if args.out:
            with open(args.out, "a") as fh:
                fh.write(row + "\n")
        return 0

    if args.command == "rollout":
        policy = _policy(args, args.env)
        records = rollout_records(args.env, policy, args.seed,
                                  overrides=_overrides(args),
                                  include_obs=args.include_obs)
        write_trajectory(args.out, records)
        print(f"wrote {args.out}")
        return 0

    if args.command == "render":
        records = read_trajectory(args.trajectory)
        count = render_trajectory(args.env, records, args.out_dir, args.seed,
                                  overrides=_overrides(args), scale=args.scale)
        print(f"wrote {count} frames to {args.out_dir}")
        return 0

    if args.command == "schelling":
        config = make_env(args.env, _overrides(args))
        mode = reward_mode_from_flags(args.reward_mode, args.svo_angle_deg,
                                      args.svo_w)
        curves = schelling_curves(
            config,
            scripted_policy(args.env, "cooperator"),
            scripted_policy(args.env, "defector"),
            episodes=args.episodes, seed=args.seed, mode=mode)
        report = certify(curves)
        text = format_report(curves, report)
        print(text, end="")
        if args.out:
            write_curves_csv(args.out + ".csv", curves)
            with open(args.out + "_report.txt", "w") as fh:
                fh.write(text)
        return 0

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
