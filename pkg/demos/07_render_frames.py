"""Render a short episode to numbered PPM frames (no image libraries).

The same record-per-step trajectory file drives both the renderer and
regression checks; replaying it reconstructs every interim state.
"""

import pathlib

from gridcommons.policies import scripted_policy
from gridcommons.render import render_trajectory
from gridcommons.trajectory import read_trajectory, rollout_records, write_trajectory

out_dir = pathlib.Path("/tmp/gridcommons_frames")
traj_path = out_dir.with_suffix(".jsonl")

policy = scripted_policy("harvest_open", "defector")
write_trajectory(traj_path, rollout_records(
    "harvest_open", policy, seed=1, overrides={"episode_len": 40}))

count = render_trajectory("harvest_open", read_trajectory(traj_path),
                          out_dir, seed=1, overrides={"episode_len": 40})
print(f"replayed {count} steps into {out_dir}/frame_*.ppm")
print("view any frame with an image viewer, or convert with e.g. ImageMagick")
