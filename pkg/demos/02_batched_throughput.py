"""Throughput scaling: why the engine is vectorized over a batch axis.

A single instance pays the full per-step dispatch overhead; a batch of
1024 amortizes it, so aggregate env-steps/s climbs by orders of
magnitude.  This mirrors how accelerator-style simulators behave: slow
for one copy, fast in bulk.
"""

from gridcommons.bench import bench

ENVS = ("coins", "clean_up", "coop_mining")
SIZES = (1, 8, 128, 1024)

print(f"{'env':<14}" + "".join(f"{n:>12}" for n in SIZES))
for env in ENVS:
    row = []
    for n in SIZES:
        steps = max(20, 2000 // n)
        row.append(bench(env, n, steps, seed=0).steps_per_second)
    print(f"{env:<14}" + "".join(f"{sps:>12,.0f}" for sps in row))

print("\n(values are aggregate env-steps per second under random actions)")
