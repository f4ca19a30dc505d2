"""Cooperation metrics: what the return alone does not show.

Each environment has one tailored metric (own-color coins, apples left on
the map, tiles cleaned, gold completed, blue mushrooms eaten, tokens
received, cooperate-resources collected).  Here the coins metric separates
a considerate policy from a greedy one that earns a similar return.
"""

from gridcommons import make_env
from gridcommons.metrics import write_reports_csv
from gridcommons.policies import scripted_policy
from gridcommons.rewards import INDIVIDUAL
from gridcommons.schelling import run_episode

config = make_env("coins", {"episode_len": 400})

rows = []
for label, role in [("cooperator", "cooperator"), ("defector", "defector")]:
    policy = scripted_policy("coins", role)
    returns, report = run_episode(config, [policy, policy], INDIVIDUAL, seed=5)
    print(f"both agents {label}: returns {returns.round(2)}, "
          f"own-color pickups {report.value:.0f}")
    rows.append(("coins", "individual", 5, 0, report, 2))

write_reports_csv("/tmp/coins_metrics.csv", rows)
print("\nwrote /tmp/coins_metrics.csv (one row per env/mode/seed/episode)")
