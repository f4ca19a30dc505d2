"""First contact: make an environment, reset it, step it, look at it.

Every environment exposes the same surface: reset(seed) gives a state and
one egocentric 11x11 window per agent; step(state, actions) returns the
next state plus rewards, done flag and metric events.
"""

import numpy as np

from gridcommons import Env, make_env

GLYPHS = {0: ".", 1: "#", 2: "+", 3: "~", 4: "!", 5: "a", 18: "@"}


def show(grid):
    for row in grid:
        print("".join(GLYPHS.get(int(v), chr(ord("A") + int(v) - 19) if v >= 19 else "?")
                      for v in row))


config = make_env("clean_up", {"episode_len": 50})
env = Env(config)
state, obs = env.reset(seed=7)

print(f"clean_up: {env.num_agents} agents, {env.num_actions} actions")
print(f"action table: {env.action_names}\n")

print("what agent 0 sees at reset (forward is up, '@' marks itself):")
show(obs[0])

rng = np.random.default_rng(0)
total = np.zeros(env.num_agents)
for t in range(50):
    actions = rng.integers(0, env.num_actions, size=env.num_agents)
    state, out = env.step(state, actions)
    total += out.rewards

print("\nreturns after 50 random steps:", total)
print("third-person view of the whole map:")
show(env.render_cells(state))
