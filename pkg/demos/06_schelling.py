"""Schelling curves: is an environment actually a social dilemma?

Seat l+1 cooperators against N-l-1 defectors to estimate Rc(l+1), and l
against N-l to estimate Rd(l).  The certifier then checks the dilemma
conditions: mutual cooperation beats mutual defection, beats being
exploited, and defection dominates at one end (fear) or the other
(greed).  Uses few episodes per point so the demo stays quick; the
acceptance suite runs the full 30-episode protocol.
"""

from gridcommons import make_env
from gridcommons.policies import scripted_policy
from gridcommons.schelling import (
    certify,
    format_report,
    schelling_curves,
    write_curves_csv,
)

ENV = "clean_up"
config = make_env(ENV, {})
curves = schelling_curves(
    config,
    scripted_policy(ENV, "cooperator"),
    scripted_policy(ENV, "defector"),
    episodes=5, seed=3,
)

print(f"{ENV}: l, Rc(l+1), Rd(l)")
for l in range(curves.n_players):
    print(f"  {l}  {curves.rc[l]:8.2f}  {curves.rd[l]:8.2f}")

report = certify(curves)
print()
print(format_report(curves, report))

write_curves_csv(f"/tmp/{ENV}_schelling.csv", curves)
print(f"wrote /tmp/{ENV}_schelling.csv")
