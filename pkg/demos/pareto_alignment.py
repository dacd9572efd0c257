"""Retuning payoffs so the equilibria become exactly the efficient outcomes.

The part of a game invisible to payoff comparisons never moves equilibria,
but it decides whether they are Pareto optimal.  Adjusting only that part
makes the pure Nash set and the Pareto set coincide.
"""

import numpy as np

from gamehodge import (
    Game,
    pairwise_comparison,
    pareto_align_transform,
    pareto_optimal,
    pure_nash,
)
from gamehodge.catalog import battle_of_sexes


def report(title, game):
    print(title)
    for m, name in enumerate(game.player_names):
        print(f"  {name}:\n", np.round(game.tensor(m), 4))
    print("  pure Nash:    ", pure_nash(game) or "none")
    print("  Pareto optimal:", pareto_optimal(game))


bos = battle_of_sexes()
report("battle of the sexes", bos)

aligned = pareto_align_transform(bos)
print()
report("after alignment (equilibria now pay zero, everything else is worse)", aligned)
drift = (pairwise_comparison(aligned) - pairwise_comparison(bos)).max_abs()
print(f"  comparison drift: {drift:.2e} (the strategic content is untouched)")

print("\na random 2x2x2 game with at least one equilibrium")
rng = np.random.default_rng(5)
while True:
    g = Game(rng.uniform(-1, 1, size=(3, 8)), (2, 2, 2))
    if pure_nash(g):
        break
print("  before: NE", pure_nash(g), " Pareto", pareto_optimal(g))
out = pareto_align_transform(g)
print("  after:  NE", pure_nash(out), " Pareto", pareto_optimal(out))
assert pure_nash(out) == pareto_optimal(out)
