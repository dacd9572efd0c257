"""Decompose the generalized rock-paper-scissors game into its three parts.

The game with stakes (x, y, z) pays the winner of each pairing 3x, 3y or 3z.
Its nonstrategic part only shifts payoffs by opponent-dependent constants,
its potential part is a common-interest core, and its harmonic part is the
classic cyclic conflict.  At x = y = z the potential part vanishes entirely.
"""

import numpy as np

from gamehodge import decompose, game_norm
from gamehodge.catalog import generalized_rps


def show(title, game):
    print(f"\n{title}")
    for m, name in enumerate(game.player_names):
        print(f"  {name}:")
        for row in game.tensor(m):
            print("   ", np.round(row, 6))


for x, y, z in [(2.0, 1.0, 3.0), (1 / 3, 1 / 3, 1 / 3)]:
    print("=" * 60)
    print(f"generalized RPS with stakes (x, y, z) = ({x:g}, {y:g}, {z:g})")
    game = generalized_rps(x, y, z)
    show("payoffs", game)

    parts = decompose(game)
    show("nonstrategic part (opponent-dependent shifts)", parts.nonstrategic_part)
    show("potential part (common-interest core)", parts.potential_part)
    show("harmonic part (pure conflict)", parts.harmonic_part)

    print("\nscalar potential over the 3x3 profiles:")
    print(np.round(parts.potential_fn.reshape(3, 3), 6))
    print("component norms: potential {:.4f}, harmonic {:.4f}, nonstrategic {:.4f}".format(
        game_norm(parts.potential_part),
        game_norm(parts.harmonic_part),
        game_norm(parts.nonstrategic_part),
    ))
    print("residuals:", {k: f"{v:.2e}" for k, v in parts.residuals.items()})
