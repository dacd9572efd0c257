"""Equilibrium structure of harmonic games (zero potential part).

Harmonic games are pure conflict: generically they have no pure Nash
equilibrium, yet the uniformly mixed profile is always an equilibrium, and
for two players the correlated equilibria form a small affine slice of the
simplex that is fully described by linear equalities.
"""

import numpy as np

from gamehodge import (
    Game,
    closest_harmonic,
    harmonic_correlated_system,
    is_mixed_nash,
    normalize,
    pure_nash,
    uniformly_mixed,
)
from gamehodge.catalog import matching_pennies
from gamehodge.subspaces import harmonic_basis_2p

print("matching pennies: the smallest harmonic game")
mp = matching_pennies()
print("  pure Nash equilibria:", pure_nash(mp) or "none")
print("  uniform mix is a Nash equilibrium:", is_mixed_nash(mp, uniformly_mixed(mp)))
system = harmonic_correlated_system(mp)
print("  correlated equilibria: affine dimension", system.dimension)
print("  the unique correlated equilibrium:", system.particular)

print("\na 2x3 harmonic game built from the two basis elements")
basis = harmonic_basis_2p(2, 3)
game = Game(basis.games[0].utilities + basis.games[1].utilities, (2, 3))
for m in range(2):
    print(f"  player {m + 1} payoffs:\n", game.tensor(m))
system = harmonic_correlated_system(game)
print("  correlated equilibria: affine dimension", system.dimension)
print("  one solution (uniform):", np.round(system.particular, 4))
direction = system.directions[0]
other = system.particular + 0.05 * direction / np.abs(direction).max()
other /= other.sum()
print("  another solution:      ", np.round(other, 4))
print("  equality residual at it:", f"{system.residual(other):.2e}")

print("\nrandom games projected onto the harmonic class keep these properties")
rng = np.random.default_rng(1)
for counts in [(2, 2), (3, 3), (2, 2, 2)]:
    g = closest_harmonic(
        Game(rng.uniform(-1, 1, size=(len(counts), int(np.prod(counts)))), counts)
    )
    print(
        f"  shape {counts}: pure NE {str(pure_nash(g) or 'none'):<6}"
        f"  uniform mix is NE: {is_mixed_nash(g, uniformly_mixed(g), tol=1e-8)}"
        f"  correlated dim: {harmonic_correlated_system(normalize(g)).dimension}"
    )
