"""Small catalog of classic games used in the docs, demos and tests."""

from __future__ import annotations

import numpy as np

from .game import Game

__all__ = [
    "matching_pennies",
    "battle_of_sexes",
    "modified_battle_of_sexes",
    "generalized_rps",
    "road_sharing",
    "cyclic_three_player",
]


def matching_pennies() -> Game:
    a = np.array([[1.0, -1.0], [-1.0, 1.0]])
    return Game.from_payoff_matrices(
        a, -a, player_names=["row", "column"], strategy_labels=[["H", "T"], ["H", "T"]]
    )


def battle_of_sexes() -> Game:
    a = np.array([[3.0, 0.0], [0.0, 2.0]])
    b = np.array([[2.0, 0.0], [0.0, 3.0]])
    return Game.from_payoff_matrices(
        a, b, player_names=["row", "column"], strategy_labels=[["O", "F"], ["O", "F"]]
    )


def modified_battle_of_sexes() -> Game:
    """Battle of the sexes with the row player paid one extra when column plays O."""
    a = np.array([[4.0, 0.0], [1.0, 2.0]])
    b = np.array([[2.0, 0.0], [0.0, 3.0]])
    return Game.from_payoff_matrices(
        a, b, player_names=["row", "column"], strategy_labels=[["O", "F"], ["O", "F"]]
    )


def generalized_rps(x: float, y: float, z: float) -> Game:
    """Rock-paper-scissors with win/loss stakes 3x, 3y, 3z per pairing.

    ``x = y = z = 1/3`` gives the classic unit-stake game.
    """
    a = np.array(
        [
            [0.0, -3.0 * x, 3.0 * y],
            [3.0 * x, 0.0, -3.0 * z],
            [-3.0 * y, 3.0 * z, 0.0],
        ]
    )
    labels = [["R", "P", "S"], ["R", "P", "S"]]
    return Game.from_payoff_matrices(
        a, -a, player_names=["row", "column"], strategy_labels=labels
    )


def road_sharing() -> Game:
    """Three drivers pick one of two roads.

    Player ``s`` loses 2 for each other driver on its road; ``d1`` loses 1
    when ``d2`` shares its road, and ``d2`` gains exactly what ``d1`` loses.
    """
    shape = (2, 2, 2)
    u = np.zeros((3,) + shape)
    for a in range(2):
        for b in range(2):
            for c in range(2):
                u[0, a, b, c] = -2.0 * ((a == b) + (a == c))
                u[1, a, b, c] = -1.0 if b == c else 0.0
                u[2, a, b, c] = 1.0 if b == c else 0.0
    return Game(
        u.reshape(3, 8),
        shape,
        player_names=["s", "d1", "d2"],
        strategy_labels=[["0", "1"]] * 3,
    )


def cyclic_three_player() -> Game:
    """Three players on a directed cycle, each paid -1 for matching its successor."""
    shape = (2, 2, 2)
    u = np.zeros((3,) + shape)
    for p in np.ndindex(*shape):
        for m in range(3):
            u[(m,) + p] = -1.0 if p[m] == p[(m + 1) % 3] else 1.0
    return Game(u.reshape(3, 8), shape, player_names=["1", "2", "3"])
