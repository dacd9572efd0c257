"""Finite strategic-form games in normal form.

A game holds one payoff array per player over the joint strategy space.
Joint strategy profiles are indexed in mixed radix with the *last* player
varying fastest, so ``utilities[m]`` is exactly the C-order flattening of a
payoff tensor of shape ``(h_1, ..., h_M)``.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

import numpy as np

from .errors import GameFormatError, ShapeError

__all__ = [
    "Game",
    "profile_index",
    "profile_of_index",
    "normalize",
    "is_normalized",
    "zero_sum_identical_split",
    "game_to_dict",
    "game_from_dict",
    "load_game",
    "save_game",
]


def profile_index(profile: Sequence[int], strategy_counts: Sequence[int]) -> int:
    """Map a strategy profile to its flat index (last player fastest).

    ``idx = ((p_1*h_2 + p_2)*h_3 + ...)``; inverse of :func:`profile_of_index`.
    """
    if len(profile) != len(strategy_counts):
        raise ShapeError(
            f"profile has {len(profile)} coordinates, expected {len(strategy_counts)}"
        )
    idx = 0
    for p, h in zip(profile, strategy_counts):
        if not 0 <= p < h:
            raise IndexError(f"strategy index {p} out of range [0, {h})")
        idx = idx * h + p
    return idx


def profile_of_index(index: int, strategy_counts: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`profile_index`."""
    index = int(index)
    n = math.prod(strategy_counts)
    if not 0 <= index < n:
        raise IndexError(f"profile index {index} out of range [0, {n})")
    coords = []
    for h in reversed(strategy_counts):
        coords.append(index % h)
        index //= h
    return tuple(reversed(coords))


class Game:
    """Immutable finite game: players, strategy counts and payoff arrays.

    Parameters
    ----------
    utilities : array-like, shape (M, prod(h))
        One flat payoff array per player, in profile-index order.  Payoff
        tensors of shape ``(M, h_1, ..., h_M)`` are accepted and flattened.
    strategy_counts : sequence of int
        Number of strategies per player, all >= 1.
    player_names, strategy_labels : optional
        Presentation metadata used by the JSON format; default to
        ``player1..playerM`` and ``"0", "1", ...``.
    """

    def __init__(
        self,
        utilities,
        strategy_counts: Sequence[int],
        player_names: Sequence[str] | None = None,
        strategy_labels: Sequence[Sequence[str]] | None = None,
    ):
        counts = tuple(int(h) for h in strategy_counts)
        if len(counts) < 1 or any(h < 1 for h in counts):
            raise ShapeError(f"invalid strategy counts {counts}")
        n = math.prod(counts)
        m = len(counts)

        u = np.asarray(utilities, dtype=float)
        if u.shape == (m,) + counts:
            u = u.reshape(m, n)
        if u.shape != (m, n):
            raise GameFormatError(
                f"utilities shape {u.shape} does not match {m} players "
                f"x {n} profiles for strategy counts {counts}"
            )
        if not np.all(np.isfinite(u)):
            raise GameFormatError("payoffs must be finite")

        if player_names is None:
            player_names = [f"player{k + 1}" for k in range(m)]
        if len(player_names) != m:
            raise GameFormatError("player_names length does not match player count")
        if strategy_labels is None:
            strategy_labels = [[str(i) for i in range(h)] for h in counts]
        labels = [list(map(str, ls)) for ls in strategy_labels]
        if [len(ls) for ls in labels] != list(counts):
            raise GameFormatError("strategy_labels lengths do not match strategy counts")

        u = u.copy()
        u.flags.writeable = False
        self.utilities = u
        self.strategy_counts = counts
        self.num_players = m
        self.num_profiles = n
        self.player_names = tuple(player_names)
        self.strategy_labels = tuple(tuple(ls) for ls in labels)

    @classmethod
    def from_payoff_matrices(
        cls,
        A,
        B,
        player_names: Sequence[str] | None = None,
        strategy_labels: Sequence[Sequence[str]] | None = None,
    ) -> "Game":
        """Two-player game from row-player matrix ``A`` and column-player ``B``."""
        A = np.asarray(A, dtype=float)
        B = np.asarray(B, dtype=float)
        if A.ndim != 2 or A.shape != B.shape:
            raise ShapeError(f"payoff matrices must share a 2-d shape, got {A.shape} and {B.shape}")
        return cls(np.stack([A, B]), A.shape, player_names, strategy_labels)

    def tensor(self, player: int) -> np.ndarray:
        """Payoff tensor of one player, shape ``(h_1, ..., h_M)`` (read-only view)."""
        self._check_player(player)
        return self.utilities[player].reshape(self.strategy_counts)

    def payoff_matrices(self) -> tuple[np.ndarray, ...]:
        """All payoff tensors; for two-player games these are the (A, B) matrices."""
        return tuple(self.tensor(m) for m in range(self.num_players))

    def utility(self, player: int, profile: Sequence[int]) -> float:
        """Payoff of ``player`` at a pure strategy profile."""
        self._check_player(player)
        return float(self.utilities[player, profile_index(profile, self.strategy_counts)])

    def profiles(self) -> Iterable[tuple[int, ...]]:
        """All strategy profiles in index order."""
        for i in range(self.num_profiles):
            yield profile_of_index(i, self.strategy_counts)

    def with_utilities(self, utilities) -> "Game":
        """Same shape and labels, different payoffs."""
        return Game(utilities, self.strategy_counts, self.player_names, self.strategy_labels)

    def _check_player(self, player: int) -> None:
        if not 0 <= player < self.num_players:
            raise IndexError(f"player index {player} out of range [0, {self.num_players})")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Game)
            and self.strategy_counts == other.strategy_counts
            and np.array_equal(self.utilities, other.utilities)
        )

    def __repr__(self) -> str:
        return f"Game(players={self.num_players}, strategies={self.strategy_counts})"


def _blockmean(tensor: np.ndarray, axis: int) -> np.ndarray:
    return tensor.mean(axis=axis, keepdims=True)


def normalize(game: Game) -> Game:
    """Unique strategically equivalent game whose own-strategy sums vanish.

    For every player m and opponent profile, the mean of that player's
    payoffs over its own strategies is subtracted, so the output satisfies
    ``sum_{p^m} u^m(p^m, p^{-m}) = 0`` while all pairwise payoff differences
    are preserved exactly.
    """
    out = np.empty_like(game.utilities)
    for m in range(game.num_players):
        t = game.tensor(m)
        out[m] = (t - _blockmean(t, m)).ravel()
    return game.with_utilities(out)


def is_normalized(game: Game, tol: float = 1e-9) -> bool:
    """True iff every per-player, per-opponent-block payoff sum is within ``tol`` of 0."""
    if tol < 0:
        raise ValueError("tol must be >= 0")
    for m in range(game.num_players):
        sums = game.tensor(m).sum(axis=m)
        if np.abs(sums).max(initial=0.0) > tol:
            return False
    return True


def zero_sum_identical_split(game: Game) -> tuple[Game, Game]:
    """Split a two-player game into zero-sum plus identical-interest parts.

    Returns ``(Z, I)`` with payoffs ``((u1-u2)/2, (u2-u1)/2)`` and
    ``((u1+u2)/2, (u1+u2)/2)``; they sum back to the input.
    """
    if game.num_players != 2:
        raise ShapeError("zero-sum / identical-interest split requires exactly two players")
    u1, u2 = game.utilities
    z = game.with_utilities(np.stack([(u1 - u2) / 2, (u2 - u1) / 2]))
    i = game.with_utilities(np.stack([(u1 + u2) / 2, (u1 + u2) / 2]))
    return z, i


# ---------------------------------------------------------------------------
# JSON game format:
# { "players": [ { "name": str, "strategies": [str, ...] }, ... ],
#   "utilities": [ [float, ...], ... ] }
# utilities[m] has length prod(h) in profile-index order (last player fastest).
# ---------------------------------------------------------------------------


def game_to_dict(game: Game) -> dict:
    return {
        "players": [
            {"name": name, "strategies": list(labels)}
            for name, labels in zip(game.player_names, game.strategy_labels)
        ],
        "utilities": [list(map(float, row)) for row in game.utilities],
    }


def game_from_dict(data: dict) -> Game:
    if not isinstance(data, dict):
        raise GameFormatError("game document must be a JSON object")
    players = data.get("players")
    utilities = data.get("utilities")
    if not isinstance(players, list) or not players:
        raise GameFormatError('"players" must be a non-empty list')
    if not isinstance(utilities, list) or len(utilities) != len(players):
        raise GameFormatError('"utilities" must list one payoff array per player')

    names, labels, counts = [], [], []
    for entry in players:
        if not isinstance(entry, dict) or "strategies" not in entry:
            raise GameFormatError("each player needs a strategies list")
        strategies = entry["strategies"]
        if not isinstance(strategies, list) or not strategies:
            raise GameFormatError("each player needs at least one strategy")
        names.append(str(entry.get("name", f"player{len(names) + 1}")))
        labels.append([str(s) for s in strategies])
        counts.append(len(strategies))

    n = math.prod(counts)
    rows = []
    for m, row in enumerate(utilities):
        if not isinstance(row, list) or len(row) != n:
            raise GameFormatError(
                f"utilities[{m}] must have length {n} for strategy counts {tuple(counts)}"
            )
        try:
            rows.append([float(v) for v in row])
        except (TypeError, ValueError) as exc:
            raise GameFormatError(f"utilities[{m}] contains a non-numeric entry") from exc

    return Game(np.array(rows), counts, names, labels)


def _reject_constant(token: str):
    raise GameFormatError(f"non-finite number {token!r} in game file")


def load_game(path) -> Game:
    """Read a game from a JSON file; rejects malformed or non-finite payoffs."""
    try:
        with open(path) as fh:
            data = json.load(fh, parse_constant=_reject_constant)
    except OSError as exc:
        raise GameFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"invalid JSON in {path}: {exc}") from exc
    return game_from_dict(data)


def save_game(game: Game, path) -> None:
    with open(path, "w") as fh:
        json.dump(game_to_dict(game), fh, indent=2)
        fh.write("\n")
