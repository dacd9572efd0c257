"""Canonical decomposition of a game into potential + harmonic + nonstrategic.

Every finite game splits uniquely into three orthogonal pieces:

* a *potential part* whose flow is the gradient of a scalar potential,
* a *harmonic part* whose flow is divergence-free (and automatically
  curl-free, since game flows never circulate around 3-cliques),
* a *nonstrategic part* invisible to pairwise payoff comparisons.

The scalar potential solves ``Laplacian(phi) = sum_m h_m P_m u^m`` where
``P_m`` removes per-block own-strategy means; the parts are then read off as
``u_P^m = P_m phi``, ``u_H^m = P_m u^m - P_m phi`` and
``u_N^m = (I - P_m) u^m``, all in node space, so no edge-space matrices are
ever assembled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError, ShapeError
from .flows import (
    build_graph,
    curl,
    divergence_adjoint,
    gradient,
    laplacian_apply,
    laplacian_pinv_solve,
    laplacian_player_apply,
    pairwise_comparison,
    project_player,
)
from .game import Game, game_to_dict

__all__ = [
    "Decomposition",
    "decompose",
    "decompose_bimatrix_normalized",
    "is_potential",
    "is_harmonic",
    "potential_function",
    "closest_potential",
    "closest_harmonic",
    "game_inner",
    "game_norm",
    "game_distance",
    "decomposition_to_dict",
]


@dataclass(frozen=True)
class Decomposition:
    """Result of :func:`decompose`.

    ``potential_part + harmonic_part + nonstrategic_part`` reconstructs the
    input; ``potential_fn`` is the mean-zero scalar potential of the
    potential part; ``residuals`` holds numeric diagnostics (reconstruction
    error, divergence of the harmonic flow, curl of the game flow, and the
    Laplacian solver residual).
    """

    potential_part: Game
    harmonic_part: Game
    nonstrategic_part: Game
    potential_fn: np.ndarray
    residuals: dict


def decompose(game: Game, tol: float = 1e-10) -> Decomposition:
    """Split a game into its potential, harmonic and nonstrategic parts."""
    counts = game.strategy_counts
    m_players = game.num_players

    b = np.zeros(game.num_profiles)
    proj = np.empty_like(game.utilities)
    for m in range(m_players):
        proj[m] = project_player(counts, m, game.utilities[m])
        b += laplacian_player_apply(counts, m, game.utilities[m])
    phi = laplacian_pinv_solve(counts, b, tol=tol)

    u_pot = np.stack([project_player(counts, m, phi) for m in range(m_players)])
    u_harm = proj - u_pot
    u_non = game.utilities - proj

    potential_part = game.with_utilities(u_pot)
    harmonic_part = game.with_utilities(u_harm)
    nonstrategic_part = game.with_utilities(u_non)

    graph = build_graph(counts)
    flow = pairwise_comparison(game, graph)
    harmonic_flow = pairwise_comparison(harmonic_part, graph)
    residuals = {
        "reconstruction": float(
            np.abs(game.utilities - (u_pot + u_harm + u_non)).max(initial=0.0)
        ),
        "harmonic_divergence": float(
            np.abs(divergence_adjoint(harmonic_flow)).max(initial=0.0)
        ),
        "curl": curl(flow).max_abs(),
        "solver": float(np.linalg.norm(laplacian_apply(counts, phi) - b)),
    }
    return Decomposition(potential_part, harmonic_part, nonstrategic_part, phi, residuals)


def decompose_bimatrix_normalized(A, B, tol: float = 1e-9):
    """Closed-form decomposition of a normalized square bimatrix game.

    With ``S = (A+B)/2``, ``Dm = (A-B)/2`` and
    ``G = (A 1 1^T - 1 1^T B) / (2h)`` the potential component is
    ``(S+G, S-G)`` and the harmonic component ``(Dm-G, -Dm+G)``.

    Requires both payoff matrices square of the same size ``h`` with
    ``1^T A = 0`` and ``B 1 = 0`` (run :func:`gamehodge.game.normalize`
    first otherwise).
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise ShapeError("closed form needs square payoff matrices of equal size")
    h = A.shape[0]
    scale = max(1.0, np.abs(A).max(), np.abs(B).max())
    if np.abs(A.sum(axis=0)).max() > tol * scale or np.abs(B.sum(axis=1)).max() > tol * scale:
        raise PreconditionError(
            "payoff matrices are not normalized; normalize the game first"
        )
    S = (A + B) / 2
    Dm = (A - B) / 2
    ones = np.ones((h, 1))
    Gamma = (A @ ones @ ones.T - ones @ ones.T @ B) / (2 * h)
    return S + Gamma, S - Gamma, Dm - Gamma, -Dm + Gamma


# -- inner product, norm and distance on games --------------------------------


def game_inner(game: Game, other: Game) -> float:
    """Inner product weighting each player's payoffs by its strategy count."""
    if game.strategy_counts != other.strategy_counts:
        raise ShapeError("games must share a shape")
    h = np.asarray(game.strategy_counts, dtype=float)
    return float(np.einsum("m,mi,mi->", h, game.utilities, other.utilities))


def game_norm(game: Game) -> float:
    return math.sqrt(max(game_inner(game, game), 0.0))


def game_distance(game: Game, other: Game) -> float:
    if game.strategy_counts != other.strategy_counts:
        raise ShapeError("games must share a shape")
    diff = game.with_utilities(game.utilities - other.utilities)
    return game_norm(diff)


# -- membership tests and projections ------------------------------------------


def is_potential(game: Game, tol: float = 1e-9) -> bool:
    """True iff the harmonic part is negligible relative to the game norm."""
    d = decompose(game)
    return game_norm(d.harmonic_part) <= tol * max(1.0, game_norm(game))


def is_harmonic(game: Game, tol: float = 1e-9) -> bool:
    """True iff the potential part is negligible relative to the game norm."""
    d = decompose(game)
    return game_norm(d.potential_part) <= tol * max(1.0, game_norm(game))


def potential_function(game: Game, tol: float = 1e-9) -> np.ndarray | None:
    """Mean-zero exact potential of the game, or None if it has none.

    The candidate from :func:`decompose` is re-verified edge by edge: the
    potential difference across every comparable pair must match the
    deviating player's payoff difference.
    """
    d = decompose(game)
    phi = d.potential_fn
    graph = build_graph(game.strategy_counts)
    flow = pairwise_comparison(game, graph)
    mismatch = (flow - gradient(graph, phi)).max_abs()
    scale = max(1.0, float(np.abs(game.utilities).max(initial=0.0)))
    if mismatch > tol * scale:
        return None
    return phi


def closest_potential(game: Game) -> Game:
    """Orthogonal projection onto the potential games: drop the harmonic part."""
    d = decompose(game)
    return game.with_utilities(game.utilities - d.harmonic_part.utilities)


def closest_harmonic(game: Game) -> Game:
    """Orthogonal projection onto the harmonic games: drop the potential part."""
    d = decompose(game)
    return game.with_utilities(game.utilities - d.potential_part.utilities)


# -- JSON export ---------------------------------------------------------------


def decomposition_to_dict(d: Decomposition) -> dict:
    return {
        "potential": game_to_dict(d.potential_part),
        "harmonic": game_to_dict(d.harmonic_part),
        "nonstrategic": game_to_dict(d.nonstrategic_part),
        "phi": [float(v) for v in d.potential_fn],
        "residuals": {
            "reconstruction": d.residuals["reconstruction"],
            "harmonic_divergence": d.residuals["harmonic_divergence"],
            "curl": d.residuals["curl"],
        },
    }
