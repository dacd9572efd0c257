"""Game graph and combinatorial calculus on it.

Strategy profiles are graph nodes; two profiles are comparable (joined by an
edge) when they differ in the strategy of exactly one player, which makes the
graph a direct product of per-player cliques.  Edge flows carry one value per
comparable pair on the canonical orientation low-index -> high-index and play
the role of discrete vector fields: the operators here are the combinatorial
gradient, curl, their adjoints, per-player restrictions, the graph Laplacians
and a Laplacian pseudoinverse solve.

Inner products: plain dot product on node functions; on edge flows the sum
over ordered comparable pairs carries a 1/2 factor, which reduces to the dot
product of the stored per-edge values.
"""

from __future__ import annotations

import math
import os
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import NumericError, PreconditionError, ShapeError, SizeError
from .game import Game, profile_index

__all__ = [
    "GameGraph",
    "EdgeFlow",
    "TriangleFlow",
    "build_graph",
    "pairwise_comparison",
    "gradient",
    "player_gradient",
    "divergence_adjoint",
    "player_divergence",
    "restrict_player",
    "curl",
    "project_player",
    "laplacian_apply",
    "laplacian_player_apply",
    "laplacian_pinv_solve",
    "node_inner",
    "flow_inner",
    "flow_to_dot",
]

DEFAULT_NODE_CAP = 10**7


class GameGraph:
    """Graph of comparable strategy profiles for a given shape.

    Edges are stored per player as parallel ``tails``/``heads`` node-index
    arrays with ``tails < heads`` elementwise (the canonical orientation).
    Within player ``m`` the edges are grouped by own-strategy pair ``(a, b)``,
    ``a < b`` in lexicographic order, each group raveled over the opponent
    profiles in C order; this layout is what lets the operators below run as
    plain array arithmetic.  Triangles (3-cliques) always live inside a single
    player's clique and are enumerated lazily.
    """

    def __init__(self, strategy_counts: Sequence[int], node_cap: int | None = None):
        counts = tuple(int(h) for h in strategy_counts)
        if len(counts) < 1 or any(h < 1 for h in counts):
            raise ShapeError(f"invalid strategy counts {counts}")
        if node_cap is None:
            node_cap = int(os.environ.get("GAMEHODGE_MAX_NODES", DEFAULT_NODE_CAP))
        n = math.prod(counts)
        if n > node_cap:
            raise SizeError(f"{n} profiles exceed the node cap {node_cap}")

        self.strategy_counts = counts
        self.num_players = len(counts)
        self.num_nodes = n

        node_ids = np.arange(n).reshape(counts)
        tails, heads = [], []
        self._player_slices: list[slice] = []
        self._pairs: list[list[tuple[int, int]]] = []
        start = 0
        for m, h in enumerate(counts):
            pairs = list(combinations(range(h), 2))
            self._pairs.append(pairs)
            for a, b in pairs:
                tails.append(node_ids.take(a, axis=m).ravel())
                heads.append(node_ids.take(b, axis=m).ravel())
            stop = start + len(pairs) * (n // h)
            self._player_slices.append(slice(start, stop))
            start = stop
        if tails:
            self.tails = np.concatenate(tails)
            self.heads = np.concatenate(heads)
        else:
            self.tails = np.zeros(0, dtype=int)
            self.heads = np.zeros(0, dtype=int)
        self.num_edges = self.tails.size
        self._node_ids = node_ids
        self._edge_lookup: dict[tuple[int, int], int] | None = None
        self._triangle_cache: np.ndarray | None = None

    # -- structure ---------------------------------------------------------

    def player_slice(self, player: int) -> slice:
        """Range of edge ids belonging to one player's clique edges."""
        return self._player_slices[player]

    def edges_of_player(self, player: int) -> tuple[np.ndarray, np.ndarray]:
        s = self._player_slices[player]
        return self.tails[s], self.heads[s]

    def comparable(self, p: Sequence[int], q: Sequence[int]) -> int | None:
        """Deviating player if ``p`` and ``q`` are comparable, else None."""
        diff = [m for m, (a, b) in enumerate(zip(p, q)) if a != b]
        return diff[0] if len(diff) == 1 else None

    def node_index(self, profile: Sequence[int]) -> int:
        return profile_index(profile, self.strategy_counts)

    def edge_id(self, i: int, j: int) -> tuple[int, float]:
        """Edge id of the comparable node pair plus the orientation sign of (i, j)."""
        if self._edge_lookup is None:
            self._edge_lookup = {
                (int(t), int(h)): e for e, (t, h) in enumerate(zip(self.tails, self.heads))
            }
        sign = 1.0
        if i > j:
            i, j, sign = j, i, -1.0
        try:
            return self._edge_lookup[(i, j)], sign
        except KeyError:
            raise KeyError(f"nodes {i} and {j} are not comparable") from None

    @property
    def num_triangles(self) -> int:
        n = self.num_nodes
        return sum(math.comb(h, 3) * (n // h) for h in self.strategy_counts)

    def triangles(self) -> np.ndarray:
        """All 3-cliques as an (T, 3) array of node ids, i < j < k per row."""
        if self._triangle_cache is None:
            rows = []
            for m, h in enumerate(self.strategy_counts):
                for a, b, c in combinations(range(h), 3):
                    rows.append(
                        np.stack(
                            [
                                self._node_ids.take(x, axis=m).ravel()
                                for x in (a, b, c)
                            ],
                            axis=1,
                        )
                    )
            self._triangle_cache = (
                np.concatenate(rows) if rows else np.zeros((0, 3), dtype=int)
            )
        return self._triangle_cache

    def __repr__(self) -> str:
        return (
            f"GameGraph(shape={self.strategy_counts}, nodes={self.num_nodes}, "
            f"edges={self.num_edges})"
        )


def build_graph(strategy_counts: Sequence[int], node_cap: int | None = None) -> GameGraph:
    """Construct the graph of comparable strategy profiles for a shape."""
    return GameGraph(strategy_counts, node_cap)


class EdgeFlow:
    """Antisymmetric function on comparable profile pairs.

    One value is stored per undirected edge on the canonical orientation
    (lower profile index -> higher); evaluating against the orientation
    returns the negation, and non-comparable pairs are not representable.
    """

    def __init__(self, graph: GameGraph, values):
        values = np.asarray(values, dtype=float)
        if values.shape != (graph.num_edges,):
            raise ShapeError(
                f"flow has {values.shape} values, graph has {graph.num_edges} edges"
            )
        self.graph = graph
        self.values = values

    def value(self, p, q) -> float:
        """Flow from ``p`` to ``q`` (node ids or coordinate tuples).

        Zero for non-comparable pairs, per the definition of an edge flow.
        """
        i = p if isinstance(p, (int, np.integer)) else self.graph.node_index(p)
        j = q if isinstance(q, (int, np.integer)) else self.graph.node_index(q)
        try:
            e, sign = self.graph.edge_id(int(i), int(j))
        except KeyError:
            return 0.0
        return sign * float(self.values[e])

    def __add__(self, other: "EdgeFlow") -> "EdgeFlow":
        return EdgeFlow(self.graph, self.values + other.values)

    def __sub__(self, other: "EdgeFlow") -> "EdgeFlow":
        return EdgeFlow(self.graph, self.values - other.values)

    def __mul__(self, scalar: float) -> "EdgeFlow":
        return EdgeFlow(self.graph, self.values * scalar)

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return float(np.abs(self.values).max(initial=0.0))

    def __repr__(self) -> str:
        return f"EdgeFlow({self.graph!r}, max|X|={self.max_abs():g})"


class TriangleFlow:
    """Alternating function on the 3-cliques of a game graph."""

    def __init__(self, graph: GameGraph, values):
        values = np.asarray(values, dtype=float)
        self.graph = graph
        self.triangles = graph.triangles()
        if values.shape != (len(self.triangles),):
            raise ShapeError("one value per triangle required")
        self.values = values
        self._lookup = {tuple(t): i for i, t in enumerate(map(tuple, self.triangles))}

    def value(self, p, q, r) -> float:
        """Alternating evaluation; zero when the nodes are not a 3-clique."""
        ids = tuple(
            int(x) if isinstance(x, (int, np.integer)) else self.graph.node_index(x)
            for x in (p, q, r)
        )
        order = tuple(sorted(ids))
        if order not in self._lookup:
            return 0.0
        # parity of the permutation taking sorted order to the given order
        perm = [order.index(x) for x in ids]
        sign = 1.0 if perm in ([0, 1, 2], [1, 2, 0], [2, 0, 1]) else -1.0
        return sign * float(self.values[self._lookup[order]])

    def max_abs(self) -> float:
        return float(np.abs(self.values).max(initial=0.0))


# -- flows from games and node functions ------------------------------------


def _as_node_array(graph: GameGraph, phi) -> np.ndarray:
    phi = np.asarray(phi, dtype=float).ravel()
    if phi.shape != (graph.num_nodes,):
        raise ShapeError(f"node function must have {graph.num_nodes} entries")
    return phi


def pairwise_comparison(game: Game, graph: GameGraph | None = None) -> EdgeFlow:
    """Flow assigning ``u^m(q) - u^m(p)`` to every m-comparable pair (p, q)."""
    if graph is None:
        graph = build_graph(game.strategy_counts)
    elif graph.strategy_counts != game.strategy_counts:
        raise ShapeError("graph shape does not match game shape")
    blocks = []
    for m in range(game.num_players):
        t = game.tensor(m)
        for a, b in graph._pairs[m]:
            blocks.append((t.take(b, axis=m) - t.take(a, axis=m)).ravel())
    values = np.concatenate(blocks) if blocks else np.zeros(0)
    return EdgeFlow(graph, values)


def gradient(graph: GameGraph, phi) -> EdgeFlow:
    """Combinatorial gradient: ``(grad phi)(p, q) = phi(q) - phi(p)`` on edges."""
    phi = _as_node_array(graph, phi)
    return EdgeFlow(graph, phi[graph.heads] - phi[graph.tails])


def player_gradient(graph: GameGraph, player: int, phi) -> EdgeFlow:
    """Gradient restricted to one player's edges, zero elsewhere."""
    phi = _as_node_array(graph, phi)
    values = np.zeros(graph.num_edges)
    s = graph.player_slice(player)
    values[s] = phi[graph.heads[s]] - phi[graph.tails[s]]
    return EdgeFlow(graph, values)


def divergence_adjoint(flow: EdgeFlow) -> np.ndarray:
    """Adjoint of the gradient: ``(p) -> -sum_q X(p, q)``.

    The negative of this quantity is the net flow leaving each node, i.e.
    the divergence.
    """
    graph = flow.graph
    out = np.zeros(graph.num_nodes)
    np.subtract.at(out, graph.tails, flow.values)
    np.add.at(out, graph.heads, flow.values)
    return out


def player_divergence(flow: EdgeFlow, player: int) -> np.ndarray:
    """Adjoint of :func:`player_gradient`: the gradient adjoint over one player's edges."""
    graph = flow.graph
    out = np.zeros(graph.num_nodes)
    s = graph.player_slice(player)
    np.subtract.at(out, graph.tails[s], flow.values[s])
    np.add.at(out, graph.heads[s], flow.values[s])
    return out


def restrict_player(flow: EdgeFlow, player: int) -> EdgeFlow:
    """Zero the flow outside one player's edges."""
    values = np.zeros_like(flow.values)
    s = flow.graph.player_slice(player)
    values[s] = flow.values[s]
    return EdgeFlow(flow.graph, values)


def curl(flow: EdgeFlow) -> TriangleFlow:
    """Circulation ``X(p,q) + X(q,r) + X(r,p)`` around every 3-clique (p, q, r)."""
    graph = flow.graph
    n = graph.num_nodes
    out_blocks = []
    for m, h in enumerate(graph.strategy_counts):
        base = graph.player_slice(m).start
        block = n // h
        pair_offset = {pair: base + k * block for k, pair in enumerate(graph._pairs[m])}
        for a, b, c in combinations(range(h), 3):
            ab = flow.values[pair_offset[(a, b)]: pair_offset[(a, b)] + block]
            bc = flow.values[pair_offset[(b, c)]: pair_offset[(b, c)] + block]
            ac = flow.values[pair_offset[(a, c)]: pair_offset[(a, c)] + block]
            out_blocks.append(ab + bc - ac)
    values = np.concatenate(out_blocks) if out_blocks else np.zeros(0)
    return TriangleFlow(graph, values)


# -- node-space operators (shape-only, no graph needed) ----------------------


def _as_tensor(strategy_counts: Sequence[int], u) -> np.ndarray:
    counts = tuple(strategy_counts)
    u = np.asarray(u, dtype=float)
    return u.reshape(counts)


def project_player(strategy_counts: Sequence[int], player: int, u) -> np.ndarray:
    """Remove the per-opponent-block mean over ``player``'s own strategies.

    This is the orthogonal projection onto the complement of the functions
    that ignore the player's own strategy; it is idempotent and self-adjoint,
    and for a one-strategy player it is identically zero.
    """
    t = _as_tensor(strategy_counts, u)
    return (t - t.mean(axis=player, keepdims=True)).ravel()


def laplacian_player_apply(strategy_counts: Sequence[int], player: int, phi) -> np.ndarray:
    """Laplacian of the subgraph of ``player``-comparable profiles.

    Equals ``h_m`` times :func:`project_player`, the per-player clique
    Laplacian acting blockwise.
    """
    h = strategy_counts[player]
    return h * project_player(strategy_counts, player, phi)


def laplacian_apply(strategy_counts: Sequence[int], phi) -> np.ndarray:
    """Graph Laplacian of the full game graph, applied matrix-free."""
    t = _as_tensor(strategy_counts, phi)
    out = np.zeros_like(t)
    for m, h in enumerate(strategy_counts):
        out += h * (t - t.mean(axis=m, keepdims=True))
    return out.ravel()


def laplacian_pinv_solve(
    strategy_counts: Sequence[int], b, tol: float = 1e-10
) -> np.ndarray:
    """Mean-zero solution of ``Laplacian(phi) = b``.

    The game graph is connected, so the Laplacian kernel is exactly the
    constants; ``b`` must therefore be orthogonal to constants.  Solved by
    conjugate gradients deflated onto the mean-zero subspace, with a dense
    least-squares fallback for graphs of at most 512 nodes.

    Raises
    ------
    PreconditionError
        if ``b`` has a non-negligible mean component.
    NumericError
        if no method reaches residual ``tol * max(1, ||b||)``.
    """
    counts = tuple(strategy_counts)
    n = math.prod(counts)
    b = np.asarray(b, dtype=float).ravel()
    if b.shape != (n,):
        raise ShapeError(f"right-hand side must have {n} entries")
    bnorm = float(np.linalg.norm(b))
    if abs(b.sum()) > tol * max(1.0, bnorm):
        raise PreconditionError(
            "right-hand side is not orthogonal to constants; "
            "it cannot be in the image of the Laplacian"
        )
    b = b - b.mean()
    if bnorm == 0.0 or n == 1:
        return np.zeros(n)

    target = tol * max(1.0, bnorm)
    x = _cg_mean_zero(counts, b, target, max_iter=10 * n)
    residual = float(np.linalg.norm(laplacian_apply(counts, x) - b))
    if residual > target and n <= 512:
        x = _dense_pinv_solve(counts, b)
        residual = float(np.linalg.norm(laplacian_apply(counts, x) - b))
    if residual > target:
        raise NumericError(
            f"Laplacian solve did not converge: residual {residual:.3e} "
            f"exceeds {target:.3e}",
            residual=residual,
        )
    return x - x.mean()


def _cg_mean_zero(counts, b, target, max_iter):
    """Conjugate gradients on the mean-zero subspace, where the Laplacian is SPD."""
    x = np.zeros_like(b)
    r = b.copy()
    p = r.copy()
    rs = float(r @ r)
    for _ in range(max_iter):
        if math.sqrt(rs) <= target:
            break
        ap = laplacian_apply(counts, p)
        denom = float(p @ ap)
        if denom <= 0.0:
            break
        alpha = rs / denom
        x += alpha * p
        r -= alpha * ap
        r -= r.mean()  # re-deflate accumulated round-off
        rs_new = float(r @ r)
        if rs_new == 0.0:
            rs = rs_new
            break
        p = r + (rs_new / rs) * p
        rs = rs_new
    return x - x.mean()


def _dense_pinv_solve(counts, b):
    n = math.prod(counts)
    lap = np.empty((n, n))
    eye = np.eye(n)
    for i in range(n):
        lap[:, i] = laplacian_apply(counts, eye[:, i])
    x, *_ = np.linalg.lstsq(lap, b, rcond=None)
    return x - x.mean()


# -- inner products ----------------------------------------------------------


def node_inner(f, g) -> float:
    """Inner product on node functions: plain dot product."""
    return float(np.dot(np.ravel(f), np.ravel(g)))


def flow_inner(x: EdgeFlow, y: EdgeFlow) -> float:
    """Inner product on flows: half the sum over ordered comparable pairs."""
    if x.graph.strategy_counts != y.graph.strategy_counts:
        raise ShapeError("flows live on different graphs")
    return float(np.dot(x.values, y.values))


# -- DOT export ---------------------------------------------------------------


def flow_to_dot(
    flow: EdgeFlow,
    node_labels: Sequence[str] | None = None,
    zero_tol: float = 0.0,
) -> str:
    """Render a flow as a DOT digraph.

    Each edge with a nonzero value becomes one arrow pointing in the
    positive-flow (payoff-improvement) direction, labeled with the magnitude.
    """
    graph = flow.graph
    if node_labels is None:
        node_labels = [
            "(" + ",".join(map(str, p)) + ")"
            for p in np.ndindex(*graph.strategy_counts)
        ]
    lines = ["digraph flow {"]
    for i, label in enumerate(node_labels):
        lines.append(f'  n{i} [label="{label}"];')
    for e in range(graph.num_edges):
        v = flow.values[e]
        if abs(v) <= zero_tol:
            continue
        i, j = int(graph.tails[e]), int(graph.heads[e])
        if v < 0:
            i, j = j, i
        lines.append(f'  n{i} -> n{j} [label="{abs(v):.12g}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
