"""Closed forms for a block of ``delta`` edge changes sharing one sink.

Notation: ``I`` is the source set, ``s_col_I = sum_{i in I} S[:, i]`` and
``s_II = sum_{i, i' in I} S[i, i']``.  With ``delta = 1`` every formula
reduces to its single-edge counterpart.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import EdgeCase, TransitionMatrix
from .incremental import DELETE, INSERT


@dataclass(frozen=True)
class SinkBlock:
    """Edges ``(i, sink)`` for ``i`` in ``sources`` with one op and one liveness case."""

    sink: int
    sources: tuple[int, ...]
    op: str
    case: EdgeCase

    @property
    def delta(self) -> int:
        return len(self.sources)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, self.sink) for i in self.sources]


def indicator(n: int, nodes) -> np.ndarray:
    e = np.zeros(n)
    e[list(nodes)] = 1.0
    return e


def block_rank_one(q: TransitionMatrix, sources, j: int, d_j: int, op: str) -> tuple[np.ndarray, np.ndarray]:
    """``(u, v)`` with ``Q + u v^T`` the matrix after the block."""
    n = q.n
    delta = len(sources)
    e_j = indicator(n, [j])
    e_i = indicator(n, sources) / delta
    if op == INSERT:
        if d_j == 0:
            return e_j, e_i
        return delta / (d_j + delta) * e_j, e_i - q.row_dense(j)
    if op == DELETE:
        if d_j < delta:
            raise ValueError(f"sink {j} has in-degree {d_j} < {delta} deletions")
        if d_j == delta:
            return e_j, -e_i
        return delta / (d_j - delta) * e_j, q.row_dense(j) - e_i
    raise ValueError(f"unknown op {op!r}")


def block_gamma_lambda(q: TransitionMatrix, s_col_I: np.ndarray, s_II: float, s_col_j: np.ndarray | None,
                       j: int, d_j: int, delta: int, c: float, op: str) -> tuple[np.ndarray, float]:
    """``gamma`` and ``lambda`` for a block; ``s_col_j`` is unused when the sink ends (or starts) edgeless."""
    n = len(s_col_I)
    w = q @ s_col_I
    e_j = indicator(n, [j])
    s_jj = s_col_j[j] if s_col_j is not None else np.nan
    if op == INSERT and d_j == 0:
        s_jj = 1.0 - c
    lam = s_II / delta ** 2 + s_jj / c - 2.0 / delta * w[j] - 1.0 / c + 1.0
    if op == INSERT:
        if d_j == 0:
            return w / delta + s_II / (2.0 * delta ** 2) * e_j, float(lam)
        r = delta / (d_j + delta)
        gamma = r * (w / delta - s_col_j / c + (lam * delta / (2.0 * (d_j + delta)) + 1.0 / c - 1.0) * e_j)
        return gamma, float(lam)
    if op == DELETE:
        if d_j == delta:
            return -w / delta + s_II / (2.0 * delta ** 2) * e_j, float(lam)
        r = delta / (d_j - delta)
        gamma = r * (s_col_j / c - w / delta + (lam * delta / (2.0 * (d_j - delta)) - 1.0 / c + 1.0) * e_j)
        return gamma, float(lam)
    raise ValueError(f"unknown op {op!r}")


def block_c1(q: TransitionMatrix, s_col_I: np.ndarray, s_II: float, delta: int, c: float) -> tuple[np.ndarray, float]:
    """Border ``y`` and corner for a fresh sink fed by ``delta`` live sources."""
    return c / delta * (q @ s_col_I), c / delta ** 2 * s_II + (1.0 - c)


def block_c2_vector(s_col_j: np.ndarray, s_jj: float, j: int, d_j: int, delta: int, c: float) -> np.ndarray:
    z = -s_col_j / c
    z[j] += (delta * s_jj - (delta - c) * (1.0 - c)) / (2.0 * c * (d_j + delta)) + (1.0 - c) / c
    return z


def block_c2_scale(d_j: int, delta: int, c: float) -> float:
    return c * delta / (d_j + delta)


def block_c3_diagonal(c: float, delta: int) -> tuple[float, float]:
    """Diagonal scores of the fresh sources and of the fresh sink."""
    return 1.0 - c, (1.0 - c) * (1.0 + c / delta)
