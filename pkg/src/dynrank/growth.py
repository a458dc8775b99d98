"""Edge insertions that create nodes.

* C1, fresh sink ``j``: the old block is untouched and ``S`` gains a border
  ``y = c Q S[:, i]`` with corner ``c S[i, i] + (1 - c)``.
* C2, fresh source: the new node is isolated in ``S`` (diagonal ``1 - c``)
  while the old block changes by a rank-two Sylvester correction driven by
  ``z`` and the matrix ``Q_hat``, which is ``Q`` with row ``j`` scaled down.
* C3, both fresh: an independent component with ``diag(1 - c, 1 - c^2)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import EdgeCase, TransitionMatrix
from .incremental import DeltaS, Propagator, sylvester_pairs


@dataclass(frozen=True)
class BorderedGrowth:
    case: EdgeCase
    y: np.ndarray | None = None
    z: np.ndarray | None = None
    corner: float | np.ndarray | None = None


def grow_c1(q: TransitionMatrix, s_col_i: np.ndarray, s_ii: float, i: int, c: float) -> BorderedGrowth:
    """Border for a new sink fed by live node ``i``."""
    y = c * (q @ s_col_i)
    return BorderedGrowth(EdgeCase.C1, y=y, corner=c * s_ii + (1.0 - c))


def c2_propagator(q: TransitionMatrix, j: int, d_j: int, delta: int = 1) -> Propagator:
    """``Q_hat = Q - (delta / (d_j + delta)) e_j Q[j, :]`` applied on the fly."""
    cols, vals = q.row(j)
    return Propagator(q, j, rank_one=(-delta / (d_j + delta), cols, vals))


def c2_vector(s_col_j: np.ndarray, s_jj: float, j: int, d_j: int, c: float) -> np.ndarray:
    z = -s_col_j / c
    z[j] += (s_jj - (1.0 - c) ** 2) / (2.0 * c * (d_j + 1)) + (1.0 - c) / c
    return z


def grow_c2(q: TransitionMatrix, s_col_j: np.ndarray, s_jj: float, j: int, d_j: int,
            c: float, k: int) -> tuple[BorderedGrowth, DeltaS]:
    """New source pointing at live node ``j``; returns the growth and the old-block correction."""
    z = c2_vector(s_col_j, s_jj, j, d_j, c)
    prop = c2_propagator(q, j, d_j)
    n = len(z)
    e_j = np.zeros(n)
    e_j[j] = 1.0
    m = np.zeros((n, n))
    for xi, eta in sylvester_pairs(prop, e_j, z, c, k):
        m += np.outer(xi, eta)
    return BorderedGrowth(EdgeCase.C2, z=z, corner=1.0 - c), DeltaS.dense(m, scale=c / (d_j + 1))


def grow_c3(c: float) -> BorderedGrowth:
    """Corner block for an edge between two fresh nodes (source first)."""
    return BorderedGrowth(EdgeCase.C3, corner=np.diag([1.0 - c, 1.0 - c * c]))
