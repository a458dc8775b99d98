"""Reference SimRank: the truncated all-pairs iteration and single columns.

``batch_simrank`` is the oracle every incremental path is checked against.
``partial_sim`` computes one column (or a sum of columns) in O(K n + K m)
time and O(K n) memory without touching an n-by-n buffer.
"""
from __future__ import annotations

import numpy as np

from .errors import DenseCapExceeded, NodeRangeError
from .graph import TransitionMatrix
from .tolerances import DENSE_CAP


def _csr(q):
    return q.csr if isinstance(q, TransitionMatrix) else q


def batch_simrank(q, c: float, k: int, *, cap: int = DENSE_CAP) -> np.ndarray:
    """Return ``S_k`` with ``S_0 = (1-c) I`` and ``S_{t+1} = c Q S_t Q^T + (1-c) I``.

    The result is symmetric bit-for-bit.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    a = _csr(q)
    n = a.shape[0]
    if n > cap:
        raise DenseCapExceeded(n, cap)
    s = np.eye(n) * (1.0 - c)
    diag = np.arange(n)
    for _ in range(k):
        t = a @ s                      # Q S
        s = a @ t.T                    # Q (Q S)^T = Q S Q^T (S symmetric)
        s = s.T
        s *= c
        s[diag, diag] += 1.0 - c
        s = 0.5 * (s + s.T)
    return s


def partial_sim(q, seed: np.ndarray, c: float, k: int, *, qt=None) -> np.ndarray:
    """Return ``S_k @ seed`` using only matrix-vector products.

    Forward pass stores ``x_t = (Q^T)^t seed`` for ``t = 0..k``; the backward
    Horner pass folds ``y <- x_t + c Q y``.  ``qt`` may supply a precomputed
    ``Q^T`` in CSR form.
    """
    a = _csr(q)
    at = a.T.tocsr() if qt is None else qt
    xs = [np.asarray(seed, dtype=float)]
    for _ in range(k):
        xs.append(at @ xs[-1])
    y = xs[k].copy()
    for t in range(k - 1, -1, -1):
        y = xs[t] + c * (a @ y)
    y *= 1.0 - c
    return y


def partial_sim_column(q, node: int, c: float, k: int) -> np.ndarray:
    """Column ``node`` of the truncated SimRank matrix."""
    n = _csr(q).shape[0]
    if not 0 <= node < n:
        raise NodeRangeError(node, n)
    seed = np.zeros(n)
    seed[node] = 1.0
    return partial_sim(q, seed, c, k)
