"""Rank-one SimRank updates for an edge change between two live nodes.

A single edge change alters one row of ``Q``, so ``Q_new = Q + u v^T`` with
``u`` a multiple of ``e_j``.  The similarity change is ``dS = M + M^T`` where
``M = sum_k c^(k+1) Q_new^k e_j gamma^T (Q_new^T)^k`` and ``gamma`` depends
only on two old columns of ``S``.  ``M`` is accumulated from outer products
of two vectors ``xi_k`` and ``eta_k`` that are pushed through ``Q_new``.
"""
from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import DuplicateEdge, MissingEdge
from .graph import DynamicGraph, TransitionMatrix

INSERT = "+"
DELETE = "-"


def _unit(n: int, j: int) -> np.ndarray:
    e = np.zeros(n)
    e[j] = 1.0
    return e


@dataclass(frozen=True)
class RankOneUpdate:
    """Everything needed to propagate one C0 change.

    ``old Q + outer(u, v)`` equals the new ``Q``.  ``in_degree`` is the sink's
    in-degree before the change and ``sources`` the changed in-neighbours.
    """

    u: np.ndarray
    v: np.ndarray
    gamma: np.ndarray
    lam: float
    pivot: int
    op: str
    in_degree: int
    sources: tuple[int, ...]


class Propagator:
    """Matrix-free ``x -> Q' x`` for a transition matrix differing from ``Q`` in row ``j``.

    ``row`` replaces row ``j`` by the given ``(cols, vals)``;
    ``rank_one = (s, cols, vals)`` then adds ``s * (v . x)`` to entry ``j``
    where ``v`` is the sparse vector ``(cols, vals)``.
    """

    def __init__(self, q, pivot: int | None = None, *, row=None, rank_one=None):
        self.csr = q.csr if isinstance(q, TransitionMatrix) else q
        self.pivot = pivot
        self.row = row
        self.rank_one = rank_one

    @property
    def n(self) -> int:
        return self.csr.shape[0]

    def __call__(self, x: np.ndarray) -> np.ndarray:
        y = self.csr @ x
        j = self.pivot
        if self.row is not None:
            cols, vals = self.row
            y[j] = vals @ x[cols]
        if self.rank_one is not None:
            s, cols, vals = self.rank_one
            y[j] += s * (vals @ x[cols])
        return y

    def reach(self, mask: np.ndarray) -> np.ndarray:
        """Nodes with an in-neighbour in ``mask`` (out-neighbours of the set)."""
        return self(mask.astype(float)) != 0.0


def exact_propagator(q: TransitionMatrix, j: int, new_in_neighbors: Sequence[int]) -> Propagator:
    """``Q_new`` realised as old ``Q`` with row ``j`` swapped for its exact new value."""
    cols = np.array(sorted(new_in_neighbors), dtype=np.int64)
    vals = np.full(len(cols), 1.0 / len(cols)) if len(cols) else np.zeros(0)
    return Propagator(q, j, row=(cols, vals))


def rank_one_propagator(q: TransitionMatrix, u: np.ndarray, v: np.ndarray) -> Propagator:
    """``Q + u v^T`` applied as ``Q x + (v^T x) u`` for ``u`` supported on one node."""
    (nz,) = np.nonzero(u)
    if len(nz) != 1:
        raise ValueError("u must have exactly one nonzero entry")
    j = int(nz[0])
    cols = np.nonzero(v)[0]
    return Propagator(q, j, rank_one=(float(u[j]), cols, v[cols]))


def decompose_insert(g: DynamicGraph, q: TransitionMatrix, i: int, j: int) -> tuple[np.ndarray, np.ndarray]:
    """``(u, v)`` with ``Q + u v^T`` the matrix after inserting ``i -> j``."""
    if g.has_edge(i, j):
        raise DuplicateEdge(i, j)
    n = g.n
    d_j = g.in_degree(j)
    e_i = _unit(n, i)
    if d_j == 0:
        return _unit(n, j), e_i
    return _unit(n, j) / (d_j + 1), e_i - q.row_dense(j)


def decompose_delete(g: DynamicGraph, q: TransitionMatrix, i: int, j: int) -> tuple[np.ndarray, np.ndarray]:
    """``(u, v)`` with ``Q + u v^T`` the matrix after deleting ``i -> j``."""
    if not g.has_edge(i, j):
        raise MissingEdge(i, j)
    n = g.n
    d_j = g.in_degree(j)
    e_i = _unit(n, i)
    if d_j == 1:
        return _unit(n, j), -e_i
    return _unit(n, j) / (d_j - 1), q.row_dense(j) - e_i


def compute_gamma_lambda(q: TransitionMatrix, s_col_i: np.ndarray, s_col_j: np.ndarray | None,
                         i: int, j: int, d_j: int, c: float, op: str) -> tuple[np.ndarray, float]:
    """Source vector ``gamma`` and scalar ``lambda`` from two old columns.

    ``s_col_j`` may be ``None`` when the sink has no in-edges left on either
    side of the change (insert with ``d_j = 0``, delete with ``d_j = 1``).
    """
    n = len(s_col_i)
    w = q @ s_col_i
    e_j = _unit(n, j)
    s_ii = s_col_i[i]
    s_jj = s_col_j[j] if s_col_j is not None else 1.0 - c
    lam = s_ii + s_jj / c - 2.0 * w[j] - 1.0 / c + 1.0
    if op == INSERT:
        if d_j == 0:
            gamma = w + 0.5 * s_ii * e_j
        else:
            gamma = (w - s_col_j / c + (lam / (2.0 * (d_j + 1)) + 1.0 / c - 1.0) * e_j) / (d_j + 1)
    elif op == DELETE:
        if d_j == 1:
            gamma = -w + 0.5 * s_ii * e_j
        else:
            gamma = (s_col_j / c - w + (lam / (2.0 * (d_j - 1)) - 1.0 / c + 1.0) * e_j) / (d_j - 1)
    else:
        raise ValueError(f"unknown op {op!r}")
    return gamma, float(lam)


def rank_one_update(g: DynamicGraph, q: TransitionMatrix, s_col_i: np.ndarray, s_col_j: np.ndarray | None,
                    i: int, j: int, c: float, op: str) -> RankOneUpdate:
    d_j = g.in_degree(j)
    if op == INSERT:
        u, v = decompose_insert(g, q, i, j)
    else:
        u, v = decompose_delete(g, q, i, j)
    gamma, lam = compute_gamma_lambda(q, s_col_i, s_col_j, i, j, d_j, c, op)
    return RankOneUpdate(u, v, gamma, lam, j, op, d_j, (i,))


def sylvester_pairs(prop, xi0: np.ndarray, eta0: np.ndarray, c: float, k: int
                    ) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(xi_t, eta_t)`` for ``t = 0..k`` with ``xi <- c P xi`` and ``eta <- P eta``."""
    xi, eta = xi0, eta0
    yield xi, eta
    for _ in range(k):
        xi = c * prop(xi)
        eta = prop(eta)
        yield xi, eta


@dataclass
class DeltaS:
    """Symmetric correction ``scale * (M + M^T)`` with ``M`` supported on ``rows x cols``."""

    n: int
    rows: np.ndarray
    cols: np.ndarray
    block: np.ndarray
    scale: float = 1.0

    @classmethod
    def dense(cls, m: np.ndarray, scale: float = 1.0) -> "DeltaS":
        idx = np.arange(m.shape[0])
        return cls(m.shape[0], idx, idx, m, scale)

    def _symmetric_block(self) -> tuple[np.ndarray, np.ndarray]:
        if self.rows is self.cols or np.array_equal(self.rows, self.cols):
            mu, idx = self.block, self.rows
        else:
            idx = np.union1d(self.rows, self.cols)
            mu = np.zeros((len(idx), len(idx)))
            mu[np.ix_(np.searchsorted(idx, self.rows), np.searchsorted(idx, self.cols))] = self.block
        d = mu + mu.T
        if self.scale != 1.0:
            d *= self.scale
        return idx, d

    def add_to(self, s: np.ndarray) -> None:
        """Add in place to the leading ``n x n`` block of ``s``; keeps ``s`` exactly symmetric."""
        idx, d = self._symmetric_block()
        if len(idx) == s.shape[0]:
            s += d
        else:
            s[np.ix_(idx, idx)] += d

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        self.add_to(out)
        return out

    def m_dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        out[np.ix_(self.rows, self.cols)] = self.block
        return out


def apply_unit(q, gamma: np.ndarray, j: int, c: float, k: int,
               u: np.ndarray | None = None, v: np.ndarray | None = None) -> DeltaS:
    """Unpruned ``dS = M_k + M_k^T`` with a dense ``M``.

    With ``u`` and ``v`` given, ``q`` is the old matrix and the new one is
    applied implicitly as ``Q x + (v^T x) u``.  Otherwise ``q`` must already
    be the new matrix (a ``TransitionMatrix`` or a ``Propagator``).
    """
    if u is not None and v is not None:
        prop = rank_one_propagator(q, u, v)
    elif isinstance(q, Propagator):
        prop = q
    else:
        prop = Propagator(q)
    n = len(gamma)
    m = np.zeros((n, n))
    for xi, eta in sylvester_pairs(prop, c * _unit(n, j), gamma, c, k):
        m += np.outer(xi, eta)
    return DeltaS.dense(m)


@dataclass
class AffectedArea:
    """Node sets outside of which ``M_k`` is zero.

    ``A[k] x B[k]`` is the product set for iteration ``k``; ``M_k`` vanishes
    outside ``(A[k] x B[k]) | (A[0] x B[0])``.
    """

    F1: np.ndarray
    F2: np.ndarray
    A: list[np.ndarray] = field(default_factory=list)
    B: list[np.ndarray] = field(default_factory=list)

    @property
    def aff(self) -> float:
        """Mean of ``|A_k| |B_k|`` over ``k = 0..K``."""
        return float(np.mean([len(a) * len(b) for a, b in zip(self.A, self.B)]))

    def sets(self, k: int) -> tuple[set[int], set[int]]:
        return set(self.A[k].tolist()), set(self.B[k].tolist())


def affected_sets(q_old: TransitionMatrix, q_new, s_col_i: np.ndarray, s_col_j: np.ndarray | None,
                  j: int, d_j: int, op: str, k: int, delta: int = 1) -> AffectedArea:
    """Affected node sets for a change of ``delta`` in-edges of sink ``j``.

    ``s_col_i`` is the old column of the source (or the sum over sources).
    Out-neighbours are read from ``q_old`` for ``F1`` and from ``q_new`` for
    the propagated sets.  Row and column supports of ``M_{k-1}`` are taken
    structurally (union of the supports of every ``xi_t`` and ``eta_t``),
    which never misses a nonzero.
    """
    old = q_old if isinstance(q_old, Propagator) else Propagator(q_old)
    new = q_new if isinstance(q_new, Propagator) else Propagator(q_new)
    n = len(s_col_i)
    f1 = old.reach(s_col_i != 0.0)
    has_f2 = (d_j > 0) if op == INSERT else (d_j > delta)
    f2 = (s_col_j != 0.0) if (has_f2 and s_col_j is not None) else np.zeros(n, dtype=bool)
    a = np.zeros(n, dtype=bool)
    a[j] = True
    b = f1 | f2 | a
    area = AffectedArea(np.flatnonzero(f1), np.flatnonzero(f2), [np.flatnonzero(a)], [np.flatnonzero(b)])
    front_a, front_b = a, b
    acc_a = np.zeros(n, dtype=bool)
    acc_b = np.zeros(n, dtype=bool)
    for _ in range(k):
        front_a = new.reach(front_a)
        front_b = new.reach(front_b)
        acc_a |= front_a
        acc_b |= front_b
        area.A.append(np.flatnonzero(acc_a))
        area.B.append(np.flatnonzero(acc_b))
    return area


def apply_unit_pruned(q_new, gamma: np.ndarray, j: int, c: float, k: int,
                      area: AffectedArea) -> DeltaS:
    """``dS`` accumulated only on the affected pairs; ``M`` stored as a sub-block."""
    prop = q_new if isinstance(q_new, Propagator) else Propagator(q_new)
    n = len(gamma)
    rows = np.union1d(area.A[0], area.A[-1])
    cols = np.union1d(area.B[0], area.B[-1])
    block = np.zeros((len(rows), len(cols)))
    a0, b0 = area.A[0], area.B[0]
    block[np.ix_(np.searchsorted(rows, a0), np.searchsorted(cols, b0))] = c * gamma[b0][None, :]
    xi = np.zeros(n)
    xi[j] = c
    eta = np.zeros(n)
    eta[b0] = gamma[b0]
    for t in range(1, k + 1):
        at, bt = area.A[t], area.B[t]
        xi_full = c * prop(xi)
        eta_full = prop(eta)
        xi = np.zeros(n)
        xi[at] = xi_full[at]
        eta = np.zeros(n)
        eta[bt] = eta_full[bt]
        block[np.ix_(np.searchsorted(rows, at), np.searchsorted(cols, bt))] += np.outer(xi[at], eta[bt])
    return DeltaS(n, rows, cols, block)
