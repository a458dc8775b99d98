"""Column-at-a-time similarity updates in O(K n + m) memory.

For an old node ``x`` the new column is the old column plus
``[dS]_{:, x} = scale * (M[:, x] + M[x, :]^T)``.  Both pieces are folded
while ``xi_t`` and ``eta_t`` are generated, so neither ``M`` nor ``S`` is
ever materialised.
"""
from __future__ import annotations

from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NodeRangeError
from .plan import SylvesterTerm, UpdatePlan


@dataclass
class ColumnUpdateContext:
    """One planned update plus access to old columns of the pre-update graph.

    The plan already holds the two shared old columns (sources and sink),
    computed once per update.
    """

    plan: UpdatePlan
    old_column: Callable[[int], np.ndarray]


def column_delta(term: SylvesterTerm, x: int) -> np.ndarray:
    """``[dS]_{:, x}`` of the old block, accumulated from one row and one column of ``M``."""
    pairs = term.pairs()
    xi, eta = next(pairs)
    m_vec = eta[x] * xi
    n_vec = xi[x] * eta
    for xi, eta in pairs:
        m_vec += eta[x] * xi
        n_vec += xi[x] * eta
    out = m_vec + n_vec
    if term.scale != 1.0:
        out *= term.scale
    return out


def advance_column(plan: UpdatePlan, x: int, old_col: np.ndarray | None) -> np.ndarray:
    """New column ``x`` given the old one (``None`` for nodes the plan creates)."""
    if not 0 <= x < plan.n_new:
        raise NodeRangeError(x, plan.n_new)
    col = np.zeros(plan.n_new)
    n_old = plan.n_old
    if x >= n_old:
        if plan.border is not None and x == plan.sink:
            col[:n_old] = plan.border
            col[x] = plan.corner
        else:
            col[x] = plan.diag[x]
        return col
    col[:n_old] = old_col
    if plan.border is not None:
        col[plan.sink] = plan.border[x]
    if plan.term is not None:
        col[:n_old] += column_delta(plan.term, x)
    return col


def update_column(ctx: ColumnUpdateContext, x: int) -> np.ndarray:
    """Column ``x`` of the post-update similarity matrix."""
    plan = ctx.plan
    if not 0 <= x < plan.n_new:
        raise NodeRangeError(x, plan.n_new)
    old = ctx.old_column(x) if x < plan.n_old else None
    return advance_column(plan, x, old)


def update_all_columns(ctx: ColumnUpdateContext, workers: int = 1) -> Iterator[np.ndarray]:
    """Yield columns ``0 .. n_new - 1`` in ascending order."""
    nodes = range(ctx.plan.n_new)
    if workers <= 1:
        for x in nodes:
            yield update_column(ctx, x)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(lambda x: update_column(ctx, x), nodes)
