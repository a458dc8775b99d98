"""Update plans: the store-independent description of one edge or block change.

A plan is built against the pre-update graph and two old similarity columns.
It says how ``S`` grows (fresh ids, border, corner) and, when the old block
changes, carries the Sylvester term ``scale * (M + M^T)`` with
``M = sum_t xi_t eta_t^T``.  Dense stores materialise it; column stores
evaluate one column at a time.
"""
from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from . import blocks
from .blocks import SinkBlock
from .errors import DuplicateEdge, MissingEdge, SelfLoopError
from .graph import DynamicGraph, EdgeCase, TransitionMatrix
from .growth import c2_propagator, c2_vector, grow_c1, grow_c3
from .incremental import (DELETE, INSERT, AffectedArea, Propagator, RankOneUpdate, affected_sets,
                          compute_gamma_lambda, decompose_delete, decompose_insert, exact_propagator,
                          sylvester_pairs)

#: ``old_columns(nodes)`` returns ``sum_{x in nodes} S_old[:, x]``.
ColumnSource = Callable[[Sequence[int]], np.ndarray]


@dataclass
class SylvesterTerm:
    """Old-block correction ``scale * (M + M^T)``, ``M = sum_t xi_t eta_t^T``.

    ``xi_0 = xi0 * e_pivot``, ``eta_0 = eta0``, ``xi <- c P xi``, ``eta <- P eta``.
    """

    prop: Propagator
    pivot: int
    xi0: float
    eta0: np.ndarray
    c: float
    k: int
    scale: float = 1.0
    _history: list | None = field(default=None, init=False, repr=False)

    def pairs(self):
        if self._history is not None:
            return iter(self._history)
        e = np.zeros(len(self.eta0))
        e[self.pivot] = self.xi0
        return sylvester_pairs(self.prop, e, self.eta0, self.c, self.k)

    def keep_history(self) -> None:
        """Cache the ``(xi_t, eta_t)`` sequence; costs ``2 (k+1) n`` floats."""
        if self._history is None:
            self._history = list(self.pairs())


@dataclass
class UpdatePlan:
    case: EdgeCase | None
    op: str
    sink: int
    sources: tuple[int, ...]
    n_old: int
    n_new: int
    in_degree: int
    #: diagonal score of each node id created by the update
    diag: dict[int, float] = field(default_factory=dict)
    #: C1 border over the old nodes, stored at row/column ``sink``
    border: np.ndarray | None = None
    corner: float | None = None
    term: SylvesterTerm | None = None
    rank_one: RankOneUpdate | None = None
    q_old: TransitionMatrix | None = None
    s_col_I: np.ndarray | None = None
    s_col_j: np.ndarray | None = None

    @property
    def delta(self) -> int:
        return len(self.sources)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, self.sink) for i in self.sources]

    def affected_area(self) -> AffectedArea:
        """Pruning sets; only defined for C0 changes."""
        if self.case is not EdgeCase.C0:
            raise ValueError("affected area is defined for C0 updates only")
        t = self.term
        return affected_sets(self.q_old, t.prop, self.s_col_I, self.s_col_j, self.sink,
                             self.in_degree, self.op, t.k, self.delta)


def needed_columns(case: EdgeCase, op: str, d_j: int, delta: int) -> tuple[bool, bool]:
    """Whether the plan for a change needs ``S[:, I]`` and ``S[:, j]``."""
    if case is EdgeCase.C0:
        sink_edged = d_j > 0 if op == INSERT else d_j > delta
        return True, sink_edged
    if case is EdgeCase.C1:
        return True, False
    if case is EdgeCase.C2:
        return False, True
    return False, False


def _fresh_diag(n_old: int, n_new: int, c: float) -> dict[int, float]:
    return {x: 1.0 - c for x in range(n_old, n_new)}


def _fetch(old_columns: ColumnSource, case, op, d_j, sources, j):
    need_i, need_j = needed_columns(case, op, d_j, len(sources))
    s_i = old_columns(list(sources)) if need_i else None
    s_j = old_columns([j]) if need_j else None
    return s_i, s_j


def _new_in_neighbors(g: DynamicGraph, sources, j: int, op: str) -> list[int]:
    cur = set(g.in_neighbors(j))
    return sorted(cur | set(sources)) if op == INSERT else sorted(cur - set(sources))


def plan_edge(g: DynamicGraph, i: int, j: int, op: str, old_columns: ColumnSource,
              c: float, k: int) -> UpdatePlan:
    """Plan a single edge change with the single-edge formulas."""
    q = g.transition()
    n = g.n
    if i == j:
        raise SelfLoopError(i)
    if op == DELETE:
        if not g.has_edge(i, j):
            raise MissingEdge(i, j)
        case = EdgeCase.C0
    elif op == INSERT:
        case = g.classify(i, j)
        if case is EdgeCase.C0 and g.has_edge(i, j):
            raise DuplicateEdge(i, j)
    else:
        raise ValueError(f"unknown op {op!r}")
    n_new = max(n, i + 1, j + 1)
    d_j = g.in_degree(j) if j < n else 0
    s_i, s_j = _fetch(old_columns, case, op, d_j, (i,), j)
    plan = UpdatePlan(case, op, j, (i,), n, n_new, d_j, diag=_fresh_diag(n, n_new, c),
                      q_old=q, s_col_I=s_i, s_col_j=s_j)
    if case is EdgeCase.C0:
        u, v = decompose_insert(g, q, i, j) if op == INSERT else decompose_delete(g, q, i, j)
        gamma, lam = compute_gamma_lambda(q, s_i, s_j, i, j, d_j, c, op)
        plan.rank_one = RankOneUpdate(u, v, gamma, lam, j, op, d_j, (i,))
        prop = exact_propagator(q, j, _new_in_neighbors(g, (i,), j, op))
        plan.term = SylvesterTerm(prop, j, c, gamma, c, k)
    elif case is EdgeCase.C1:
        growth = grow_c1(q, s_i, s_i[i], i, c)
        del plan.diag[j]
        plan.border, plan.corner = growth.y, growth.corner
    elif case is EdgeCase.C2:
        z = c2_vector(s_j, s_j[j], j, d_j, c)
        plan.term = SylvesterTerm(c2_propagator(q, j, d_j), j, 1.0, z, c, k, c / (d_j + 1))
    else:
        corner = grow_c3(c).corner
        plan.diag[i] = corner[0, 0]
        plan.diag[j] = corner[1, 1]
    return plan


def plan_block(g: DynamicGraph, block: SinkBlock, old_columns: ColumnSource,
               c: float, k: int) -> UpdatePlan:
    """Plan a sink block with the block formulas."""
    q = g.transition()
    n = g.n
    j, sources, op = block.sink, tuple(block.sources), block.op
    delta = len(sources)
    if delta == 0:
        raise ValueError("empty block")
    if j in sources:
        raise SelfLoopError(j)
    sink_live = j < n
    live = [x < n for x in sources]
    if op == DELETE:
        case = EdgeCase.C0
        for i in sources:
            if not g.has_edge(i, j):
                raise MissingEdge(i, j)
    else:
        if len(set(live)) != 1:
            raise ValueError(f"block for sink {j} mixes live and fresh sources")
        case = EdgeCase.classify(live[0], sink_live)
        if case is EdgeCase.C0:
            for i in sources:
                if g.has_edge(i, j):
                    raise DuplicateEdge(i, j)
    if case is not block.case:
        raise ValueError(f"block for sink {j} tagged {block.case.value} but applies as {case.value}")
    n_new = max(n, j + 1, max(sources) + 1)
    d_j = g.in_degree(j) if sink_live else 0
    s_I, s_j = _fetch(old_columns, case, op, d_j, sources, j)
    s_II = float(s_I[list(sources)].sum()) if s_I is not None else 0.0
    plan = UpdatePlan(case, op, j, sources, n, n_new, d_j, diag=_fresh_diag(n, n_new, c),
                      q_old=q, s_col_I=s_I, s_col_j=s_j)
    if case is EdgeCase.C0:
        u, v = blocks.block_rank_one(q, sources, j, d_j, op)
        gamma, lam = blocks.block_gamma_lambda(q, s_I, s_II, s_j, j, d_j, delta, c, op)
        plan.rank_one = RankOneUpdate(u, v, gamma, lam, j, op, d_j, sources)
        prop = exact_propagator(q, j, _new_in_neighbors(g, sources, j, op))
        plan.term = SylvesterTerm(prop, j, c, gamma, c, k)
    elif case is EdgeCase.C1:
        y, corner = blocks.block_c1(q, s_I, s_II, delta, c)
        del plan.diag[j]
        plan.border, plan.corner = y, corner
    elif case is EdgeCase.C2:
        z = blocks.block_c2_vector(s_j, s_j[j], j, d_j, delta, c)
        plan.term = SylvesterTerm(c2_propagator(q, j, d_j, delta), j, 1.0, z, c, k,
                                  blocks.block_c2_scale(d_j, delta, c))
    else:
        src_diag, sink_diag = blocks.block_c3_diagonal(c, delta)
        for i in sources:
            plan.diag[i] = src_diag
        plan.diag[j] = sink_diag
    return plan


def plan_growth(g: DynamicGraph, n_new: int, c: float) -> UpdatePlan:
    """Plan that only appends isolated nodes up to ``n_new``."""
    n = g.n
    return UpdatePlan(None, "", -1, (), n, max(n, n_new), 0, diag=_fresh_diag(n, n_new, c),
                      q_old=g.transition())


def commit(g: DynamicGraph, plan: UpdatePlan) -> None:
    """Apply the plan's edge changes to the graph."""
    if plan.n_new > g.n:
        g.add_nodes(plan.n_new - g.n)
    for i, j in plan.edges():
        if plan.op == INSERT:
            g.insert_edge(i, j)
        else:
            g.delete_edge(i, j)
