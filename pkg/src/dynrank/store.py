"""Similarity stores: a dense matrix or a column provider.

Both expose the same interface: ``apply_edge`` for single-edge algorithms,
``apply_block`` for sink blocks, and ``column``/``columns`` for reads.  A
store owns its graph and mutates it only after an update has been planned
against the pre-update state.
"""
from __future__ import annotations

import abc
from collections.abc import Sequence

import numpy as np

from .batch import batch_simrank, partial_sim, partial_sim_column
from .blocks import SinkBlock
from .columnwise import ColumnUpdateContext, advance_column, update_all_columns
from .errors import DenseCapExceeded, NodeRangeError
from .graph import DynamicGraph, EdgeCase
from .incremental import AffectedArea, DeltaS, apply_unit, apply_unit_pruned
from .plan import SylvesterTerm, UpdatePlan, commit, plan_block, plan_edge, plan_growth
from .tolerances import DENSE_CAP


def dense_delta(term: SylvesterTerm) -> DeltaS:
    """Materialise ``scale * (M + M^T)`` for a Sylvester term."""
    n = len(term.eta0)
    m = np.zeros((n, n))
    for xi, eta in term.pairs():
        m += np.outer(xi, eta)
    return DeltaS.dense(m, term.scale)


class SimStore(abc.ABC):
    def __init__(self, graph: DynamicGraph, c: float, k: int):
        if not 0.0 < c < 1.0:
            raise ValueError("damping must lie in (0, 1)")
        if k < 1:
            raise ValueError("iterations must be >= 1")
        self.graph = graph
        self.c = c
        self.k = k

    @property
    def n(self) -> int:
        return self.graph.n

    @abc.abstractmethod
    def column(self, x: int) -> np.ndarray:
        """Current column ``x``."""

    def columns(self, nodes: Sequence[int]) -> np.ndarray:
        """Sum of the current columns over ``nodes``."""
        out = np.zeros(self.n)
        for x in nodes:
            out += self.column(x)
        return out

    @abc.abstractmethod
    def apply_plan(self, plan: UpdatePlan) -> None:
        """Apply a plan built against the current state and commit it to the graph."""

    def apply_edge(self, i: int, j: int, op: str) -> UpdatePlan:
        plan = plan_edge(self.graph, i, j, op, self.columns, self.c, self.k)
        self.apply_plan(plan)
        return plan

    def apply_block(self, block: SinkBlock) -> UpdatePlan:
        plan = plan_block(self.graph, block, self.columns, self.c, self.k)
        self.apply_plan(plan)
        return plan

    def add_nodes(self, n_new: int) -> UpdatePlan:
        """Grow to ``n_new`` nodes by appending isolated ones."""
        plan = plan_growth(self.graph, n_new, self.c)
        self.apply_plan(plan)
        return plan

    def matrix(self) -> np.ndarray:
        """Dense copy of the current similarity matrix (small graphs only)."""
        n = self.n
        if n > DENSE_CAP:
            raise DenseCapExceeded(n, DENSE_CAP)
        return np.column_stack([self.column(x) for x in range(n)]) if n else np.zeros((0, 0))


class DenseStore(SimStore):
    """In-memory ``n x n`` matrix; optional pruning of C0 updates to the affected area."""

    def __init__(self, graph: DynamicGraph, c: float, k: int, *, pruned: bool = False,
                 cap: int = DENSE_CAP, s: np.ndarray | None = None):
        super().__init__(graph, c, k)
        if graph.n > cap:
            raise DenseCapExceeded(graph.n, cap)
        self.cap = cap
        self.pruned = pruned
        self.s = batch_simrank(graph.transition(), c, k, cap=cap) if s is None else s
        self.last_area: AffectedArea | None = None

    def column(self, x: int) -> np.ndarray:
        if not 0 <= x < self.n:
            raise NodeRangeError(x, self.n)
        return self.s[:, x].copy()

    def columns(self, nodes: Sequence[int]) -> np.ndarray:
        nodes = list(nodes)
        if len(nodes) == 1:
            return self.column(nodes[0])
        return self.s[:, nodes].sum(axis=1)

    def matrix(self) -> np.ndarray:
        return self.s.copy()

    def apply_plan(self, plan: UpdatePlan) -> None:
        if plan.n_new > self.cap:
            raise DenseCapExceeded(plan.n_new, self.cap)
        delta = self.delta(plan)
        s = self.s
        if plan.n_new > plan.n_old:
            grown = np.zeros((plan.n_new, plan.n_new))
            grown[:plan.n_old, :plan.n_old] = s
            s = grown
        if delta is not None:
            delta.add_to(s)
        for x, val in plan.diag.items():
            s[x, x] = val
        if plan.border is not None:
            j = plan.sink
            s[:plan.n_old, j] = plan.border
            s[j, :plan.n_old] = plan.border
            s[j, j] = plan.corner
        self.s = s
        commit(self.graph, plan)

    def delta(self, plan: UpdatePlan) -> DeltaS | None:
        """Old-block correction of a plan, pruned when enabled and applicable."""
        t = plan.term
        if t is None:
            return None
        self.last_area = None
        if plan.case is EdgeCase.C0:
            if self.pruned:
                area = plan.affected_area()
                self.last_area = area
                return apply_unit_pruned(t.prop, t.eta0, t.pivot, t.c, t.k, area)
            return apply_unit(t.prop, t.eta0, t.pivot, t.c, t.k)
        return dense_delta(t)


class ColumnStore(SimStore):
    """Similarity columns computed on demand; no ``n x n`` buffer.

    ``history="replay"`` keeps the initial transition matrix plus every
    committed plan, and rebuilds a column as the base column advanced through
    each plan in order.  The result matches a dense store fed the same
    updates to round-off.  ``history="recompute"`` keeps nothing and reads old
    columns from the current graph, which is cheaper but drifts from the
    dense store by the truncation error of each update.
    """

    def __init__(self, graph: DynamicGraph, c: float, k: int, *, history: str = "replay",
                 workers: int = 1):
        super().__init__(graph, c, k)
        if history not in ("replay", "recompute"):
            raise ValueError(f"unknown history mode {history!r}")
        self.history = history
        self.workers = workers
        self._base = graph.transition()
        self._base_t = self._base.csr.T.tocsr()
        self.records: list[UpdatePlan] = []
        self.last_context: ColumnUpdateContext | None = None

    def _base_column(self, x: int) -> np.ndarray:
        seed = np.zeros(self._base.n)
        seed[x] = 1.0
        return partial_sim(self._base, seed, self.c, self.k, qt=self._base_t)

    def _replayed_column(self, x: int, upto: int) -> np.ndarray:
        col = self._base_column(x) if x < self._base.n else None
        for plan in self.records[:upto]:
            if x < plan.n_new:
                col = advance_column(plan, x, col)
        return col

    def column(self, x: int) -> np.ndarray:
        if not 0 <= x < self.n:
            raise NodeRangeError(x, self.n)
        if self.history == "recompute":
            return partial_sim_column(self.graph.transition(), x, self.c, self.k)
        return self._replayed_column(x, len(self.records))

    def columns(self, nodes: Sequence[int]) -> np.ndarray:
        nodes = list(nodes)
        if self.history == "recompute":
            seed = np.zeros(self.n)
            seed[nodes] = 1.0
            return partial_sim(self.graph.transition(), seed, self.c, self.k)
        return super().columns(nodes)

    def context(self, plan: UpdatePlan) -> ColumnUpdateContext:
        """Column-update context bound to the current (pre-update) state."""
        if self.history == "recompute":
            q, c, k = self.graph.transition(), self.c, self.k
            return ColumnUpdateContext(plan, lambda x: partial_sim_column(q, x, c, k))
        upto = len(self.records)
        return ColumnUpdateContext(plan, lambda x: self._replayed_column(x, upto))

    def apply_plan(self, plan: UpdatePlan) -> None:
        self.last_context = self.context(plan)
        commit(self.graph, plan)
        if self.history == "replay":
            if plan.term is not None:
                plan.term.keep_history()
            self.records.append(plan)

    def matrix(self) -> np.ndarray:
        n = self.n
        if n > DENSE_CAP:
            raise DenseCapExceeded(n, DENSE_CAP)
        if not n:
            return np.zeros((0, 0))
        return np.column_stack([self.column(x) for x in range(n)])

    def updated_columns(self):
        """Columns after the last update, computed with the column-update kernel."""
        if self.last_context is None:
            raise ValueError("no update applied yet")
        return update_all_columns(self.last_context, self.workers)
