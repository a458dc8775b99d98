"""Dynamic directed graph and its backward transition matrix.

Node ids are dense and 0-based.  An edge endpoint with id ``>= n`` is a fresh
node; inserting it grows the graph to ``max(i, j) + 1`` nodes, so any skipped
ids become isolated nodes.
"""
from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .errors import DuplicateEdge, MissingEdge, NodeRangeError, ParseError, SelfLoopError


class EdgeCase(enum.Enum):
    """Endpoint liveness of an inserted edge ``(i, j)``."""

    C0 = "C0"  # both endpoints live
    C1 = "C1"  # fresh sink
    C2 = "C2"  # fresh source
    C3 = "C3"  # both fresh

    @classmethod
    def classify(cls, source_live: bool, sink_live: bool) -> "EdgeCase":
        if source_live:
            return cls.C0 if sink_live else cls.C1
        return cls.C2 if sink_live else cls.C3


class TransitionMatrix:
    """Immutable sparse backward transition matrix.

    Row ``i`` holds ``1/indeg(i)`` at column ``j`` for every edge ``j -> i``,
    with column indices sorted ascending.  Updates return new instances, so a
    held reference is a stable snapshot.
    """

    __slots__ = ("csr",)

    def __init__(self, csr: sp.csr_array):
        self.csr = csr

    @classmethod
    def empty(cls, n: int) -> "TransitionMatrix":
        return cls(sp.csr_array((n, n), dtype=np.float64))

    @property
    def n(self) -> int:
        return self.csr.shape[0]

    @property
    def nnz(self) -> int:
        return self.csr.nnz

    def __matmul__(self, x):
        return self.csr @ x

    @property
    def T(self):
        return self.csr.T

    def row(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        """Column indices and values of row ``j``."""
        lo, hi = self.csr.indptr[j], self.csr.indptr[j + 1]
        return self.csr.indices[lo:hi], self.csr.data[lo:hi]

    def row_dot(self, j: int, x: np.ndarray) -> float:
        cols, vals = self.row(j)
        return float(vals @ x[cols])

    def row_dense(self, j: int) -> np.ndarray:
        out = np.zeros(self.n)
        cols, vals = self.row(j)
        out[cols] = vals
        return out

    def toarray(self) -> np.ndarray:
        return self.csr.toarray()

    def with_row(self, j: int, in_neighbors: Iterable[int]) -> "TransitionMatrix":
        """Copy with row ``j`` rewritten for the given in-neighbour set."""
        cols = np.array(sorted(in_neighbors), dtype=self.csr.indices.dtype)
        vals = np.full(len(cols), 1.0 / len(cols)) if len(cols) else np.zeros(0)
        a = self.csr
        lo, hi = a.indptr[j], a.indptr[j + 1]
        indices = np.concatenate([a.indices[:lo], cols, a.indices[hi:]])
        data = np.concatenate([a.data[:lo], vals, a.data[hi:]])
        indptr = a.indptr.copy()
        indptr[j + 1:] += len(cols) - (hi - lo)
        return TransitionMatrix(sp.csr_array((data, indices, indptr), shape=a.shape))

    def grown(self, n_new: int) -> "TransitionMatrix":
        """Copy bordered with zero rows and columns up to ``n_new`` nodes."""
        a = self.csr
        if n_new == a.shape[0]:
            return self
        indptr = np.concatenate([a.indptr, np.full(n_new - a.shape[0], a.indptr[-1])])
        return TransitionMatrix(sp.csr_array((a.data, a.indices, indptr), shape=(n_new, n_new)))

    def same_as(self, other: "TransitionMatrix") -> bool:
        """Exact structural and value equality."""
        a, b = self.csr, other.csr
        return (a.shape == b.shape
                and np.array_equal(a.indptr, b.indptr)
                and np.array_equal(a.indices, b.indices)
                and np.array_equal(a.data, b.data))


class DynamicGraph:
    """Mutable directed graph with in-degree tracking and stable node ids."""

    def __init__(self, n: int = 0, edges: Iterable[tuple[int, int]] = ()):
        self._n = 0
        self._in: list[set[int]] = []
        self._out: list[set[int]] = []
        self._m = 0
        self._q: TransitionMatrix | None = None
        self.add_nodes(n)
        for i, j in edges:
            if i >= self._n or j >= self._n:
                self.add_nodes(max(i, j) + 1 - self._n)
            self.insert_edge(i, j)

    # -- queries -----------------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    def in_degree(self, j: int) -> int:
        self._check(j)
        return len(self._in[j])

    def in_degrees(self) -> np.ndarray:
        return np.fromiter((len(s) for s in self._in), dtype=np.int64, count=self._n)

    def in_neighbors(self, j: int) -> list[int]:
        self._check(j)
        return sorted(self._in[j])

    def out_neighbors(self, i: int) -> list[int]:
        self._check(i)
        return sorted(self._out[i])

    def has_edge(self, i: int, j: int) -> bool:
        return 0 <= i < self._n and 0 <= j < self._n and i in self._in[j]

    def is_live(self, x: int) -> bool:
        return 0 <= x < self._n

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges sorted by (source, target)."""
        for i in range(self._n):
            for j in sorted(self._out[i]):
                yield i, j

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges())

    def copy(self) -> "DynamicGraph":
        g = DynamicGraph.__new__(DynamicGraph)
        g._n = self._n
        g._in = [set(s) for s in self._in]
        g._out = [set(s) for s in self._out]
        g._m = self._m
        g._q = self._q
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DynamicGraph):
            return NotImplemented
        return self._n == other._n and self._in == other._in

    def __repr__(self) -> str:
        return f"DynamicGraph(n={self._n}, m={self._m})"

    def transition(self) -> TransitionMatrix:
        """Incrementally maintained backward transition matrix."""
        if self._q is None:
            self._q = build_transition(self)
        return self._q

    # -- mutation ----------------------------------------------------------
    def add_nodes(self, count: int) -> range:
        """Append ``count`` isolated nodes and return their ids."""
        if count < 0:
            raise ValueError("count must be non-negative")
        start = self._n
        self._in.extend(set() for _ in range(count))
        self._out.extend(set() for _ in range(count))
        self._n += count
        if self._q is not None and count:
            self._q = self._q.grown(self._n)
        return range(start, self._n)

    def classify(self, i: int, j: int) -> EdgeCase:
        return EdgeCase.classify(self.is_live(i), self.is_live(j))

    def insert_edge(self, i: int, j: int) -> EdgeCase:
        """Insert ``i -> j``, allocating fresh endpoints, and return its case."""
        if i < 0 or j < 0:
            raise NodeRangeError(min(i, j), self._n)
        if i == j:
            raise SelfLoopError(i)
        case = self.classify(i, j)
        if case is EdgeCase.C0 and i in self._in[j]:
            raise DuplicateEdge(i, j)
        top = max(i, j) + 1
        if top > self._n:
            self.add_nodes(top - self._n)
        self._in[j].add(i)
        self._out[i].add(j)
        self._m += 1
        if self._q is not None:
            self._q = self._q.with_row(j, self._in[j])
        return case

    def delete_edge(self, i: int, j: int) -> None:
        if not self.has_edge(i, j):
            raise MissingEdge(i, j)
        self._in[j].discard(i)
        self._out[i].discard(j)
        self._m -= 1
        if self._q is not None:
            self._q = self._q.with_row(j, self._in[j])

    def _check(self, x: int) -> None:
        if not 0 <= x < self._n:
            raise NodeRangeError(x, self._n)


def build_transition(g: DynamicGraph) -> TransitionMatrix:
    """Build ``Q`` from scratch by a full scan of the edge set."""
    n = g.n
    deg = g.in_degrees()
    rows, cols = [], []
    for i, j in g.edges():
        rows.append(j)
        cols.append(i)
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    vals = 1.0 / deg[rows] if len(rows) else np.zeros(0)
    q = sp.csr_array(sp.coo_array((vals, (rows, cols)), shape=(n, n)))
    q.sort_indices()
    q.indices = q.indices.astype(np.int32)
    q.indptr = q.indptr.astype(np.int32)
    return TransitionMatrix(q)


def insert_edge(g: DynamicGraph, i: int, j: int) -> EdgeCase:
    return g.insert_edge(i, j)


def delete_edge(g: DynamicGraph, i: int, j: int) -> None:
    g.delete_edge(i, j)


def _data_lines(path: str | Path) -> Iterator[tuple[int, str]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line and not line.startswith("#"):
                yield lineno, line


def read_edge_list(path: str | Path, n: int | None = None) -> DynamicGraph:
    """Read a ``src<TAB>dst`` edge list.

    The node count is ``1 + max id`` unless ``n`` is given, in which case
    every id must be below ``n``.
    """
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(str(path), lineno, f"expected 2 fields, got {len(parts)}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(str(path), lineno, "node ids must be integers") from None
        if i < 0 or j < 0:
            raise ParseError(str(path), lineno, "node ids must be non-negative")
        if i == j:
            raise ParseError(str(path), lineno, f"self-loop ({i}, {i}) rejected")
        if (i, j) in seen:
            raise ParseError(str(path), lineno, f"duplicate edge ({i}, {j})")
        if n is not None and max(i, j) >= n:
            raise ParseError(str(path), lineno, f"node id {max(i, j)} exceeds --nodes {n}")
        seen.add((i, j))
        edges.append((i, j))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return DynamicGraph(n, edges)


def write_edge_list(g: DynamicGraph, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for i, j in g.edges():
            fh.write(f"{i}\t{j}\n")
