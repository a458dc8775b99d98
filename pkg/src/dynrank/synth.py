"""Synthetic graphs and update streams for benchmarks and tests."""
from __future__ import annotations

import numpy as np

from .graph import DynamicGraph
from .incremental import DELETE, INSERT
from .stream import EdgeUpdate, UpdateStream


def preferential_attachment(n: int, out_degree: int = 5, *, seed: int | None = None,
                            rng: np.random.Generator | None = None) -> DynamicGraph:
    """Citation-style digraph: each new node links to ``out_degree`` older nodes.

    Targets are drawn without replacement with probability proportional to
    ``in-degree + 1``.  The result has ``m`` close to ``out_degree * n``.
    """
    if n < 0 or out_degree < 0:
        raise ValueError("n and out_degree must be non-negative")
    rng = np.random.default_rng(seed) if rng is None else rng
    # urn of target ids; every node enters once, plus once per in-edge
    urn = np.empty(n + n * out_degree, dtype=np.int64)
    size = 0
    edges: list[tuple[int, int]] = []
    for v in range(n):
        want = min(out_degree, v)
        chosen: set[int] = set()
        while len(chosen) < want:
            draws = urn[rng.integers(0, size, 2 * (want - len(chosen)))]
            for t in draws:
                chosen.add(int(t))
                if len(chosen) == want:
                    break
        for t in sorted(chosen):
            edges.append((v, t))
            urn[size] = t
            size += 1
        urn[size] = v
        size += 1
    return DynamicGraph(n, edges)


def random_updates(g: DynamicGraph, count: int, *, delete_fraction: float = 0.3,
                   seed: int | None = None, rng: np.random.Generator | None = None
                   ) -> UpdateStream:
    """Valid single-edge stream between existing nodes of ``g``.

    Deletions remove a uniformly chosen current edge.  Insertions pick a
    uniform source and an in-degree-weighted target.  ``g`` is not modified.
    """
    rng = np.random.default_rng(seed) if rng is None else rng
    n = g.n
    if n < 2:
        raise ValueError("need at least two nodes")
    edges = set(g.edge_set())
    edge_list = sorted(edges)
    indeg = np.asarray(g.in_degrees(), dtype=float)
    out: UpdateStream = []
    while len(out) < count:
        if edge_list and rng.random() < delete_fraction:
            k = int(rng.integers(len(edge_list)))
            e = edge_list[k]
            edge_list[k] = edge_list[-1]
            edge_list.pop()
            edges.discard(e)
            indeg[e[1]] -= 1
            out.append(EdgeUpdate(e[0], e[1], DELETE))
            continue
        w = indeg + 1.0
        i = int(rng.integers(n))
        j = int(rng.choice(n, p=w / w.sum()))
        if i == j or (i, j) in edges:
            continue
        edges.add((i, j))
        edge_list.append((i, j))
        indeg[j] += 1
        out.append(EdgeUpdate(i, j, INSERT))
    return out
