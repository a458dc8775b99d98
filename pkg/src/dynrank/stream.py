"""Batched application of edge-update streams.

A stream is first reduced to its net effect by per-edge signed counting,
then split into blocks of edges sharing a sink.  Deletion blocks run first,
then insertion blocks by ascending sink id.  Each insertion block holds
sources of one liveness class as seen when the block runs.
"""
from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

from .blocks import SinkBlock
from .errors import InvalidStream, ParseError
from .graph import DynamicGraph, EdgeCase, _data_lines
from .incremental import DELETE, INSERT


class EdgeUpdate(NamedTuple):
    src: int
    dst: int
    op: str


UpdateStream = list[EdgeUpdate]


def parse_update_stream(path: str | Path) -> UpdateStream:
    """Read ``+|- src dst`` lines; ``#`` lines are comments."""
    out: UpdateStream = []
    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) != 3 or parts[0] not in (INSERT, DELETE):
            raise ParseError(str(path), lineno, "expected '+|- src dst'")
        try:
            i, j = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(str(path), lineno, "node ids must be integers") from None
        if i < 0 or j < 0:
            raise ParseError(str(path), lineno, "node ids must be non-negative")
        out.append(EdgeUpdate(i, j, parts[0]))
    return out


def validate_stream(stream: Iterable[EdgeUpdate], g: DynamicGraph) -> None:
    """Check that the ops can be applied in order to ``g``.

    Only the edge's own membership matters, so each edge is tracked
    independently.
    """
    state: dict[tuple[int, int], bool] = {}
    for idx, (i, j, op) in enumerate(stream):
        if op not in (INSERT, DELETE):
            raise InvalidStream(f"unknown op {op!r}", idx)
        if i == j:
            raise InvalidStream(f"self-loop ({i}, {i})", idx)
        if i < 0 or j < 0:
            raise InvalidStream(f"negative node id in ({i}, {j})", idx)
        present = state.get((i, j), g.has_edge(i, j))
        if op == INSERT and present:
            raise InvalidStream(f"insert of existing edge ({i}, {j})", idx)
        if op == DELETE and not present:
            raise InvalidStream(f"delete of absent edge ({i}, {j})", idx)
        state[(i, j)] = op == INSERT


def net_updates(stream: Iterable[EdgeUpdate], g: DynamicGraph | None = None
                ) -> tuple[set[tuple[int, int]], set[tuple[int, int]]]:
    """Net insertions and deletions after cancelling opposite ops on the same edge.

    With ``g`` given the stream is also validated against it.
    """
    stream = list(stream)
    if g is not None:
        validate_stream(stream, g)
    count: dict[tuple[int, int], int] = defaultdict(int)
    for idx, (i, j, op) in enumerate(stream):
        count[(i, j)] += 1 if op == INSERT else -1
        if abs(count[(i, j)]) > 1:
            raise InvalidStream(f"edge ({i}, {j}) has net count {count[(i, j)]}", idx)
    plus = {e for e, v in count.items() if v == 1}
    minus = {e for e, v in count.items() if v == -1}
    return plus, minus


def partition_blocks(plus: set[tuple[int, int]], minus: set[tuple[int, int]],
                     g: DynamicGraph) -> list[SinkBlock]:
    """Blocks in application order, with cases as they will apply.

    Liveness is simulated forward: a block that creates nodes grows the
    node count for every later block.  A sink whose sources are mixed gets
    its live sources first, then the sub-block of still-fresh ones.
    """
    by_sink_minus: dict[int, list[int]] = defaultdict(list)
    for i, j in minus:
        by_sink_minus[j].append(i)
    blocks = [SinkBlock(j, tuple(sorted(by_sink_minus[j])), DELETE, EdgeCase.C0)
              for j in sorted(by_sink_minus)]
    by_sink_plus: dict[int, list[int]] = defaultdict(list)
    for i, j in plus:
        by_sink_plus[j].append(i)
    n = g.n
    for j in sorted(by_sink_plus):
        remaining = sorted(by_sink_plus[j])
        while remaining:
            live = [i for i in remaining if i < n]
            fresh = [i for i in remaining if i >= n]
            chosen = live if live else fresh
            case = EdgeCase.classify(bool(live), j < n)
            blocks.append(SinkBlock(j, tuple(chosen), INSERT, case))
            n = max(n, j + 1, max(chosen) + 1)
            remaining = fresh if live else []
    return blocks


def apply_block(block: SinkBlock, store):
    """Apply one block to a store; returns the executed plan."""
    return store.apply_block(block)


@dataclass
class StreamSummary:
    ops: int
    net_plus: int
    net_minus: int
    #: ``None`` when the stream was applied op by op
    blocks: list[SinkBlock] | None

    @property
    def net_edges(self) -> int:
        return self.net_plus + self.net_minus

    def describe(self) -> str:
        head = f"ops={self.ops} net_edges={self.net_edges} (+{self.net_plus} -{self.net_minus})"
        if self.blocks is None:
            return f"{head} unit_updates={self.ops}"
        ins = sum(b.op == INSERT for b in self.blocks)
        dels = len(self.blocks) - ins
        return f"{head} blocks={len(self.blocks)} (insert={ins} delete={dels})"


def inc_bsr(stream: Iterable[EdgeUpdate], store) -> StreamSummary:
    """Apply a stream to a store block-at-a-time; returns what was done."""
    stream = list(stream)
    plus, minus = net_updates(stream, store.graph)
    blocks = partition_blocks(plus, minus, store.graph)
    for block in blocks:
        store.apply_block(block)
    top = 1 + max((max(i, j) for i, j, _ in stream), default=-1)
    if top > store.n:
        store.add_nodes(top)
    return StreamSummary(len(stream), len(plus), len(minus), blocks)


def replay_unit(stream: Iterable[EdgeUpdate], store) -> StreamSummary:
    """Apply a stream op by op with the single-edge algorithms."""
    stream = list(stream)
    validate_stream(stream, store.graph)
    for i, j, op in stream:
        store.apply_edge(i, j, op)
    plus, minus = net_updates(stream)
    return StreamSummary(len(stream), len(plus), len(minus), None)


def apply_stream_to_graph(stream: Iterable[EdgeUpdate], g: DynamicGraph) -> None:
    """Plain sequential graph mutation (no similarity work)."""
    for i, j, op in stream:
        if op == INSERT:
            g.insert_edge(i, j)
        else:
            g.delete_edge(i, j)
