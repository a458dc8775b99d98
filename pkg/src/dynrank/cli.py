"""Command-line front end.

Subcommands
-----------
batch          all pairs from scratch
column         one column from scratch
replay         apply an update stream, print all pairs
column-update  apply an update stream, print one column
bench          synthetic timing run, CSV on stdout

Exit codes: 0 success, 2 parse error, 3 stream error, 4 verification failure.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from collections.abc import Iterable, Sequence

import numpy as np

from .batch import batch_simrank, partial_sim_column
from .columnwise import update_column
from .errors import DenseCapExceeded, GraphError, InvalidStream, NodeRangeError, ParseError
from .graph import DynamicGraph, read_edge_list
from .store import ColumnStore, DenseStore, SimStore
from .stream import apply_stream_to_graph, inc_bsr, parse_update_stream, replay_unit
from .synth import preferential_attachment, random_updates
from .tolerances import DEFAULT_DAMPING, DEFAULT_ITERS, DENSE_CAP, EQ_TOL, oracle_tol

EXIT_OK, EXIT_PARSE, EXIT_STREAM, EXIT_VERIFY = 0, 2, 3, 4
ENGINES = ("dense", "dense-pruned", "columnwise")


def threads() -> int:
    """Worker cap from ``DYNRANK_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("DYNRANK_THREADS", "1")))
    except ValueError:
        return 1


def make_store(engine: str, g: DynamicGraph, c: float, k: int, *, cap: int = DENSE_CAP,
               history: str = "replay") -> SimStore:
    if engine == "dense":
        return DenseStore(g, c, k, cap=cap)
    if engine == "dense-pruned":
        return DenseStore(g, c, k, pruned=True, cap=cap)
    if engine == "columnwise":
        return ColumnStore(g, c, k, history=history, workers=threads())
    raise ValueError(f"unknown engine {engine!r}")


def fmt(x: float) -> str:
    return "%.12g" % x


def write_pairs(columns: Iterable[np.ndarray], threshold: float, out) -> None:
    """``a<TAB>b<TAB>score`` for every ordered pair with a positive score >= threshold.

    Scores at or below ``EQ_TOL`` count as zero, so rounding residue from
    incremental updates does not show up as a pair.  Column ``a`` of a
    symmetric matrix is row ``a``, so lines come out sorted by ``(a, b)``.
    """
    for a, col in enumerate(columns):
        for b in np.flatnonzero((col > EQ_TOL) & (col >= threshold)):
            out.write(f"{a}\t{b}\t{fmt(col[b])}\n")


def write_column(col: np.ndarray, out) -> None:
    for b, v in enumerate(col):
        out.write(f"{b}\t{fmt(v)}\n")


def store_columns(store: SimStore) -> Iterable[np.ndarray]:
    if isinstance(store, DenseStore):
        return iter(store.s.T)
    return (store.column(x) for x in range(store.n))


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--damping", "-c", type=float, default=DEFAULT_DAMPING)
    p.add_argument("--iters", "-k", type=int, default=DEFAULT_ITERS)


def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", "-g", required=True, help="edge list: 'src dst' per line")
    p.add_argument("--nodes", type=int, default=None, help="node count (default: max id + 1)")


def _stream_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--updates", "-u", required=True, help="stream: '+|- src dst' per line")
    p.add_argument("--engine", choices=ENGINES, default="dense")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--unit", dest="batched", action="store_false",
                      help="apply ops one at a time")
    mode.add_argument("--batched", dest="batched", action="store_true",
                      help="net and block the stream first (default)")
    p.set_defaults(batched=True)
    p.add_argument("--history", choices=("replay", "recompute"), default="replay",
                   help="old-column source for the columnwise engine")
    p.add_argument("--verify", action="store_true",
                   help="compare with a fresh computation on the final graph")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynrank", description="SimRank on dynamic graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("batch", help="all-pairs scores from scratch")
    _graph_args(p)
    _common(p)
    p.add_argument("--threshold", type=float, default=0.0)

    p = sub.add_parser("column", help="one column from scratch")
    _graph_args(p)
    _common(p)
    p.add_argument("--node", type=int, required=True)

    p = sub.add_parser("replay", help="apply an update stream and print all pairs")
    _graph_args(p)
    _common(p)
    _stream_args(p)
    p.add_argument("--threshold", type=float, default=0.0)

    p = sub.add_parser("column-update", help="apply an update stream and print one column")
    _graph_args(p)
    _common(p)
    _stream_args(p)
    p.add_argument("--node", type=int, required=True)
    p.set_defaults(engine="columnwise")

    p = sub.add_parser("bench", help="synthetic per-update timings as CSV")
    _common(p)
    p.add_argument("--n", type=int, default=5000)
    p.add_argument("--out-degree", type=int, default=5)
    p.add_argument("--count", type=int, default=100, help="number of single-edge updates")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--engines", default="dense-pruned",
                   help=f"comma-separated subset of {','.join(ENGINES)}")
    p.add_argument("--node", type=int, default=0, help="column tracked by the columnwise engine")
    return parser


def _apply(args, store: SimStore, stream) -> None:
    summary = (inc_bsr if args.batched else replay_unit)(stream, store)
    print(summary.describe(), file=sys.stderr)


def _final_graph(g0: DynamicGraph, stream) -> DynamicGraph:
    g = g0.copy()
    apply_stream_to_graph(stream, g)
    return g


def _report(diff: float, c: float, k: int) -> int:
    tol = oracle_tol(c, k)
    status = "ok" if diff <= tol else "FAIL"
    print(f"verify max_abs_diff={diff:.3e} tol={tol:.3e} {status}", file=sys.stderr)
    return EXIT_OK if diff <= tol else EXIT_VERIFY


def cmd_batch(args) -> int:
    g = read_edge_list(args.graph, args.nodes)
    s = batch_simrank(g.transition(), args.damping, args.iters)
    write_pairs(s.T, args.threshold, sys.stdout)
    return EXIT_OK


def cmd_column(args) -> int:
    g = read_edge_list(args.graph, args.nodes)
    write_column(partial_sim_column(g.transition(), args.node, args.damping, args.iters),
                 sys.stdout)
    return EXIT_OK


def cmd_replay(args) -> int:
    g = read_edge_list(args.graph, args.nodes)
    stream = parse_update_stream(args.updates)
    store = make_store(args.engine, g.copy(), args.damping, args.iters, history=args.history)
    _apply(args, store, stream)
    write_pairs(store_columns(store), args.threshold, sys.stdout)
    if args.verify:
        ref = batch_simrank(_final_graph(g, stream).transition(), args.damping, args.iters)
        return _report(float(np.abs(store.matrix() - ref).max(initial=0.0)),
                       args.damping, args.iters)
    return EXIT_OK


def cmd_column_update(args) -> int:
    g = read_edge_list(args.graph, args.nodes)
    stream = parse_update_stream(args.updates)
    store = make_store(args.engine, g.copy(), args.damping, args.iters, history=args.history)
    _apply(args, store, stream)
    col = store.column(args.node)
    write_column(col, sys.stdout)
    if args.verify:
        ref = partial_sim_column(_final_graph(g, stream).transition(), args.node,
                                 args.damping, args.iters)
        return _report(float(np.abs(col - ref).max(initial=0.0)), args.damping, args.iters)
    return EXIT_OK


def cmd_bench(args) -> int:
    engines = [e.strip() for e in args.engines.split(",") if e.strip()]
    for e in engines:
        if e not in ENGINES:
            raise ValueError(f"unknown engine {e!r}")
    rng = np.random.default_rng(args.seed)
    g = preferential_attachment(args.n, args.out_degree, rng=rng)
    stream = random_updates(g, args.count, rng=rng)
    c, k = args.damping, args.iters
    out = sys.stdout
    out.write("engine,update,seconds,aff\n")
    t0 = time.perf_counter()
    batch_simrank(g.transition(), c, k)
    out.write(f"batch,-,{time.perf_counter() - t0:.6f},\n")
    for engine in engines:
        store = make_store(engine, g.copy(), c, k, history="recompute")
        for idx, (i, j, op) in enumerate(stream):
            t0 = time.perf_counter()
            store.apply_edge(i, j, op)
            if isinstance(store, ColumnStore):
                update_column(store.last_context, args.node)
            dt = time.perf_counter() - t0
            area = getattr(store, "last_area", None)
            aff = f"{area.aff:.1f}" if area is not None else ""
            out.write(f"{engine},{idx},{dt:.6f},{aff}\n")
    return EXIT_OK


COMMANDS = {"batch": cmd_batch, "column": cmd_column, "replay": cmd_replay,
            "column-update": cmd_column_update, "bench": cmd_bench}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "iters", 1) < 1 or not 0.0 < getattr(args, "damping", 0.5) < 1.0:
            raise ValueError("need 0 < damping < 1 and iters >= 1")
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidStream as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STREAM
    except NodeRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STREAM
    except (OSError, ValueError, DenseCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
