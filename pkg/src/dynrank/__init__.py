"""Incremental SimRank on dynamic directed graphs."""
from .batch import batch_simrank, partial_sim, partial_sim_column
from .blocks import SinkBlock
from .columnwise import ColumnUpdateContext, update_all_columns, update_column
from .errors import (DenseCapExceeded, DuplicateEdge, GraphError, InvalidStream, MissingEdge,
                     NodeRangeError, ParseError, SelfLoopError)
from .graph import (DynamicGraph, EdgeCase, TransitionMatrix, build_transition, delete_edge,
                    insert_edge, read_edge_list)
from .growth import BorderedGrowth, grow_c1, grow_c2, grow_c3
from .incremental import (DELETE, INSERT, AffectedArea, DeltaS, RankOneUpdate, affected_sets,
                          apply_unit, apply_unit_pruned, compute_gamma_lambda, decompose_delete,
                          decompose_insert)
from .plan import UpdatePlan, plan_block, plan_edge
from .store import ColumnStore, DenseStore, SimStore
from .stream import (EdgeUpdate, apply_block, inc_bsr, net_updates, parse_update_stream,
                     partition_blocks, replay_unit)
from .tolerances import DEFAULT_DAMPING, DEFAULT_ITERS, DENSE_CAP, EQ_TOL, oracle_tol

__version__ = "0.1.0"

__all__ = [
    "AffectedArea",
    "BorderedGrowth",
    "ColumnStore",
    "ColumnUpdateContext",
    "DEFAULT_DAMPING",
    "DEFAULT_ITERS",
    "DELETE",
    "DENSE_CAP",
    "DeltaS",
    "DenseCapExceeded",
    "DenseStore",
    "DuplicateEdge",
    "DynamicGraph",
    "EQ_TOL",
    "EdgeCase",
    "EdgeUpdate",
    "GraphError",
    "INSERT",
    "InvalidStream",
    "MissingEdge",
    "NodeRangeError",
    "ParseError",
    "RankOneUpdate",
    "SelfLoopError",
    "SimStore",
    "SinkBlock",
    "TransitionMatrix",
    "UpdatePlan",
    "affected_sets",
    "apply_block",
    "apply_unit",
    "apply_unit_pruned",
    "batch_simrank",
    "build_transition",
    "compute_gamma_lambda",
    "decompose_delete",
    "decompose_insert",
    "delete_edge",
    "grow_c1",
    "grow_c2",
    "grow_c3",
    "inc_bsr",
    "insert_edge",
    "net_updates",
    "oracle_tol",
    "parse_update_stream",
    "partial_sim",
    "partial_sim_column",
    "partition_blocks",
    "plan_block",
    "plan_edge",
    "read_edge_list",
    "replay_unit",
    "update_all_columns",
    "update_column",
]
