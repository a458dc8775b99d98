import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynrank import (DELETE, INSERT, DenseStore, DynamicGraph, EdgeCase, SinkBlock, batch_simrank,
                     compute_gamma_lambda, decompose_delete, decompose_insert, grow_c1, oracle_tol,
                     plan_block, replay_unit)
from dynrank import blocks as bk
from dynrank.growth import c2_vector
from dynrank.stream import EdgeUpdate

from oracle import dense_q
from strategies import dampings, graph_and_delete, graph_and_insert, graphs


def _s(g, c, k=10):
    return batch_simrank(g.transition(), c, k)


@given(graph_and_insert(), dampings)
@settings(max_examples=40)
def test_single_source_insert_reduces_to_edge_formulas(case, c):
    g, i, j = case
    q, s = g.transition(), _s(g, c)
    d_j = g.in_degree(j)
    u, v = bk.block_rank_one(q, [i], j, d_j, INSERT)
    u1, v1 = decompose_insert(g, q, i, j)
    assert np.abs(np.outer(u, v) - np.outer(u1, v1)).max() <= 1e-14
    gamma, lam = bk.block_gamma_lambda(q, s[:, i], s[i, i], s[:, j], j, d_j, 1, c, INSERT)
    gamma1, lam1 = compute_gamma_lambda(q, s[:, i], s[:, j], i, j, d_j, c, INSERT)
    assert np.abs(gamma - gamma1).max() <= 1e-14
    if d_j:
        assert lam == pytest.approx(lam1, abs=1e-14)


@given(graph_and_delete(), dampings)
@settings(max_examples=40)
def test_single_source_delete_reduces_to_edge_formulas(case, c):
    g, i, j = case
    q, s = g.transition(), _s(g, c)
    d_j = g.in_degree(j)
    u, v = bk.block_rank_one(q, [i], j, d_j, DELETE)
    u1, v1 = decompose_delete(g, q, i, j)
    assert np.abs(np.outer(u, v) - np.outer(u1, v1)).max() <= 1e-14
    gamma, _ = bk.block_gamma_lambda(q, s[:, i], s[i, i], s[:, j], j, d_j, 1, c, DELETE)
    gamma1, _ = compute_gamma_lambda(q, s[:, i], s[:, j], i, j, d_j, c, DELETE)
    assert np.abs(gamma - gamma1).max() <= 1e-14


@given(graphs(), dampings, st.data())
@settings(max_examples=30)
def test_single_source_growth_reduces_to_edge_formulas(g, c, data):
    q, s = g.transition(), _s(g, c)
    x = data.draw(st.integers(0, g.n - 1))
    y, corner = bk.block_c1(q, s[:, x], s[x, x], 1, c)
    one = grow_c1(q, s[:, x], s[x, x], x, c)
    assert np.abs(y - one.y).max() <= 1e-14 and corner == pytest.approx(one.corner, abs=1e-14)
    d_j = g.in_degree(x)
    z = bk.block_c2_vector(s[:, x], s[x, x], x, d_j, 1, c)
    assert np.abs(z - c2_vector(s[:, x], s[x, x], x, d_j, c)).max() <= 1e-14
    assert bk.block_c2_scale(d_j, 1, c) == pytest.approx(c / (d_j + 1), abs=1e-15)
    src, sink = bk.block_c3_diagonal(c, 1)
    assert src == 1 - c and sink == pytest.approx(1 - c * c, abs=1e-15)


@st.composite
def insert_blocks(draw):
    g = draw(graphs(min_n=3))
    j = draw(st.integers(0, g.n - 1))
    free = [i for i in range(g.n) if i != j and not g.has_edge(i, j)]
    if not free:
        free = [g.n]
        g = DynamicGraph(g.n + 1, g.edges())
    srcs = draw(st.lists(st.sampled_from(free), min_size=1, max_size=4, unique=True))
    return g, tuple(sorted(srcs)), j


@st.composite
def delete_blocks(draw):
    g = draw(graphs(min_n=3).filter(lambda h: h.m > 0))
    j = draw(st.sampled_from([x for x in range(g.n) if g.in_degree(x)]))
    srcs = draw(st.lists(st.sampled_from(g.in_neighbors(j)), min_size=1, unique=True))
    return g, tuple(sorted(srcs)), j


def _after(g, srcs, j, op):
    h = g.copy()
    for i in srcs:
        (h.insert_edge if op == INSERT else h.delete_edge)(i, j)
    return h


@given(insert_blocks())
def test_block_rank_one_reconstructs_q_insert(case):
    g, srcs, j = case
    q = g.transition()
    u, v = bk.block_rank_one(q, srcs, j, g.in_degree(j), INSERT)
    want = dense_q(g.n, _after(g, srcs, j, INSERT).edges())
    assert np.abs(q.toarray() + np.outer(u, v) - want).max() <= 1e-12


@given(delete_blocks())
def test_block_rank_one_reconstructs_q_delete(case):
    g, srcs, j = case
    q = g.transition()
    u, v = bk.block_rank_one(q, srcs, j, g.in_degree(j), DELETE)
    want = dense_q(g.n, _after(g, srcs, j, DELETE).edges())
    assert np.abs(q.toarray() + np.outer(u, v) - want).max() <= 1e-12


def _k_for(c, target=1e-11):
    return int(np.ceil(np.log(target) / np.log(c)))


def _block_vs_batch_and_unit(g, srcs, j, op, case, c):
    k = 30
    store = DenseStore(g.copy(), c, k)
    store.apply_block(SinkBlock(j, srcs, op, case))
    ref = batch_simrank(store.graph.transition(), c, k)
    assert store.graph == _after(g, srcs, j, op)
    assert np.abs(store.s - ref).max() <= oracle_tol(c, k)
    # block vs one edge at a time, at a depth where truncation is negligible
    k = _k_for(c)
    blk = DenseStore(g.copy(), c, k)
    blk.apply_block(SinkBlock(j, srcs, op, case))
    unit = DenseStore(g.copy(), c, k)
    replay_unit([EdgeUpdate(i, j, op) for i in srcs], unit)
    assert np.abs(blk.s - unit.s).max() <= 1e-8


@given(insert_blocks(), dampings)
@settings(max_examples=40)
def test_insert_block(case, c):
    g, srcs, j = case
    _block_vs_batch_and_unit(g, srcs, j, INSERT, EdgeCase.C0, c)


@given(delete_blocks(), dampings)
@settings(max_examples=40)
def test_delete_block(case, c):
    g, srcs, j = case
    _block_vs_batch_and_unit(g, srcs, j, DELETE, EdgeCase.C0, c)


@given(graphs(min_n=3), dampings, st.data())
@settings(max_examples=30)
def test_growth_blocks(g, c, data):
    n = g.n
    delta = data.draw(st.integers(2, 3))
    live = data.draw(st.lists(st.integers(0, n - 1), min_size=delta, max_size=delta, unique=True))
    j = data.draw(st.integers(0, n - 1))
    fresh = tuple(range(n, n + delta))
    _block_vs_batch_and_unit(g, tuple(sorted(live)), n, INSERT, EdgeCase.C1, c)
    _block_vs_batch_and_unit(g, fresh, j, INSERT, EdgeCase.C2, c)
    _block_vs_batch_and_unit(g, fresh, n + delta, INSERT, EdgeCase.C3, c)


def test_plan_block_validation(citation):
    cols = DenseStore(citation.copy(), 0.6, 5).columns
    with pytest.raises(ValueError, match="empty"):
        plan_block(citation, SinkBlock(1, (), INSERT, EdgeCase.C0), cols, 0.6, 5)
    with pytest.raises(ValueError, match="mixes"):
        plan_block(citation, SinkBlock(1, (2, 20), INSERT, EdgeCase.C0), cols, 0.6, 5)
    with pytest.raises(ValueError, match="tagged"):
        plan_block(citation, SinkBlock(20, (2,), INSERT, EdgeCase.C0), cols, 0.6, 5)
    with pytest.raises(ValueError, match="in-degree"):
        bk.block_rank_one(citation.transition(), (2, 4, 9, 5), 0, 3, DELETE)
