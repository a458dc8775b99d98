import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynrank import (DuplicateEdge, DynamicGraph, EdgeCase, MissingEdge, NodeRangeError, ParseError,
                     SelfLoopError, build_transition, read_edge_list)
from dynrank.graph import write_edge_list

from oracle import dense_q
from strategies import graphs


def test_transition_entries(citation):
    q = citation.transition().toarray()
    j = 0  # a: in-neighbours c, e, j
    assert sorted(np.flatnonzero(q[j])) == [2, 4, 9]
    assert np.all(q[j, [2, 4, 9]] == 1 / 3)
    assert not q[14].any()  # o has no in-edges


def test_transition_matches_dense_oracle(citation):
    assert np.array_equal(citation.transition().toarray(), dense_q(15, citation.edges()))


@given(graphs())
def test_rows_stochastic_or_zero(g):
    q = g.transition().toarray()
    sums = q.sum(axis=1)
    deg = g.in_degrees()
    assert np.all(np.abs(sums[deg > 0] - 1.0) <= 1e-12)
    assert np.all(sums[deg == 0] == 0.0)


ops = st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9), st.booleans()), max_size=60)


@given(graphs(max_n=8), ops)
@settings(max_examples=60)
def test_incremental_transition_equals_rebuild(g, script):
    g.transition()  # start caching
    for i, j, want_insert in script:
        if i == j:
            continue
        if g.has_edge(i, j):
            if not want_insert:
                g.delete_edge(i, j)
        elif want_insert:
            g.insert_edge(i, j)
    assert g.transition().same_as(build_transition(g))
    assert np.array_equal(g.transition().toarray(), dense_q(g.n, g.edges()))


@given(graphs(max_n=6), st.integers(0, 8), st.integers(0, 8))
def test_insert_case_matches_prior_liveness(g, i, j):
    if i == j or g.has_edge(i, j):
        return
    n = g.n
    expect = {(True, True): EdgeCase.C0, (True, False): EdgeCase.C1,
              (False, True): EdgeCase.C2, (False, False): EdgeCase.C3}[(i < n, j < n)]
    assert g.insert_edge(i, j) is expect
    assert g.n == max(n, i + 1, j + 1)


def test_insert_errors(citation):
    with pytest.raises(SelfLoopError):
        citation.insert_edge(3, 3)
    with pytest.raises(DuplicateEdge) as info:
        citation.insert_edge(14, 11)
    assert info.value.edge == (14, 11)
    with pytest.raises(NodeRangeError):
        citation.insert_edge(-1, 2)


def test_delete_errors(citation):
    with pytest.raises(MissingEdge):
        citation.delete_edge(0, 1)
    with pytest.raises(MissingEdge):
        citation.delete_edge(40, 1)


def test_fresh_ids_pad_with_isolated_nodes():
    g = DynamicGraph(3, [(0, 1)])
    assert g.insert_edge(1, 6) is EdgeCase.C1
    assert g.n == 7
    assert [g.in_degree(x) for x in range(3, 6)] == [0, 0, 0]


def test_copy_is_independent(citation):
    h = citation.copy()
    h.insert_edge(0, 1)
    assert not citation.has_edge(0, 1)
    assert h != citation
    h.delete_edge(0, 1)
    assert h == citation


def test_edge_list_round_trip(tmp_path, citation):
    path = tmp_path / "g.tsv"
    write_edge_list(citation, path)
    assert read_edge_list(path) == citation


def test_read_with_node_override(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("# comment\n0 1\n\n1 2\n")
    assert read_edge_list(path).n == 3
    assert read_edge_list(path, n=10).n == 10
    with pytest.raises(ParseError, match="exceeds --nodes"):
        read_edge_list(path, n=2)


@pytest.mark.parametrize("body, lineno, msg", [
    ("0 1\n1\n", 2, "expected 2 fields"),
    ("0 1\n1 x\n", 2, "integers"),
    ("0 -1\n", 1, "non-negative"),
    ("0 1\n2 2\n", 2, "self-loop"),
    ("0 1\n3 4\n0 1\n", 3, "duplicate"),
])
def test_parse_errors_carry_line_numbers(tmp_path, body, lineno, msg):
    path = tmp_path / "bad.txt"
    path.write_text(body)
    with pytest.raises(ParseError, match=msg) as info:
        read_edge_list(path)
    assert info.value.lineno == lineno
    assert str(info.value).startswith(f"{path}:{lineno}:")
