import numpy as np
import pytest

from dynrank import DynamicGraph

#: letter labels of the reference citation graph; 15.. are nodes added later
NAMES = "abcdefghijklmnoprq"
IX = {c: k for k, c in enumerate(NAMES)}

CITATION = [("o", "l"), ("o", "m"), ("o", "n"), ("l", "g"), ("m", "h"), ("m", "k"), ("h", "j"),
            ("k", "j"), ("h", "i"), ("g", "f"), ("h", "f"), ("j", "a"), ("c", "a"), ("e", "a"),
            ("f", "b"), ("j", "b"), ("c", "b"), ("e", "b"), ("a", "d"), ("b", "d")]
CITATION_EDGES = [(IX[a], IX[b]) for a, b in CITATION]

CITATION_STREAM = [("q", "i", "+"), ("b", "h", "+"), ("f", "b", "-"), ("l", "f", "+"),
                   ("p", "f", "+"), ("l", "f", "-"), ("j", "i", "+"), ("r", "f", "+"),
                   ("b", "h", "-"), ("k", "i", "+")]


def ids(labels):
    return sorted(IX[x] for x in labels)


@pytest.fixture
def citation():
    return DynamicGraph(15, CITATION_EDGES)


def random_graph(rng, n, m):
    edges = set()
    m = min(m, n * (n - 1))
    while len(edges) < m:
        a, b = (int(x) for x in rng.integers(0, n, 2))
        if a != b:
            edges.add((a, b))
    return DynamicGraph(n, sorted(edges))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs for more than a few seconds")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        status, title, detail = RESULTS[num]
        line = f"criterion {num:2d} {status}  {title}"
        terminalreporter.write_line(f"{line}  ({detail})" if detail else line)
