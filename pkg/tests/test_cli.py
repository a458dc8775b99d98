import subprocess
import sys

import numpy as np
import pytest

from dynrank import DynamicGraph, batch_simrank, cli

from conftest import CITATION_EDGES, CITATION_STREAM, IX


@pytest.fixture
def files(tmp_path):
    g = tmp_path / "g.txt"
    g.write_text("".join(f"{i} {j}\n" for i, j in CITATION_EDGES))
    u = tmp_path / "u.txt"
    u.write_text("".join(f"{op} {IX[a]} {IX[b]}\n" for a, b, op in CITATION_STREAM))
    return str(g), str(u)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_pairs(text):
    rows = [line.split("\t") for line in text.splitlines()]
    return {(int(a), int(b)): float(v) for a, b, v in rows}


def test_batch_two_nodes(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("0 1\n")
    code, out, _ = run(capsys, "batch", "--graph", str(path))
    assert code == 0
    assert out == "0\t0\t0.4\n1\t1\t0.64\n"


def test_batch_empty_graph(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("# nothing\n")
    code, out, _ = run(capsys, "batch", "-g", str(path), "--nodes", "3")
    assert out.splitlines() == ["0\t0\t0.4", "1\t1\t0.4", "2\t2\t0.4"]


def test_batch_citation_scores(files, capsys):
    code, out, _ = run(capsys, "batch", "-g", files[0], "-c", "0.8", "-k", "10")
    pairs = parse_pairs(out)
    assert pairs[(IX["a"], IX["b"])] == pytest.approx(0.0745, abs=5e-5)
    assert pairs[(IX["f"], IX["i"])] == pytest.approx(0.2464, abs=5e-5)
    assert pairs[(IX["i"], IX["j"])] == pytest.approx(0.3104, abs=5e-5)
    assert all(pairs[(b, a)] == v for (a, b), v in pairs.items())
    assert sorted(pairs) == list(pairs)
    assert all(0 < v <= 1 for v in pairs.values())


def test_threshold(files, capsys):
    _, out, _ = run(capsys, "batch", "-g", files[0], "-c", "0.8", "--threshold", "0.2")
    assert min(parse_pairs(out).values()) >= 0.2


def test_column(files, capsys):
    code, out, _ = run(capsys, "column", "-g", files[0], "--node", "8")
    vals = [float(line.split("\t")[1]) for line in out.splitlines()]
    s = batch_simrank(DynamicGraph(15, CITATION_EDGES).transition(), 0.6, 15)
    assert np.abs(np.array(vals) - s[:, 8]).max() <= 1e-11


def test_replay_summary_and_verify(files, capsys):
    code, out, err = run(capsys, "replay", "-g", files[0], "-u", files[1], "-c", "0.8",
                         "-k", "10", "--verify")
    assert code == 0
    assert "net_edges=6" in err and "blocks=4 (insert=3 delete=1)" in err
    assert "verify" in err and "ok" in err
    pairs = parse_pairs(out)
    assert pairs[(IX["a"], IX["b"])] == pytest.approx(0.0809, abs=5e-4)
    assert pairs[(IX["f"], IX["j"])] == pytest.approx(0.1032, abs=5e-4)


@pytest.mark.parametrize("engine", ["dense", "dense-pruned", "columnwise"])
@pytest.mark.parametrize("mode", ["--unit", "--batched"])
def test_engines_agree(files, capsys, engine, mode):
    args = ["replay", "-g", files[0], "-u", files[1], "-k", "12", mode]
    _, ref, _ = run(capsys, *args, "--engine", "dense")
    code, out, _ = run(capsys, *args, "--engine", engine, "--verify")
    assert code == 0
    a, b = parse_pairs(ref), parse_pairs(out)
    assert a.keys() == b.keys()
    assert max(abs(a[p] - b[p]) for p in a) <= 1e-12


def test_noop_stream_matches_batch(files, tmp_path, capsys):
    u = tmp_path / "noop.txt"
    u.write_text("+ 0 1\n- 0 1\n")
    _, batch, _ = run(capsys, "batch", "-g", files[0])
    _, replay, _ = run(capsys, "replay", "-g", files[0], "-u", str(u))
    assert batch == replay


def test_column_update(files, capsys):
    code, out, err = run(capsys, "column-update", "-g", files[0], "-u", files[1], "--node",
                         str(IX["i"]), "-c", "0.8", "-k", "10", "--verify")
    assert code == 0 and "ok" in err
    vals = [float(line.split("\t")[1]) for line in out.splitlines()]
    assert len(vals) == 18
    assert vals[IX["j"]] == pytest.approx(0.1552, abs=5e-4)


def test_exit_codes(files, tmp_path, capsys, monkeypatch):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\n1 x\n")
    code, _, err = run(capsys, "batch", "-g", str(bad))
    assert code == 2 and f"{bad}:2:" in err
    bad_u = tmp_path / "bad_u.txt"
    bad_u.write_text("+ 0 1\n- 3 4\n")
    code, _, err = run(capsys, "replay", "-g", files[0], "-u", str(bad_u))
    assert code == 3 and "op 1:" in err
    code, _, _ = run(capsys, "column", "-g", files[0], "--node", "99")
    assert code == 2
    code, _, _ = run(capsys, "batch", "-g", str(tmp_path / "missing.txt"))
    assert code == 2
    code, _, _ = run(capsys, "batch", "-g", files[0], "--damping", "1.5")
    assert code == 2
    monkeypatch.setattr(cli, "oracle_tol", lambda c, k: 0.0)
    code, _, err = run(capsys, "replay", "-g", files[0], "-u", files[1], "--unit", "--verify")
    assert code == 4 and "FAIL" in err


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--n", "200", "--count", "4",
                       "--engines", "dense,dense-pruned,columnwise")
    rows = [line.split(",") for line in out.splitlines()]
    assert rows[0] == ["engine", "update", "seconds", "aff"]
    assert rows[1][0] == "batch"
    by_engine = {}
    for engine, idx, secs, aff in rows[2:]:
        by_engine.setdefault(engine, []).append((float(secs), aff))
    assert {k: len(v) for k, v in by_engine.items()} == {"dense": 4, "dense-pruned": 4,
                                                         "columnwise": 4}
    assert all(0 < float(a) <= 200 ** 2 for _, a in by_engine["dense-pruned"])


def test_threads_env(monkeypatch):
    monkeypatch.setenv("DYNRANK_THREADS", "3")
    assert cli.threads() == 3
    monkeypatch.setenv("DYNRANK_THREADS", "zero")
    assert cli.threads() == 1


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "dynrank", "column", "-g", files[0], "--node", "0"],
                          capture_output=True, text=True, check=True)
    assert len(proc.stdout.splitlines()) == 15
