import csv
import io
import json
import subprocess
import sys

import pytest

from graphricci import cli
from graphricci.graph import load_edge_list
from graphricci.verify import CheckResult


@pytest.fixture
def k2_file(tmp_path):
    p = tmp_path / "k2.el"
    p.write_text("a b\n")
    return str(p)


def test_gen_then_verify(tmp_path, capsys):
    out = tmp_path / "q3.el"
    assert cli.run(["gen", "--family", "hypercube", "--n", "3", "--out", str(out)]) == 0
    g = load_edge_list(out.read_text())
    assert (g.n, g.num_edges) == (8, 12)
    assert cli.run(["verify", "--graph", str(out), "--m", "inf"]) == 0
    assert "all mandatory checks passed" in capsys.readouterr().out


@pytest.mark.parametrize(
    "family, n, n2, shape",
    [("complete", 5, None, (5, 10)), ("cycle", 7, None, (7, 7)), ("bridge", 4, None, (8, 13)), ("product", 3, 4, (12, 24))],
)
def test_gen_families(capsys, family, n, n2, shape):
    argv = ["gen", "--family", family, "--n", str(n)] + (["--n2", str(n2)] if n2 else [])
    assert cli.run(argv) == 0
    g = load_edge_list(capsys.readouterr().out)
    assert (g.n, g.num_edges) == shape


def test_curvature_json(k2_file, capsys):
    assert cli.run(["curvature", "--graph", k2_file, "--m", "inf", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["curvature"][0]["m"] == "inf"
    assert data["curvature"][0]["kappa"] == pytest.approx(2.0, abs=1e-12)
    assert "per_vertex" not in data["curvature"][0]


def test_curvature_multiple_m_in_order(k2_file, capsys):
    assert cli.run(["curvature", "--graph", k2_file, "--m", "5,INF,2,Infinity", "--per-vertex", "--json"]) == 0
    blocks = json.loads(capsys.readouterr().out)["curvature"]
    assert [b["m"] for b in blocks] == [5.0, "inf", 2.0, "inf"]
    assert [b["kappa"] for b in blocks] == pytest.approx([1.6, 2.0, 1.0, 2.0])
    assert len(blocks[0]["per_vertex"]) == 2


def test_spectrum(k2_file, capsys):
    assert cli.run(["spectrum", "--graph", k2_file, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["eigenvalues"] == pytest.approx([0.0, 2.0], abs=1e-12)
    assert cli.run(["spectrum", "--graph", k2_file]) == 0
    assert len(capsys.readouterr().out.split()) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--graph", "does/not/exist.el"],
        ["curvature", "--graph", "x.el", "--m", "1"],
        ["curvature", "--graph", "x.el", "--m", "two"],
        ["verify", "--graph", "x.el", "--bogus"],
        ["gen", "--family", "petersen", "--n", "3"],
        ["gen", "--family", "cycle", "--n", "2"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert cli.run(argv) == 2
    assert capsys.readouterr().err


def test_bad_graph_file_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.el"
    p.write_text("a b\nc d\n")
    assert cli.run(["verify", "--graph", str(p)]) == 2
    assert "disconnected" in capsys.readouterr().err


def test_violation_exit_1(k2_file, monkeypatch, capsys):
    real = cli.full_report

    def broken(*args, **kwargs):
        r = real(*args, **kwargs)
        r.checks.append(CheckResult("lemma31", False, -1.0, 0, {"m": 2.0}))
        return r

    monkeypatch.setattr(cli, "full_report", broken)
    assert cli.run(["verify", "--graph", k2_file, "--m", "2"]) == 1
    assert "FAILED" in capsys.readouterr().out


def test_verify_csv(k2_file, capsys):
    assert cli.run(["verify", "--graph", k2_file, "--m", "2,inf", "--alpha", "3", "--csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert rows and set(rows[0]) == set(cli.CSV_FIELDS)
    assert {r["name"] for r in rows} >= {"lemma31", "harnack_pointwise", "harnack_gradient"}
    assert all(r["passed"] == "True" for r in rows)


def test_verify_json_deterministic_across_threads(tmp_path, capsys):
    g = tmp_path / "b.el"
    assert cli.run(["gen", "--family", "bridge", "--n", "4", "--out", str(g)]) == 0
    outs = []
    for threads in ("1", "3", "8"):
        out = tmp_path / f"r{threads}.json"
        argv = ["verify", "--graph", str(g), "--m", "2,inf", "--alpha", "3,5", "--seed", "11", "--json"]
        assert cli.run(argv + ["--threads", threads, "--output", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]
    assert json.loads(outs[0])["seed"] == 11


def test_module_entry_point(k2_file):
    proc = subprocess.run(
        [sys.executable, "-m", "graphricci", "curvature", "--graph", k2_file, "--m", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "kappa=" in proc.stdout
