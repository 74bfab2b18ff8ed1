from __future__ import annotations

import json
import subprocess
import sys

import pytest

from geodetic import cli
from geodetic.exact import SolveResult
from geodetic.generators import random_chordal, random_solid_grid
from geodetic.io import format_graph
from geodetic.solid_grid import grid_graph

from conftest import complete_graph, cycle_graph, path_graph


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


@pytest.fixture
def p5(tmp_path):
    return write(tmp_path, "p5.txt", format_graph(path_graph(5)))


def test_solve_path(capsys, p5):
    code, out, err = run(capsys, "solve", p5, "--method", "brute")
    doc = json.loads(out)
    assert code == 0 and doc["size"] == 2 and doc["vertices"] == [0, 4] and doc["optimal"] is True
    assert err == ""


def test_solve_grid(capsys, tmp_path):
    path = write(tmp_path, "g.txt", format_graph(*grid_graph(3, 3)))
    code, out, _ = run(capsys, "solve", path, "--method", "solid-grid")
    assert code == 0 and json.loads(out)["size"] == 2
    code, out, _ = run(capsys, "solve", path)
    assert code == 0 and json.loads(out)["method"] == "solid-grid"


def test_chordal_cap(capsys, tmp_path):
    path = write(tmp_path, "c.txt", format_graph(random_chordal(10, 4, 1)))
    code, out, err = run(capsys, "solve", path, "--method", "chordal")
    assert code == 3 and out == "" and "cap" in err
    code, out, _ = run(capsys, "solve", path)
    assert code == 0 and json.loads(out)["method"] == "blocks"
    k4 = write(tmp_path, "k4.txt", format_graph(complete_graph(4)))
    code, out, _ = run(capsys, "solve", k4, "--method", "chordal", "--omega-cap", "4")
    assert code == 0 and json.loads(out)["size"] == 4


def test_auto_picks_chordal(capsys, p5):
    code, out, _ = run(capsys, "solve", p5)
    assert code == 0 and json.loads(out)["method"] == "chordal"


def test_auto_falls_back_to_blocks(capsys, tmp_path):
    path = write(tmp_path, "c5.txt", format_graph(cycle_graph(5)))
    code, out, _ = run(capsys, "solve", path)
    assert code == 0 and json.loads(out) | {"elapsed_ms": 0} == {
        "method": "blocks", "size": 3, "vertices": [0, 1, 3], "optimal": True, "lower_bound": None,
        "elapsed_ms": 0, "instance_stats": None, "verdicts": None}


@pytest.mark.parametrize("method", ["solid-grid", "interval"])
def test_missing_structure(capsys, p5, method):
    code, out, _ = run(capsys, "solve", p5, "--method", method)
    assert code == 3 and out == ""


def test_not_chordal_and_not_grid(capsys, tmp_path):
    ring = format_graph(cycle_graph(8), [(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0), (1, 0)])
    path = write(tmp_path, "ring.txt", ring)
    assert run(capsys, "solve", path, "--method", "chordal")[0] == 3
    assert run(capsys, "solve", path, "--method", "solid-grid")[0] == 3
    code, out, _ = run(capsys, "solve", path)
    assert code == 0 and json.loads(out)["size"] == 2


def test_disconnected(capsys, tmp_path):
    path = write(tmp_path, "d.txt", "p 4 2\ne 0 1\ne 2 3\n")
    assert run(capsys, "solve", path)[0] == 3
    assert run(capsys, "check", path, "--set", "0,1,2,3")[0] == 3


def test_interval_method(capsys, tmp_path):
    path = write(tmp_path, "i.txt", "i 0 0 1 1 1\ni 1 1 1 2 1\ni 2 2 1 3 1\ni 3 3 1 4 1\n")
    code, out, _ = run(capsys, "solve", path, "--method", "interval")
    assert code == 0 and json.loads(out)["size"] == 2


def test_parse_failures(capsys, tmp_path):
    assert run(capsys, "solve", tmp_path / "missing.txt")[0] == 2
    bad = write(tmp_path, "bad.txt", "p 3 5\ne 0 1\n")
    assert run(capsys, "solve", bad)[0] == 2
    assert run(capsys, "solve")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "solve", bad, "--method", "magic")[0] == 2
    assert run(capsys, "solve", bad, "--budget-ms", "0")[0] == 2


def test_budget_exhausted(capsys, tmp_path):
    g = random_chordal(14, 3, 5)
    path = write(tmp_path, "big.txt", format_graph(g))
    code, out, err = run(capsys, "solve", path, "--method", "chordal", "--budget-ms", "1")
    doc = json.loads(out)
    assert code == 4 and doc["optimal"] is False and "budget" in err
    from geodetic.metric import is_geodetic

    assert is_geodetic(g, doc["vertices"])


def test_instance_stats_from_sidecar(capsys, p5):
    p5.with_name("p5.txt.json").write_text(json.dumps({"tracks": 4, "point_intervals": 2, "names": []}))
    doc = json.loads(run(capsys, "solve", p5)[1])
    assert doc["instance_stats"] == {"tracks": 4, "point_intervals": 2}


def test_check_examples(capsys, p5, tmp_path):
    code, out, _ = run(capsys, "check", p5, "--set", "0,4")
    assert code == 0 and json.loads(out)["verdicts"] == {"geodetic": True}
    c6 = write(tmp_path, "c6.txt", format_graph(cycle_graph(6)))
    doc = json.loads(run(capsys, "check", c6, "--set", "0,3", "--edge-geodetic")[1])
    assert doc["verdicts"] == {"geodetic": True, "edge_geodetic": True}
    doc = json.loads(run(capsys, "check", c6, "--set", "0,2", "--edge-geodetic")[1])
    assert doc["verdicts"] == {"geodetic": False, "edge_geodetic": False}
    k4 = write(tmp_path, "k4.txt", format_graph(complete_graph(4)))
    assert json.loads(run(capsys, "check", k4, "--set", "0,1,2")[1])["verdicts"]["geodetic"] is False


def test_check_certify(capsys, tmp_path):
    c6 = write(tmp_path, "c6.txt", format_graph(cycle_graph(6)))
    doc = json.loads(run(capsys, "check", c6, "--set", "0,2,4", "--certify")[1])
    assert doc["optimal"] is False and doc["verdicts"]["minimum"] == 2


def test_check_invalid_ids(capsys, p5):
    assert run(capsys, "check", p5, "--set", "0,7")[0] == 3
    assert run(capsys, "check", p5, "--set", "0,a")[0] == 2


def test_generate_sat(capsys, tmp_path):
    cnf = write(tmp_path, "f.cnf", "p cnf 1 1\n1 1 -1 0\n")
    out_path = tmp_path / "sat.txt"
    code, out, _ = run(capsys, "generate", "sat2interval", "--cnf", cnf, "--out", out_path)
    assert code == 0 and out == ""
    meta = json.loads((tmp_path / "sat.txt.json").read_text())
    assert meta["expected_bound"] == 69 and meta["tracks"] == 41 and meta["point_intervals"] == 62
    assert out_path.read_text().startswith("p 1026 ")


def test_generate_sat_errors(capsys, tmp_path):
    assert run(capsys, "generate", "sat2interval")[0] == 2
    bad = write(tmp_path, "bad.cnf", "p cnf 1 1\n1 0\n")
    assert run(capsys, "generate", "sat2interval", "--cnf", bad)[0] == 2
    assert run(capsys, "generate", "sat2interval", "--cnf", tmp_path / "none.cnf")[0] == 2


def test_generate_vc(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "vc2grid", "--preset", "K4")
    assert code == 0 and out.splitlines()[0] == "p 52 90"
    out_path = tmp_path / "vc.txt"
    run(capsys, "generate", "vc2grid", "--preset", "prism", "--out", out_path)
    meta = json.loads((tmp_path / "vc.txt.json").read_text())
    assert len(meta["labels"]) == 78 and meta["preset"] == "prism"
    assert run(capsys, "generate", "vc2grid", "--preset", "cube")[0] == 2


@pytest.mark.parametrize("kind,extra", [
    ("random-chordal", ["--n", "12", "--omega", "3"]),
    ("random-interval", ["--n", "9"]),
    ("random-solid-grid", ["--max-vertices", "20"]),
])
def test_generate_random_deterministic(capsys, kind, extra):
    a = run(capsys, "generate", kind, "--seed", "7", *extra)
    b = run(capsys, "generate", kind, "--seed", "7", *extra)
    assert a[0] == 0 and a == b
    assert run(capsys, "generate", kind, *extra)[0] == 2


def _corpus(tmp_path, graphs):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for i, text in enumerate(graphs):
        (corpus / f"inst{i:02d}.txt").write_text(text)
    return corpus


def _rows(out):
    return [line.split("\t") for line in out.splitlines()[1:]]


def test_bench_chordal_corpus(capsys, tmp_path):
    corpus = _corpus(tmp_path, [format_graph(random_chordal(9, 3, s, leaves=1)) for s in range(20)])
    code, out, _ = run(capsys, "bench", corpus, "--methods", "brute,chordal")
    rows = _rows(out)
    assert code == 0 and len(rows) == 40
    assert [r[0] for r in rows] == sorted(r[0] for r in rows)
    assert all(r[3] == "ok" for r in rows)


def test_bench_grid_corpus_parallel_matches_serial(capsys, tmp_path):
    corpus = _corpus(tmp_path, [format_graph(*random_solid_grid(16, s)) for s in range(6)])
    serial = run(capsys, "bench", corpus, "--methods", "brute,solid-grid")
    parallel = run(capsys, "bench", corpus, "--methods", "brute,solid-grid", "--jobs", "3")
    assert serial[0] == parallel[0] == 0
    strip = lambda out: [r[:4] for r in _rows(out)]
    assert strip(serial[1]) == strip(parallel[1])


def test_bench_empty_corpus(capsys, tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    code, out, _ = run(capsys, "bench", empty)
    assert code == 0 and _rows(out) == []


def test_bench_flags_disagreement(capsys, tmp_path, monkeypatch):
    corpus = _corpus(tmp_path, [format_graph(path_graph(4))])
    real = cli.solve_instance

    def lying(inst, method, *args):
        res = real(inst, method, *args)
        if method == "blocks":
            return SolveResult(frozenset(range(inst.graph.n)), inst.graph.n, True, "blocks", 0.0)
        return res

    monkeypatch.setattr(cli, "solve_instance", lying)
    code, _, err = run(capsys, "bench", corpus, "--methods", "brute,blocks")
    assert code == 1 and "disagreement" in err


def test_bench_skips_inapplicable(capsys, tmp_path):
    corpus = _corpus(tmp_path, [format_graph(cycle_graph(5))])
    code, out, _ = run(capsys, "bench", corpus, "--methods", "brute,chordal")
    assert code == 0 and [r[3] for r in _rows(out)] == ["ok", "skip"]


def test_bench_rejects_unknown_method(capsys, tmp_path):
    empty = tmp_path / "e"
    empty.mkdir()
    assert run(capsys, "bench", empty, "--methods", "brute,magic")[0] == 2
    assert run(capsys, "bench", tmp_path / "none")[0] == 2


def test_console_script(p5):
    proc = subprocess.run([sys.executable, "-m", "geodetic.cli", "solve", str(p5)], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["size"] == 2
