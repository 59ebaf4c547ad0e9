import json
import subprocess
import sys

import pytest

from sparsege.cli import main
from sparsege.lup import LUPResult, read_perm, verify
from sparsege.randmat import random_sparse
from sparsege.sparsemat import dumps_sms, is_row_echelon, loads_sms

import random


@pytest.fixture
def id3(tmp_path):
    p = tmp_path / "id3.sms"
    p.write_text("3 3 M\n1 1 1\n2 2 1\n3 3 1\n0 0 0\n")
    return p


def test_rank(id3, capsys):
    assert main(["rank", str(id3)]) == 0
    assert capsys.readouterr().out == "3\n"


def test_rank_parallel_matches_single(tmp_path, capsys):
    p = tmp_path / "m.sms"
    p.write_text(dumps_sms(random_sparse(30, 40, 0.1, rng=random.Random(1))))
    assert main(["rank", str(p)]) == 0
    single = capsys.readouterr().out
    assert main(["rank", str(p), "--workers", "4", "--width", "16"]) == 0
    assert capsys.readouterr().out == single


def test_repeated_runs_are_identical(tmp_path, capsys):
    p = tmp_path / "m.sms"
    p.write_text(dumps_sms(random_sparse(12, 12, 0.3, rng=random.Random(2))))
    outs = []
    for _ in range(3):
        assert main(["echelon", str(p)]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1] == outs[2]
    assert is_row_echelon(loads_sms(outs[0]))


def test_echelon_to_file(tmp_path, id3):
    out = tmp_path / "e.sms"
    assert main(["echelon", str(id3), "--out", str(out)]) == 0
    assert loads_sms(out.read_text()) == loads_sms(id3.read_text())


def test_lu(tmp_path):
    p = tmp_path / "a.sms"
    p.write_text("2 2 M\n1 2 1\n2 1 2\n2 2 3\n0 0 0\n")
    assert main(["lu", str(p), "--domain", "rat"]) == 0
    res = LUPResult(loads_sms((tmp_path / "a.U.sms").read_text(), "rat"),
                    loads_sms((tmp_path / "a.L.sms").read_text(), "rat"),
                    read_perm(tmp_path / "a.perm"))
    assert verify(loads_sms(p.read_text()), res) is True


def test_lu_singular(tmp_path):
    p = tmp_path / "s.sms"
    p.write_text("2 2 M\n1 1 1\n2 1 1\n0 0 0\n")
    assert main(["lu", str(p)]) == 3


def test_f64_lu(tmp_path):
    p = tmp_path / "f.sms"
    p.write_text("2 2 M\n1 1 0.5\n1 2 1.25\n2 1 2.0\n2 2 -1.0\n0 0 0\n")
    assert main(["lu", str(p), "--domain", "f64", "--pivot", "partial", "--out", str(tmp_path / "f")]) == 0
    res = LUPResult(loads_sms((tmp_path / "f.U.sms").read_text(), "f64"),
                    loads_sms((tmp_path / "f.L.sms").read_text(), "f64"),
                    read_perm(tmp_path / "f.perm"))
    assert res.perm == [1, 0]
    assert verify(loads_sms(p.read_text(), "f64"), res) < 1e-12


@pytest.mark.parametrize("argv", [
    ["rank"],
    ["frobnicate", "x.sms"],
    ["rank", "x.sms", "--workers", "0"],
    ["rank", "x.sms", "--width", "0"],
    ["rank", "x.sms", "--gamma", "2"],
    ["rank", "x.sms", "--epsilon", "0"],
    ["rank", "x.sms", "--domain", "gf2"],
])
def test_flag_errors_exit_1(argv, capsys):
    assert main(argv) == 1
    assert capsys.readouterr().err


def test_missing_file_exits_2(tmp_path, capsys):
    assert main(["rank", str(tmp_path / "nope.sms")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_malformed_file_exits_1(tmp_path):
    p = tmp_path / "bad.sms"
    p.write_text("2 2 M\n1 1\n0 0 0\n")
    assert main(["rank", str(p)]) == 1


def test_stats_json(tmp_path, capsys):
    p = tmp_path / "m.sms"
    p.write_text(dumps_sms(random_sparse(20, 30, 0.15, rng=random.Random(3))))
    out = tmp_path / "s.json"
    assert main(["rank", str(p), "--workers", "3", "--width", "2", "--stats", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["workers"]) == 3
    for ws in data["workers"]:
        assert set(ws) == {"worker", "rows_sent", "rows_received", "eliminations", "wait_polls",
                           "end_forwardings", "wall_ms"}
    assert data["totals"]["rows_sent"] == data["totals"]["rows_received"]
    assert data["totals"]["end_forwardings"] == 14
    assert main(["stats", str(p)]) == 0
    assert json.loads(capsys.readouterr().out.split("\n", 1)[1])["p"] == 1


def test_module_entry_point(id3):
    proc = subprocess.run([sys.executable, "-m", "sparsege", "rank", str(id3)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "3\n"
