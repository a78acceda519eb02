import json
import subprocess
import sys

import pytest

from khlee.cli import main
from khlee.report import ResultDocument


def run(args, tmp_path, name="out.json"):
    path = tmp_path / name
    code = main(args + ["--json", str(path)])
    return code, path.read_bytes()


def test_dpoly_hopf(tmp_path, capsys):
    code, raw = run(["dpoly", "--torus", "2", "2"], tmp_path)
    assert code == 0
    doc = json.loads(raw)
    assert doc["results"]["pretty"] == "[1+q^2] + (tq^3)^2[q^-2+1]"
    assert {"h": 2, "s": 4, "dim": 1} in doc["results"]["dpoly"]["terms"]
    assert "(tq^3)^2" in capsys.readouterr().out


def test_byte_identical(tmp_path):
    args = ["dpoly", "--torus", "3", "3", "--shortcut"]
    a = run(args, tmp_path, "a.json")
    b = run(args, tmp_path, "b.json")
    assert a == b


def test_document_roundtrip(tmp_path):
    _, raw = run(["sinv", "--torus", "2", "3"], tmp_path)
    doc = ResultDocument.loads(raw.decode())
    assert doc.dumps().encode() == raw
    assert doc.results["orientations"][0]["s"] == 2


def test_kh_both_parameters(tmp_path):
    _, raw = run(["kh", "--braid", "2: 1 1 1"], tmp_path)
    assert json.loads(raw)["results"]["pretty"] == "q + q^3 + t^2q^5 + t^3q^9"
    _, raw = run(["kh", "--torus", "2", "2", "--a", "1/4"], tmp_path)
    assert json.loads(raw)["results"]["khl"] == {"0": 2, "2": 2}


def test_mirror_union_flags(tmp_path):
    _, raw = run(["dpoly", "--torus", "2", "3", "--mirror"], tmp_path)
    assert json.loads(raw)["results"]["pretty"] == "[q^-3+q^-1]"
    _, raw = run(["dpoly", "--unlink", "1", "--unlink", "1", "--union"], tmp_path)
    assert json.loads(raw)["results"]["pretty"] == "[q^-2+2+q^2]"


def test_no_simplify_agrees(tmp_path):
    _, a = run(["dpoly", "--pd", "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]"], tmp_path, "a.json")
    _, b = run(["dpoly", "--pd", "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]", "--no-simplify"], tmp_path, "b.json")
    assert json.loads(a)["results"]["dpoly"] == json.loads(b)["results"]["dpoly"]


def test_genus_bound(tmp_path):
    code, raw = run(["genus-bound", "--torus", "2", "5", "--unlink", "1"], tmp_path)
    assert code == 0
    assert json.loads(raw)["results"]["bound"] == 2
    _, raw = run(["genus-bound", "--torus", "2", "2", "--unlink", "2"], tmp_path)
    res = json.loads(raw)["results"]
    assert res["bound"] is None and res["support_bound"] == 1


def test_genus_bound_needs_equal_components(tmp_path):
    with pytest.raises(SystemExit):
        main(["genus-bound", "--torus", "2", "2", "--unlink", "1"])


def test_tqft(tmp_path):
    _, raw = run(["tqft", "--circles", "1", "--handles", "split c1 -> c1 c2; merge c1 c2 -> c1"], tmp_path)
    res = json.loads(raw)["results"]
    assert res["matrix"] == [["1", "0"], ["0", "-1"]]
    assert res["euler_characteristic"] == -2


def test_verify_pattern(tmp_path):
    code, raw = run(["verify", "pattern", "--max-n", "3"], tmp_path)
    assert code == 0 and json.loads(raw)["ok"] is True


def test_bad_input_exit_code(capsys):
    assert main(["dpoly", "--pd", "PD[X[1,2,3,4]]"]) == 2
    assert "error" in capsys.readouterr().err


def test_threads_flag(tmp_path):
    code, _ = run(["dpoly", "--unlink", "2", "--threads", "4"], tmp_path)
    assert code == 0
    with pytest.raises(SystemExit):
        main(["dpoly", "--unlink", "2", "--threads", "0"])


def test_console_module():
    out = subprocess.run([sys.executable, "-m", "khlee.cli", "dpoly", "--unlink", "1"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "d(unlink 1) = [q^-1+q]"
