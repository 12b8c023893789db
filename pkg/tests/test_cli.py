import json
import subprocess
import sys

import pytest

from bvtoeplitz.cli import run

D2SYM = {"levels": [{"matrix": [[1], [1]]}], "tail": {"repeat": [{"matrix": [[2, 1], [1, 2]]}]}}
ODO23 = {"levels": [{"matrix": [[2]]}], "tail": {"repeat": [{"matrix": [[3]]}, {"matrix": [[2]]}]}}
IDENT = {"levels": [{"matrix": [[1], [1]]}], "tail": {"repeat": [{"matrix": [[1, 0], [0, 1]]}]}}


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, obj in [("d2sym", D2SYM), ("odo23", ODO23), ("ident", IDENT)]:
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(obj))
        out[name] = str(p)
    return out


def call(capsys, *argv):
    code = run(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_toeplitz_gen_text(capsys, files):
    code, out, _ = call(capsys, "toeplitz-gen", "-i", files["d2sym"], "-N", "8")
    assert code == 0
    header, symbols = out.splitlines()
    assert header == "offset -8"
    assert symbols[8:] == "aabaababb"


def test_toeplitz_gen_json(capsys, files):
    code, out, _ = call(capsys, "toeplitz-gen", "-i", files["d2sym"], "-N", "2", "--format", "json")
    assert json.loads(out) == {"offset": -2, "symbols": "bbaab"}


def test_realize_cf(capsys):
    code, out, _ = call(capsys, "realize-cf", "--coeffs", "1,1,1")
    assert code == 0
    assert '"B":[[[2,2],[4,0]],[[6,3],[9,0]]]' in out
    rep = json.loads(out)
    assert rep["provenance"]["k"] == [1, 4, 9]
    assert rep["provenance"]["J"][2] == ["12/1", "18/1"]


def test_realize_twosym(capsys):
    code, out, _ = call(capsys, "realize-twosym", "--l", "2,2,2", "--k", "1,1,1", "--tail")
    rep = json.loads(out)
    assert code == 0 and rep["provenance"]["alpha"]["divergent"] == "yes"
    code, out, _ = call(capsys, "realize-twosym", "--q", "3,5", "--r", "1,1")
    rep = json.loads(out)
    assert rep["diagram"]["levels"][2]["matrix"] == [[3, 2], [2, 3]]
    assert rep["provenance"]["alpha"]["divergent"] == {"unknown": 3}
    assert call(capsys, "realize-twosym", "--q", "4", "--r", "1")[0] == 1


def test_k0_eigen(capsys, files):
    code, out, _ = call(capsys, "k0-eigen", "-i", files["odo23"], "-p", "5")
    assert (code, json.loads(out)) == (0, {"eigenvalue": False})
    code, out, _ = call(capsys, "k0-eigen", "-i", files["odo23"], "-p", "12")
    assert json.loads(out) == {"eigenvalue": True}


def test_k0_gamma_and_positivity(capsys, files):
    code, out, _ = call(capsys, "k0-gamma", "-i", files["d2sym"], "--level", "2", "--vector", "3,3")
    assert (code, json.loads(out)) == (0, {"gamma": "1/1"})
    code, out, _ = call(capsys, "k0-gamma", "-i", files["d2sym"], "--level", "2", "--vector=1,-1", "--depth", "6")
    assert code == 2 and json.loads(out) == {"gamma": None, "depth": 6}
    code, out, _ = call(capsys, "k0-positivity", "-i", files["d2sym"], "--level", "2", "--vector", "2,-1")
    assert (code, json.loads(out)) == (0, {"sign": "positive"})
    code, out, _ = call(capsys, "k0-positivity", "-i", files["d2sym"], "--level", "2", "--vector", "1,-1",
                        "--depth", "4")
    assert (code, json.loads(out)) == (2, {"sign": {"unknown": 4}})


def test_toeplitz_analyze_unknown_exit(capsys, files):
    code, out, _ = call(capsys, "toeplitz-analyze", "-i", files["d2sym"], "--depth", "3")
    rep = json.loads(out)
    assert code == 2
    assert rep["coverage"] == "unknown@3" and rep["d_estimate"] == "8/9"
    assert rep["levels"][1] == {"i": 2, "p": 3, "per": [0, 2], "d": "2/3", "essential": True}
    code, out, _ = call(capsys, "toeplitz-analyze", "-i", files["odo23"], "--depth", "2")
    assert code == 0 and json.loads(out)["coverage"] == "yes"


def test_entropy(capsys, files):
    code, out, _ = call(capsys, "entropy", "-i", files["d2sym"], "-N", "400", "-m", "10", "--level", "3")
    rep = json.loads(out)
    assert code == 0
    assert rep["bound"] == {"level": 3, "k": 2, "l": 9, "exponent": "37/9", "rate": "37/90"}
    assert isinstance(rep["empirical_entropy"], float)
    assert len(repr(rep["empirical_entropy"]).replace("0.", "").lstrip("0")) <= 12


def test_validate_ers_factor_telescope_odometer(capsys, files):
    code, out, _ = call(capsys, "validate", "-i", files["d2sym"])
    rep = json.loads(out)
    assert rep["simple"] == "yes" and rep["properly_ordered"] == "yes" and rep["ers"] == [1, 3]
    code, out, _ = call(capsys, "ers", "-i", files["odo23"])
    assert json.loads(out)["supernatural"] == {"finite": {}, "infinite": [2, 3]}
    code, out, _ = call(capsys, "factor", "-i", files["d2sym"])
    assert json.loads(out)["supernatural"] == {"finite": {}, "infinite": [3]}
    code, out, _ = call(capsys, "telescope", "-i", files["d2sym"], "--cuts", "1,3")
    assert json.loads(out)["levels"][1]["matrix"] == [[5, 4], [4, 5]]
    code, out, _ = call(capsys, "odometer", "--base", "2,3", "--tail")
    assert json.loads(out)["supernatural"] == {"finite": {}, "infinite": [2, 3]}


def test_inline_json_and_stdin(capsys, monkeypatch, files):
    code, out, _ = call(capsys, "ers", "--json", json.dumps(D2SYM))
    assert code == 0
    import io as _io
    monkeypatch.setattr(sys, "stdin", _io.StringIO(json.dumps(D2SYM)))
    code, out2, _ = call(capsys, "ers", "-i", "-")
    assert out == out2


def test_output_file(capsys, tmp_path, files):
    target = tmp_path / "out.json"
    code, out, _ = call(capsys, "factor", "-i", files["odo23"], "-o", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["supernatural"]["infinite"] == [2, 3]


def test_exit_codes_for_bad_input(capsys, files, tmp_path):
    assert call(capsys, "ers", "--json", '{"levels":[{"matrix":[[1.5]]}]}')[0] == 1
    assert call(capsys, "ers", "-i", str(tmp_path / "missing.json"))[0] == 1
    assert call(capsys, "ers")[0] == 1
    assert call(capsys, "ers", "-i", files["d2sym"], "--json", "{}")[0] == 1
    assert call(capsys, "realize-cf", "--coeffs", "2,1,1")[0] == 1
    assert call(capsys, "no-such-command")[0] == 1
    assert call(capsys, "toeplitz-gen", "-i", files["ident"], "-N", "3")[0] == 1
    assert call(capsys, "k0-eigen", "-i", files["d2sym"], "-p", "1")[0] == 1


def test_internal_error_exit_code(capsys, files, monkeypatch):
    from bvtoeplitz import cli
    from bvtoeplitz.errors import SkeletonMismatch

    def broken(args):
        raise SkeletonMismatch("forced")

    monkeypatch.setitem(cli.COMMANDS, "factor", broken)
    assert call(capsys, "factor", "-i", files["d2sym"])[0] == 3


def test_module_entry_point_is_deterministic(files):
    cmd = [sys.executable, "-m", "bvtoeplitz", "toeplitz-analyze", "-i", files["d2sym"], "--depth", "4"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == 2
    assert a.stdout == b.stdout and a.stdout
