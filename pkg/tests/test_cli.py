import json
import re
from pathlib import Path

import pytest

import dvdp.catalog
from dvdp.catalog import load_catalog
from dvdp.cli import main

CATALOG = Path(dvdp.catalog.__file__).parent / "data" / "catalog.txt"
SS_SURFACE = "w^2+z^3+x^2*y^2*z-x^4*z+x^6"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_analyze_e8_0(capsys):
    code, rep = run_json(capsys, "analyze", "--p", "2", "--weights", "1,1,2,3", "--eq", "w^2+z^3+x*y^5")
    assert code == 0
    assert rep["schema"] == 1 and rep["command"] == "analyze"
    assert rep["tool"]["name"] == "dvdp"
    assert rep["results"]["dynkin"] == "E_8^0"
    assert rep["results"]["fedder"]["fsplit"] is False
    assert rep["summary"]["passed"] is True
    assert rep["input"]["eq"] == "w^2+z^3+x*y^5"


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "--p", "2", "--weights", "1,1,2,3", "--eq", "w^2+z^3+x*y^5+y^3*w")
    assert code == 0
    assert "dynkin: E_8^3 (rank 8)" in out
    assert out.rstrip().endswith("summary: 1 passed, 0 failed")


def test_fedder_supersingular_surface(capsys):
    code, rep = run_json(capsys, "fedder", "--p", "3", "--weights", "1,1,2,3", "--eq", SS_SURFACE)
    assert code == 0 and rep["results"]["fedder"]["fsplit"] is True


def test_expectations_drive_exit_code(capsys):
    base = ("analyze", "--p", "2", "--weights", "1,1,2,3", "--eq", "w^2+z^3+x*y^5")
    assert run(capsys, *base, "--expect-dynkin", "E_8^0", "--expect-fsplit", "no")[0] == 0
    code, rep = run_json(capsys, *base, "--expect-dynkin", "E_8^1")
    assert code == 1 and rep["summary"]["failed"] == ["dynkin"]
    code, _, _ = run(capsys, "fedder", "--p", "3", "--weights", "1,1,2,3", "--eq", SS_SURFACE, "--expect-fsplit", "no")
    assert code == 1


def test_analyze_with_sampling(capsys):
    code, rep = run_json(capsys, "analyze", "--p", "2", "--weights", "1,1,2,3", "--eq", "w^2+z^3+x*y^5+y*z*w",
                         "--trials", "10")
    assert code == 0
    s = rep["results"]["sampling"]
    assert s["q"] == 16 and s["trials"] == 10 and s["seed"] == 0


def test_singular_and_classify(capsys):
    code, rep = run_json(capsys, "singular", "--p", "2", "--weights", "1,1,1,2", "--eq", "w^2+x*y*z*(x+y+z)")
    assert code == 0 and len(rep["results"]["singular_points"]) == 7
    assert rep["results"]["certificate"]["ok"] is True
    code, rep = run_json(capsys, "classify", "--p", "2", "--eq", "x2^2+x1*x4; x0*x1+x2*x4+x3^2")
    assert code == 0 and rep["results"]["dynkin"] == "D_5^0"
    assert "fedder" not in rep["results"]


def test_members(capsys):
    argv = ("members", "--p", "3", "--weights", "1,1,2,3", "--eq", SS_SURFACE, "--trials", "5", "--seed", "2")
    code, rep = run_json(capsys, *argv)
    assert code == 0
    s = rep["results"]["sampling"]
    assert s["q"] == 9 and len(s["members"]) == 5
    for m in s["members"]:
        if m["smooth"]:
            assert m["a"] % 3 == 0 and not m["ordinary"]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.count("trial ") == 5


def test_catalog_verify_all(capsys):
    code, out, _ = run(capsys, "catalog", "verify")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == f"summary: {len(lines) - 2} passed, 0 failed"
    ids = {re.match(r"PASS (\S+)", ln).group(1) for ln in lines[1:-1]}
    assert ids == {e.id for e in load_catalog()}


def test_catalog_verify_one_and_params(capsys):
    code, rep = run_json(capsys, "catalog", "verify", "--id", "p2-E7-3")
    assert code == 0 and rep["results"]["reports"][0]["analysis"]["dynkin"] == "E_7^3"
    code, rep = run_json(capsys, "catalog", "verify", "--id", "p2-4A1D4", "--params", "a=1,b=g")
    assert code == 0 and rep["results"]["reports"][0]["analysis"]["dynkin"] == "4A_1+D_4^0"


def test_catalog_verify_json_is_deterministic(capsys):
    a = run(capsys, "catalog", "verify", "--format", "json")
    b = run(capsys, "catalog", "verify", "--format", "json")
    assert a[0] == 0 and a[1] == b[1]
    argv = ("members", "--p", "2", "--weights", "1,1,2,3", "--eq", "w^2+z^3+x*y^5+y*z*w",
            "--trials", "8", "--seed", "11", "--format", "json")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


@pytest.fixture
def bad_catalog(tmp_path):
    text = CATALOG.read_text()
    bad, n = re.subn(r"^(p2-E8-3 .*\| )E_8\^3( +\|)", r"\1E_8^4\2", text, flags=re.M)
    assert n == 1
    path = tmp_path / "catalog.txt"
    path.write_text(bad)
    return str(path)


def test_failing_fixture_exits_one(capsys, bad_catalog):
    code, out, _ = run(capsys, "catalog", "verify", "--catalog", bad_catalog)
    assert code == 1
    assert "FAIL p2-E8-3" in out
    assert out.rstrip().endswith("summary: 68 passed, 1 failed")
    code, rep = run_json(capsys, "catalog", "verify", "--catalog", bad_catalog, "--id", "p2-E8-3")
    assert code == 1 and rep["summary"]["failed"] == ["p2-E8-3"]


@pytest.mark.parametrize("argv", [
    ["analyze", "--p", "4", "--weights", "1,1,2,3", "--eq", "w^2+z^3+x*y^5"],
    ["analyze", "--p", "2", "--eq", "w^2+z^3+x*y^5"],
    ["analyze", "--p", "2", "--weights", "1,1,2", "--eq", "w^2+z^3+x*y^5"],
    ["analyze", "--p", "2", "--weights", "1,1,2,3", "--eq", "w^2+z^3+x*y^4"],
    ["analyze", "--p", "2", "--weights", "1,1,2,3", "--eq", "w^2+z^3+x*y^5+"],
    ["analyze", "--p", "2", "--weights", "1,1,2,3", "--eq", "w^2+z^3+x*y^5", "--ext-bound", "0"],
    ["members", "--p", "2", "--weights", "1,1,2,3", "--eq", "w^2+z^3+x*y^5", "--field-ext", "3",
     "--base-degree", "2"],
    ["frobnicate"],
    [],
    ["catalog"],
    ["catalog", "verify", "--id", "nope"],
    ["catalog", "verify", "--id", "p2-4A1D4", "--params", "a=1,b=1"],
    ["catalog", "verify", "--id", "p2-E8-0", "--params", "a=1,b=g"],
    ["catalog", "parametrize", "--which", "9A1"],
])
def test_input_errors_exit_two(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and err


def test_catalog_list_and_parametrize(capsys):
    code, rep = run_json(capsys, "catalog", "list")
    assert code == 0 and len(rep["results"]["entries"]) == len(load_catalog())
    code, out, _ = run(capsys, "catalog", "parametrize")
    assert code == 0
    assert "7A1: identity holds, rank 7" in out
    code, rep = run_json(capsys, "catalog", "parametrize", "--which", "8A1")
    assert code == 0 and rep["results"]["parametrizations"][0]["identity_holds"] is True


def test_version_and_help(capsys):
    assert main(["--version"]) == 0
    assert "dvdp" in capsys.readouterr().out
    assert main(["analyze", "--help"]) == 0
