import json
import shutil
import subprocess
import sys

import pytest

from ssgenus2.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_census_json(capsys):
    code, out, _ = invoke(capsys, "census", "--q", "3")
    assert code == 0
    data = json.loads(out)
    assert data["pass"] and data["q"] == 3 and data["curves_scanned"] == 36
    assert {(w["s1"], w["s2"]) for w in data["observed"]} == {(3, 6), (-3, 6), (0, 0), (0, 3)}


def test_census_output_is_byte_identical(capsys):
    first = invoke(capsys, "census", "--q", "9")[1]
    second = invoke(capsys, "census", "--q", "9", "--jobs", "2")[1]
    assert first == second
    csv1 = invoke(capsys, "census", "--q", "9", "--format", "csv")[1]
    csv2 = invoke(capsys, "census", "--q", "9", "--format", "csv")[1]
    assert csv1 == csv2 and csv1.startswith("s1,s2,q")


def test_census_q81_requires_opt_in(capsys):
    code, _, err = invoke(capsys, "census", "--q", "81")
    assert code == 2 and "--q81-opt-in" in err
    code, out, _ = invoke(capsys, "census", "--q", "81", "--q81-opt-in")
    assert code == 0 and json.loads(out)["method"] == "classes"


@pytest.mark.parametrize("argv", [
    ["census", "--q", "5"],
    ["census", "--q", "3", "--jobs", "0"],
    ["classify-elliptic", "--q", "9", "--b", "00", "--c", "10"],
    ["classify-elliptic", "--q", "9", "--b", "1", "--c", "10"],
    ["classify-elliptic", "--q", "9", "--b", "3", "--c", "1"],
    ["cover", "--q", "10", "--b", "1", "--c", "1"],
    ["moduli", "--q", "9", "--I", "0"],
    ["construct", "--q", "9"],
    ["igusa", "--q", "3", "--f", "1,1,1"],
    ["verify", "--suite", "nope"],
    ["bogus"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = run(argv)
        raise SystemExit(code)
    assert exc.value.code == 2


def test_classify_elliptic(capsys):
    code, out, _ = invoke(capsys, "classify-elliptic", "--q", "9", "--b", "10", "--c", "00")
    data = json.loads(out)
    assert code == 0 and data["pass"]
    assert data["counted_trace"] == -6 and data["counted_aut"] == 12


def test_cover(capsys):
    code, out, _ = invoke(capsys, "cover", "--q", "27", "--b", "100", "--c", "100")
    data = json.loads(out)
    assert code == 0 and data["pass"]
    assert data["weil"]["s1"] == -(data["target_trace"] + data["cotarget_trace"])


def test_moduli(capsys):
    code, out, _ = invoke(capsys, "moduli", "--q", "9", "--I", "10")
    data = json.loads(out)
    assert data["fiber_polynomial_degree"] == 20
    assert code == (0 if data["pass"] else 1)


def test_construct(capsys):
    code, out, _ = invoke(capsys, "construct", "--q", "27", "--s1", "0", "--s2", "-54")
    data = json.loads(out)
    assert code == 0 and data["pass"]
    assert data["weil"] == data["target"]
    code, out, _ = invoke(capsys, "construct", "--q", "9", "--s1", "12", "--s2", "54")
    assert code == 1 and "error" in json.loads(out)


def test_igusa_spot_values(capsys):
    code, out, _ = invoke(capsys, "igusa", "--q", "3", "--f", "0,2,0,0,0,1")
    data = json.loads(out)
    assert code == 0
    assert (data["weil"]["s1"], data["weil"]["s2"]) == (0, -2)
    assert not data["supersingular"] and len(data["igusa"]) == 5
    code, out, _ = invoke(capsys, "igusa", "--q", "3", "--f", "1,0,0,0,0,1")
    data = json.loads(out)
    assert data["supersingular"] and data["I"] == "0"
    assert (data["weil"]["s1"], data["weil"]["s2"]) == (0, 0)


def test_verify_pass_and_fault(capsys, monkeypatch):
    code, out, _ = invoke(capsys, "verify", "--suite", "moduli")
    assert code == 0 and json.loads(out)["pass"]
    monkeypatch.setenv("SSG2_INJECT_FAULT", "table")
    code, out, _ = invoke(capsys, "verify", "--suite", "tables")
    data = json.loads(out)
    assert code == 1 and not data["pass"]
    assert any(c["counterexample"] for c in data["checks"] if not c["pass"])


def test_console_script_and_module():
    exe = shutil.which("ssgenus2")
    cmd = [exe] if exe else [sys.executable, "-m", "ssgenus2"]
    proc = subprocess.run(cmd + ["census", "--q", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    mod = subprocess.run([sys.executable, "-m", "ssgenus2", "census", "--q", "3"], capture_output=True, text=True)
    assert mod.stdout == proc.stdout
    bad = subprocess.run([sys.executable, "-m", "ssgenus2", "census"], capture_output=True, text=True)
    assert bad.returncode == 2
