"""The command-line front end: outputs, exit codes and determinism."""

import json
import subprocess
import sys

import pytest

from comodcat.cli import COMMANDS, run
from comodcat.fixtures import fixture_text


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def payload(text):
    return {r["key"]: r["value"] for r in records(text) if r["record"] == "payload"}


def test_check_algebroid_f1_passes():
    out, code = run(["check-algebroid", "--fixture", "F1", "--format", "json"])
    assert code == 0
    checks = [r for r in records(out) if r["record"] == "check"]
    assert checks and all(c["passed"] for c in checks)
    assert records(out)[-1]["status"] == "pass"


def test_cobar_ext_f1():
    out, code = run(["cobar-ext", "--fixture", "F1", "--depth", "4", "--format", "json"])
    assert code == 0
    assert payload(out)["ext dims"] == [1, 1, 1, 1, 1]


def test_chom_f3_dimension_gap():
    out, code = run(["chom", "--fixture", "F3", "--input", "N=A_mod_x2", "--format", "json"])
    assert code == 0
    p = payload(out)
    assert p["dim U(chom(unit,N))"] == 2
    assert p["dim invariants(N)"] == 1


def test_text_output_is_sorted_by_check_name():
    out, _ = run(["check-algebroid", "--fixture", "F3"])
    names = [l.split("  ", 1)[1] for l in out.splitlines() if l.startswith(("pass  ", "FAIL  "))]
    assert names == sorted(names)


@pytest.mark.parametrize("argv", [
    ["tensor", "--fixture", "F2", "--input", "M=line_1", "--input", "N=line_2"],
    ["adjunction", "--fixture", "F1", "--input", "M=regular", "--input", "N=regular"],
    ["dualizable", "--fixture", "F1", "--input", "M=regular"],
    ["invariants", "--fixture", "F3", "--input", "N=A_mod_x2"],
    ["resolution-witness", "--fixture", "F1", "--input", "M=augmentation", "--input", "family=regular"],
    ["complex-homology", "--fixture", "F3", "--input", "C=x_mult"],
    ["check-comodule", "--fixture", "F2"],
    ["fixtures"],
    ["oracle-compare", "--count", "3"],
])
def test_commands_pass(argv):
    out, code = run(argv)
    assert code == 0, out


def test_every_command_is_exercised():
    assert set(COMMANDS) == {"check-algebroid", "check-comodule", "tensor", "chom", "adjunction", "dualizable",
                             "invariants", "resolution-witness", "cobar-ext", "complex-homology", "fixtures",
                             "oracle-compare"}


def test_exit_code_fail(tmp_path):
    bad = tmp_path / "bad.def"
    bad.write_text(fixture_text("F2").replace("[counit]\nt = 1", "[counit]\nt = 0"), encoding="utf-8")
    out, code = run(["check-algebroid", "--input", str(bad)])
    assert code == 1
    assert "FAIL  well-defined counit" in out


def test_exit_code_parse(tmp_path):
    bad = tmp_path / "broken.def"
    bad.write_text("[A1]\nvariables = x\nnot an entry\n", encoding="utf-8")
    out, code = run(["check-algebroid", "--input", str(bad)])
    assert code == 2
    assert "line 3" in out
    assert run(["chom", "--fixture", "F3"])[1] == 2               # N unbound
    assert run(["no-such-command"])[1] == 2
    assert run(["tensor", "--fixture", "F1", "--input", "M=nope", "--input", "N=unit"])[1] == 2


def test_exit_code_capability():
    out, code = run(["cobar-ext", "--fixture", "F2"])
    assert code == 3
    assert "capability-refused" in out


def test_exit_code_resource():
    _, code = run(["chom", "--fixture", "F3", "--input", "N=A_mod_x2", "--budget", "3"])
    assert code == 4


def _cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "comodcat.cli", *argv], capture_output=True)
    return proc.stdout, proc.returncode


def test_byte_identical_reports_across_processes():
    argv = ["oracle-compare", "--count", "5", "--seed", "11", "--format", "json"]
    first, c1 = _cli(*argv)
    second, c2 = _cli(*argv)
    assert c1 == c2 == 0
    assert first == second and first
    header = json.loads(first.decode().splitlines()[0])
    assert header["seed"] == 11
