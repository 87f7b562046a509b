import subprocess
import sys

import pytest

from relq.cli import main, run_command
from relq.suites import REFERENCE_TABLE


def test_mult_table_for_the_three_chain():
    code, out = run_command(["mult", "CHAIN3", "--table"])
    assert code == 0
    rows = [line for line in out.splitlines() if line.startswith("R") and "|" in line]
    cells = [[int(tok[1:]) for tok in row.split("|")[1].split()] for row in rows[:6]]
    assert cells == [list(r) for r in REFERENCE_TABLE]


def test_check_reports_pseudocomplementation():
    code, out = run_command(["check", "poset", "M3"])
    assert code == 0
    assert "pseudocomplemented: false" in out
    code, out = run_command(["check", "poset", "N5"])
    assert "pseudocomplemented: true" in out


def test_check_space():
    code, out = run_command(["check", "space", "SIERPINSKI"])
    assert code == 0 and "polarized" in out


def test_tensor_count_and_list():
    code, out = run_command(["tensor", "B4", "B4", "--count"])
    assert code == 0 and out.strip().endswith("16")
    code, out = run_command(["tensor", "CHAIN3", "CHAIN3", "--list"])
    assert code == 0 and out.count("down") >= 5


def test_guard_exit_code(monkeypatch):
    monkeypatch.delenv("RELQ_MAX_TENSORS", raising=False)
    code, _ = run_command(["--max-tensors", "3", "tensor", "B4", "B4", "--count"])
    assert code == 1


def test_guard_from_environment(monkeypatch):
    monkeypatch.setenv("RELQ_MAX_TENSORS", "3")
    code, _ = run_command(["tensor", "B4", "B4", "--count"])
    assert code == 1


def test_workspace_commands(fixtures_dir):
    ws = str(fixtures_dir / "basic.relq")
    code, out = run_command(["closure", "Apart", "-w", ws])
    assert code == 0
    assert "t(t(R)) = down(1,1)" in out
    code, out = run_command(["-w", ws, "compose", "Low", "Low"])
    assert code == 0
    code, out = run_command(["-w", ws, "galois", "C3", "--map", "rev"])
    assert code == 0


def test_galois_inline_map():
    code, out = run_command(["galois", "CHAIN3", "--map", "0:2,1:1,2:0"])
    assert code == 0 and "tensor" in out.lower()


def test_verify_report_format():
    code, out = run_command(["verify", "--suite", "example-table"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("MEMBER ") and lines[0].endswith(" example-table PASS")
    assert lines[-1] == "SUITE example-table 1/1"


def test_verify_failure_exit_code():
    code, out = run_command(["verify", "--suite", "nucleus-quotient"])
    assert code == 1
    assert "FAIL" in out


def test_verify_list():
    code, out = run_command(["verify", "--list"])
    assert code == 0 and "pseudocomplemented-quantale" in out


def test_dot_output():
    code, out = run_command(["dot", "poset", "CHAIN3"])
    assert code == 0
    assert out.startswith('digraph "CHAIN3"') and "rankdir=BT" in out
    assert out.count("->") == 2


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["check", "poset", "NOPE"],
    ["verify", "--suite", "no-such-suite"],
    ["-w", "/nonexistent/file.relq", "check", "poset", "CHAIN3"],
    ["galois", "CHAIN3", "--map", "0:9"],
])
def test_usage_errors_exit_2(argv):
    assert main(argv) == 2


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "relq", "dot", "space", "SIERPINSKI"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "digraph" in proc.stdout
