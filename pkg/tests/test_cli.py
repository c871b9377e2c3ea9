import io
import json
import subprocess
import sys

import mpmath
import pytest

from holderconvex.cli import run

from fixtures import EXP_INV_PI

# one invocation per documented subcommand, kept small for speed
COMMANDS = [
    ["mean", "--p", "2", "1", "7"],
    ["gap", "--family", "pow", "--beta", "2", "--p", "1", "--q", "1/2", "--pairs", "50", "--seed", "3"],
    ["gap", "--family", "exp", "--a", "1", "--p", "1", "--q", "1", "--pairs", "50"],
    ["transform", "--beta", "2", "--p", "2", "--q", "1", "--pairs", "5", "--seed", "1"],
    ["derive", "--d", "1", "(t1^2-1)/(t1-1)"],
    ["pathological", "probe", "--alpha", "2", "--d", "1", "--p", "2/3", "--pairs", "20", "--seed", "5"],
    ["pathological", "demo", "--alpha", "2", "--d", "1", "--k", "8"],
    ["scan", "--family", "pow", "--beta", "2", "--p-range", "0:4", "--q-range", "0:4", "--res", "10"],
    ["scan", "--family", "exp", "--p-range", "-1:1", "--q-range", "0:2", "--res", "6", "--format", "json"],
    ["m2", "--beta", "2", "--lambda", "2", "--samples", "100", "--pairs", "100"],
    ["thmp", "--family", "pow", "--beta", "2", "--x", "1", "--y", "4", "--p-count", "20"],
    ["thmp", "--family", "pathological", "--alpha", "2", "--p-count", "10"],
]


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: "-".join(a[:2]))
def test_deterministic_and_passing(argv):
    first = invoke(argv)
    second = invoke(argv)
    assert first[0] == 0, first
    assert first[1] == second[1]


def test_mean_example():
    code, out, _ = invoke(["mean", "--p", "2", "1", "7"])
    assert code == 0
    assert float(json.loads(out)["samples"][0]["value"]) == pytest.approx(5)


def test_demo_reports_jump_factor():
    code, out, _ = invoke(["pathological", "demo", "--alpha", "2", "--d", "1", "--k", "8"])
    data = json.loads(out)
    assert code == 0 and data["pass"] is True
    with mpmath.workdps(60):
        jump = mpmath.mpf(data["fixture_values"]["jump_factor"])
        assert abs(jump / mpmath.mpf(EXP_INV_PI) - 1) < mpmath.mpf("1e-40")


def test_scan_csv():
    code, out, _ = invoke(["scan", "--family", "pow", "--beta", "2", "--res", "40"])
    lines = out.splitlines()
    assert code == 0 and lines[0] == "p,q,verdict" and len(lines) == 1601


def test_violation_exit_code():
    code, out, _ = invoke(["m2", "--beta", "1/2", "--lambda", "1/2", "--t", "4", "--samples", "10"])
    assert code == 1
    assert json.loads(out)["pass"] is False
    code, _, _ = invoke(["gap", "--beta", "2", "--p", "1", "--q", "1/4", "--pairs", "20"])
    assert code == 1


def test_domain_error_exit_code():
    code, out, _ = invoke(["derive", "1/(t-t)"])
    assert code == 1
    assert json.loads(out)["error"]["type"] == "ParseError"
    code, out, _ = invoke(["pathological", "demo", "--d", "0"])
    assert code == 1 and "zero derivation" in json.loads(out)["error"]["message"]
    code, out, _ = invoke(["pathological", "probe", "--p", "1", "--pairs", "3", "--alpha", "1",
                           "--theta", "2", "--d", "1", "--precision", "20"])
    assert code in (0, 1)


@pytest.mark.parametrize("argv", [
    ["mean", "--p", "abc", "1", "2"],
    ["mean", "1", "2"],
    ["nosuch"],
    ["pathological", "probe", "--p", "0.5"],
    ["scan", "--p-range", "4:0"],
    ["gap", "--p", "1", "--q", "1", "1"],
    ["pathological", "probe", "--d", "1,1", "--theta", "3.1"],
])
def test_usage_errors(argv):
    assert invoke(argv)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "holderconvex", "mean", "--p", "0", "2", "8"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert float(json.loads(proc.stdout)["samples"][0]["value"]) == pytest.approx(4)
