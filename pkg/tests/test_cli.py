import json
import os
import subprocess
import sys

import pytest

from spcalc.cli import main, run_command
from spcalc.dsl import load_workspace

WORKSPACES = os.path.join(os.path.dirname(__file__), "..", "workspaces")
ARROW = os.path.join(WORKSPACES, "arrow.cat")
Z2 = os.path.join(WORKSPACES, "z2.cat")


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip().splitlines()
    return code, json.loads(out[-1])


def test_eval_representable(capsys):
    code, rec = call(capsys, "eval", "Y0", "at", "0", "--workspace", ARROW)
    assert code == 0
    assert rec["verdict"] == "Value" and rec["size"] == 1
    assert {"cmd", "bounds", "seed", "wall_time"} <= rec.keys()


def test_terminal_on_discrete_nat_is_not_small(capsys):
    code, rec = call(capsys, "limit", "--weight", "empty", "--diagram", "empty", "--cat", "DiscreteNat")
    assert code == 0
    assert rec["verdict"] == "NotSmall"
    assert rec["witness"]["family"] == "DiscreteNat"


def test_convolve_sizes(capsys):
    code, rec = call(capsys, "convolve", "F", "G", "--monoidal", "xor2", "--workspace", Z2)
    assert code == 0
    assert rec["certificate"]["sizes"] == {"0": 5, "1": 7}


def test_ihom_sizes(capsys):
    code, rec = call(capsys, "ihom", "G1", "H", "--monoidal", "xor2", "--workspace", Z2)
    assert code == 0 and rec["verdict"] == "Small"
    assert rec["sizes"] == {"0": 6, "1": 6}


def test_failed_check_exits_one(capsys):
    code, rec = call(capsys, "check", "closed", "--monoidal", "min")
    assert code == 1
    assert rec["verdict"] == "ConditionFails"


def test_unknown_names_exit_two(capsys):
    code, rec = call(capsys, "eval", "Nope", "0", "--workspace", ARROW)
    assert code == 2
    assert rec["error"] == "CommandError" and "Nope" in rec["message"]
    code, rec = call(capsys, "check", "phi", "--cat", "terminal", "--class", "FiniteProducts")
    assert code == 2


def test_parse_error_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.cat"
    bad.write_text("category A over FinSet { objects 0 }")
    code, rec = call(capsys, "eval", "Y0", "0", "--workspace", str(bad))
    assert code == 2 and rec["error"] == "ParseError"


def test_dm_and_isbell(capsys):
    code, rec = call(capsys, "dm", "Anti", "--workspace", ARROW)
    assert rec["count"] == 4 and rec["oracle_agrees"]
    code, rec = call(capsys, "isbell", "Y0", "--workspace", ARROW)
    assert code == 0 and rec["verdict"] == "Small"


def test_replay_suite(capsys):
    code, rec = call(capsys, "replay", "yoneda", "--seed", "42")
    assert code == 0
    assert rec["failures"] == [] and rec["cases"] == 200


def test_run_command_is_deterministic():
    ws = load_workspace(Z2)
    argv = ["convolve", "F", "H", "--monoidal", "xor2"]
    first = run_command(ws, argv)
    assert "wall_time" not in first
    assert json.dumps(first, sort_keys=True, default=str) == json.dumps(run_command(ws, argv), sort_keys=True,
                                                                      default=str)


@pytest.mark.parametrize("argv", [["--help"], ["eval", "--help"]])
def test_help(argv, capsys):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 0


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "spcalc.cli", "dm", "Ch", "--workspace", ARROW],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["count"] == 3
