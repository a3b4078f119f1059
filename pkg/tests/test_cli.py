import json
import re
import shlex
import subprocess
import sys
from pathlib import Path

import pytest

from simplicial_codes.cli import main
from simplicial_codes.codes import CodeReport

README = Path(__file__).resolve().parents[1] / "README.md"
# run once, by tests/test_acceptance.py
LONG_COMMANDS = {"simplicial-codes verify --n 2,3 --m-max 4 --out ledger.csv"}


def readme_commands():
    text = README.read_text()
    block = re.search(r"## CLI.*?```\n(.*?)```", text, re.S).group(1)
    return [line.strip() for line in block.splitlines() if line.startswith("simplicial-codes ")]


def run_cli(args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "simplicial_codes", *args], cwd=cwd, capture_output=True, text=True, timeout=300
    )


def test_readme_lists_commands():
    cmds = readme_commands()
    assert len(cmds) >= 8
    assert LONG_COMMANDS <= set(cmds)


@pytest.mark.parametrize("cmd", [c for c in readme_commands() if c not in LONG_COMMANDS])
def test_readme_command_runs(cmd, tmp_path):
    proc = run_cli(shlex.split(cmd)[1:], tmp_path)
    assert proc.returncode == 0, proc.stderr


def test_lfsr_prefix(capsys):
    assert main(["lfsr", "--poly", "x^3+x+1", "--init", "100", "--len", "7"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "1001011"


def test_lfsr_json(capsys):
    assert main(["lfsr", "--poly", "x^3+x+1", "--init", "010", "--len", "7", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["prefix"] == "0101110" and data["minimal_polynomial"] == "x^3+x+1"


def test_code_build_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    args = ["code", "build", "--n", "2", "--poly", "x^2+x+1", "--m", "4", "--L", "1,2,3;1,2,3",
            "--variant", "dstar", "--out", str(out)]
    assert main(args) == 0
    rep = json.loads(out.read_text())
    assert rep["is_griesmer"] is True and [rep["length"], rep["k"], rep["d"]] == [63, 3, 48]
    assert CodeReport.from_json(out.read_text()).to_json() + "\n" == out.read_text()
    first = out.read_text()
    assert main(args) == 0
    assert out.read_text() == first


def test_subfield_json(capsys):
    assert main(["code", "subfield", "--n", "2", "--m", "3", "--L", "1,2;2,3", "--variant", "dc", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert [rep["length"], rep["k"], rep["d"]] == [48, 6, 24]


def test_verify_empty_enumeration(tmp_path):
    proc = run_cli(["verify", "--n", "2", "--m-max", "3", "--limit", "0", "--out", "l.csv"], tmp_path)
    assert proc.returncode == 0
    assert (tmp_path / "l.csv").read_text().count("\n") == 1


def test_theory_rows_agree(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["theory", "--poly", "x^3+x+1", "--m", "2", "--L", "1;1,2;2", "--out", str(out)]) == 0
    vals = {}
    for line in out.read_text().splitlines()[1:]:
        table, key, fld, value = line.split(",")
        if table == "message":
            vals.setdefault(key, {})[fld] = value
    assert len(vals) == 64
    for v in vals.values():
        assert v["formula_dstar"] == v["oracle_dstar"] and v["formula_dc"] == v["oracle_dc"]


@pytest.mark.parametrize(
    "args",
    [
        ["code", "build", "--n", "3", "--m", "2", "--L", "1;1"],
        ["code", "build", "--n", "2", "--m", "2", "--L", "1;3"],
        ["code", "build", "--n", "2", "--poly", "x^2+1", "--m", "2", "--L", "1;2"],
        ["code", "build", "--n", "3", "--poly", "x^2+x+1", "--m", "2", "--L", "1;2"],
        ["code", "build", "--n", "2", "--m", "2", "--L", "1,2;1,2", "--variant", "dc"],
        ["lfsr", "--poly", "x^3+x+1", "--init", "10"],
        ["verify", "--n", "a", "--m-max", "2"],
        ["field"],
    ],
)
def test_usage_errors_exit_2(args, tmp_path):
    assert run_cli(args, tmp_path).returncode == 2


def test_budget_exit_3(tmp_path):
    proc = run_cli(["code", "build", "--n", "3", "--m", "4", "--L", "1,2;2,3;3,4", "--budget", "100"], tmp_path)
    assert proc.returncode == 3 and "budget" in proc.stderr


def test_budget_env_exit_3(tmp_path, monkeypatch):
    monkeypatch.setenv("SIMPLICIAL_CODES_BUDGET", "100")
    proc = run_cli(["code", "build", "--n", "3", "--m", "4", "--L", "1,2;2,3;3,4"], tmp_path)
    assert proc.returncode == 3


def test_strict_hypothesis_exit_4(tmp_path):
    proc = run_cli(["code", "build", "--n", "2", "--m", "3", "--L", "1,2;1,2,3", "--strict"], tmp_path)
    assert proc.returncode == 4
    proc = run_cli(["code", "build", "--n", "2", "--m", "3", "--L", "1,2;2,3", "--strict"], tmp_path)
    assert proc.returncode == 0


def test_help_mentions_every_subcommand(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    out = capsys.readouterr().out
    for sub in ("field", "lfsr", "theory", "code", "verify"):
        assert sub in out
