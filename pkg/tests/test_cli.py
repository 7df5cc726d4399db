"""Exit codes, flag overrides, and output routing for the `lenequiv` CLI."""

import json
import subprocess

import pytest

from lenequiv import cli
from lenequiv.errors import InconclusiveEnumerationError
from lenequiv.reports import RunConfig, emit, run


def write_config(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


TRACE_CFG = {
    "surface": {"genus": 1, "boundary_components": 1},
    "task": "trace-id",
    "n_range": [1, 2],
}


def test_run_writes_report_to_stdout(tmp_path, capfdbinary):
    path = write_config(tmp_path, TRACE_CFG)
    assert cli.main(["run", path]) == 0
    out = capfdbinary.readouterr().out
    expected = emit(run(RunConfig.from_dict(TRACE_CFG)), "json")
    assert out == expected
    assert out.endswith(b"\n")


def test_out_flag_routes_to_file(tmp_path, capfdbinary):
    path = write_config(tmp_path, TRACE_CFG)
    target = tmp_path / "report.json"
    assert cli.main(["run", path, "--out", str(target)]) == 0
    assert capfdbinary.readouterr().out == b""
    payload = json.loads(target.read_bytes())
    assert payload["task"] == "trace-id"
    assert payload["payload"]["all_hold"] is True


def test_format_flag(tmp_path, capfdbinary):
    path = write_config(tmp_path, TRACE_CFG)
    assert cli.main(["run", path, "--format", "text"]) == 0
    text = capfdbinary.readouterr().out.decode()
    assert text.startswith("lenequiv")
    assert "all hold: True" in text
    assert cli.main(["run", path, "--format", "csv"]) == 0
    assert capfdbinary.readouterr().out.decode().splitlines()[0] == "n,holds"


def test_seed_flag_replaces_config_seeds(tmp_path, capfdbinary):
    cfg = {"surface": {"genus": 1, "boundary_components": 1}, "task": "sample-reps"}
    path = write_config(tmp_path, cfg)
    assert cli.main(["run", path, "--seed", "2", "--seed", "5"]) == 0
    payload = json.loads(capfdbinary.readouterr().out)
    assert payload["config"]["seeds"] == [2, 5]
    assert [r["seed"] for r in payload["payload"]["representations"]] == [2, 5]


def test_task_flag_override(tmp_path, capfdbinary):
    path = write_config(tmp_path, TRACE_CFG)
    assert cli.main(["run", path, "--task", "sample-reps"]) == 0
    assert json.loads(capfdbinary.readouterr().out)["task"] == "sample-reps"
    assert cli.main(["run", path, "--task", "bogus"]) == 2


def test_config_errors_exit_2(tmp_path, capsys):
    assert cli.main(["run", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert cli.main(["run", str(bad)]) == 2
    path = write_config(tmp_path, dict(TRACE_CFG, seeds=[]))
    assert cli.main(["run", path]) == 2
    assert "config error" in capsys.readouterr().err


def test_degenerate_input_exits_2(tmp_path, capsys):
    cfg = {
        "surface": {"genus": 1, "boundary_components": 1},
        "task": "pairs",
        "words": {"alpha": "ab"},  # simple here, so no self-intersection witness
    }
    assert cli.main(["run", write_config(tmp_path, cfg)]) == 2
    assert "config error" in capsys.readouterr().err


def test_inconclusive_enumeration_exits_3(tmp_path, capsys, monkeypatch):
    def explode(config):
        raise InconclusiveEnumerationError("count never stabilized", cap=12)

    monkeypatch.setattr(cli, "run", explode)
    path = write_config(tmp_path, TRACE_CFG)
    assert cli.main(["run", path]) == 3
    assert "inconclusive" in capsys.readouterr().err


def test_hypothesis_violation_exits_4(tmp_path, capsys):
    cfg = {
        "surface": {"genus": 0, "boundary_components": 3},
        "task": "verify",
        "words": {"alpha": "ab", "beta": "aab", "g": "a", "h": "A"},
        "n_range": [1, 2],
    }
    assert cli.main(["run", write_config(tmp_path, cfg)]) == 4
    assert "verification failure" in capsys.readouterr().err


def test_verify_not_ok_exits_4(tmp_path, capsys, monkeypatch):
    cfg_data = {
        "surface": {"genus": 0, "boundary_components": 3},
        "task": "verify",
        "words": {"alpha": "ab"},
        "n_range": [1, 1],
    }
    report = run(RunConfig.from_dict(cfg_data))
    report.payload["ok"] = False
    monkeypatch.setattr(cli, "run", lambda config: report)
    path = write_config(tmp_path, cfg_data)
    assert cli.main(["run", path]) == 4
    assert "exceed tolerance" in capsys.readouterr().err


def test_console_script_end_to_end(tmp_path):
    path = write_config(tmp_path, TRACE_CFG)
    proc = subprocess.run(
        ["lenequiv", "run", path, "--format", "text"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert "all hold: True" in proc.stdout


def test_run_subcommand_required():
    with pytest.raises(SystemExit):
        cli.main([])
