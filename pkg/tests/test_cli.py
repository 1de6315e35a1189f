from __future__ import annotations

import json

import pytest
from typer.testing import CliRunner

from qteleport.harness.cli import app
from qteleport.harness.csvio import AUDIT_SCHEMA, MODE_SCHEMA, read_csv
from qteleport.harness.manifest import MANIFEST_NAME


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def value_of(output: str, key: str) -> str:
    """Value of a `key = value` line of the command output."""
    for line in output.splitlines():
        name, sep, value = line.partition(" = ")
        if sep and name.strip() == key:
            return value.strip()
    msg = f"{key} not in output"
    raise AssertionError(msg)


def test_pulses(runner: CliRunner, tmp_path):
    """Test the mode files, the plot and the printed branch overlap."""
    result = runner.invoke(app, ["pulses", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert float(value_of(result.stdout, "one_minus_delta")) == pytest.approx(
        0.992, abs=0.002
    )
    for name in ("f_A0", "f_A1", "f_B", "drive_E1", "drive_E2"):
        table = read_csv(tmp_path / f"{name}.csv")
        assert table.schema == MODE_SCHEMA
        assert len(table.rows) == 4001  # noqa: PLR2004
    assert (tmp_path / "pulses.svg").read_text().lstrip().startswith("<?xml")
    manifest = json.loads((tmp_path / MANIFEST_NAME).read_text())
    assert manifest["command"] == "pulses"
    assert "pulses.svg" in manifest["outputs"]


def test_teleport(runner: CliRunner, tmp_path):
    result = runner.invoke(
        app, ["teleport", "--set", "force_mode_match=true", "--out", str(tmp_path)]
    )
    assert result.exit_code == 0, result.output
    assert value_of(result.stdout, "mode") == "analytic"
    assert float(value_of(result.stdout, "p_success")) == pytest.approx(0.5)
    assert float(value_of(result.stdout, "fidelity")) == pytest.approx(1.0)
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["outcome"] in {"Plus", "Minus"}
    assert (tmp_path / "patterns.csv").exists()
    manifest = json.loads((tmp_path / MANIFEST_NAME).read_text())
    assert manifest["config"]["force_mode_match"] is True


def test_teleport_trajectories(runner: CliRunner, tmp_path):
    """Test that trajectory mode writes the jump records of both nodes."""
    args = ["teleport", "-m", "trajectory", "--n", "20", "--seed", "5"]
    args += ["-o", str(tmp_path)]
    result = runner.invoke(app, args)
    assert result.exit_code == 0, result.output
    assert value_of(result.stdout, "n_samples") == "20"
    for side in ("alice", "bob"):
        table = read_csv(tmp_path / f"jumps_{side}.csv")
        assert "trajectories: 20" in table.comments
    manifest = json.loads((tmp_path / MANIFEST_NAME).read_text())
    assert manifest["seed"] == 5  # noqa: PLR2004


def test_teleport_failure_exit_code(runner: CliRunner, tmp_path):
    """Test exit code 1 when no pattern can herald success."""
    args = ["teleport", "--set", "detection.efficiency=0", "--out", str(tmp_path)]
    result = runner.invoke(app, args)
    assert result.exit_code == 1
    assert value_of(result.stdout, "outcome") == "Failure"


@pytest.mark.parametrize(
    "args",
    [
        ["teleport", "--set", "pulses.nope=1"],
        ["teleport", "--set", "seed"],
        ["teleport", "--set", "detection.efficiency=2"],
        ["teleport", "--config", "missing.toml"],
        ["sweep", "--values", "0.5,1.0"],
        ["sweep", "--param", "detection.nope", "--values", "0.5"],
        ["pulses", "--set", "pulses.width=20.0"],
        ["pulses", "--jobs", "2"],
    ],
)
def test_invalid_input_exit_code(runner: CliRunner, tmp_path, args: list[str]):
    result = runner.invoke(app, [*args, "--out", str(tmp_path)])
    assert result.exit_code == 2, result.output  # noqa: PLR2004


def test_sweep(runner: CliRunner, tmp_path):
    args = ["sweep", "-p", "detection.efficiency", "--values", "0.5, 1.0", "-o"]
    result = runner.invoke(app, [*args, str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "2 sweep points written to sweep.csv" in result.stdout
    table = read_csv(tmp_path / "sweep.csv")
    assert table.floats("detection.efficiency") == [0.5, 1.0]
    assert (tmp_path / "sweep.svg").exists()
    manifest = json.loads((tmp_path / MANIFEST_NAME).read_text())
    assert manifest["extra"]["sweep"]["param"] == "detection.efficiency"


def test_sweep_from_config_file(runner: CliRunner, tmp_path):
    """Test a sweep defined in the configuration file, with a range."""
    path = tmp_path / "run.toml"
    path.write_text(
        '[sweep]\nparam = "detection.efficiency"\nrange = "0.5:1.0:3"\n'
        'output = "eta.csv"\n'
    )
    result = runner.invoke(app, ["sweep", "-c", str(path), "-o", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "3 sweep points written to eta.csv" in result.stdout
    assert len(read_csv(tmp_path / "eta.csv").rows) == 3  # noqa: PLR2004


def test_audit(runner: CliRunner, tmp_path):
    result = runner.invoke(app, ["audit", "--jobs", "2", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    max_deviation = float(value_of(result.stdout, "max_deviation"))
    assert max_deviation == pytest.approx(0.0754560, abs=1e-6)
    table = read_csv(tmp_path / "audit.csv")
    assert table.schema == AUDIT_SCHEMA
    assert len(table.rows) == 80  # noqa: PLR2004


@pytest.mark.parametrize(
    "args",
    [
        ["pulses"],
        ["teleport", "-m", "trajectory", "--n", "50", "--seed", "11"],
        ["sweep", "-p", "detection.efficiency", "--values", "0.5,1.0"],
        ["audit"],
    ],
)
def test_reruns_are_byte_identical(runner: CliRunner, tmp_path, args: list[str]):
    """Test that the same command and seed reproduce every table and figure."""
    first, second = tmp_path / "first", tmp_path / "second"
    for out in (first, second):
        result = runner.invoke(app, [*args, "--out", str(out)])
        assert result.exit_code == 0, result.output
    names = sorted(
        p.name for p in first.iterdir() if p.suffix in {".csv", ".svg", ".json"}
    )
    names.remove(MANIFEST_NAME)
    assert any(name.endswith(".csv") for name in names)
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name
