from __future__ import annotations

import pytest

from qteleport.exceptions import ConfigError, ParameterPathError
from qteleport.harness.csvio import SWEEP_SCHEMA, read_csv
from qteleport.harness.sweep import (
    SweepSpec,
    arun_sweep,
    parse_range,
    run_sweep,
    sweep_series,
    write_sweep_csv,
)
from qteleport.protocol import ProtocolConfig


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("0:1:5", [0.0, 0.25, 0.5, 0.75, 1.0]),
        ("1:0:3", [1.0, 0.5, 0.0]),
        ("0.5:0.5:1", [0.5]),
    ],
)
def test_parse_range(text: str, expected: list[float]):
    assert parse_range(text) == pytest.approx(expected)


@pytest.mark.parametrize("text", ["0:1", "a:b:3", "0:1:x", ""])
def test_parse_range_errors(text: str):
    with pytest.raises(ConfigError):
        parse_range(text)


def test_spec_from_range():
    spec = SweepSpec.parse({"param": "detection.efficiency", "range": "0.5:1.0:3"})
    assert spec.values == pytest.approx([0.5, 0.75, 1.0])
    assert spec.numeric
    assert spec.replications == 1
    assert spec.output == "sweep.csv"


def test_spec_validation():
    with pytest.raises(ConfigError):
        SweepSpec.parse({"param": "seed", "values": []})
    with pytest.raises(ConfigError):
        SweepSpec.parse({"param": "seed", "values": [1], "replications": 0})
    labels = SweepSpec.parse({"param": "pulses.convention", "values": ["sigma"]})
    assert not labels.numeric


def test_spec_from_file(tmp_path):
    """Test reading the sweep table of a configuration file."""
    path = tmp_path / "run.toml"
    path.write_text(
        'seed = 2\n[sweep]\nparam = "system.g0"\nrange = "2:6:3"\nreplications = 2\n'
    )
    spec = SweepSpec.from_file(path)
    assert spec is not None
    assert spec.param == "system.g0"
    assert spec.values == pytest.approx([2.0, 4.0, 6.0])
    assert spec.replications == 2  # noqa: PLR2004
    plain = tmp_path / "plain.toml"
    plain.write_text("seed = 2\n")
    assert SweepSpec.from_file(plain) is None


def test_unknown_parameter_path(config: ProtocolConfig):
    spec = SweepSpec(param="detection.nope", values=[0.5])
    with pytest.raises(ParameterPathError):
        spec.check(config)
    with pytest.raises(ParameterPathError):
        run_sweep(config, spec)


async def test_efficiency_sweep(config: ProtocolConfig):
    """Test that detector efficiency scales success but leaves fidelity unchanged."""
    spec = SweepSpec(param="detection.efficiency", values=[0.25, 0.5, 1.0])
    rows = await arun_sweep(config, spec)
    assert [row.value for row in rows] == [0.25, 0.5, 1.0]
    reference = rows[-1]
    assert reference.fidelity is not None
    for row in rows:
        assert row.fidelity == pytest.approx(reference.fidelity, abs=1e-6)
        assert row.p_success == pytest.approx(reference.p_success * row.value**2)
        assert row.adiabaticity is None


def test_replications_and_series(config: ProtocolConfig):
    """Test seeds per replication and the averaged series for plotting."""
    spec = SweepSpec(param="detection.efficiency", values=[0.5, 1.0], replications=2)
    rows = run_sweep(config.model_copy(update={"seed": 10}), spec)
    assert [(r.value, r.replication, r.seed) for r in rows] == [
        (0.5, 0, 10),
        (0.5, 1, 11),
        (1.0, 0, 10),
        (1.0, 1, 11),
    ]
    xs, series = sweep_series(spec, rows)
    assert xs == [0.5, 1.0]
    assert series["p_success"][0] == pytest.approx(rows[0].p_success)
    assert set(series) == {"fidelity", "p_success", "one_minus_delta"}


def test_parallel_sweep_matches_serial(config: ProtocolConfig):
    spec = SweepSpec(param="detection.efficiency", values=[0.5, 1.0])
    assert run_sweep(config, spec, jobs=2) == run_sweep(config, spec, jobs=1)


def test_sweep_csv(tmp_path, config: ProtocolConfig):
    spec = SweepSpec(param="detection.efficiency", values=[0.5, 1.0])
    rows = run_sweep(config, spec)
    path = write_sweep_csv(tmp_path / "sweep.csv", spec, rows)
    table = read_csv(path)
    assert table.schema == SWEEP_SCHEMA
    assert table.columns[0] == "detection.efficiency"
    assert "param: detection.efficiency" in table.comments
    assert table.floats("detection.efficiency") == [0.5, 1.0]
    assert table.floats("p_success") == pytest.approx([r.p_success for r in rows])
    assert table.column("adiabaticity") == ["", ""]
