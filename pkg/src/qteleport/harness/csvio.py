"""CSV writers with a commented, versioned header."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np
from upath import UPath

from qteleport.log import get_logger
from qteleport.pulses import PhotonMode


if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence
    import os

    from qteleport.evolution import TrajectoryEnsemble
    from qteleport.protocol import AuditTable, ProtocolReport
    from qteleport.pulses import DrivePulse


logger = get_logger("harness.csvio")

MODE_SCHEMA = "qteleport/mode/v1"
PATTERNS_SCHEMA = "qteleport/patterns/v1"
JUMPS_SCHEMA = "qteleport/jumps/v1"
SWEEP_SCHEMA = "qteleport/sweep/v1"
AUDIT_SCHEMA = "qteleport/audit/v1"


@dataclass(frozen=True)
class Column:
    name: str
    unit: str = "1"


@dataclass(frozen=True)
class CsvTable:
    """Parsed CSV file: schema id, header comments and the data rows."""

    schema: str
    comments: list[str]
    columns: list[str]
    rows: list[list[str]]

    def column(self, name: str) -> list[str]:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def floats(self, name: str) -> list[float]:
        return [float(v) if v else float("nan") for v in self.column(name)]


def format_cell(value: Any) -> str:
    """Floats at 12 significant digits, None as an empty cell."""
    match value:
        case None:
            return ""
        case bool():
            return str(value).lower()
        case float() | np.floating():
            return f"{float(value):.12g}"
        case complex() | np.complexfloating():
            return f"{complex(value):.12g}".strip("()")
        case _:
            return str(value)


def write_csv(
    path: str | os.PathLike[str],
    schema: str,
    columns: Sequence[Column],
    rows: Iterable[Sequence[Any]],
    comments: Sequence[str] = (),
) -> UPath:
    """Write rows under a `#` header naming the schema, quantities and units."""
    target = UPath(path)
    with target.open("w", newline="", encoding="utf-8") as f:
        f.write(f"# schema: {schema}\n")
        for line in comments:
            f.write(f"# {line}\n")
        f.write("# units: " + ", ".join(f"{c.name} [{c.unit}]" for c in columns) + "\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow([c.name for c in columns])
        writer.writerows([format_cell(v) for v in row] for row in rows)
    logger.info("Wrote %s", target)
    return target


def read_csv(path: str | os.PathLike[str]) -> CsvTable:
    """Read a file written by `write_csv`."""
    with UPath(path).open(encoding="utf-8", newline="") as f:
        lines = f.read().splitlines()
    comments = [line[1:].strip() for line in lines if line.startswith("#")]
    body = [line for line in lines if not line.startswith("#")]
    schemas = [
        c.removeprefix("schema:").strip() for c in comments if c.startswith("schema:")
    ]
    schema = schemas[0] if schemas else ""
    parsed = list(csv.reader(body))
    return CsvTable(schema, comments, parsed[0] if parsed else [], parsed[1:])


def write_mode_csv(
    path: str | os.PathLike[str],
    curve: PhotonMode | DrivePulse,
    name: str,
) -> UPath:
    """Two-column (t, value) export of a photon mode or a drive envelope."""
    if isinstance(curve, PhotonMode):
        values, unit = curve.samples, "kappa^1/2"
    else:
        values, unit = curve.envelope, "g0"
    return write_csv(
        path,
        MODE_SCHEMA,
        [Column("t", "1/kappa"), Column(name, unit)],
        zip(curve.grid.times, values),
    )


def write_patterns_csv(path: str | os.PathLike[str], report: ProtocolReport) -> UPath:
    return write_csv(
        path,
        PATTERNS_SCHEMA,
        [
            Column("pattern", "-"),
            Column("class", "-"),
            Column("probability"),
            Column("fidelity"),
        ],
        ((r.pattern, r.outcome, r.probability, r.fidelity) for r in report.patterns),
    )


def write_jumps_csv(path: str | os.PathLike[str], ensemble: TrajectoryEnsemble) -> UPath:
    return write_csv(
        path,
        JUMPS_SCHEMA,
        [Column("trajectory", "-"), Column("channel", "-"), Column("time", "1/kappa")],
        ensemble.rows(),
        comments=[f"seed: {ensemble.seed}", f"trajectories: {len(ensemble)}"],
    )


def write_audit_csv(path: str | os.PathLike[str], table: AuditTable) -> UPath:
    columns = [
        Column("theta", "rad"),
        Column("phi", "rad"),
        Column("a"),
        Column("b"),
        Column("overlap"),
        Column("oracle"),
        Column("formula"),
        Column("bound"),
        Column("deviation"),
    ]
    return write_csv(
        path,
        AUDIT_SCHEMA,
        columns,
        (
            (r.theta, r.phi, r.a, r.b, r.overlap)
            + (r.oracle, r.formula, r.bound, r.deviation)
            for r in table.rows
        ),
        comments=[f"max_deviation: {format_cell(table.max_deviation)}"],
    )
