"""Command line harness: sweeps, CSV and SVG outputs, run manifests."""

from __future__ import annotations

from qteleport.harness.csvio import (
    AUDIT_SCHEMA,
    JUMPS_SCHEMA,
    MODE_SCHEMA,
    PATTERNS_SCHEMA,
    SWEEP_SCHEMA,
    Column,
    CsvTable,
    format_cell,
    read_csv,
    write_csv,
)
from qteleport.harness.manifest import RunManifest
from qteleport.harness.sweep import (
    SweepRow,
    SweepSpec,
    arun_sweep,
    parse_range,
    run_point,
    run_sweep,
)

__all__ = [
    "AUDIT_SCHEMA",
    "JUMPS_SCHEMA",
    "MODE_SCHEMA",
    "PATTERNS_SCHEMA",
    "SWEEP_SCHEMA",
    "Column",
    "CsvTable",
    "RunManifest",
    "SweepRow",
    "SweepSpec",
    "arun_sweep",
    "format_cell",
    "parse_range",
    "read_csv",
    "run_point",
    "run_sweep",
    "write_csv",
]
