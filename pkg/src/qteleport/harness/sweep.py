"""Parameter sweeps over independent teleportation runs."""

from __future__ import annotations

import asyncio
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import functools
import math
import tomllib
from typing import TYPE_CHECKING, Any, Self

import numpy as np
from pydantic import ConfigDict, Field, ValidationError, model_validator
from schemez import Schema
from upath import UPath

from qteleport.exceptions import ConfigError
from qteleport.harness.csvio import SWEEP_SCHEMA, Column, write_csv
from qteleport.log import get_logger
from qteleport.protocol import run_teleportation, set_path


if TYPE_CHECKING:
    from collections.abc import Sequence
    import os

    from qteleport.protocol import ProtocolConfig


logger = get_logger("harness.sweep")


def parse_range(text: str) -> list[float]:
    """Values of a `start:stop:num` range, endpoints included.

    Raises:
        ConfigError: If the range is malformed
    """
    try:
        start, stop, num = text.split(":")
        values = np.linspace(float(start), float(stop), int(num))
    except ValueError as e:
        msg = f"Range {text!r} is not of the form start:stop:num"
        raise ConfigError(msg) from e
    return [float(v) for v in values]


class SweepSpec(Schema):
    """One parameter varied over a list of values."""

    model_config = ConfigDict(frozen=True)

    param: str
    """Dotted path into the configuration, e.g. detection.efficiency."""

    values: list[Any] = Field(min_length=1)
    """Values in output order."""

    replications: int = Field(default=1, ge=1)
    """Runs per value, with seeds seed, seed + 1, ..."""

    output: str = "sweep.csv"
    """File name of the aggregated table."""

    @model_validator(mode="before")
    @classmethod
    def _expand_range(cls, data: Any) -> Any:
        if isinstance(data, dict) and "range" in data:
            data = dict(data)
            data.setdefault("values", parse_range(str(data.pop("range"))))
        return data

    @classmethod
    def from_file(cls, path: str | os.PathLike[str]) -> Self | None:
        """The `[sweep]` table of a configuration file, if present.

        Raises:
            ConfigError: If the table is unreadable or invalid
        """
        try:
            with UPath(path).open("rb") as f:
                table = tomllib.load(f).get("sweep")
        except (OSError, tomllib.TOMLDecodeError) as e:
            msg = f"Cannot read sweep section of {path}: {e}"
            raise ConfigError(msg) from e
        if table is None:
            return None
        return cls.parse(table)

    @classmethod
    def parse(cls, data: dict[str, Any]) -> Self:
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            msg = f"Invalid sweep specification: {e}"
            raise ConfigError(msg) from e

    def check(self, config: ProtocolConfig) -> None:
        """Resolve the parameter path against a config.

        Raises:
            ParameterPathError: If the path does not exist
            ConfigError: If a value does not validate
        """
        for value in self.values:
            set_path(config, self.param, value)

    @property
    def numeric(self) -> bool:
        return all(
            isinstance(v, int | float) and not isinstance(v, bool) for v in self.values
        )


@dataclass(frozen=True)
class SweepRow:
    value: Any
    replication: int
    seed: int
    fidelity: float | None
    p_success: float
    p_success_overall: float
    one_minus_delta: float
    adiabaticity: float | None

    def cells(self) -> tuple[Any, ...]:
        return (
            self.value,
            self.replication,
            self.seed,
            self.fidelity,
            self.p_success,
            self.p_success_overall,
            self.one_minus_delta,
            self.adiabaticity,
        )


def run_point(
    config: ProtocolConfig,
    param: str,
    value: Any,
    replication: int,
) -> SweepRow:
    """One sweep point; module level so worker processes can unpickle it."""
    seed = config.seed + replication
    point = set_path(set_path(config, param, value), "seed", seed)
    report = run_teleportation(point)
    adiabatic = [
        x for x in (report.adiabaticity_alice, report.adiabaticity_bob) if x is not None
    ]
    return SweepRow(
        value=value,
        replication=replication,
        seed=seed,
        fidelity=report.fidelity,
        p_success=report.p_success,
        p_success_overall=report.p_success_overall,
        one_minus_delta=report.one_minus_delta,
        adiabaticity=min(adiabatic) if adiabatic else None,
    )


async def arun_sweep(
    config: ProtocolConfig,
    spec: SweepSpec,
    jobs: int = 1,
) -> list[SweepRow]:
    """Run every (value, replication) point, rows ordered value-major.

    Args:
        config: Base configuration
        spec: Parameter and values
        jobs: Worker processes; 1 runs in-process

    Raises:
        ParameterPathError: If the parameter path does not resolve
    """
    spec.check(config)
    points = [(v, r) for v in spec.values for r in range(spec.replications)]
    logger.info("Sweeping %s over %d points with %d jobs", spec.param, len(points), jobs)
    if jobs <= 1:
        return [run_point(config, spec.param, v, r) for v, r in points]
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            loop.run_in_executor(
                pool, functools.partial(run_point, config, spec.param, v, r)
            )
            for v, r in points
        ]
        return list(await asyncio.gather(*futures))


def run_sweep(config: ProtocolConfig, spec: SweepSpec, jobs: int = 1) -> list[SweepRow]:
    """Synchronous wrapper around `arun_sweep`."""
    return asyncio.run(arun_sweep(config, spec, jobs))


def write_sweep_csv(
    path: str | os.PathLike[str],
    spec: SweepSpec,
    rows: Sequence[SweepRow],
) -> UPath:
    columns = [
        Column(spec.param, "-"),
        Column("replication", "-"),
        Column("seed", "-"),
        Column("fidelity"),
        Column("p_success"),
        Column("p_success_overall"),
        Column("one_minus_delta"),
        Column("adiabaticity"),
    ]
    return write_csv(
        path,
        SWEEP_SCHEMA,
        columns,
        (row.cells() for row in rows),
        comments=[f"param: {spec.param}", f"replications: {spec.replications}"],
    )


def sweep_series(
    spec: SweepSpec,
    rows: Sequence[SweepRow],
) -> tuple[list[float], dict[str, list[float]]]:
    """Replication means per value, for plotting."""
    n = spec.replications
    if spec.numeric:
        xs = [float(v) for v in spec.values]
    else:
        xs = [float(i) for i in range(len(spec.values))]

    def mean(values: list[float | None]) -> float:
        finite = [v for v in values if v is not None]
        return float(np.mean(finite)) if finite else math.nan

    grouped = [rows[i * n : (i + 1) * n] for i in range(len(spec.values))]
    series = {
        "fidelity": [mean([r.fidelity for r in g]) for g in grouped],
        "p_success": [mean([r.p_success for r in g]) for g in grouped],
        "one_minus_delta": [mean([r.one_minus_delta for r in g]) for g in grouped],
    }
    return xs, series
