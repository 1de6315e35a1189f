"""Command line interface: pulses, teleport, sweep and audit."""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from typing import Annotated

import typer

from qteleport import log
from qteleport.exceptions import ConfigError, NumericalGuardError, QTeleportError
from qteleport.harness.csvio import (
    write_audit_csv,
    write_jumps_csv,
    write_mode_csv,
    write_patterns_csv,
)
from qteleport.harness.manifest import ManifestRecorder
from qteleport.harness.plots import plot_pulses, plot_sweep
from qteleport.harness.sweep import (
    SweepSpec,
    parse_range,
    run_sweep,
    sweep_series,
    write_sweep_csv,
)
from qteleport.protocol import (
    PhotonModes,
    ProtocolConfig,
    apply_overrides,
    formula_audit,
    load_config,
    set_path,
    simulate_teleportation,
)
from qteleport.protocol.config import parse_value
from qteleport.pulses import normalize_mode, overlap
from qteleport.ui import print_report


logger = log.get_logger("harness.cli")

EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

app = typer.Typer(
    name="qteleport",
    help="Atomic-state teleportation through cavity decay.",
    no_args_is_help=True,
    add_completion=False,
)

ConfigOption = Annotated[
    str | None, typer.Option("--config", "-c", help="TOML configuration file")
]
SetOption = Annotated[
    list[str] | None,
    typer.Option("--set", "-s", help="Override a parameter, path=value (repeatable)"),
]
SeedOption = Annotated[int | None, typer.Option("--seed", help="Random seed")]
JobsOption = Annotated[int, typer.Option("--jobs", "-j", min=1, help="Worker processes")]
OutOption = Annotated[str, typer.Option("--out", "-o", help="Output directory")]
VerboseOption = Annotated[
    int, typer.Option("--verbose", "-v", count=True, help="More log output (repeatable)")
]


@contextmanager
def exit_codes() -> Iterator[None]:
    """Map package errors to exit codes, message on stderr."""
    try:
        yield
    except ConfigError as e:
        typer.echo(f"Configuration error: {e}", err=True)
        raise typer.Exit(EXIT_CONFIG) from e
    except NumericalGuardError as e:
        typer.echo(f"Numerical guard failed: {e}", err=True)
        raise typer.Exit(EXIT_NUMERICAL) from e
    except QTeleportError as e:
        typer.echo(f"Invalid parameters: {e}", err=True)
        raise typer.Exit(EXIT_CONFIG) from e


def build_config(
    config: str | None,
    overrides: list[str] | None,
    seed: int | None,
    **extra: object,
) -> ProtocolConfig:
    """Load the file, apply --set overrides, then the command's own options."""
    result = apply_overrides(load_config(config), overrides or [])
    if seed is not None:
        result = set_path(result, "seed", seed)
    for path, value in extra.items():
        if value is not None:
            result = set_path(result, path, value)
    return result


@app.command()
def pulses(
    config: ConfigOption = None,
    set_: SetOption = None,
    seed: SeedOption = None,
    out: OutOption = ".",
    verbose: VerboseOption = 0,
) -> None:
    """Write the photon modes and drive pulses, print the branch-mode overlap."""
    log.configure(verbose)
    with exit_codes():
        cfg = build_config(config, set_, seed)
        recorder = ManifestRecorder("pulses", cfg, out)
        modes = PhotonModes.from_config(cfg)
        cg = cfg.system.cg
        drives = {"E1": cfg.pulses.alice_pulse(cg), "E2": cfg.pulses.bob_pulse(cg)}
        curves = {"f_A0": modes.a0, "f_A1": modes.a1, "f_B": modes.b}
        for name, mode in curves.items():
            write_mode_csv(recorder.path(f"{name}.csv"), mode, name)
        for name, drive in drives.items():
            write_mode_csv(recorder.path(f"drive_{name}.csv"), drive, name)
        plot_pulses(curves, drives, recorder.path("pulses.svg"))
        one_minus_delta = overlap(normalize_mode(modes.a0), normalize_mode(modes.a1))
        recorder.extra = {"one_minus_delta": one_minus_delta}
        recorder.finish()
    typer.echo(f"one_minus_delta = {one_minus_delta:.12g}")


@app.command()
def teleport(
    config: ConfigOption = None,
    set_: SetOption = None,
    seed: SeedOption = None,
    out: OutOption = ".",
    mode: Annotated[
        str | None,
        typer.Option("--mode", "-m", help="analytic or trajectory"),
    ] = None,
    n: Annotated[
        int | None, typer.Option("--n", min=1, help="Trajectory samples")
    ] = None,
    verbose: VerboseOption = 0,
) -> None:
    """Run the protocol once and report outcome, success probability and fidelity."""
    log.configure(verbose)
    with exit_codes():
        cfg = build_config(config, set_, seed, mode=mode, n_samples=n)
        recorder = ManifestRecorder("teleport", cfg, out)
        run = simulate_teleportation(cfg)
        report = run.report
        recorder.path("report.json").write_text(
            report.model_dump_json(indent=2), encoding="utf-8"
        )
        write_patterns_csv(recorder.path("patterns.csv"), report)
        if run.ensembles is not None:
            alice, bob = run.ensembles
            write_jumps_csv(recorder.path("jumps_alice.csv"), alice)
            write_jumps_csv(recorder.path("jumps_bob.csv"), bob)
        recorder.finish()
    print_report(report)
    if not report.succeeded:
        raise typer.Exit(EXIT_FAILURE)


@app.command()
def sweep(
    config: ConfigOption = None,
    set_: SetOption = None,
    seed: SeedOption = None,
    jobs: JobsOption = 1,
    out: OutOption = ".",
    param: Annotated[
        str | None, typer.Option("--param", "-p", help="Dotted parameter path")
    ] = None,
    values: Annotated[
        str | None, typer.Option("--values", help="Comma-separated values")
    ] = None,
    range_: Annotated[
        str | None, typer.Option("--range", help="start:stop:num, endpoints included")
    ] = None,
    replications: Annotated[
        int | None, typer.Option("--replications", "-r", min=1, help="Runs per value")
    ] = None,
    verbose: VerboseOption = 0,
) -> None:
    """Vary one parameter and tabulate fidelity, success probability and overlap."""
    log.configure(verbose)
    with exit_codes():
        cfg = build_config(config, set_, seed)
        spec = sweep_spec(config, param, values, range_, replications)
        recorder = ManifestRecorder("sweep", cfg, out)
        recorder.extra = {"sweep": spec.model_dump(mode="json"), "jobs": jobs}
        rows = run_sweep(cfg, spec, jobs)
        write_sweep_csv(recorder.path(spec.output), spec, rows)
        xs, series = sweep_series(spec, rows)
        plot_sweep(spec.param, xs, series, recorder.path("sweep.svg"))
        recorder.finish()
    typer.echo(f"{len(rows)} sweep points written to {spec.output}")


def sweep_spec(
    config: str | None,
    param: str | None,
    values: str | None,
    range_: str | None,
    replications: int | None,
) -> SweepSpec:
    """Sweep from the `[sweep]` section, updated by command line options.

    Raises:
        ConfigError: If no parameter or no values are given
    """
    base = SweepSpec.from_file(config) if config else None
    data = base.model_dump() if base else {}
    if param is not None:
        data["param"] = param
    if values is not None:
        data["values"] = [parse_value(v.strip()) for v in values.split(",") if v.strip()]
    elif range_ is not None:
        data["values"] = parse_range(range_)
    if replications is not None:
        data["replications"] = replications
    if "param" not in data or not data.get("values"):
        msg = "A sweep needs --param and --values or --range (or a [sweep] section)"
        raise ConfigError(msg)
    return SweepSpec.parse(data)


@app.command()
def audit(
    config: ConfigOption = None,
    set_: SetOption = None,
    seed: SeedOption = None,
    jobs: JobsOption = 1,
    out: OutOption = ".",
    verbose: VerboseOption = 0,
) -> None:
    """Compare the closed-form fidelity with the two-photon oracle on a grid."""
    log.configure(verbose)
    with exit_codes():
        cfg = build_config(config, set_, seed)
        recorder = ManifestRecorder("audit", cfg, out)
        table = formula_audit(detection=cfg.detection, jobs=jobs)
        write_audit_csv(recorder.path("audit.csv"), table)
        recorder.extra = {
            "max_deviation": table.max_deviation,
            "points": len(table),
            "jobs": jobs,
        }
        recorder.finish()
    typer.echo(f"max_deviation = {table.max_deviation:.12g}")


if __name__ == "__main__":
    app()
