"""Minimal SVG line charts."""

from __future__ import annotations

from typing import TYPE_CHECKING

import matplotlib as mpl
from matplotlib.figure import Figure
from upath import UPath

from qteleport.log import get_logger


if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence
    import os

    from qteleport.pulses import DrivePulse, PhotonMode


logger = get_logger("harness.plots")

SVG_SALT = "qteleport"


def save_svg(fig: Figure, path: str | os.PathLike[str]) -> UPath:
    """Write a figure as reproducible SVG (fixed ids, no date)."""
    target = UPath(path)
    with mpl.rc_context({"svg.hashsalt": SVG_SALT}), target.open("wb") as f:
        fig.savefig(f, format="svg", metadata={"Date": None})
    logger.info("Wrote %s", target)
    return target


def plot_pulses(
    modes: Mapping[str, PhotonMode],
    drives: Mapping[str, DrivePulse],
    path: str | os.PathLike[str],
) -> UPath:
    """Photon modes on top, drive envelopes below."""
    fig = Figure(figsize=(6.4, 6.0))
    top, bottom = fig.subplots(2, 1, sharex=True)
    for (name, mode), style in zip(modes.items(), ("-", "--", ":")):
        top.plot(mode.grid.times, mode.samples, style, label=name)
    top.set_ylabel("f(t)")
    top.legend()
    for name, drive in drives.items():
        bottom.plot(drive.grid.times, drive.envelope, label=name)
    bottom.set_xlabel("t [1/kappa]")
    bottom.set_ylabel("E(t)")
    bottom.legend()
    fig.tight_layout()
    return save_svg(fig, path)


def plot_sweep(
    parameter: str,
    values: Sequence[float],
    series: Mapping[str, Sequence[float]],
    path: str | os.PathLike[str],
) -> UPath:
    fig = Figure(figsize=(6.4, 4.0))
    ax = fig.subplots()
    for name, ys in series.items():
        ax.plot(values, ys, "o-", label=name)
    ax.set_xlabel(parameter)
    ax.legend()
    fig.tight_layout()
    return save_svg(fig, path)
