"""Time grids and drive envelopes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

import numpy as np
from pydantic import ConfigDict, Field
from schemez import Schema

from qteleport.exceptions import GridMismatchError, PulseBoundaryError, PulseError
from qteleport.type_utils import frozen_array


if TYPE_CHECKING:
    from qteleport.type_utils import RealArray


BOUNDARY_FRACTION = 1e-3

GaussianConvention = Literal["e-fold", "sigma"]


class TimeGrid(Schema):
    """Uniform sampling of [0, duration] in units of 1/kappa."""

    model_config = ConfigDict(frozen=True)

    duration: float = Field(default=40.0, gt=0)
    """Total time T."""

    n_steps: int = Field(default=4000, ge=2)
    """Number of intervals; the grid holds n_steps + 1 samples."""

    @property
    def dt(self) -> float:
        return self.duration / self.n_steps

    @property
    def times(self) -> RealArray:
        return np.linspace(0.0, self.duration, self.n_steps + 1)

    def refined(self, factor: int = 2) -> TimeGrid:
        return TimeGrid(duration=self.duration, n_steps=self.n_steps * factor)

    def require_same(self, other: TimeGrid) -> None:
        if other != self:
            msg = f"Grid mismatch: {self!r} vs {other!r}"
            raise GridMismatchError(msg)


@dataclass(frozen=True)
class DrivePulse:
    """Sampled slowly-varying drive envelope E(t) >= 0."""

    grid: TimeGrid
    envelope: RealArray
    shape: str = "custom"
    peak_time: float | None = None
    width: float | None = None

    def __post_init__(self) -> None:
        envelope = frozen_array(self.envelope, dtype=np.float64)
        if envelope.shape != (self.grid.n_steps + 1,):
            expected = self.grid.n_steps + 1
            msg = f"Envelope has {envelope.size} samples, grid needs {expected}"
            raise GridMismatchError(msg)
        if (envelope < 0).any():
            msg = "Drive envelope must be non-negative"
            raise PulseError(msg)
        object.__setattr__(self, "envelope", envelope)
        limit = BOUNDARY_FRACTION * self.peak
        if max(envelope[0], envelope[-1]) > limit:
            msg = (
                f"{self.shape} pulse is still on at the grid edges "
                f"({max(envelope[0], envelope[-1]):.3e} > {limit:.3e}); "
                "use a longer duration or a narrower pulse"
            )
            raise PulseBoundaryError(msg)

    @property
    def peak(self) -> float:
        return float(self.envelope.max())

    def value_at(self, t: float | RealArray) -> float | RealArray:
        """Linear interpolation between samples."""
        return np.interp(t, self.grid.times, self.envelope)

    def scaled(self, factor: float) -> DrivePulse:
        return DrivePulse(
            self.grid, self.envelope * factor, self.shape, self.peak_time, self.width
        )


def gaussian_pulse(
    grid: TimeGrid,
    t_peak: float,
    t_w: float,
    e_max: float,
    convention: GaussianConvention = "e-fold",
) -> DrivePulse:
    """Gaussian envelope peaking at t_peak.

    Args:
        grid: Sampling grid
        t_peak: Peak time, inside (0, T)
        t_w: Width; the 1/e half-width for "e-fold", the standard deviation for
            "sigma"
        e_max: Peak value
        convention: How t_w is read

    Raises:
        PulseError: If the parameters are out of range
        PulseBoundaryError: If the pulse is not off at the grid edges
    """
    if not 0.0 < t_peak < grid.duration:
        msg = f"Peak time {t_peak} outside (0, {grid.duration})"
        raise PulseError(msg)
    if t_w <= 0 or e_max <= 0:
        msg = f"Width and amplitude must be positive, got t_w={t_w}, e_max={e_max}"
        raise PulseError(msg)
    scale = t_w**2 if convention == "e-fold" else 2.0 * t_w**2
    envelope = e_max * np.exp(-((grid.times - t_peak) ** 2) / scale)
    return DrivePulse(grid, envelope, f"gaussian/{convention}", t_peak, t_w)
