"""Photon temporal modes, overlaps and the mode mismatch."""

from __future__ import annotations

from dataclasses import dataclass
import math
from typing import TYPE_CHECKING

import numpy as np
from scipy import integrate

from qteleport.exceptions import ModeNormalizationError, PulseError
from qteleport.type_utils import frozen_array


if TYPE_CHECKING:
    from qteleport.pulses.angles import MixingAngleTrack
    from qteleport.pulses.grid import TimeGrid
    from qteleport.type_utils import Polarization, RealArray


NORMALIZATION_TOL = 1e-8
MIN_EMISSION = 1e-6


def integrate_on(grid: TimeGrid, values: RealArray) -> float:
    """Composite Simpson quadrature over the whole grid."""
    return float(integrate.simpson(values, x=grid.times))


def cumulative_on(grid: TimeGrid, values: RealArray) -> RealArray:
    """Running Simpson integral, starting at zero."""
    return integrate.cumulative_simpson(values, x=grid.times, initial=0.0)


@dataclass(frozen=True)
class PhotonMode:
    """Real temporal envelope f(t) of one polarized photon."""

    grid: TimeGrid
    samples: RealArray
    polarization: Polarization = "L"
    normalized: bool = False

    def __post_init__(self) -> None:
        samples = frozen_array(self.samples, dtype=np.float64)
        if samples.shape != (self.grid.n_steps + 1,):
            msg = f"Mode has {samples.size} samples, grid needs {self.grid.n_steps + 1}"
            raise PulseError(msg)
        object.__setattr__(self, "samples", samples)
        if self.normalized:
            error = abs(self.emission_probability - 1.0)
            if error > NORMALIZATION_TOL:
                msg = f"Mode flagged normalized is off by {error:.3e}"
                raise ModeNormalizationError(msg)

    @property
    def emission_probability(self) -> float:
        """Integral of f(t)^2 over the grid."""
        return integrate_on(self.grid, self.samples**2)

    def scaled(self, factor: float) -> PhotonMode:
        return PhotonMode(self.grid, self.samples * factor, self.polarization)


def photon_pulse_shape(
    track: MixingAngleTrack,
    kappa: float = 1.0,
    polarization: Polarization = "L",
) -> PhotonMode:
    """Raw emitted mode sqrt(kappa) sin(theta) exp(-kappa/2 int_0^t sin^2(theta)).

    Raises:
        PulseError: If kappa is not positive
    """
    if kappa <= 0:
        msg = f"kappa must be positive, got {kappa}"
        raise PulseError(msg)
    exponent = cumulative_on(track.grid, track.sin**2)
    samples = math.sqrt(kappa) * track.sin * np.exp(-0.5 * kappa * exponent)
    return PhotonMode(track.grid, samples, polarization)


def normalize_mode(mode: PhotonMode) -> PhotonMode:
    """Rescale a mode to unit norm.

    Raises:
        ModeNormalizationError: If the mode carries no more than 1e-6 probability
    """
    p_emit = mode.emission_probability
    if p_emit <= MIN_EMISSION:
        msg = f"Mode carries only {p_emit:.3e} emission probability"
        raise ModeNormalizationError(msg)
    return PhotonMode(
        mode.grid, mode.samples / math.sqrt(p_emit), mode.polarization, normalized=True
    )


def overlap(f: PhotonMode, g: PhotonMode) -> float:
    """Integral of f(t) g(t) for two normalized modes.

    Raises:
        GridMismatchError: If the modes are sampled on different grids
        PulseError: If a mode is not normalized
    """
    f.grid.require_same(g.grid)
    if not (f.normalized and g.normalized):
        msg = "overlap() expects normalized modes"
        raise PulseError(msg)
    return integrate_on(f.grid, f.samples * g.samples)


def mode_mismatch(f_a0: PhotonMode, f_a1: PhotonMode) -> float:
    """delta = 1 - overlap of Alice's two branch modes."""
    return 1.0 - overlap(f_a0, f_a1)


def l2_distance(f: PhotonMode, g: PhotonMode) -> float:
    """sqrt(int (f - g)^2) for modes on the same grid."""
    f.grid.require_same(g.grid)
    return math.sqrt(max(integrate_on(f.grid, (f.samples - g.samples) ** 2), 0.0))


def spatial_mode_value(x: float, wavelength: float) -> float:
    """Standing-wave amplitude |cos(2 pi x / lambda)| at position x."""
    return abs(math.cos(2.0 * math.pi * x / wavelength))
