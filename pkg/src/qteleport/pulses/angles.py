"""Clebsch-Gordan tables and mixing-angle tracks."""

from __future__ import annotations

from dataclasses import dataclass
import math
from typing import TYPE_CHECKING, Literal

import numpy as np
from pydantic import ConfigDict, field_validator
from schemez import Schema

from qteleport.exceptions import PulseError
from qteleport.type_utils import frozen_array


if TYPE_CHECKING:
    from qteleport.pulses.grid import DrivePulse, TimeGrid
    from qteleport.type_utils import RealArray


UNIT_TOL = 1e-12


class CgTable(Schema):
    """Dimensionless Clebsch-Gordan factors of the drive and cavity transitions."""

    model_config = ConfigDict(frozen=True)

    c_omega0: float = math.sqrt(1 / 3)
    """Drive g0 -> e0 (Alice, branch 0)."""

    c_omega1: float = math.sqrt(1 / 2)
    """Drive g1 -> e1 (Alice, branch 1)."""

    c_omega2: float = math.sqrt(3 / 2)
    """Drive g -> e (Bob)."""

    c_g1: float = 1.0
    """Cavity coupling of atom 1."""

    c_g2: float = 1.0
    """Cavity coupling of atom 2."""

    @field_validator("*")
    @classmethod
    def _nonzero(cls, value: float) -> float:
        if value == 0:
            msg = "Clebsch-Gordan coefficients must be nonzero"
            raise ValueError(msg)
        return value

    @property
    def matched_ratio(self) -> float:
        """Bob/Alice drive ratio E2/E1 making Bob's photon match branch 1."""
        return math.sqrt(2) * self.c_g2 * self.c_omega1 / (self.c_g1 * self.c_omega2)

    @property
    def balanced_amplitude(self) -> float:
        """Drive peak at which Omega0 equals g1."""
        return self.c_g1 / self.c_omega0


@dataclass(frozen=True)
class MixingAngleTrack:
    """Samples of sin(theta) and cos(theta) on a grid."""

    grid: TimeGrid
    sin: RealArray
    cos: RealArray
    label: str = ""

    def __post_init__(self) -> None:
        sin = frozen_array(self.sin, dtype=np.float64)
        cos = frozen_array(self.cos, dtype=np.float64)
        if np.abs(sin**2 + cos**2 - 1.0).max(initial=0.0) > UNIT_TOL:
            msg = f"Track {self.label!r}: sin^2 + cos^2 deviates from 1"
            raise PulseError(msg)
        if (sin < 0).any() or (sin >= 1).any():
            msg = f"Track {self.label!r}: sin(theta) must lie in [0, 1)"
            raise PulseError(msg)
        object.__setattr__(self, "sin", sin)
        object.__setattr__(self, "cos", cos)

    @property
    def theta(self) -> RealArray:
        return np.arctan2(self.sin, self.cos)

    def theta_at(self, t: float) -> float:
        return float(np.interp(t, self.grid.times, self.theta))


def _track(
    grid: TimeGrid, omega: RealArray, coupling: float, label: str
) -> MixingAngleTrack:
    root = np.sqrt(coupling**2 + omega**2)
    return MixingAngleTrack(grid, omega / root, coupling / root, label)


def mixing_angle_alice(
    pulse: DrivePulse,
    cg: CgTable,
    branch: Literal[0, 1],
    spatial_mode: float = 1.0,
) -> MixingAngleTrack:
    """Mixing angle of one of Alice's Lambda branches.

    sin(theta_i) = Omega_i / sqrt(g1^2 + Omega_i^2) with Omega_i = C_Omega_i s E(t)
    and g1 = C_g1 s. The spatial-mode value s cancels.
    """
    if branch not in (0, 1):
        msg = f"Alice has branches 0 and 1, got {branch}"
        raise PulseError(msg)
    c_omega = cg.c_omega0 if branch == 0 else cg.c_omega1
    omega = spatial_mode * c_omega * pulse.envelope
    return _track(pulse.grid, omega, spatial_mode * cg.c_g1, f"theta{branch}")


def mixing_angle_bob(
    pulse: DrivePulse,
    cg: CgTable,
    spatial_mode: float = 1.0,
) -> MixingAngleTrack:
    """Bob's mixing angle, sin(theta2) = Omega2 / sqrt(2 g2^2 + Omega2^2)."""
    omega = spatial_mode * cg.c_omega2 * pulse.envelope
    return _track(pulse.grid, omega, math.sqrt(2) * spatial_mode * cg.c_g2, "theta2")
