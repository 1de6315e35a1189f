"""Drive pulses, mixing angles and emitted photon modes."""

from __future__ import annotations

from qteleport.pulses.grid import DrivePulse, TimeGrid, gaussian_pulse
from qteleport.pulses.angles import (
    CgTable,
    MixingAngleTrack,
    mixing_angle_alice,
    mixing_angle_bob,
)
from qteleport.pulses.modes import (
    PhotonMode,
    l2_distance,
    mode_mismatch,
    normalize_mode,
    overlap,
    photon_pulse_shape,
    spatial_mode_value,
)

__all__ = [
    "CgTable",
    "DrivePulse",
    "MixingAngleTrack",
    "PhotonMode",
    "TimeGrid",
    "gaussian_pulse",
    "l2_distance",
    "mixing_angle_alice",
    "mixing_angle_bob",
    "mode_mismatch",
    "normalize_mode",
    "overlap",
    "photon_pulse_shape",
    "spatial_mode_value",
]
