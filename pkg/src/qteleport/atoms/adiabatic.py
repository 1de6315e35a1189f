"""Analytic adiabatic states and their phase diagnostics."""

from __future__ import annotations

from dataclasses import dataclass
import math
from typing import TYPE_CHECKING

import numpy as np
from scipy import integrate

from qteleport.atoms.hamiltonians import alice_parts, bob_parts
from qteleport.atoms.levels import ALICE, BOB
from qteleport.core import StateVector
from qteleport.exceptions import GridMismatchError, NormalizationError
from qteleport.log import get_logger
from qteleport.pulses import mixing_angle_alice, mixing_angle_bob
from qteleport.type_utils import frozen_array


if TYPE_CHECKING:
    from qteleport.atoms.levels import SystemParams
    from qteleport.core import HilbertSpace
    from qteleport.pulses import DrivePulse, MixingAngleTrack, TimeGrid
    from qteleport.type_utils import ComplexArray, RealArray


logger = get_logger("atoms.adiabatic")

AMPLITUDE_TOL = 1e-10
PHASE_TOL = 1e-6


def check_amplitudes(a: complex, b: complex) -> None:
    """Raise NormalizationError unless |a|^2 + |b|^2 = 1 within 1e-10."""
    error = abs(abs(a) ** 2 + abs(b) ** 2 - 1.0)
    if error > AMPLITUDE_TOL:
        msg = f"Input amplitudes ({a}, {b}) are off normalization by {error:.3e}"
        raise NormalizationError(msg)


def _alice_columns(space: HilbertSpace) -> tuple[int, int, int, int]:
    return (
        space.index({"atom1": "g0", "cavA_L": 0, "cavA_R": 0}),
        space.index({"atom1": "g1", "cavA_L": 0, "cavA_R": 0}),
        space.index({"atom1": "r", "cavA_L": 1, "cavA_R": 0}),
        space.index({"atom1": "r", "cavA_L": 0, "cavA_R": 1}),
    )


def _bob_columns(space: HilbertSpace) -> tuple[int, int, int]:
    return (
        space.index({"atom2": "g", "cavB_L": 0, "cavB_R": 0}),
        space.index({"atom2": "0", "cavB_L": 0, "cavB_R": 1}),
        space.index({"atom2": "1", "cavB_L": 1, "cavB_R": 0}),
    )


def _alice_amplitudes(
    space: HilbertSpace,
    a: complex,
    b: complex,
    sin0: RealArray,
    cos0: RealArray,
    sin1: RealArray,
    cos1: RealArray,
) -> ComplexArray:
    """Rows of a cos0 |g0,0> + b cos1 |g1,0> + |r> (a sin0 |L> + b sin1 |R>)."""
    g0, g1, r_left, r_right = _alice_columns(space)
    out = np.zeros((np.size(sin0), space.dim), dtype=np.complex128)
    out[:, g0] = a * cos0
    out[:, g1] = b * cos1
    out[:, r_left] = a * sin0
    out[:, r_right] = b * sin1
    return out


def _bob_amplitudes(
    space: HilbertSpace,
    sin2: RealArray,
    cos2: RealArray,
) -> ComplexArray:
    g, zero_right, one_left = _bob_columns(space)
    out = np.zeros((np.size(sin2), space.dim), dtype=np.complex128)
    out[:, g] = cos2
    out[:, zero_right] = sin2 / math.sqrt(2)
    out[:, one_left] = sin2 / math.sqrt(2)
    return out


def alice_state_at_angles(
    a: complex,
    b: complex,
    theta0: float,
    theta1: float,
    with_loss: bool = False,
) -> StateVector:
    """Alice's adiabatic state for given mixing angles.

    Raises:
        NormalizationError: If |a|^2 + |b|^2 != 1
    """
    check_amplitudes(a, b)
    space = ALICE.space(with_loss)
    amps = _alice_amplitudes(
        space,
        a,
        b,
        np.array([math.sin(theta0)]),
        np.array([math.cos(theta0)]),
        np.array([math.sin(theta1)]),
        np.array([math.cos(theta1)]),
    )
    return StateVector.from_amplitudes(space, amps[0])


def bob_state_at_angle(theta2: float, with_loss: bool = False) -> StateVector:
    """cos(theta2) |g>|0> + sin(theta2) (|0>|R> + |1>|L>) / sqrt2."""
    space = BOB.space(with_loss)
    amps = _bob_amplitudes(
        space, np.array([math.sin(theta2)]), np.array([math.cos(theta2)])
    )
    return StateVector(space, amps[0])


def adiabatic_state_alice(
    a: complex,
    b: complex,
    track0: MixingAngleTrack,
    track1: MixingAngleTrack,
    t: float,
    with_loss: bool = False,
) -> StateVector:
    """State of atom 1 and cavity A at time t under adiabatic following.

    Args:
        a: Amplitude of |g0>
        b: Amplitude of |g1>
        track0: Mixing angle of branch 0
        track1: Mixing angle of branch 1
        t: Time on the tracks' grid (interpolated between samples)
        with_loss: Include the lost level in the atom factor

    Raises:
        NormalizationError: If |a|^2 + |b|^2 != 1
        GridMismatchError: If the tracks use different grids
    """
    track0.grid.require_same(track1.grid)
    return alice_state_at_angles(
        a, b, track0.theta_at(t), track1.theta_at(t), with_loss
    )


def adiabatic_state_bob(
    track2: MixingAngleTrack,
    t: float,
    with_loss: bool = False,
) -> StateVector:
    """State of atom 2 and cavity B at time t under adiabatic following."""
    return bob_state_at_angle(track2.theta_at(t), with_loss)


@dataclass(frozen=True)
class DarkStateTrack:
    """Sampled adiabatic state and its energy expectation on a grid."""

    grid: TimeGrid
    space: HilbertSpace
    states: ComplexArray
    energies: RealArray

    def __post_init__(self) -> None:
        states = frozen_array(self.states)
        energies = frozen_array(self.energies, dtype=np.float64)
        n = self.grid.n_steps + 1
        if states.shape != (n, self.space.dim) or energies.shape != (n,):
            msg = f"Track arrays do not match {n} grid samples on {self.space}"
            raise GridMismatchError(msg)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "energies", energies)

    def state(self, index: int) -> StateVector:
        return StateVector(self.space, self.states[index])


def _energies(
    states: ComplexArray,
    envelope: RealArray,
    drive: ComplexArray,
    static: ComplexArray,
) -> RealArray:
    """<psi(t)| E(t) D + C |psi(t)> per sample."""
    drive_part = np.einsum("ti,ij,tj->t", states.conj(), drive, states)
    static_part = np.einsum("ti,ij,tj->t", states.conj(), static, states)
    return np.real(envelope * drive_part + static_part)


def dark_state_track_alice(
    params: SystemParams,
    pulse: DrivePulse,
    a: complex,
    b: complex,
) -> DarkStateTrack:
    check_amplitudes(a, b)
    s = params.spatial_mode
    track0 = mixing_angle_alice(pulse, params.cg, 0, s)
    track1 = mixing_angle_alice(pulse, params.cg, 1, s)
    space, drive, static = alice_parts(params)
    states = _alice_amplitudes(
        space, a, b, track0.sin, track0.cos, track1.sin, track1.cos
    )
    energies = _energies(states, pulse.envelope, drive, static)
    return DarkStateTrack(pulse.grid, space, states, energies)


def dark_state_track_bob(params: SystemParams, pulse: DrivePulse) -> DarkStateTrack:
    track2 = mixing_angle_bob(pulse, params.cg, params.spatial_mode)
    space, drive, static = bob_parts(params)
    states = _bob_amplitudes(space, track2.sin, track2.cos)
    energies = _energies(states, pulse.envelope, drive, static)
    return DarkStateTrack(pulse.grid, space, states, energies)


def geometric_phase(states: ComplexArray, times: RealArray) -> float:
    """i * integral of <D(t)|dD/dt> dt for a sampled state path."""
    derivative = np.gradient(states, times, axis=0)
    connection = np.einsum("ti,ti->t", states.conj(), derivative)
    return float(np.real(1j * integrate.simpson(connection, x=times)))


@dataclass(frozen=True)
class PhaseCheck:
    berry: float
    dynamical: float

    def vanishes(self, tol: float = PHASE_TOL) -> bool:
        return abs(self.berry) < tol and abs(self.dynamical) < tol


def phase_check(track: DarkStateTrack) -> PhaseCheck:
    """Geometric and dynamical phase accumulated along a dark-state track.

    Both vanish for the real dark states of the two nodes.
    """
    times = track.grid.times
    berry = geometric_phase(track.states, times)
    dynamical = -float(integrate.simpson(track.energies, x=times))
    logger.debug("Phases along track: berry=%.3e dynamical=%.3e", berry, dynamical)
    return PhaseCheck(berry, dynamical)
