"""Two-pulse preparation of atom 1 in a|g0> + b|g1>."""

from __future__ import annotations

import cmath
import math

import numpy as np
from scipy import linalg

from qteleport.atoms.adiabatic import check_amplitudes
from qteleport.atoms.levels import ALICE, BOB
from qteleport.core import StateVector
from qteleport.exceptions import NormalizationError
from qteleport.log import get_logger


logger = get_logger("atoms.preparation")

RESIDUAL_TOL = 1e-12

# local preparation basis
_G0, _G1, _AUX = 0, 1, 2


def _coupling(lower: int, upper: int, phase: float = 0.0) -> np.ndarray:
    sigma = np.zeros((3, 3), dtype=np.complex128)
    sigma[upper, lower] = cmath.exp(1j * phase)
    sigma[lower, upper] = cmath.exp(-1j * phase)
    return sigma


def preparation_pulses(a: complex, b: complex) -> tuple[np.ndarray, np.ndarray]:
    """Unitaries of the rotation g0 -> aux and the Raman pi pulse aux <-> g1."""
    area = math.acos(min(abs(a), 1.0))
    phase = cmath.phase(b) - cmath.phase(a) + math.pi
    rotation = linalg.expm(-1j * area * _coupling(_G0, _AUX, phase))
    pi_pulse = linalg.expm(-1j * (math.pi / 2) * _coupling(_AUX, _G1))
    return rotation, pi_pulse


def prepare_initial_state(a: complex, b: complex, with_loss: bool = False) -> StateVector:
    """Atom-1 state a|g0> + b|g1> reached from |g0>.

    The first pulse rotates |g0> into |a| |g0> + |b| e^{i phi} |aux>, the second
    is a pi pulse moving the auxiliary population onto |g1>.

    Raises:
        NormalizationError: If |a|^2 + |b|^2 != 1, or population is left in the
            auxiliary level
    """
    check_amplitudes(a, b)
    rotation, pi_pulse = preparation_pulses(a, b)
    start = np.zeros(3, dtype=np.complex128)
    start[_G0] = 1.0
    local = pi_pulse @ rotation @ start
    local *= cmath.exp(1j * cmath.phase(a))
    residual = abs(local[_AUX]) ** 2
    if residual > RESIDUAL_TOL:
        msg = f"Preparation leaves {residual:.3e} in the auxiliary level"
        raise NormalizationError(msg)
    logger.debug("Prepared atom 1 with auxiliary residual %.3e", residual)
    space = ALICE.atom_space(with_loss)
    amps = np.zeros(space.dim, dtype=np.complex128)
    amps[space.index({ALICE.atom: "g0"})] = local[_G0]
    amps[space.index({ALICE.atom: "g1"})] = local[_G1]
    return StateVector.from_amplitudes(space, amps)


def alice_initial_state(a: complex, b: complex, with_loss: bool = False) -> StateVector:
    """(a|g0> + b|g1>) with cavity A empty."""
    atom = prepare_initial_state(a, b, with_loss)
    space = ALICE.space(with_loss)
    vacuum = np.zeros(space.dim // atom.space.dim, dtype=np.complex128)
    vacuum[0] = 1.0
    return StateVector(space, np.kron(atom.amplitudes, vacuum))


def bob_initial_state(with_loss: bool = False) -> StateVector:
    """|g>_2 with cavity B empty."""
    return StateVector.basis(BOB.space(with_loss), atom2="g", cavB_L=0, cavB_R=0)
