"""Two-photon states entangled with a companion system."""

from __future__ import annotations

from dataclasses import dataclass
import math
from typing import TYPE_CHECKING, Literal

import numpy as np

from qteleport.core import HilbertSpace
from qteleport.exceptions import NormalizationError, PhotonNumberError
from qteleport.optics.modes import (
    ARM_A,
    ARM_B,
    ModeLayout,
    embedding_from_gram,
    gram_matrix,
    photon_vector,
)
from qteleport.type_utils import frozen_array


if TYPE_CHECKING:
    from qteleport.pulses import PhotonMode
    from qteleport.type_utils import ComplexArray, RealArray


NORM_TOL = 1e-10
BOB_QUBIT = HilbertSpace.single("atom2", ("0", "1"))
NO_COMPANION = HilbertSpace.single("none", 1)

BellState = Literal["Psi+", "Psi-", "Phi+", "Phi-"]


@dataclass(frozen=True)
class TwoPhotonState:
    """Symmetric amplitudes psi[m, n, q] over two photon modes and a companion basis.

    The state is (1/sqrt2) sum_{m,n,q} psi[m,n,q] a_m^dag a_n^dag |vac> |q>, so
    sum |psi|^2 = 1 and exactly two photons are present by construction.
    """

    layout: ModeLayout
    companion: HilbertSpace
    amplitudes: ComplexArray

    def __post_init__(self) -> None:
        amps = frozen_array(self.amplitudes)
        expected = (self.layout.dim, self.layout.dim, self.companion.dim)
        if amps.shape != expected:
            msg = f"Two-photon amplitudes of shape {amps.shape}, expected {expected}"
            raise PhotonNumberError(msg)
        if np.abs(amps - amps.transpose(1, 0, 2)).max() > NORM_TOL:
            msg = "Two-photon amplitudes must be symmetric in the photon modes"
            raise PhotonNumberError(msg)
        if (error := abs(float(np.sum(np.abs(amps) ** 2)) - 1.0)) > NORM_TOL:
            msg = f"Two-photon state is off normalization by {error:.3e}"
            raise NormalizationError(msg)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_photons(
        cls,
        layout: ModeLayout,
        companion: HilbertSpace,
        first: ComplexArray,
        second: list[ComplexArray],
    ) -> TwoPhotonState:
        """Photon `first` times photon `second[q]` correlated with companion |q>.

        The photons must occupy orthogonal modes; the branches carry their own
        weights.
        """
        columns = [
            (np.outer(first, beta) + np.outer(beta, first)) / math.sqrt(2)
            for beta in second
        ]
        return cls(layout, companion, np.stack(columns, axis=-1))


def teleportation_state_from_gram(
    a: complex,
    b: complex,
    gram: RealArray,
) -> TwoPhotonState:
    """Joint photon state after both passages for given temporal inner products.

    Args:
        a: Amplitude of Alice's L photon (branch 0)
        b: Amplitude of Alice's R photon (branch 1)
        gram: 3x3 inner products of (f_B, f_A1, f_A0)
    """
    tau_b, tau_a1, tau_a0 = embedding_from_gram(gram)
    layout = ModeLayout(len(tau_b))
    alice = a * photon_vector(layout, ARM_A, "L", tau_a0)
    alice = alice + b * photon_vector(layout, ARM_A, "R", tau_a1)
    bob = [
        photon_vector(layout, ARM_B, "R", tau_b) / math.sqrt(2),
        photon_vector(layout, ARM_B, "L", tau_b) / math.sqrt(2),
    ]
    return TwoPhotonState.from_photons(layout, BOB_QUBIT, alice, bob)


def teleportation_state(
    a: complex,
    b: complex,
    f_a0: PhotonMode,
    f_a1: PhotonMode,
    f_b: PhotonMode,
) -> TwoPhotonState:
    """|r>(a L_A f_A0 + b R_A f_A1) (|0> R_B + |1> L_B) f_B / sqrt2, photons only.

    Raises:
        PulseError: If a mode is not normalized
        QuadratureError: If an overlap leaves [-1, 1]
    """
    return teleportation_state_from_gram(a, b, gram_matrix([f_b, f_a1, f_a0]))


def bell_state(kind: BellState) -> TwoPhotonState:
    """Circular-polarization Bell state of the two arms with matched modes."""
    layout = ModeLayout(1)
    tau = np.ones(1)
    left_a = photon_vector(layout, ARM_A, "L", tau)
    right_a = photon_vector(layout, ARM_A, "R", tau)
    left_b = photon_vector(layout, ARM_B, "L", tau)
    right_b = photon_vector(layout, ARM_B, "R", tau)
    sign = 1.0 if kind.endswith("+") else -1.0
    if kind.startswith("Psi"):
        pairs = [(left_a, right_b), (right_a, left_b)]
    else:
        pairs = [(left_a, left_b), (right_a, right_b)]
    amps = np.zeros((layout.dim, layout.dim, 1), dtype=np.complex128)
    for weight, (first, second) in zip((1.0, sign), pairs):
        amps[:, :, 0] += weight * (np.outer(first, second) + np.outer(second, first)) / 2
    return TwoPhotonState(layout, NO_COMPANION, amps)
