"""Driven open systems of the form H(t) = E(t) D + C with jump operators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from qteleport.core import Operator
from qteleport.exceptions import SpaceMismatchError
from qteleport.type_utils import frozen_array, is_cavity_channel, is_square_matrix


if TYPE_CHECKING:
    from qteleport.core import HilbertSpace
    from qteleport.pulses import DrivePulse
    from qteleport.type_utils import Channel, ComplexArray


@dataclass(frozen=True)
class JumpOperator:
    """A collapse operator, already scaled by the square root of its rate."""

    channel: Channel
    matrix: ComplexArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", frozen_array(self.matrix))


@dataclass(frozen=True)
class DrivenSystem:
    """Time-dependent Hamiltonian E(t) * drive + static plus decay channels."""

    space: HilbertSpace
    drive: ComplexArray
    static: ComplexArray
    envelope: DrivePulse
    jumps: tuple[JumpOperator, ...] = ()
    two_photon_states: tuple[int, ...] = ()
    """Flat indices of basis states with both cavity modes occupied."""

    def __post_init__(self) -> None:
        for name in ("drive", "static"):
            matrix = frozen_array(getattr(self, name))
            if not is_square_matrix(matrix, self.space.dim):
                msg = f"{name} matrix does not fit space {self.space}"
                raise SpaceMismatchError(msg)
            object.__setattr__(self, name, matrix)

    @cached_property
    def decay(self) -> ComplexArray:
        """K = 1/2 sum J^dagger J."""
        total = np.zeros((self.space.dim, self.space.dim), dtype=np.complex128)
        for jump in self.jumps:
            total += 0.5 * jump.matrix.conj().T @ jump.matrix
        return total

    @property
    def effective_static(self) -> ComplexArray:
        """Static part of the non-hermitian no-jump generator, C - iK."""
        return self.static - 1j * self.decay

    @property
    def cavity_channels(self) -> tuple[Channel, ...]:
        channels = (j.channel for j in self.jumps if is_cavity_channel(j.channel))
        return tuple(dict.fromkeys(channels))

    def at(self, value: float) -> Operator:
        """Hermitian Hamiltonian for a given envelope value."""
        return Operator(self.space, value * self.drive + self.static, hermitian=True)

    def hamiltonian(self, t: float) -> Operator:
        return self.at(float(self.envelope.value_at(t)))

    def generator_bound(self) -> float:
        """Sup over the pulse of the infinity norm of the no-jump generator.

        The norm is convex in the envelope value, so the extremes of [0, max E]
        bound every intermediate step.
        """
        static = self.effective_static
        peak = self.envelope.peak * self.drive + static
        return float(max(np.linalg.norm(static, np.inf), np.linalg.norm(peak, np.inf)))

    def is_stationary(self, amplitudes: ComplexArray, tol: float = 1e-12) -> bool:
        """Whether a state is annihilated by both the drive and the static generator."""
        return bool(
            np.linalg.norm(self.drive @ amplitudes) < tol
            and np.linalg.norm(self.effective_static @ amplitudes) < tol
        )
