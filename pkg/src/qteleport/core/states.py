"""State vectors and density operators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import TYPE_CHECKING

import numpy as np

from qteleport.core.spaces import compose
from qteleport.exceptions import NormalizationError, SpaceError, SpaceMismatchError
from qteleport.type_utils import frozen_array, is_complex_vector


if TYPE_CHECKING:
    from qteleport.core.spaces import HilbertSpace
    from qteleport.type_utils import ComplexArray


NORM_TOL = 1e-12
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10


@dataclass(frozen=True)
class StateVector:
    """Immutable ket over a composite space."""

    space: HilbertSpace
    amplitudes: ComplexArray
    normalized: bool = True

    def __post_init__(self) -> None:
        amps = frozen_array(self.amplitudes)
        if not is_complex_vector(amps, self.space.dim):
            msg = f"Amplitudes of shape {amps.shape} do not fit space {self.space}"
            raise SpaceMismatchError(msg)
        object.__setattr__(self, "amplitudes", amps)
        if self.normalized:
            error = abs(float(np.vdot(amps, amps).real) - 1.0)
            if error > NORM_TOL:
                msg = f"State flagged normalized is off by {error:.3e}"
                raise NormalizationError(msg)

    @classmethod
    def basis(cls, space: HilbertSpace, **labels: str | int) -> StateVector:
        """Basis ket picked by one label per factor."""
        return cls(space, space.basis_vector(**labels))

    @classmethod
    def from_amplitudes(
        cls, space: HilbertSpace, amplitudes: ComplexArray
    ) -> StateVector:
        """Build a state and normalize it.

        Raises:
            NormalizationError: If the amplitudes are all zero
        """
        amps = np.asarray(amplitudes, dtype=np.complex128)
        norm = float(np.linalg.norm(amps))
        if norm == 0.0:
            msg = "Cannot normalize the zero vector"
            raise NormalizationError(msg)
        return cls(space, amps / norm)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def renormalized(self) -> StateVector:
        return StateVector.from_amplitudes(self.space, self.amplitudes)

    def inner(self, other: StateVector) -> complex:
        """<self|other>."""
        if other.space != self.space:
            msg = f"Space mismatch: {self.space} vs {other.space}"
            raise SpaceMismatchError(msg)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: StateVector) -> float:
        """|<self|other>|^2 for normalized states."""
        return abs(self.inner(other)) ** 2

    def population(self, **labels: str | int) -> float:
        return float(abs(self.amplitudes[self.space.index(labels)]) ** 2)

    def to_density(self) -> DensityOperator:
        return DensityOperator.from_state(self)


def tensor(*states: StateVector) -> StateVector:
    """Product state, factors in argument order."""
    if not states:
        msg = "tensor() needs at least one state"
        raise SpaceError(msg)
    space = compose(s.space for s in states)
    amps = reduce(np.kron, (s.amplitudes for s in states))
    return StateVector(space, amps, normalized=all(s.normalized for s in states))


@dataclass(frozen=True)
class DensityOperator:
    """Normalized positive semidefinite operator."""

    space: HilbertSpace
    matrix: ComplexArray

    def __post_init__(self) -> None:
        matrix = frozen_array(self.matrix)
        if matrix.shape != (self.space.dim, self.space.dim):
            msg = f"Matrix shape {matrix.shape} does not fit space {self.space}"
            raise SpaceMismatchError(msg)
        object.__setattr__(self, "matrix", matrix)
        if np.linalg.norm(matrix - matrix.conj().T, np.inf) > NORM_TOL:
            msg = "Density operator is not hermitian"
            raise NormalizationError(msg)
        trace = complex(np.trace(matrix))
        if abs(trace - 1.0) > TRACE_TOL:
            msg = f"Density operator trace is {trace:.12g}, expected 1"
            raise NormalizationError(msg)
        if (lowest := float(np.linalg.eigvalsh(matrix).min())) < -POSITIVITY_TOL:
            msg = f"Density operator has negative eigenvalue {lowest:.3e}"
            raise NormalizationError(msg)

    @classmethod
    def from_state(cls, psi: StateVector) -> DensityOperator:
        amps = psi.amplitudes / psi.norm()
        return cls(psi.space, np.outer(amps, amps.conj()))

    @classmethod
    def from_unnormalized(
        cls, space: HilbertSpace, matrix: ComplexArray
    ) -> DensityOperator:
        """Divide a positive matrix by its trace."""
        trace = float(np.trace(matrix).real)
        if trace <= 0.0:
            msg = "Cannot normalize a density matrix with zero trace"
            raise NormalizationError(msg)
        return cls(space, np.asarray(matrix) / trace)

    def fidelity(self, psi: StateVector) -> float:
        """Amplitude fidelity sqrt(<psi|rho|psi>)."""
        if psi.space != self.space:
            msg = f"Space mismatch: {self.space} vs {psi.space}"
            raise SpaceMismatchError(msg)
        amps = psi.amplitudes / psi.norm()
        overlap = float(np.vdot(amps, self.matrix @ amps).real)
        return float(np.sqrt(min(max(overlap, 0.0), 1.0)))

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def transformed(self, unitary: ComplexArray) -> DensityOperator:
        """U rho U^dagger."""
        return DensityOperator(self.space, unitary @ self.matrix @ unitary.conj().T)

    def distance(self, other: DensityOperator) -> float:
        """Largest absolute entry of the difference."""
        return float(np.abs(self.matrix - other.matrix).max())
