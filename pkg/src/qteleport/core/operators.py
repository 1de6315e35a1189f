"""Dense operators on composite spaces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, overload

import numpy as np

from qteleport.core.states import StateVector
from qteleport.exceptions import SpaceError, SpaceMismatchError
from qteleport.type_utils import frozen_array


if TYPE_CHECKING:
    from qteleport.core.spaces import HilbertSpace
    from qteleport.type_utils import ComplexArray


HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class Operator:
    """Immutable dense matrix acting on a Hilbert space."""

    space: HilbertSpace
    matrix: ComplexArray
    hermitian: bool = False

    def __post_init__(self) -> None:
        matrix = frozen_array(self.matrix)
        if matrix.shape != (self.space.dim, self.space.dim):
            msg = f"Matrix shape {matrix.shape} does not fit space {self.space}"
            raise SpaceMismatchError(msg)
        object.__setattr__(self, "matrix", matrix)
        if self.hermitian:
            deviation = np.linalg.norm(matrix - matrix.conj().T, np.inf)
            if deviation > HERMITIAN_TOL:
                msg = f"Operator flagged hermitian deviates by {deviation:.3e}"
                raise SpaceError(msg)

    @classmethod
    def identity(cls, space: HilbertSpace) -> Operator:
        return cls(space, np.eye(space.dim, dtype=np.complex128), hermitian=True)

    @classmethod
    def local(
        cls,
        space: HilbertSpace,
        factor: str,
        matrix: ComplexArray,
        hermitian: bool = False,
    ) -> Operator:
        """Lift a factor-local matrix into the composite space."""
        lifted = space.lift(np.asarray(matrix, dtype=complex), factor)
        return cls(space, lifted, hermitian)

    @classmethod
    def projector(cls, psi: StateVector) -> Operator:
        """|psi><psi| for a normalized state."""
        amps = psi.amplitudes / psi.norm()
        return cls(psi.space, np.outer(amps, amps.conj()), hermitian=True)

    def dagger(self) -> Operator:
        return Operator(self.space, self.matrix.conj().T, self.hermitian)

    def _check(self, other: Operator | StateVector) -> None:
        if other.space != self.space:
            msg = f"Space mismatch: {self.space} vs {other.space}"
            raise SpaceMismatchError(msg)

    @overload
    def __matmul__(self, other: Operator) -> Operator: ...

    @overload
    def __matmul__(self, other: StateVector) -> StateVector: ...

    def __matmul__(self, other: Operator | StateVector) -> Operator | StateVector:
        self._check(other)
        if isinstance(other, StateVector):
            return apply(self, other)
        return Operator(self.space, self.matrix @ other.matrix)

    def __add__(self, other: Operator) -> Operator:
        self._check(other)
        return Operator(
            self.space, self.matrix + other.matrix, self.hermitian and other.hermitian
        )

    def __sub__(self, other: Operator) -> Operator:
        self._check(other)
        return Operator(
            self.space, self.matrix - other.matrix, self.hermitian and other.hermitian
        )

    def __mul__(self, scalar: complex) -> Operator:
        real = complex(scalar).imag == 0
        return Operator(self.space, self.matrix * scalar, self.hermitian and real)

    __rmul__ = __mul__

    def commutator(self, other: Operator) -> Operator:
        self._check(other)
        return Operator(
            self.space, self.matrix @ other.matrix - other.matrix @ self.matrix
        )

    def expectation(self, psi: StateVector) -> complex:
        self._check(psi)
        return complex(np.vdot(psi.amplitudes, self.matrix @ psi.amplitudes))


def apply(op: Operator, psi: StateVector) -> StateVector:
    """Matrix-vector product; the result is not assumed normalized.

    Raises:
        SpaceMismatchError: If the operator and state live on different spaces
    """
    op._check(psi)
    return StateVector(psi.space, op.matrix @ psi.amplitudes, normalized=False)
