"""Photon mode layout of the Bell-state analyzer and temporal embeddings."""

from __future__ import annotations

from dataclasses import dataclass
import math
from typing import TYPE_CHECKING, Literal

import numpy as np

from qteleport.exceptions import OpticsError, QuadratureError
from qteleport.log import get_logger
from qteleport.pulses import overlap


if TYPE_CHECKING:
    from collections.abc import Sequence

    from qteleport.pulses import PhotonMode
    from qteleport.type_utils import ComplexArray, RealArray


logger = get_logger("optics.modes")

ARM_A, ARM_B, SINK_A, SINK_B = range(4)
RAILS = ("arm_A", "arm_B", "sink_A", "sink_B")
N_RAILS = len(RAILS)
N_POL = 2
OVERLAP_TOL = 1e-9
RANK_TOL = 1e-10

PolarizationLabel = Literal["H", "V", "L", "R"]

# |L> = (|H> + i|V>)/sqrt2, |R> = (|H> - i|V>)/sqrt2
JONES: dict[str, ComplexArray] = {
    "H": np.array([1.0, 0.0], dtype=np.complex128),
    "V": np.array([0.0, 1.0], dtype=np.complex128),
    "L": np.array([1.0, 1.0j], dtype=np.complex128) / math.sqrt(2),
    "R": np.array([1.0, -1.0j], dtype=np.complex128) / math.sqrt(2),
}


@dataclass(frozen=True)
class ModeLayout:
    """Single-photon modes indexed by (rail, polarization, temporal index).

    The flat index is ((rail * 2) + pol) * n_temporal + temporal, so an operator
    on rails and polarizations acts on the modes as kron(M, identity).
    """

    n_temporal: int = 1

    def __post_init__(self) -> None:
        if self.n_temporal < 1:
            msg = f"Need at least one temporal mode, got {self.n_temporal}"
            raise OpticsError(msg)

    @property
    def dim(self) -> int:
        return N_RAILS * N_POL * self.n_temporal

    def index(self, rail: int, pol: int, temporal: int = 0) -> int:
        return (rail * N_POL + pol) * self.n_temporal + temporal

    def spatial(self, index: int) -> tuple[int, int]:
        """(rail, pol) of a flat mode index."""
        block = index // self.n_temporal
        return divmod(block, N_POL)

    def lift(self, matrix: ComplexArray) -> ComplexArray:
        """Embed a rail-polarization matrix into the full mode space."""
        return np.kron(matrix, np.eye(self.n_temporal, dtype=np.complex128))


def photon_vector(
    layout: ModeLayout,
    rail: int,
    polarization: PolarizationLabel,
    temporal: RealArray,
) -> ComplexArray:
    """Creation-operator coefficients of one photon in a rail.

    Raises:
        OpticsError: If the temporal vector has the wrong length
    """
    temporal = np.asarray(temporal, dtype=np.complex128)
    if temporal.shape != (layout.n_temporal,):
        msg = f"Temporal vector of length {temporal.size}, layout has {layout.n_temporal}"
        raise OpticsError(msg)
    vector = np.zeros(layout.dim, dtype=np.complex128)
    for pol, weight in enumerate(JONES[polarization]):
        start = layout.index(rail, pol)
        vector[start : start + layout.n_temporal] = weight * temporal
    return vector


def checked_overlap(f: PhotonMode, g: PhotonMode) -> float:
    """overlap(f, g), clipped to [-1, 1] after a quadrature sanity check.

    Raises:
        QuadratureError: If |O| exceeds 1 by more than 1e-9
    """
    value = overlap(f, g)
    if abs(value) > 1.0 + OVERLAP_TOL:
        msg = f"Mode overlap {value:.12g} outside [-1, 1]"
        raise QuadratureError(msg)
    if abs(value) > 1.0:
        logger.warning("Clipping mode overlap %.12g to unit magnitude", value)
    return float(np.clip(value, -1.0, 1.0))


def gram_matrix(modes: Sequence[PhotonMode]) -> RealArray:
    n = len(modes)
    gram = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            gram[i, j] = gram[j, i] = checked_overlap(modes[i], modes[j])
    return gram


def embedding_from_gram(gram: RealArray) -> list[RealArray]:
    """Real vectors whose inner products reproduce a Gram matrix.

    The vector length is the numerical rank of the matrix.
    """
    weights, vectors = np.linalg.eigh(np.asarray(gram, dtype=np.float64))
    keep = weights > RANK_TOL * max(float(weights.max()), 1.0)
    coords = vectors[:, keep] * np.sqrt(weights[keep])
    return [np.array(row) for row in coords]


def temporal_embedding(modes: Sequence[PhotonMode]) -> list[RealArray]:
    """Coordinates of normalized photon modes in an orthonormal temporal basis."""
    return embedding_from_gram(gram_matrix(modes))


@dataclass(frozen=True)
class TemporalDecomposition:
    overlap: float
    orthogonal: float
    """Weight sqrt(1 - O^2) of the component orthogonal to the reference mode."""


def decompose_temporal(f_a: PhotonMode, f_b: PhotonMode) -> TemporalDecomposition:
    """Split photon A's mode into O |mu> + sqrt(1 - O^2) |mu_perp>, mu = f_b.

    Raises:
        PulseError: If a mode is not normalized
        GridMismatchError: If the modes use different grids
        QuadratureError: If |O| > 1 + 1e-9
    """
    value = checked_overlap(f_a, f_b)
    return TemporalDecomposition(value, math.sqrt(max(1.0 - value**2, 0.0)))
