"""Linear-optics elements acting on rails and polarizations."""

from __future__ import annotations

from dataclasses import dataclass, field
import math
from typing import TYPE_CHECKING, ClassVar

import numpy as np

from qteleport.exceptions import OpticsError
from qteleport.optics.modes import N_POL, N_RAILS, RAILS


if TYPE_CHECKING:
    from qteleport.optics.network import ElementSpec
    from qteleport.type_utils import ComplexArray


UNITARY_TOL = 1e-12


def rotation(theta: float) -> ComplexArray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]], dtype=np.complex128)


def retarder(retardance: float, axis: float) -> ComplexArray:
    """Jones matrix R(-axis) diag(1, e^{i retardance}) R(axis)."""
    phase = np.diag([1.0, np.exp(1j * retardance)])
    return rotation(-axis) @ phase @ rotation(axis)


def is_unitary(matrix: ComplexArray) -> bool:
    identity = np.eye(matrix.shape[0])
    return bool(np.abs(matrix.conj().T @ matrix - identity).max() <= UNITARY_TOL)


def _check_rails(rails: tuple[int, ...]) -> None:
    if any(r not in range(N_RAILS) for r in rails):
        msg = f"Rails {rails} outside 0..{N_RAILS - 1} ({', '.join(RAILS)})"
        raise OpticsError(msg)


@dataclass(frozen=True)
class OpticalElement:
    """Base class for elements; `matrix` acts on the rail x polarization space."""

    kind: ClassVar[str] = "element"

    rails: tuple[int, ...]
    name: str = ""

    def __post_init__(self) -> None:
        _check_rails(self.rails)

    @classmethod
    def from_spec(cls, spec: ElementSpec) -> OpticalElement:
        return cls(tuple(spec.rails), spec.name)

    def matrix(self) -> ComplexArray:
        return np.eye(N_RAILS * N_POL, dtype=np.complex128)

    @property
    def label(self) -> str:
        return self.name or f"{self.kind}{list(self.rails)}"


def _on_rail(rail: int, jones: ComplexArray) -> ComplexArray:
    full = np.eye(N_RAILS * N_POL, dtype=np.complex128)
    block = slice(rail * N_POL, (rail + 1) * N_POL)
    full[block, block] = jones
    return full


@dataclass(frozen=True)
class WavePlate(OpticalElement):
    """Retarder on a single rail."""

    retardance: float = math.pi
    axis: float = 0.0

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(self.rails) != 1:
            msg = f"{self.kind} acts on exactly one rail, got {self.rails}"
            raise OpticsError(msg)
        if not is_unitary(self.jones()):
            msg = f"{self.label}: Jones matrix is not unitary"
            raise OpticsError(msg)

    def jones(self) -> ComplexArray:
        return retarder(self.retardance, self.axis)

    def matrix(self) -> ComplexArray:
        return _on_rail(self.rails[0], self.jones())


@dataclass(frozen=True)
class QuarterWavePlate(WavePlate):
    """QWP with its fast axis at `angle` degrees."""

    kind: ClassVar[str] = "QWP"

    @classmethod
    def from_spec(cls, spec: ElementSpec) -> OpticalElement:
        return cls(tuple(spec.rails), spec.name, math.pi / 2, math.radians(spec.angle))


@dataclass(frozen=True)
class HalfWavePlate(WavePlate):
    """HWP rotating linear polarization by `angle` degrees (axis at half of it)."""

    kind: ClassVar[str] = "HWP"

    @classmethod
    def from_spec(cls, spec: ElementSpec) -> OpticalElement:
        return cls(tuple(spec.rails), spec.name, math.pi, math.radians(spec.angle) / 2)


@dataclass(frozen=True)
class PolarizingBeamSplitter(OpticalElement):
    """Transmits H on both rails and exchanges V between them."""

    kind: ClassVar[str] = "PBS"

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(self.rails) != 2 or self.rails[0] == self.rails[1]:  # noqa: PLR2004
            msg = f"PBS needs two distinct rails, got {self.rails}"
            raise OpticsError(msg)

    def matrix(self) -> ComplexArray:
        full = np.eye(N_RAILS * N_POL, dtype=np.complex128)
        first, second = (r * N_POL + 1 for r in self.rails)
        full[[first, second], [first, second]] = 0.0
        full[first, second] = full[second, first] = 1.0
        return full


@dataclass(frozen=True)
class LossChannel(OpticalElement):
    """Beam splitter sending 1 - transmission of a rail into its sink rail."""

    kind: ClassVar[str] = "loss"

    transmission: float = 1.0

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(self.rails) != 2 or not 0.0 <= self.transmission <= 1.0:  # noqa: PLR2004
            msg = f"Loss needs (rail, sink) and a transmission in [0, 1], got {self}"
            raise OpticsError(msg)

    @classmethod
    def from_spec(cls, spec: ElementSpec) -> OpticalElement:
        return cls(tuple(spec.rails), spec.name, spec.transmission)

    def matrix(self) -> ComplexArray:
        full = np.eye(N_RAILS * N_POL, dtype=np.complex128)
        t = math.sqrt(self.transmission)
        r = math.sqrt(1.0 - self.transmission)
        rail, sink = self.rails
        for pol in range(N_POL):
            i, j = rail * N_POL + pol, sink * N_POL + pol
            full[i, i] = full[j, j] = t
            full[i, j], full[j, i] = -r, r
        return full


@dataclass(frozen=True)
class DetectorStage(OpticalElement):
    """Polarizing splitter routing H and V of one rail onto two detectors."""

    kind: ClassVar[str] = "detector"

    detectors: tuple[str, str] = field(default=("", ""))

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(self.rails) != 1 or not all(self.detectors):
            msg = f"Detector stage needs one rail and two detector names, got {self}"
            raise OpticsError(msg)

    @classmethod
    def from_spec(cls, spec: ElementSpec) -> OpticalElement:
        if spec.detectors is None:
            msg = f"Detector stage {spec.name!r} names no detectors"
            raise OpticsError(msg)
        return cls(tuple(spec.rails), spec.name, tuple(spec.detectors))

    def routing(self) -> dict[tuple[int, int], str]:
        """(rail, pol) -> detector id."""
        rail = self.rails[0]
        return {(rail, 0): self.detectors[0], (rail, 1): self.detectors[1]}
