"""Level schemes and system parameters of the two atom-cavity nodes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Literal

from pydantic import ConfigDict, Field
from schemez import Schema

from qteleport.core import Factor, HilbertSpace
from qteleport.exceptions import SpaceError
from qteleport.pulses import CgTable


if TYPE_CHECKING:
    from qteleport.type_utils import Polarization


LOST = "lost"
PHOTON_LABELS = ("0", "1")


@dataclass(frozen=True)
class Transition:
    lower: str
    upper: str
    kind: Literal["drive", "cavity"]
    coupling: str
    photon: Polarization | None = None


@dataclass(frozen=True)
class LevelScheme:
    """Atomic levels, their transitions and the node's cavity factor names."""

    atom: str
    cavity_left: str
    cavity_right: str
    labels: tuple[str, ...]
    excited: tuple[str, ...]
    transitions: tuple[Transition, ...] = field(default=())

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        known = set(self.labels)
        for t in self.transitions:
            if not {t.lower, t.upper} <= known:
                msg = f"Transition {t} references unknown levels"
                raise SpaceError(msg)

    def edges(self, level: str, kind: Literal["drive", "cavity"]) -> list[Transition]:
        return [t for t in self.transitions if t.upper == level and t.kind == kind]

    def space(self, with_loss: bool = False) -> HilbertSpace:
        """Atom factor (plus the terminal lost level if requested) and both cavities."""
        labels = (*self.labels, LOST) if with_loss else self.labels
        return HilbertSpace((
            Factor(self.atom, labels),
            Factor(self.cavity_left, PHOTON_LABELS),
            Factor(self.cavity_right, PHOTON_LABELS),
        ))

    def atom_space(self, with_loss: bool = False) -> HilbertSpace:
        labels = (*self.labels, LOST) if with_loss else self.labels
        return HilbertSpace((Factor(self.atom, labels),))


@dataclass(frozen=True)
class AliceLevelScheme(LevelScheme):
    """Atom 1 with two independent Lambda branches sharing the level r."""

    atom: str = "atom1"
    cavity_left: str = "cavA_L"
    cavity_right: str = "cavA_R"
    labels: tuple[str, ...] = ("g0", "g1", "e0", "e1", "r")
    excited: tuple[str, ...] = ("e0", "e1")
    transitions: tuple[Transition, ...] = (
        Transition("g0", "e0", "drive", "omega0"),
        Transition("g1", "e1", "drive", "omega1"),
        Transition("r", "e0", "cavity", "g1", "L"),
        Transition("r", "e1", "cavity", "g1", "R"),
    )

    def validate(self) -> None:
        super().validate()
        for level in self.excited:
            drives, cavities = self.edges(level, "drive"), self.edges(level, "cavity")
            if len(drives) != 1 or len(cavities) != 1:
                msg = f"Excited level {level} needs one drive and one cavity edge"
                raise SpaceError(msg)


@dataclass(frozen=True)
class BobLevelScheme(LevelScheme):
    """Atom 2 with one excited level decaying into either cavity polarization."""

    atom: str = "atom2"
    cavity_left: str = "cavB_L"
    cavity_right: str = "cavB_R"
    labels: tuple[str, ...] = ("g", "e", "0", "1")
    excited: tuple[str, ...] = ("e",)
    transitions: tuple[Transition, ...] = (
        Transition("g", "e", "drive", "omega2"),
        Transition("1", "e", "cavity", "g2", "L"),
        Transition("0", "e", "cavity", "g2", "R"),
    )

    def validate(self) -> None:
        super().validate()
        (level,) = self.excited
        cavity = self.edges(level, "cavity")
        if len(self.edges(level, "drive")) != 1 or len(cavity) != 2:  # noqa: PLR2004
            msg = f"Excited level {level} needs one drive and two cavity edges"
            raise SpaceError(msg)
        if {t.photon for t in cavity} != {"L", "R"}:
            msg = "Bob's cavity edges must emit one L and one R photon"
            raise SpaceError(msg)


ALICE = AliceLevelScheme()
BOB = BobLevelScheme()


class SystemParams(Schema):
    """Physical parameters of one atom-cavity node."""

    model_config = ConfigDict(frozen=True)

    cg: CgTable = Field(default_factory=CgTable)
    """Clebsch-Gordan factors."""

    kappa: float = Field(default=1.0, gt=0)
    """Cavity field decay rate; sets the time unit."""

    gamma: float = Field(default=0.0, ge=0)
    """Spontaneous emission rate of every excited level."""

    spatial_mode: float = Field(default=1.0, gt=0, le=1)
    """Value s of the cavity spatial mode at the atom position."""

    g0: float = Field(default=5.0, gt=0)
    """Coupling magnitude in units of kappa; g = C_g * s * g0."""

    @property
    def with_loss(self) -> bool:
        return self.gamma > 0

    @property
    def g1(self) -> float:
        return self.cg.c_g1 * self.spatial_mode * self.g0

    @property
    def g2(self) -> float:
        return self.cg.c_g2 * self.spatial_mode * self.g0

    def rabi(self, c_omega: float, value: float) -> float:
        """Omega = C_Omega * s * g0 * E."""
        return c_omega * self.spatial_mode * self.g0 * value
