"""Assembly and verification of the Bell-state analyzer."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import TYPE_CHECKING, ClassVar

import numpy as np
from pydantic import ConfigDict, Field
from schemez import Schema

from qteleport.exceptions import ContractError, NoElementError
from qteleport.log import get_logger
from qteleport.optics.detection import (
    DetectionModel,
    bsm_probabilities,
    class_probabilities,
    conditional_state,
)
from qteleport.optics.elements import (
    DetectorStage,
    HalfWavePlate,
    LossChannel,
    OpticalElement,
    PolarizingBeamSplitter,
    QuarterWavePlate,
)
from qteleport.optics.modes import ARM_A, ARM_B, N_POL, N_RAILS, SINK_A, SINK_B
from qteleport.optics.states import BOB_QUBIT, bell_state, teleportation_state_from_gram


if TYPE_CHECKING:
    from qteleport.optics.modes import ModeLayout
    from qteleport.optics.states import BellState
    from qteleport.type_utils import ComplexArray, OutcomeClass


logger = get_logger("optics.network")

CONTRACT_TOL = 1e-10
CONTRACT_AMPLITUDES = (0.6, 0.8j)


class ElementSpec(Schema):
    """One element of the analyzer, in beam order."""

    model_config = ConfigDict(frozen=True)

    kind: str
    """Registered element kind (QWP, HWP, PBS, detector, loss)."""

    rails: tuple[int, ...] = (ARM_A,)
    """Rails the element acts on."""

    name: str = ""
    """Display name."""

    angle: float = 0.0
    """Degrees: fast-axis angle of a QWP, polarization rotation of a HWP."""

    detectors: tuple[str, str] | None = None
    """Detector ids for the H and V outputs of a detector stage."""

    transmission: float = Field(default=1.0, ge=0, le=1)
    """Power transmission of a loss element."""


DEFAULT_ELEMENTS = (
    ElementSpec(kind="QWP", rails=(ARM_A,), name="QWP1", angle=45),
    ElementSpec(kind="QWP", rails=(ARM_B,), name="QWP2", angle=45),
    ElementSpec(kind="HWP", rails=(ARM_B,), name="HWP1", angle=90),
    ElementSpec(kind="PBS", rails=(ARM_A, ARM_B), name="PBS1"),
    ElementSpec(kind="HWP", rails=(ARM_A,), name="HWP2", angle=45),
    ElementSpec(kind="HWP", rails=(ARM_B,), name="HWP3", angle=45),
    ElementSpec(kind="detector", rails=(ARM_A,), name="PBS2", detectors=("D1", "D2")),
    ElementSpec(kind="detector", rails=(ARM_B,), name="PBS3", detectors=("D4", "D3")),
)


class NetworkConfig(Schema):
    """Element list of the analyzer and whether to verify it when building."""

    model_config = ConfigDict(frozen=True)

    elements: tuple[ElementSpec, ...] = DEFAULT_ELEMENTS
    """Elements in beam order; detector stages come last."""

    verify: bool = True
    """Run the Bell-discrimination check at build time."""


@dataclass(frozen=True)
class BsmNetwork:
    """Ordered optical elements ending in detector stages."""

    elements: tuple[OpticalElement, ...]

    _registry: ClassVar[dict[str, type[OpticalElement]]] = {}

    @classmethod
    def register_element(cls, kind: str, element: type[OpticalElement]) -> None:
        """Register an element class; later registrations take precedence."""
        cls._registry = {kind: element} | cls._registry

    @classmethod
    def element_class(cls, kind: str) -> type[OpticalElement]:
        try:
            return cls._registry[kind]
        except KeyError as e:
            msg = f"No optical element registered for kind {kind!r}"
            raise NoElementError(msg) from e

    @classmethod
    def from_specs(cls, specs: tuple[ElementSpec, ...]) -> BsmNetwork:
        return cls(tuple(cls.element_class(s.kind).from_spec(s) for s in specs))

    @property
    def stages(self) -> list[DetectorStage]:
        return [e for e in self.elements if isinstance(e, DetectorStage)]

    def rail_matrix(self, detection: DetectionModel | None = None) -> ComplexArray:
        """Rail x polarization transfer matrix including the arm losses."""
        detection = detection or DetectionModel()
        losses = [
            LossChannel((ARM_A, SINK_A), "loss A", detection.transmission("alice")),
            LossChannel((ARM_B, SINK_B), "loss B", detection.transmission("bob")),
        ]
        identity = np.eye(N_RAILS * N_POL, dtype=np.complex128)
        elements = [*losses, *self.elements]
        return reduce(lambda acc, e: e.matrix() @ acc, elements, identity)

    def detector_modes(self, layout: ModeLayout) -> list[str | None]:
        """Detector id seen by every output mode; None for undetected rails."""
        routing: dict[tuple[int, int], str] = {}
        for stage in self.stages:
            routing |= stage.routing()
        return [routing.get(layout.spatial(i)) for i in range(layout.dim)]

    def describe(self) -> list[str]:
        return [e.label for e in self.elements]


def _register_default_elements() -> None:
    for kind, element in (
        ("QWP", QuarterWavePlate),
        ("HWP", HalfWavePlate),
        ("PBS", PolarizingBeamSplitter),
        ("loss", LossChannel),
        ("detector", DetectorStage),
    ):
        BsmNetwork.register_element(kind, element)


_register_default_elements()


def verify_contract(network: BsmNetwork) -> None:
    """Check Bell discrimination on ideal, mode-matched inputs.

    Psi+ and Psi- must herald Plus and Minus with certainty, Phi+ and Phi- must
    never herald, and the teleportation photon state must give Plus and Minus
    with 1/4 each, leaving atom 2 in a|0> + b|1> and a|0> - b|1>.

    Raises:
        ContractError: On any violation beyond 1e-10
    """
    expected: dict[BellState, dict[OutcomeClass, float]] = {
        "Psi+": {"Plus": 1.0, "Minus": 0.0},
        "Psi-": {"Plus": 0.0, "Minus": 1.0},
        "Phi+": {"Plus": 0.0, "Minus": 0.0},
        "Phi-": {"Plus": 0.0, "Minus": 0.0},
    }
    for kind, target in expected.items():
        probs = class_probabilities(bsm_probabilities(bell_state(kind), network))
        for outcome, value in target.items():
            if abs(probs[outcome] - value) > CONTRACT_TOL:
                got = probs[outcome]
                msg = f"{kind} gives P({outcome}) = {got:.12g}, expected {value}"
                raise ContractError(msg)

    a, b = CONTRACT_AMPLITUDES
    photons = teleportation_state_from_gram(a, b, np.ones((3, 3)))
    outcomes = bsm_probabilities(photons, network)
    probs = class_probabilities(outcomes)
    signs: dict[OutcomeClass, float] = {"Plus": 1.0, "Minus": -1.0}
    for outcome, sign in signs.items():
        if abs(probs[outcome] - 0.25) > CONTRACT_TOL:
            msg = f"Teleportation state gives P({outcome}) = {probs[outcome]:.12g}"
            raise ContractError(msg)
        rho = conditional_state(outcomes, outcome)
        target = np.array([a, sign * b], dtype=np.complex128)
        if rho is None or rho.space != BOB_QUBIT:
            msg = f"No conditional state of atom 2 for {outcome}"
            raise ContractError(msg)
        infidelity = 1.0 - float(np.vdot(target, rho.matrix @ target).real)
        if infidelity > CONTRACT_TOL:
            msg = f"{outcome}: conditional state off target by {infidelity:.3e}"
            raise ContractError(msg)
    logger.debug("Network %s passes the Bell-discrimination check", network.describe())


def build_bsm_network(config: NetworkConfig | None = None) -> BsmNetwork:
    """Assemble the analyzer and verify it.

    Raises:
        NoElementError: If a spec names an unregistered kind
        OpticsError: If an element is malformed
        ContractError: If verification is enabled and fails
    """
    config = config or NetworkConfig()
    network = BsmNetwork.from_specs(config.elements)
    if config.verify:
        verify_contract(network)
    return network
