"""Detector models, click-pattern classification and pattern probabilities."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
import math
from typing import TYPE_CHECKING, Annotated, Self

import numpy as np
from pydantic import ConfigDict, Field, model_validator
from schemez import Schema

from qteleport.core import DensityOperator
from qteleport.exceptions import OpticsError, UnknownDetectorError
from qteleport.log import get_logger


if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence

    from qteleport.core import HilbertSpace
    from qteleport.optics.network import BsmNetwork
    from qteleport.optics.states import TwoPhotonState
    from qteleport.type_utils import ComplexArray, OutcomeClass, Side


logger = get_logger("optics.detection")

DETECTORS = ("D1", "D2", "D3", "D4")
PLUS_PATTERNS = (frozenset({"D1", "D4"}), frozenset({"D2", "D3"}))
MINUS_PATTERNS = (frozenset({"D1", "D3"}), frozenset({"D2", "D4"}))
PROBABILITY_TOL = 1e-9
ZERO_WEIGHT = 1e-30

Pattern = tuple[str, ...]
UnitFraction = Annotated[float, Field(ge=0, le=1)]


class DetectionModel(Schema):
    """Detector efficiencies and transmission losses between cavities and detectors."""

    model_config = ConfigDict(frozen=True)

    efficiency: UnitFraction = 1.0
    """Quantum efficiency of every detector."""

    efficiencies: dict[str, UnitFraction] = Field(default_factory=dict)
    """Per-detector overrides, keyed by detector id."""

    number_resolving: bool = False
    """Whether a detector distinguishes one from two photons."""

    arm_loss: tuple[UnitFraction, UnitFraction] = (0.0, 0.0)
    """Transmission loss of the fiber arms from Alice and Bob."""

    out_coupling: tuple[UnitFraction, UnitFraction] = (1.0, 1.0)
    """Cavity output coupling efficiency of cavity A and cavity B."""

    def efficiency_of(self, detector: str) -> float:
        return self.efficiencies.get(detector, self.efficiency)

    def transmission(self, side: Side) -> float:
        i = 0 if side == "alice" else 1
        return self.out_coupling[i] * (1.0 - self.arm_loss[i])

    @model_validator(mode="after")
    def _known_detectors(self) -> Self:
        if unknown := set(self.efficiencies) - set(DETECTORS):
            msg = f"Unknown detectors in efficiencies: {sorted(unknown)}"
            raise ValueError(msg)
        return self


@dataclass(frozen=True)
class BsmOutcome:
    """One click pattern with its probability and Bob's unnormalized conditional state."""

    outcome: OutcomeClass
    pattern: Pattern
    probability: float
    weighted_state: ComplexArray | None = None
    companion: HilbertSpace | None = None

    @property
    def state(self) -> DensityOperator | None:
        """Normalized conditional state of the companion system."""
        if self.weighted_state is None or self.companion is None:
            return None
        if self.probability <= ZERO_WEIGHT:
            return None
        return DensityOperator.from_unnormalized(self.companion, self.weighted_state)

    @property
    def label(self) -> str:
        return "+".join(self.pattern) or "none"


def classify(pattern: Iterable[str]) -> OutcomeClass:
    """Outcome class of a click pattern.

    Raises:
        UnknownDetectorError: If the pattern names an unknown detector
    """
    counts = Counter(pattern)
    if unknown := set(counts) - set(DETECTORS):
        msg = f"Unknown detectors {sorted(unknown)} (known: {DETECTORS})"
        raise UnknownDetectorError(msg)
    if any(c > 1 for c in counts.values()):
        return "Failure"
    clicked = frozenset(counts)
    if clicked in PLUS_PATTERNS:
        return "Plus"
    if clicked in MINUS_PATTERNS:
        return "Minus"
    return "Failure"


def _thinning(
    first: str | None,
    eta_first: float,
    second: str | None,
    eta_second: float,
) -> Iterator[tuple[list[str], float]]:
    """Independent detection of each photon; sinks have no detector."""
    for hit_first in (True, False):
        for hit_second in (True, False):
            p = (eta_first if hit_first else 1.0 - eta_first) * (
                eta_second if hit_second else 1.0 - eta_second
            )
            if p <= 0.0:
                continue
            clicks = [d for d, hit in ((first, hit_first), (second, hit_second)) if hit]
            yield [d for d in clicks if d is not None], p


def _pattern(clicks: Sequence[str], number_resolving: bool) -> Pattern:
    return tuple(sorted(clicks if number_resolving else set(clicks)))


def bsm_probabilities(
    state: TwoPhotonState,
    network: BsmNetwork,
    detection: DetectionModel | None = None,
) -> list[BsmOutcome]:
    """Probability and conditional companion state of every click pattern.

    The photons propagate through the arm losses and the network; each photon
    is then detected independently with its detector's efficiency. Photon
    states are traced out in the Fock basis of the output modes.

    Returns:
        Outcomes sorted by pattern, including the empty and one-click patterns

    Raises:
        OpticsError: If the pattern probabilities do not sum to one
    """
    detection = detection or DetectionModel()
    layout = state.layout
    unitary = layout.lift(network.rail_matrix(detection))
    psi = np.einsum("am,bn,mnq->abq", unitary, unitary, state.amplitudes)
    detectors = network.detector_modes(layout)
    eta = [detection.efficiency_of(d) if d else 0.0 for d in detectors]

    weighted: dict[Pattern, ComplexArray] = {}
    for m in range(layout.dim):
        for n in range(m, layout.dim):
            v = psi[m, n] * (math.sqrt(2) if m != n else 1.0)
            if np.vdot(v, v).real <= ZERO_WEIGHT:
                continue
            rho = np.outer(v, v.conj())
            for clicks, p in _thinning(detectors[m], eta[m], detectors[n], eta[n]):
                key = _pattern(clicks, detection.number_resolving)
                weighted[key] = weighted.get(key, 0.0) + p * rho

    outcomes = [
        BsmOutcome(classify(key), key, float(np.trace(rho).real), rho, state.companion)
        for key, rho in sorted(weighted.items())
    ]
    total = sum(o.probability for o in outcomes)
    if abs(total - 1.0) > PROBABILITY_TOL:
        msg = f"Pattern probabilities sum to {total:.12g}"
        raise OpticsError(msg)
    logger.debug("%d click patterns, total probability %.12g", len(outcomes), total)
    return outcomes


def class_probabilities(outcomes: Iterable[BsmOutcome]) -> dict[OutcomeClass, float]:
    totals: dict[OutcomeClass, float] = {"Plus": 0.0, "Minus": 0.0, "Failure": 0.0}
    for o in outcomes:
        totals[o.outcome] += o.probability
    return totals


def conditional_state(
    outcomes: Iterable[BsmOutcome],
    outcome: OutcomeClass,
) -> DensityOperator | None:
    """Companion state conditioned on any pattern of one outcome class."""
    selected = [
        o for o in outcomes if o.outcome == outcome and o.weighted_state is not None
    ]
    total = sum(o.probability for o in selected)
    if total <= ZERO_WEIGHT:
        logger.warning("Outcome %s has zero probability", outcome)
        return None
    matrix = sum(o.weighted_state for o in selected)  # type: ignore[misc]
    return DensityOperator.from_unnormalized(
        selected[0].companion,  # type: ignore[arg-type]
        matrix,
    )
