"""Linear-optics Bell-state measurement of the two emitted photons."""

from __future__ import annotations

from qteleport.optics.modes import (
    ModeLayout,
    TemporalDecomposition,
    decompose_temporal,
    embedding_from_gram,
    photon_vector,
    temporal_embedding,
)
from qteleport.optics.elements import (
    DetectorStage,
    HalfWavePlate,
    LossChannel,
    OpticalElement,
    PolarizingBeamSplitter,
    QuarterWavePlate,
)
from qteleport.optics.states import (
    BOB_QUBIT,
    TwoPhotonState,
    bell_state,
    teleportation_state,
    teleportation_state_from_gram,
)
from qteleport.optics.detection import (
    BsmOutcome,
    DetectionModel,
    bsm_probabilities,
    class_probabilities,
    classify,
    conditional_state,
)
from qteleport.optics.network import (
    BsmNetwork,
    ElementSpec,
    NetworkConfig,
    build_bsm_network,
    verify_contract,
)

__all__ = [
    "BOB_QUBIT",
    "BsmNetwork",
    "BsmOutcome",
    "DetectionModel",
    "DetectorStage",
    "ElementSpec",
    "HalfWavePlate",
    "LossChannel",
    "ModeLayout",
    "NetworkConfig",
    "OpticalElement",
    "PolarizingBeamSplitter",
    "QuarterWavePlate",
    "TemporalDecomposition",
    "TwoPhotonState",
    "bell_state",
    "bsm_probabilities",
    "build_bsm_network",
    "class_probabilities",
    "classify",
    "conditional_state",
    "decompose_temporal",
    "embedding_from_gram",
    "photon_vector",
    "teleportation_state",
    "teleportation_state_from_gram",
    "temporal_embedding",
    "verify_contract",
]
