from __future__ import annotations

import math

import numpy as np
import pytest

from qteleport.exceptions import (
    ContractError,
    NoElementError,
    OpticsError,
    PhotonNumberError,
    UnknownDetectorError,
)
from qteleport.optics import (
    BOB_QUBIT,
    BsmNetwork,
    DetectionModel,
    ElementSpec,
    HalfWavePlate,
    ModeLayout,
    NetworkConfig,
    PolarizingBeamSplitter,
    QuarterWavePlate,
    TwoPhotonState,
    bell_state,
    bsm_probabilities,
    build_bsm_network,
    class_probabilities,
    classify,
    conditional_state,
    decompose_temporal,
    embedding_from_gram,
    teleportation_state,
    teleportation_state_from_gram,
)
from qteleport.optics.elements import is_unitary
from qteleport.optics.modes import JONES
from qteleport.optics.network import DEFAULT_ELEMENTS
from qteleport.pulses import (
    CgTable,
    DrivePulse,
    PhotonMode,
    TimeGrid,
    mixing_angle_alice,
    normalize_mode,
    overlap,
    photon_pulse_shape,
)


@pytest.fixture(scope="module")
def network() -> BsmNetwork:
    return build_bsm_network()


def matched_gram() -> np.ndarray:
    return np.ones((3, 3))


def gram_for(o: float) -> np.ndarray:
    """Inner products of (f_B, f_A1, f_A0) with Bob matched to branch 1."""
    return np.array([[1.0, 1.0, o], [1.0, 1.0, o], [o, o, 1.0]])


@pytest.mark.parametrize(
    ("pattern", "expected"),
    [
        (("D1", "D4"), "Plus"),
        (("D2", "D3"), "Plus"),
        (("D1", "D3"), "Minus"),
        (("D2", "D4"), "Minus"),
        (("D1",), "Failure"),
        (("D1", "D2"), "Failure"),
        (("D3", "D4"), "Failure"),
        (("D1", "D1"), "Failure"),
        ((), "Failure"),
    ],
)
def test_classify(pattern: tuple[str, ...], expected: str):
    assert classify(pattern) == expected


def test_classify_unknown_detector():
    with pytest.raises(UnknownDetectorError):
        classify(("D1", "D9"))


def test_polarization_elements():
    """Test that the wave plates turn circular light linear and rotate H onto V."""
    qwp = QuarterWavePlate.from_spec(ElementSpec(kind="QWP", angle=45))
    assert isinstance(qwp, QuarterWavePlate)
    jones = qwp.jones()
    assert is_unitary(jones)
    for label in ("L", "R"):
        out = jones @ JONES[label]
        assert max(abs(out[0]), abs(out[1])) == pytest.approx(1.0)
    hwp = HalfWavePlate.from_spec(ElementSpec(kind="HWP", angle=90))
    assert isinstance(hwp, HalfWavePlate)
    assert abs(np.vdot(JONES["V"], hwp.jones() @ JONES["H"])) == pytest.approx(1.0)


def test_pbs_exchanges_vertical_light():
    pbs = PolarizingBeamSplitter((0, 1))
    m = pbs.matrix()
    assert is_unitary(m)
    assert m[0, 0] == 1.0
    assert m[3, 1] == 1.0
    assert m[1, 3] == 1.0
    with pytest.raises(OpticsError):
        PolarizingBeamSplitter((0, 0))


def test_every_element_is_unitary(network: BsmNetwork):
    """Test unitarity of each element and of the assembled rail matrix."""
    for element in network.elements:
        assert is_unitary(element.matrix())
    assert is_unitary(network.rail_matrix())
    lossy = DetectionModel(arm_loss=(0.3, 0.1), out_coupling=(0.9, 0.8))
    assert is_unitary(network.rail_matrix(lossy))


def test_network_description(network: BsmNetwork):
    assert network.describe() == [spec.name for spec in DEFAULT_ELEMENTS]
    assert len(network.stages) == 2  # noqa: PLR2004


def test_unknown_element_kind():
    config = NetworkConfig(elements=(ElementSpec(kind="mirror"),))
    with pytest.raises(NoElementError):
        build_bsm_network(config)


def test_broken_wiring_fails_the_contract():
    """Test that a network without the interfering splitter is rejected at build time."""
    elements = tuple(spec for spec in DEFAULT_ELEMENTS if spec.kind != "PBS")
    with pytest.raises(ContractError):
        build_bsm_network(NetworkConfig(elements=elements))
    unchecked = build_bsm_network(NetworkConfig(elements=elements, verify=False))
    assert len(unchecked.elements) == len(elements)


@pytest.mark.parametrize(
    ("kind", "plus", "minus"),
    [("Psi+", 1.0, 0.0), ("Psi-", 0.0, 1.0), ("Phi+", 0.0, 0.0), ("Phi-", 0.0, 0.0)],
)
def test_bell_discrimination(network: BsmNetwork, kind: str, plus: float, minus: float):
    """Test which Bell states the analyzer heralds."""
    outcomes = bsm_probabilities(bell_state(kind), network)  # type: ignore[arg-type]
    probs = class_probabilities(outcomes)
    assert probs["Plus"] == pytest.approx(plus, abs=1e-10)
    assert probs["Minus"] == pytest.approx(minus, abs=1e-10)
    assert sum(o.probability for o in outcomes) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize(
    ("a", "b"),
    [(1.0, 0.0), (1 / math.sqrt(2), 1 / math.sqrt(2)), (0.6, 0.8j), (0.28, -0.96)],
)
def test_ideal_teleportation_patterns(network: BsmNetwork, a: complex, b: complex):
    """Test success 1/2 and the states a|0> +- b|1> for matched photons."""
    state = teleportation_state_from_gram(a, b, matched_gram())
    outcomes = bsm_probabilities(state, network)
    probs = class_probabilities(outcomes)
    assert probs["Plus"] + probs["Minus"] == pytest.approx(0.5, abs=1e-10)
    for outcome, sign in (("Plus", 1), ("Minus", -1)):
        rho = conditional_state(outcomes, outcome)  # type: ignore[arg-type]
        assert rho is not None
        assert rho.space == BOB_QUBIT
        target = np.array([a, sign * b], dtype=np.complex128)
        assert np.vdot(target, rho.matrix @ target).real == pytest.approx(1.0, abs=1e-10)


def test_no_detection_without_efficiency(network: BsmNetwork):
    """Test that blind detectors leave only the empty pattern."""
    state = teleportation_state_from_gram(0.6, 0.8, matched_gram())
    outcomes = bsm_probabilities(state, network, DetectionModel(efficiency=0.0))
    assert [o.label for o in outcomes] == ["none"]
    assert outcomes[0].outcome == "Failure"
    assert outcomes[0].probability == pytest.approx(1.0)


@pytest.mark.parametrize("eta", [0.2, 0.5, 0.9])
def test_efficiency_thins_success(network: BsmNetwork, eta: float):
    """Test that each photon is detected with probability eta."""
    state = teleportation_state_from_gram(0.6, 0.8, matched_gram())
    outcomes = bsm_probabilities(state, network, DetectionModel(efficiency=eta))
    probs = class_probabilities(outcomes)
    assert probs["Plus"] + probs["Minus"] == pytest.approx(0.5 * eta**2, abs=1e-12)
    assert sum(o.probability for o in outcomes) == pytest.approx(1.0, abs=1e-9)
    assert any(len(o.pattern) == 1 for o in outcomes)


def test_arm_loss_thins_success(network: BsmNetwork):
    state = teleportation_state_from_gram(0.6, 0.8, matched_gram())
    detection = DetectionModel(arm_loss=(0.5, 0.0))
    probs = class_probabilities(bsm_probabilities(state, network, detection))
    assert probs["Plus"] + probs["Minus"] == pytest.approx(0.25, abs=1e-12)


def test_number_resolving_detectors(network: BsmNetwork):
    """Test that resolving detectors report one click per detected photon."""
    detection = DetectionModel(number_resolving=True)
    outcomes = bsm_probabilities(bell_state("Phi+"), network, detection)
    assert all(len(o.pattern) == 2 for o in outcomes)  # noqa: PLR2004
    assert all(o.outcome == "Failure" for o in outcomes)


def test_detection_model_rejects_unknown_detectors():
    with pytest.raises(ValueError, match="Unknown detectors"):
        DetectionModel(efficiencies={"D7": 0.5})


def test_two_photon_state_checks():
    layout = ModeLayout(1)
    with pytest.raises(PhotonNumberError):
        TwoPhotonState(layout, BOB_QUBIT, np.zeros((3, 3, 2)))
    asymmetric = np.zeros((layout.dim, layout.dim, 1), dtype=np.complex128)
    asymmetric[0, 1, 0] = 1.0
    with pytest.raises(PhotonNumberError):
        TwoPhotonState(layout, bell_state("Psi+").companion, asymmetric)


def test_gram_embedding_reproduces_inner_products():
    gram = gram_for(0.8)
    vectors = embedding_from_gram(gram)
    rebuilt = np.array([[np.dot(u, v) for v in vectors] for u in vectors])
    np.testing.assert_allclose(rebuilt, gram, atol=1e-12)
    assert len(vectors[0]) == 2  # noqa: PLR2004


def test_temporal_decomposition(alice_pulse: DrivePulse, cg: CgTable):
    """Test the overlap and orthogonal weight of two photon modes."""
    f0, f1 = (
        normalize_mode(photon_pulse_shape(mixing_angle_alice(alice_pulse, cg, i)))
        for i in (0, 1)
    )
    same = decompose_temporal(f0, f0)
    assert same.overlap == pytest.approx(1.0)
    assert same.orthogonal == pytest.approx(0.0, abs=1e-6)
    worst = decompose_temporal(f0, f1)
    assert worst.overlap == pytest.approx(0.992, abs=0.002)
    assert worst.overlap**2 + worst.orthogonal**2 == pytest.approx(1.0)

    grid = TimeGrid(duration=30, n_steps=300)
    t = grid.times
    bump = np.sin(np.pi * t / 10)
    early = normalize_mode(PhotonMode(grid, np.where(t < 10, bump, 0.0)))  # noqa: PLR2004
    late = normalize_mode(PhotonMode(grid, np.where(t > 20, bump, 0.0)))  # noqa: PLR2004
    disjoint = decompose_temporal(early, late)
    assert disjoint.overlap == pytest.approx(0.0, abs=1e-12)
    assert disjoint.orthogonal == pytest.approx(1.0)


def test_teleportation_state_from_modes(alice_pulse: DrivePulse, cg: CgTable):
    """Test that the mode-based state matches the Gram-matrix construction."""
    f0, f1 = (
        normalize_mode(photon_pulse_shape(mixing_angle_alice(alice_pulse, cg, i)))
        for i in (0, 1)
    )
    state = teleportation_state(0.6, 0.8, f0, f1, f1)
    assert state.companion == BOB_QUBIT
    assert np.sum(np.abs(state.amplitudes) ** 2) == pytest.approx(1.0)
    network = build_bsm_network()
    from_modes = class_probabilities(bsm_probabilities(state, network))
    reference = teleportation_state_from_gram(0.6, 0.8, gram_for(overlap(f0, f1)))
    from_gram = class_probabilities(bsm_probabilities(reference, network))
    for outcome, value in from_gram.items():
        assert from_modes[outcome] == pytest.approx(value, abs=1e-9)
