from __future__ import annotations

import math

import numpy as np
import pytest

from qteleport.core import (
    DensityOperator,
    HilbertSpace,
    Operator,
    StateVector,
    apply,
    compose,
    measure_projective,
    partial_trace,
    tensor,
)
from qteleport.exceptions import (
    DuplicateFactorError,
    IncompleteMeasurementError,
    NormalizationError,
    SpaceMismatchError,
    UnknownFactorError,
)


@pytest.fixture
def qubit_pair() -> HilbertSpace:
    return compose([HilbertSpace.single("q1", 2), HilbertSpace.single("q2", 2)])


@pytest.mark.parametrize(
    ("dims", "expected"),
    [((2, 3), 6), ((5,), 5), ((5, 2, 2), 20)],
)
def test_compose_dimension(dims: tuple[int, ...], expected: int):
    """Test that the composite dimension is the product of the factors."""
    space = compose(HilbertSpace.single(f"f{i}", d) for i, d in enumerate(dims))
    assert space.dim == expected
    assert space.dims == dims


def test_compose_rejects_duplicate_names():
    """Test that factor names must be unique."""
    with pytest.raises(DuplicateFactorError):
        compose([HilbertSpace.single("atom", 2), HilbertSpace.single("atom", 3)])


def test_alice_basis_embeds_injectively():
    """Test that every labelled basis state of atom 1 and cavity A has its own index."""
    space = compose([
        HilbertSpace.single("atom1", ("g0", "g1", "e0", "e1", "r")),
        HilbertSpace.single("cavA_L", 2),
        HilbertSpace.single("cavA_R", 2),
    ])
    labels = space.basis_labels()
    indices = {space.index(dict(zip(space.names, row))) for row in labels}
    assert indices == set(range(20))


def test_index_requires_every_factor(qubit_pair: HilbertSpace):
    """Test that a basis state needs a label for every factor."""
    with pytest.raises(UnknownFactorError):
        qubit_pair.index({"q1": 0})
    with pytest.raises(UnknownFactorError):
        qubit_pair.index({"q1": 0, "q2": 0, "q3": 0})


def test_lifting_consistency(qubit_pair: HilbertSpace):
    """Test (A x I)(I x B) = A x B."""
    rng = np.random.default_rng(7)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    lifted = qubit_pair.lift(a, "q1") @ qubit_pair.lift(b, "q2")
    np.testing.assert_allclose(lifted, np.kron(a, b), atol=1e-12)


def test_normalized_flag_is_checked(qubit_pair: HilbertSpace):
    """Test that a state flagged normalized must have unit norm."""
    with pytest.raises(NormalizationError):
        StateVector(qubit_pair, np.array([1, 1, 0, 0], dtype=complex))
    psi = StateVector(qubit_pair, np.array([1, 1, 0, 0], dtype=complex), normalized=False)
    assert psi.norm() == pytest.approx(math.sqrt(2))


def test_apply_identity(qubit_pair: HilbertSpace):
    """Test that the identity leaves a state unchanged."""
    psi = StateVector.from_amplitudes(qubit_pair, np.array([1, 2j, 0, -1]))
    out = apply(Operator.identity(qubit_pair), psi)
    np.testing.assert_allclose(out.amplitudes, psi.amplitudes)


def test_apply_annihilation_on_one_photon():
    """Test a|r>|1> = |r>|0>."""
    space = compose([
        HilbertSpace.single("atom1", ("g0", "r")),
        HilbertSpace.single("cav", 2),
    ])
    lower = np.array([[0, 1], [0, 0]], dtype=complex)
    op = Operator.local(space, "cav", lower)
    out = apply(op, StateVector.basis(space, atom1="r", cav=1))
    np.testing.assert_allclose(out.amplitudes, space.basis_vector(atom1="r", cav=0))


def test_apply_space_mismatch(qubit_pair: HilbertSpace):
    """Test that operators and states must share a space."""
    other = HilbertSpace.single("q", 4)
    with pytest.raises(SpaceMismatchError):
        apply(Operator.identity(other), StateVector.basis(qubit_pair, q1=0, q2=0))


@pytest.mark.parametrize(
    "amplitudes",
    [np.ones(3) / math.sqrt(3), np.eye(2) / math.sqrt(2), np.array(1.0)],
)
def test_state_shape_must_fit_space(qubit_pair: HilbertSpace, amplitudes):
    """Test that only a flat vector of the space's dimension makes a state."""
    with pytest.raises(SpaceMismatchError):
        StateVector(qubit_pair, amplitudes)


def test_measure_eigenstate(qubit_pair: HilbertSpace):
    """Test that an eigenstate of a projector gives its outcome with certainty."""
    up = Operator.projector(StateVector.basis(HilbertSpace.single("q1", 2), q1=0))
    p0 = Operator.local(qubit_pair, "q1", up.matrix)
    p1 = Operator.identity(qubit_pair) - p0
    psi = StateVector.basis(qubit_pair, q1=0, q2=1)
    result = measure_projective(psi, [p0, p1], seed=3)
    assert result.outcome == 0
    assert result.probability == pytest.approx(1.0)


def test_measure_born_frequencies():
    """Test empirical frequencies of a uniform superposition against the Born rule."""
    space = HilbertSpace.single("q", 2)
    psi = StateVector.from_amplitudes(space, np.array([1, 1]))
    projectors = [Operator(space, np.diag([1, 0]).astype(complex)),
                  Operator(space, np.diag([0, 1]).astype(complex))]
    rng = np.random.default_rng(11)
    n = 10_000
    zeros = sum(measure_projective(psi, projectors, rng).outcome == 0 for _ in range(n))
    sigma = math.sqrt(n * 0.25)
    assert abs(zeros - n / 2) < 3 * sigma


def test_measure_incomplete_projectors(qubit_pair: HilbertSpace):
    """Test that projectors must resolve the identity."""
    p0 = Operator.projector(StateVector.basis(qubit_pair, q1=0, q2=0))
    with pytest.raises(IncompleteMeasurementError):
        measure_projective(StateVector.basis(qubit_pair, q1=0, q2=0), [p0])


def test_partial_trace_of_product_state(qubit_pair: HilbertSpace):
    """Test that tracing out one factor of a product state leaves the other factor."""
    q = HilbertSpace.single("q1", 2)
    first = StateVector.from_amplitudes(q, np.array([0.6, 0.8j]))
    second = StateVector.from_amplitudes(HilbertSpace.single("q2", 2), np.array([1, 1]))
    rho = partial_trace(tensor(first, second).to_density(), ["q1"])
    np.testing.assert_allclose(rho.matrix, first.to_density().matrix, atol=1e-12)


def test_partial_trace_keeping_everything(qubit_pair: HilbertSpace):
    """Test that keeping every factor returns the same matrix."""
    psi = StateVector.from_amplitudes(qubit_pair, np.array([1, 0, 1j, 1]))
    rho = psi.to_density()
    np.testing.assert_allclose(partial_trace(rho, ["q1", "q2"]).matrix, rho.matrix)


def test_partial_trace_of_bell_state(qubit_pair: HilbertSpace):
    """Test that a maximally entangled pair reduces to the maximally mixed qubit."""
    bell = StateVector.from_amplitudes(qubit_pair, np.array([1, 0, 0, 1]))
    rho = partial_trace(bell.to_density(), ["q2"])
    np.testing.assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-12)
    assert rho.purity() == pytest.approx(0.5)


def test_partial_trace_unknown_factor(qubit_pair: HilbertSpace):
    """Test that kept factors must exist."""
    rho = StateVector.basis(qubit_pair, q1=0, q2=0).to_density()
    with pytest.raises(UnknownFactorError):
        partial_trace(rho, ["q3"])


def test_density_fidelity_is_amplitude_fidelity():
    """Test that DensityOperator.fidelity returns sqrt(<psi|rho|psi>)."""
    space = HilbertSpace.single("q", 2)
    rho = DensityOperator(space, np.diag([0.75, 0.25]).astype(complex))
    psi = StateVector.basis(space, q=0)
    assert rho.fidelity(psi) == pytest.approx(math.sqrt(0.75))


def test_density_trace_is_checked():
    """Test that a density operator must have unit trace."""
    with pytest.raises(NormalizationError):
        DensityOperator(HilbertSpace.single("q", 2), np.eye(2, dtype=complex))
