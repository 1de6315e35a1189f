from __future__ import annotations

import dataclasses
import math

import numpy as np
import pytest
from scipy import stats

from qteleport.atoms import (
    SystemParams,
    alice_initial_state,
    alice_system,
    bob_initial_state,
    bob_system,
    dark_state_track_alice,
    dark_state_track_bob,
)
from qteleport.core import StateVector
from qteleport.evolution import (
    EvolutionConfig,
    adiabaticity_report,
    evolve_no_jump,
    evolve_trajectories,
)
from qteleport.evolution.integrator import choose_substeps
from qteleport.exceptions import (
    NormalizationError,
    SpaceMismatchError,
    StabilityGuardError,
)
from qteleport.protocol import PulseConfig
from qteleport.pulses import (
    CgTable,
    DrivePulse,
    TimeGrid,
    l2_distance,
    mixing_angle_alice,
    mixing_angle_bob,
    normalize_mode,
    photon_pulse_shape,
)


STRONG = SystemParams(g0=20.0)


@pytest.fixture
def coarse() -> PulseConfig:
    return PulseConfig(n_steps=2000)


def test_undriven_system_stays_put(params: SystemParams):
    """Test that without drive the initial state neither moves nor emits."""
    grid = TimeGrid(duration=10, n_steps=200)
    system = alice_system(params, DrivePulse(grid, np.zeros(201)))
    psi0 = alice_initial_state(0.6, 0.8)
    result = evolve_no_jump(system, psi0)
    np.testing.assert_allclose(result.final.amplitudes, psi0.amplitudes, atol=1e-12)
    assert result.emission_probability() == pytest.approx(0.0, abs=1e-15)
    np.testing.assert_allclose(result.total_mode().samples, 0.0, atol=1e-12)


def test_initial_state_checks(params: SystemParams, bob_pulse: DrivePulse):
    system = bob_system(params, bob_pulse)
    with pytest.raises(SpaceMismatchError):
        evolve_no_jump(system, alice_initial_state(1.0, 0.0))
    ground = system.space.basis_vector(atom2="g", cavB_L=0, cavB_R=0)
    unnormalized = StateVector(system.space, 2 * ground, normalized=False)
    with pytest.raises(NormalizationError):
        evolve_no_jump(system, unnormalized)


def test_fixed_substeps_must_meet_the_guard(params: SystemParams, bob_pulse: DrivePulse):
    """Test that a substep count violating the stability guard is refused."""
    system = bob_system(params, bob_pulse)
    assert choose_substeps(system, EvolutionConfig()) >= 1
    with pytest.raises(StabilityGuardError):
        choose_substeps(system, EvolutionConfig(substeps=1, guard=1e-3))


def test_bob_mode_matches_closed_form(coarse: PulseConfig, cg: CgTable):
    """Test Bob's integrated photon mode against the adiabatic pulse shape."""
    pulse = coarse.bob_pulse(cg)
    result = evolve_no_jump(bob_system(STRONG, pulse), bob_initial_state())
    analytic = photon_pulse_shape(mixing_angle_bob(pulse, cg))
    assert l2_distance(result.total_mode(), analytic) <= 1e-2
    # each polarization carries half of the photon
    left, right = (result.emission_probability(c) for c in ("cavB-L", "cavB-R"))
    assert left == pytest.approx(right, rel=1e-9)


def test_alice_branch_zero_mode_matches_closed_form(coarse: PulseConfig, cg: CgTable):
    """Test that Alice's L photon for a = 1 follows the branch-0 pulse shape."""
    pulse = coarse.alice_pulse(cg)
    result = evolve_no_jump(alice_system(STRONG, pulse), alice_initial_state(1.0, 0.0))
    analytic = photon_pulse_shape(mixing_angle_alice(pulse, cg, 0))
    assert l2_distance(result.mode("cavA-L"), analytic) <= 1e-2
    assert result.emission_probability("cavA-R") == pytest.approx(0.0, abs=1e-20)


def test_norm_decay_equals_emission(params: SystemParams, alice_pulse: DrivePulse):
    """Test that the lost no-jump norm is the integrated emission and loss."""
    lossy = params.model_copy(update={"gamma": 0.2})
    for p in (params, lossy):
        result = evolve_no_jump(
            alice_system(p, alice_pulse), alice_initial_state(0.6, 0.8, p.with_loss)
        )
        released = result.emission_probability() + (
            result.loss_probability if p.with_loss else 0.0
        )
        assert 1 - result.norms[-1] == pytest.approx(released, abs=1e-5)
        assert np.all(np.diff(result.norms) <= 1e-12)


def test_one_excitation_sector_is_kept(params: SystemParams, alice_pulse: DrivePulse):
    """Test that no amplitude reaches states with two cavity photons."""
    system = alice_system(params, alice_pulse)
    result = evolve_no_jump(system, alice_initial_state(0.6, 0.8))
    leak = np.abs(np.asarray(result.states)[:, list(system.two_photon_states)]).max()
    assert leak < 1e-10


def test_refinement_barely_changes_the_mode(params: SystemParams, cg: CgTable):
    """Test that halving the step changes the emitted mode's norm by < 1e-4."""
    norms = []
    for n_steps in (2000, 4000):
        pulse = PulseConfig(n_steps=n_steps).bob_pulse(cg)
        result = evolve_no_jump(bob_system(params, pulse), bob_initial_state())
        norms.append(result.total_mode().emission_probability)
    assert abs(norms[1] - norms[0]) < 1e-4


def test_adiabaticity_of_reference_pulse(
    params: SystemParams, alice_pulse: DrivePulse, bob_pulse: DrivePulse
):
    """Test that both nodes follow their dark states for the T = 40 pulses."""
    for a, b in ((1.0, 0.0), (0.0, 1.0)):
        system = alice_system(params, alice_pulse)
        result = evolve_no_jump(system, alice_initial_state(a, b))
        track = dark_state_track_alice(params, alice_pulse, a, b)
        assert adiabaticity_report(result, track).minimum > 0.98  # noqa: PLR2004
    result = evolve_no_jump(bob_system(params, bob_pulse), bob_initial_state())
    report = adiabaticity_report(result, dark_state_track_bob(params, bob_pulse))
    assert report.minimum > 0.98  # noqa: PLR2004
    assert 0 <= report.worst_time <= 40  # noqa: PLR2004


def test_sudden_pulse_is_not_adiabatic(params: SystemParams, cg: CgTable):
    """Test that a pulse much shorter than 1/g leaves the dark state behind."""
    pulse = PulseConfig(duration=0.5, n_steps=500).alice_pulse(cg)
    result = evolve_no_jump(alice_system(params, pulse), alice_initial_state(1.0, 0.0))
    track = dark_state_track_alice(params, pulse, 1.0, 0.0)
    assert adiabaticity_report(result, track).minimum < 0.9  # noqa: PLR2004


def test_lossless_slow_passage_is_adiabatic(coarse: PulseConfig, cg: CgTable):
    """Test adiabatic following of a closed system, with cavity decay switched off."""
    pulse = coarse.bob_pulse(cg)
    system = dataclasses.replace(bob_system(STRONG, pulse), jumps=())
    result = evolve_no_jump(system, bob_initial_state())
    assert result.norms[-1] == pytest.approx(1.0, abs=1e-6)
    report = adiabaticity_report(result, dark_state_track_bob(STRONG, pulse))
    assert report.minimum > 0.999  # noqa: PLR2004


def test_unitary_norm_drift(params: SystemParams, cg: CgTable):
    """Test that the closed-system stepper keeps the norm over 10^4 steps."""
    pulse = PulseConfig(n_steps=10_000).bob_pulse(cg)
    system = dataclasses.replace(bob_system(params, pulse), jumps=())
    result = evolve_no_jump(system, bob_initial_state())
    assert result.norms.size == 10_001  # noqa: PLR2004
    assert np.max(np.abs(result.norms - 1.0)) < 1e-8  # noqa: PLR2004


def test_no_decay_no_jumps(params: SystemParams, bob_pulse: DrivePulse):
    """Test that trajectories without decay channels never jump."""
    system = dataclasses.replace(bob_system(params, bob_pulse), jumps=())
    config = EvolutionConfig(method="trajectory", n_trajectories=50)
    ensemble = evolve_trajectories(system, bob_initial_state(), config)
    assert ensemble.emitted_fraction() == 0.0
    assert ensemble.jump_times().size == 0


def test_trajectories_are_reproducible(params: SystemParams, bob_pulse: DrivePulse):
    """Test that the seed fixes every jump record."""
    system = bob_system(params, bob_pulse)
    config = EvolutionConfig(method="trajectory", n_trajectories=100, seed=3)
    first = evolve_trajectories(system, bob_initial_state(), config)
    second = evolve_trajectories(system, bob_initial_state(), config)
    assert first.rows() == second.rows()
    assert all(len(r.cavity_jumps) <= 1 for r in first)


def test_bob_jump_leaves_matching_atom(params: SystemParams, bob_pulse: DrivePulse):
    """Test that an R photon leaves atom 2 in |0> and an L photon in |1>."""
    ensemble = evolve_trajectories(
        bob_system(params, bob_pulse),
        bob_initial_state(),
        EvolutionConfig(method="trajectory", n_trajectories=200, seed=1),
    )
    for record in ensemble:
        if not record.emitted:
            continue
        (jump,) = record.cavity_jumps
        level = "0" if jump.channel == "cavB-R" else "1"
        population = record.final.population(atom2=level, cavB_L=0, cavB_R=0)
        assert population == pytest.approx(1.0)


@pytest.mark.slow
def test_emitted_fraction_and_jump_times(params: SystemParams, cg: CgTable):
    """Test the emission statistics of 10^4 trajectories against the no-jump history."""
    pulse = PulseConfig(amplitude=0.6).bob_pulse(cg)
    system = bob_system(params, pulse)
    n = 10_000
    config = EvolutionConfig(method="trajectory", n_trajectories=n, seed=11)
    history = evolve_no_jump(system, bob_initial_state(), config)
    ensemble = evolve_trajectories(system, bob_initial_state(), config)

    p_emit = 1 - history.norms[-1]
    sigma = math.sqrt(p_emit * (1 - p_emit) / n)
    assert abs(ensemble.emitted_fraction() - p_emit) < 3 * sigma
    analytic = photon_pulse_shape(mixing_angle_bob(pulse, cg)).emission_probability
    assert p_emit == pytest.approx(analytic, abs=0.02)

    # 40 bins of jump times plus one cell for trajectories without a photon
    edges = pulse.grid.times[:: pulse.grid.n_steps // 40]
    cumulative = 1 - history.norms[:: pulse.grid.n_steps // 40]
    expected = n * np.append(np.diff(cumulative), history.norms[-1])
    observed = np.append(
        np.histogram(ensemble.jump_times(), bins=edges)[0], n - ensemble.jump_times().size
    )
    keep = expected >= 5  # noqa: PLR2004
    merged_expected = np.append(expected[keep], expected[~keep].sum())
    merged_observed = np.append(observed[keep], observed[~keep].sum())
    if merged_expected[-1] == 0:
        merged_expected, merged_observed = merged_expected[:-1], merged_observed[:-1]
    merged_expected *= merged_observed.sum() / merged_expected.sum()
    result = stats.chisquare(merged_observed, merged_expected)
    assert result.pvalue > 0.01  # noqa: PLR2004


def test_channel_counts_and_rows(params: SystemParams, bob_pulse: DrivePulse):
    ensemble = evolve_trajectories(
        bob_system(params, bob_pulse),
        bob_initial_state(),
        EvolutionConfig(method="trajectory", n_trajectories=64),
    )
    counts = ensemble.channel_counts()
    assert set(counts) <= {"cavB-L", "cavB-R"}
    assert sum(counts.values()) == len(ensemble.rows())
    assert ensemble.lost_fraction() == 0.0


def test_mode_is_normalizable(params: SystemParams, bob_pulse: DrivePulse):
    result = evolve_no_jump(bob_system(params, bob_pulse), bob_initial_state())
    mode = normalize_mode(result.total_mode())
    assert mode.emission_probability == pytest.approx(1.0, abs=1e-8)
