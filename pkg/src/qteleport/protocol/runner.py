"""End-to-end teleportation: passages, Bell measurement, correction, fidelity."""

from __future__ import annotations

from dataclasses import dataclass
import math
from typing import TYPE_CHECKING

import numpy as np

from qteleport.atoms import (
    alice_initial_state,
    alice_system,
    bob_initial_state,
    bob_system,
    dark_state_track_alice,
    dark_state_track_bob,
)
from qteleport.core import DensityOperator, partial_trace
from qteleport.exceptions import PulseError
from qteleport.evolution import (
    EvolutionConfig,
    adiabaticity_report,
    evolve_no_jump,
    evolve_trajectories,
)
from qteleport.log import get_logger
from qteleport.optics import (
    build_bsm_network,
    bsm_probabilities,
    class_probabilities,
    teleportation_state,
)
from qteleport.protocol.fidelity import (
    corrected_state,
    fidelity_formula,
    pattern_fidelity,
    target_state,
)
from qteleport.protocol.report import PatternRow, ProtocolReport
from qteleport.pulses import (
    mixing_angle_alice,
    mixing_angle_bob,
    normalize_mode,
    overlap,
    photon_pulse_shape,
)


if TYPE_CHECKING:
    from qteleport.atoms import SystemParams
    from qteleport.evolution import NoJumpResult, TrajectoryEnsemble
    from qteleport.optics import BsmOutcome
    from qteleport.protocol.config import ProtocolConfig
    from qteleport.pulses import DrivePulse, PhotonMode
    from qteleport.type_utils import OutcomeClass


logger = get_logger("protocol.runner")


@dataclass(frozen=True)
class PhotonModes:
    """Raw emitted modes of both nodes."""

    a0: PhotonMode
    a1: PhotonMode
    b: PhotonMode

    @classmethod
    def from_config(cls, config: ProtocolConfig) -> PhotonModes:
        cg = config.system.cg
        kappa = config.system.kappa
        alice_pulse = config.pulses.alice_pulse(cg)
        bob_pulse = config.pulses.bob_pulse(cg)
        s_a, s_b = config.system.s_A, config.system.s_B
        b = photon_pulse_shape(mixing_angle_bob(bob_pulse, cg, s_b), kappa, "L")
        if config.force_mode_match:
            return cls(b, b, b)
        a0 = photon_pulse_shape(mixing_angle_alice(alice_pulse, cg, 0, s_a), kappa, "L")
        a1 = photon_pulse_shape(mixing_angle_alice(alice_pulse, cg, 1, s_a), kappa, "R")
        return cls(a0, a1, b)


@dataclass(frozen=True)
class Emission:
    """Release probabilities of one node, split into cavity photons and losses."""

    cavity: float
    lost: float = 0.0

    @property
    def released(self) -> float:
        return self.cavity + self.lost

    @property
    def cavity_fraction(self) -> float:
        return self.cavity / self.released if self.released > 0 else 0.0


@dataclass(frozen=True)
class Diagnostics:
    alice: Emission
    bob: Emission
    adiabaticity_alice: float | None = None
    adiabaticity_bob: float | None = None
    bob_populations: dict[str, float] | None = None


@dataclass(frozen=True)
class TeleportationRun:
    """Report of one run together with its pattern table and trajectories."""

    report: ProtocolReport
    outcomes: list[BsmOutcome]
    ensembles: tuple[TrajectoryEnsemble, TrajectoryEnsemble] | None = None


@dataclass(frozen=True)
class TrialStatistics:
    """Counts and estimates of a sampled run."""

    n: int
    p_success: float
    p_success_overall: float
    p_success_stderr: float
    fidelity: float | None
    fidelity_stderr: float | None
    counts: dict[str, int]

    def fields(self) -> dict[str, object]:
        return {
            "p_success": self.p_success,
            "p_success_overall": self.p_success_overall,
            "p_success_stderr": self.p_success_stderr,
            "fidelity": self.fidelity,
            "fidelity_stderr": self.fidelity_stderr,
            "n_samples": self.n,
            "counts": self.counts,
        }


def bob_populations(result: NoJumpResult) -> dict[str, float]:
    """Atom-2 populations at T: the no-jump part plus every jump branch."""
    final = result.final
    weight = final.norm() ** 2
    populations: dict[str, float] = {}
    if weight > 0:
        rho = partial_trace(DensityOperator.from_state(final), ["atom2"])
        labels = rho.space.factor("atom2").labels
        populations = {
            label: weight * float(rho.matrix[i, i].real) for i, label in enumerate(labels)
        }
    # cavB-R leaves atom 2 in |0>, cavB-L in |1>
    for channel, level in (("cavB-R", "0"), ("cavB-L", "1")):
        emitted = result.emission_probability(channel)
        populations[level] = populations.get(level, 0.0) + emitted
    if any(j.channel == "spontaneous" for j in result.system.jumps):
        populations["lost"] = populations.get("lost", 0.0) + result.loss_probability
    return populations


def _branch_run(
    params: SystemParams,
    pulse: DrivePulse,
    a: complex,
    b: complex,
    config: EvolutionConfig,
) -> tuple[NoJumpResult, float]:
    system = alice_system(params, pulse)
    result = evolve_no_jump(system, alice_initial_state(a, b, params.with_loss), config)
    track = dark_state_track_alice(params, pulse, a, b)
    return result, adiabaticity_report(result, track).minimum


def run_diagnostics(config: ProtocolConfig) -> Diagnostics:
    """Integrate both nodes: emission split, adiabaticity and Bob's populations.

    Alice is integrated per branch, since the two branches decay at different
    rates and the renormalized no-jump state drifts away from any fixed
    superposition of them.
    """
    cg = config.system.cg
    alice_params, bob_params = config.system.alice(), config.system.bob()
    alice_pulse = config.pulses.alice_pulse(cg)
    bob_pulse = config.pulses.bob_pulse(cg)
    evolution = config.evolution

    runs = [
        _branch_run(alice_params, alice_pulse, *ab, evolution) for ab in ((1, 0), (0, 1))
    ]
    weights = (abs(config.state.a) ** 2, abs(config.state.b) ** 2)
    alice = Emission(
        sum(w * r.emission_probability() for w, (r, _) in zip(weights, runs)),
        sum(w * r.loss_probability for w, (r, _) in zip(weights, runs)),
    )

    system = bob_system(bob_params, bob_pulse)
    result = evolve_no_jump(system, bob_initial_state(bob_params.with_loss), evolution)
    bob = Emission(result.emission_probability(), result.loss_probability)
    track = dark_state_track_bob(bob_params, bob_pulse)
    return Diagnostics(
        alice,
        bob,
        min(adiabatic for _, adiabatic in runs),
        adiabaticity_report(result, track).minimum,
        bob_populations(result),
    )


def _analytic_emission(
    config: ProtocolConfig, modes: PhotonModes
) -> tuple[Emission, Emission]:
    pa, pb = abs(config.state.a) ** 2, abs(config.state.b) ** 2
    alice = pa * modes.a0.emission_probability + pb * modes.a1.emission_probability
    return Emission(alice), Emission(modes.b.emission_probability)


def _outcome(p_plus: float, p_minus: float) -> OutcomeClass:
    if p_plus <= 0 and p_minus <= 0:
        return "Failure"
    return "Plus" if p_plus >= p_minus else "Minus"


def _pattern_rows(outcomes: list[BsmOutcome], a: complex, b: complex) -> list[PatternRow]:
    return [
        PatternRow(
            pattern=o.label,
            outcome=o.outcome,
            probability=o.probability,
            fidelity=pattern_fidelity(o, a, b),
        )
        for o in outcomes
    ]


def _sample_trials(
    config: ProtocolConfig,
    outcomes: list[BsmOutcome],
    alice: TrajectoryEnsemble,
    bob: TrajectoryEnsemble,
) -> TrialStatistics:
    """Monte-Carlo estimate of success and fidelity.

    Emission and loss come from the unravelled trajectories; the click pattern of
    a trial with two cavity photons is drawn from the coherent pattern
    distribution, since a polarization-resolved jump record would measure the
    qubit.
    """
    a, b = config.state.a, config.state.b
    rng = np.random.default_rng([config.seed, 2])
    probs = np.array([o.probability for o in outcomes])
    probs /= probs.sum()
    overlaps = [(pattern_fidelity(o, a, b) or 0.0) ** 2 for o in outcomes]

    counts = {"Plus": 0, "Minus": 0, "Failure": 0, "no_photon": 0, "lost": 0}
    hits: list[float] = []
    for rec_a, rec_b in zip(alice, bob, strict=True):
        if rec_a.lost or rec_b.lost:
            counts["lost"] += 1
            continue
        if not (rec_a.emitted and rec_b.emitted):
            counts["no_photon"] += 1
            continue
        k = int(rng.choice(len(probs), p=probs))
        counts[outcomes[k].outcome] += 1
        if outcomes[k].outcome != "Failure":
            hits.append(overlaps[k])

    n = len(alice)
    both = counts["Plus"] + counts["Minus"] + counts["Failure"]
    successes = len(hits)
    p_success = successes / both if both else 0.0
    fidelity = stderr = None
    if hits:
        fidelity = math.sqrt(max(float(np.mean(hits)), 0.0))
        if len(hits) > 1 and fidelity > 0:
            stderr = float(np.std(hits, ddof=1)) / math.sqrt(len(hits)) / (2 * fidelity)
    return TrialStatistics(
        n=n,
        p_success=p_success,
        p_success_overall=successes / n if n else 0.0,
        p_success_stderr=math.sqrt(p_success * (1 - p_success) / both) if both else 0.0,
        fidelity=fidelity,
        fidelity_stderr=stderr,
        counts=counts,
    )


def _trajectory_ensembles(
    config: ProtocolConfig,
) -> tuple[TrajectoryEnsemble, TrajectoryEnsemble]:
    cg = config.system.cg
    alice_params, bob_params = config.system.alice(), config.system.bob()
    base = config.evolution.model_copy(
        update={"method": "trajectory", "n_trajectories": config.n_samples}
    )
    a, b = config.state.a, config.state.b
    alice = evolve_trajectories(
        alice_system(alice_params, config.pulses.alice_pulse(cg)),
        alice_initial_state(a, b, alice_params.with_loss),
        base.model_copy(update={"seed": 2 * config.seed}),
    )
    bob = evolve_trajectories(
        bob_system(bob_params, config.pulses.bob_pulse(cg)),
        bob_initial_state(bob_params.with_loss),
        base.model_copy(update={"seed": 2 * config.seed + 1}),
    )
    return alice, bob


def simulate_teleportation(config: ProtocolConfig) -> TeleportationRun:
    """Teleport Alice's qubit onto atom 2, keeping the sampled trajectories.

    In analytic mode the photon modes come from the closed-form pulse shapes and
    every probability is exact; a numerical integration runs only for
    diagnostics or when spontaneous emission competes with the cavity. In
    trajectory mode the same pattern distribution is sampled per trial.

    Raises:
        ConfigError: Propagated from configuration handling
        NumericalGuardError: If an integration guard fails
        OpticsError: If the analyzer fails its contract
    """
    a, b = config.state.a, config.state.b
    modes = PhotonModes.from_config(config)
    f_a0, f_a1, f_b = (normalize_mode(m) for m in (modes.a0, modes.a1, modes.b))
    one_minus_delta = overlap(f_a0, f_a1)

    # heralded photon: branch amplitudes weighted by their emission amplitudes
    weight0 = a * math.sqrt(modes.a0.emission_probability)
    weight1 = b * math.sqrt(modes.a1.emission_probability)
    norm = math.hypot(abs(weight0), abs(weight1))
    if norm == 0.0:
        msg = "Alice's atom emits no photon in either branch"
        raise PulseError(msg)
    photons = teleportation_state(weight0 / norm, weight1 / norm, f_a0, f_a1, f_b)
    network = build_bsm_network(config.network)
    outcomes = bsm_probabilities(photons, network, config.detection)
    classes = class_probabilities(outcomes)

    alice, bob = _analytic_emission(config, modes)
    diagnostics = None
    if config.diagnostics or config.system.gamma > 0:
        diagnostics = run_diagnostics(config)
        alice, bob = diagnostics.alice, diagnostics.bob
    cavity = alice.cavity_fraction * bob.cavity_fraction

    rho = corrected_state(outcomes)
    fidelity = rho.fidelity(target_state(a, b)) if rho is not None else None
    p_success = (classes["Plus"] + classes["Minus"]) * cavity
    fields: dict[str, object] = {
        "mode": config.mode,
        "outcome": _outcome(classes["Plus"], classes["Minus"]),
        "p_success": p_success,
        "p_success_overall": p_success * alice.released * bob.released,
        "p_plus": classes["Plus"],
        "p_minus": classes["Minus"],
        "p_failure": classes["Failure"],
        "fidelity": fidelity,
        "fidelity_formula": fidelity_formula(a, b, one_minus_delta),
        "one_minus_delta": one_minus_delta,
        "o_left": overlap(f_a0, f_b),
        "o_right": overlap(f_a1, f_b),
        "emission_alice": alice.released,
        "emission_bob": bob.released,
        "bob_state": rho.matrix.tolist() if rho is not None else None,
        "patterns": _pattern_rows(outcomes, a, b),
    }
    if diagnostics is not None:
        fields |= {
            "adiabaticity_alice": diagnostics.adiabaticity_alice,
            "adiabaticity_bob": diagnostics.adiabaticity_bob,
            "bob_populations": diagnostics.bob_populations,
        }
    ensembles = None
    if config.mode == "trajectory":
        ensembles = _trajectory_ensembles(config)
        fields |= _sample_trials(config, outcomes, *ensembles).fields()
    report = ProtocolReport.model_validate(fields)
    logger.info(
        "Teleportation (%s): outcome %s, fidelity %s, P(success) %.6g",
        config.mode,
        report.outcome,
        report.fidelity,
        report.p_success,
    )
    return TeleportationRun(report, outcomes, ensembles)


def run_teleportation(config: ProtocolConfig) -> ProtocolReport:
    """Teleport Alice's qubit onto atom 2 and report how well it worked."""
    return simulate_teleportation(config).report
