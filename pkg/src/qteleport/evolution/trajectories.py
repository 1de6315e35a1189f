"""Monte-Carlo wavefunction unravelling of the decaying systems."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from qteleport.core import StateVector
from qteleport.evolution.config import EvolutionConfig
from qteleport.evolution.integrator import evolve_no_jump, propagate
from qteleport.exceptions import TrajectoryError
from qteleport.log import get_logger
from qteleport.type_utils import is_cavity_channel


if TYPE_CHECKING:
    from collections.abc import Iterator

    from qteleport.evolution.integrator import NoJumpResult
    from qteleport.evolution.system import DrivenSystem
    from qteleport.type_utils import Channel, ComplexArray, RealArray


logger = get_logger("evolution.trajectories")


@dataclass(frozen=True)
class JumpEvent:
    time: float
    channel: Channel


@dataclass(frozen=True)
class TrajectoryRecord:
    """One unravelled trajectory."""

    index: int
    jumps: tuple[JumpEvent, ...]
    final: StateVector
    survival: float
    """Probability of no further jump in the last propagated segment."""

    @property
    def cavity_jumps(self) -> tuple[JumpEvent, ...]:
        return tuple(j for j in self.jumps if is_cavity_channel(j.channel))

    @property
    def emitted(self) -> bool:
        return bool(self.cavity_jumps)

    @property
    def lost(self) -> bool:
        return any(j.channel == "spontaneous" for j in self.jumps)


@dataclass(frozen=True)
class TrajectoryEnsemble:
    records: tuple[TrajectoryRecord, ...]
    seed: int

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[TrajectoryRecord]:
        return iter(self.records)

    def jump_times(self, channel: Channel | None = None) -> RealArray:
        """Times of all jumps into a channel (all cavity channels if None)."""
        times = [
            j.time
            for r in self.records
            for j in r.jumps
            if (j.channel == channel if channel else is_cavity_channel(j.channel))
        ]
        return np.array(times, dtype=np.float64)

    def emitted_fraction(self) -> float:
        """Fraction of trajectories with a cavity jump."""
        return sum(r.emitted for r in self.records) / len(self.records)

    def lost_fraction(self) -> float:
        return sum(r.lost for r in self.records) / len(self.records)

    def channel_counts(self) -> dict[str, int]:
        return dict(Counter(j.channel for r in self.records for j in r.jumps))

    def rows(self) -> list[tuple[int, str, float]]:
        """(trajectory, channel, time) per jump, trajectory order."""
        return [(r.index, j.channel, j.time) for r in self.records for j in r.jumps]


@dataclass(frozen=True)
class _Segment:
    start: int
    states: ComplexArray
    norms: RealArray


def _segment(start: int, states: ComplexArray) -> _Segment:
    norms = np.einsum("ti,ti->t", states.conj(), states).real
    return _Segment(start, states, norms)


def _unravel(
    system: DrivenSystem,
    history: NoJumpResult,
    rng: np.random.Generator,
    index: int,
    max_jumps: int,
) -> TrajectoryRecord:
    """Waiting-time unravelling starting from the shared no-jump history."""
    times = history.grid.times
    dt = history.grid.dt
    segment = _segment(0, np.asarray(history.states))
    jumps: list[JumpEvent] = []
    while True:
        r = rng.random()
        norms = segment.norms
        if norms[-1] >= r:
            final = StateVector.from_amplitudes(system.space, segment.states[-1])
            return TrajectoryRecord(index, tuple(jumps), final, float(norms[-1]))
        k = int(np.searchsorted(-norms, -r, side="right"))
        frac = (norms[k - 1] - r) / (norms[k - 1] - norms[k])
        time = float(times[segment.start + k - 1] + frac * dt)

        psi = segment.states[k]
        weights = np.array([np.linalg.norm(j.matrix @ psi) ** 2 for j in system.jumps])
        if weights.sum() <= 0:
            msg = f"Trajectory {index}: jump at t={time:.4g} with zero jump rate"
            raise TrajectoryError(msg)
        chosen = system.jumps[int(rng.choice(len(weights), p=weights / weights.sum()))]
        jumps.append(JumpEvent(time, chosen.channel))
        jumped = chosen.matrix @ psi
        jumped = jumped / np.linalg.norm(jumped)

        if sum(is_cavity_channel(j.channel) for j in jumps) > 1:
            msg = f"Trajectory {index}: more than one cavity photon emitted"
            raise TrajectoryError(msg)
        if len(jumps) > max_jumps:
            msg = f"Trajectory {index}: more than {max_jumps} jumps"
            raise TrajectoryError(msg)

        start = segment.start + k
        if system.is_stationary(jumped) or start == len(times) - 1:
            final = StateVector(system.space, jumped)
            return TrajectoryRecord(index, tuple(jumps), final, 1.0)
        logger.debug("Trajectory %d: continuing after jump at t=%.4g", index, time)
        segment = _segment(start, propagate(system, jumped, start, history.substeps))


def evolve_trajectories(
    system: DrivenSystem,
    psi0: StateVector,
    config: EvolutionConfig | None = None,
) -> TrajectoryEnsemble:
    """Unravel the decay of a driven system into quantum-jump trajectories.

    All trajectories share one no-jump history; trajectory k draws its waiting
    times and jump channels from default_rng([seed, k]), so ensembles are
    reproducible and independent of how they are split.

    Args:
        system: Driven system with its jump operators
        psi0: Normalized initial state
        config: Trajectory count, seed and integrator settings

    Raises:
        TrajectoryError: If a trajectory runs away or jumps with zero rate
        NumericalGuardError: Propagated from the integrator
    """
    config = config or EvolutionConfig(method="trajectory")
    history = evolve_no_jump(system, psi0, config)
    records = tuple(
        _unravel(
            system,
            history,
            np.random.default_rng([config.seed, k]),
            k,
            config.max_jumps,
        )
        for k in range(config.n_trajectories)
    )
    ensemble = TrajectoryEnsemble(records, config.seed)
    logger.info(
        "%d trajectories: emitted fraction %.4f, jumps %s",
        len(ensemble),
        ensemble.emitted_fraction(),
        ensemble.channel_counts(),
    )
    return ensemble
