"""Fixed-step RK4 propagation of the no-jump (non-hermitian) evolution."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import math
from typing import TYPE_CHECKING

import numpy as np

from qteleport.core import StateVector
from qteleport.evolution.config import EvolutionConfig
from qteleport.exceptions import (
    NormalizationError,
    NormIncreaseError,
    SpaceMismatchError,
    StabilityGuardError,
    TruncationError,
)
from qteleport.log import get_logger
from qteleport.pulses import PhotonMode
from qteleport.pulses.modes import integrate_on
from qteleport.type_utils import frozen_array


if TYPE_CHECKING:
    from qteleport.evolution.system import DrivenSystem
    from qteleport.pulses import TimeGrid
    from qteleport.type_utils import Channel, ComplexArray, RealArray


logger = get_logger("evolution.integrator")

NORM_INCREASE_TOL = 1e-9
TRUNCATION_TOL = 1e-10
SUBSTEP_MARGIN = 1.2


def choose_substeps(system: DrivenSystem, config: EvolutionConfig) -> int:
    """RK4 steps per grid interval satisfying the stability guard.

    Raises:
        StabilityGuardError: If a fixed substep count violates the guard
    """
    dt = system.envelope.grid.dt
    bound = system.generator_bound()
    if config.substeps is None:
        return max(1, math.ceil(dt * bound * SUBSTEP_MARGIN / config.guard))
    step = dt / config.substeps * bound
    if step >= config.guard:
        msg = (
            f"h * ||H||_inf = {step:.3g} exceeds the guard {config.guard} "
            f"with {config.substeps} substeps; use more substeps or a finer grid"
        )
        raise StabilityGuardError(msg)
    return config.substeps


def propagate(
    system: DrivenSystem,
    psi: ComplexArray,
    start: int,
    substeps: int,
) -> ComplexArray:
    """No-jump states on the grid from sample `start` to the end.

    Integrates d psi/dt = -i (E(t) D + C - i K) psi; the returned rows are
    unnormalized.

    Raises:
        NormIncreaseError: If the norm grows between two samples
        TruncationError: If a two-photon amplitude exceeds 1e-10
    """
    grid = system.envelope.grid
    times = grid.times[start:]
    n = len(times)
    states = np.empty((n, system.space.dim), dtype=np.complex128)
    states[0] = psi
    drive = -1j * system.drive
    static = -1j * system.static - system.decay
    h = grid.dt / substeps
    half = np.arange(2 * substeps * (n - 1) + 1)
    envelope = np.asarray(system.envelope.value_at(times[0] + 0.5 * h * half))

    current = np.array(psi, dtype=np.complex128)
    for i in range(n - 1):
        for k in range(substeps):
            j = 2 * (i * substeps + k)
            e0, em, e1 = envelope[j], envelope[j + 1], envelope[j + 2]
            gen_mid = em * drive + static
            k1 = (e0 * drive + static) @ current
            k2 = gen_mid @ (current + 0.5 * h * k1)
            k3 = gen_mid @ (current + 0.5 * h * k2)
            k4 = (e1 * drive + static) @ (current + h * k3)
            current = current + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        states[i + 1] = current

    norms = np.linalg.norm(states, axis=1)
    if (growth := float(np.diff(norms).max(initial=0.0))) > NORM_INCREASE_TOL:
        msg = f"No-jump norm increased by {growth:.3e} between grid samples"
        raise NormIncreaseError(msg)
    if system.two_photon_states:
        leak = float(np.abs(states[:, list(system.two_photon_states)]).max())
        if leak > TRUNCATION_TOL:
            msg = f"Two-photon amplitude {leak:.3e} leaves the one-photon truncation"
            raise TruncationError(msg)
    return states


@dataclass(frozen=True)
class NoJumpResult:
    """Sampled no-jump history of one driven system."""

    system: DrivenSystem
    states: ComplexArray
    substeps: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", frozen_array(self.states))

    @property
    def grid(self) -> TimeGrid:
        return self.system.envelope.grid

    @cached_property
    def norms(self) -> RealArray:
        """Squared norm of the no-jump state, the probability of no jump so far."""
        return np.einsum("ti,ti->t", self.states.conj(), self.states).real

    @cached_property
    def op_rates(self) -> RealArray:
        """||J psi(t)||^2 per jump operator (rows) and sample (columns)."""
        if not self.system.jumps:
            return np.zeros((0, len(self.states)))
        rates = [
            np.sum(np.abs(self.states @ jump.matrix.T) ** 2, axis=1)
            for jump in self.system.jumps
        ]
        return np.array(rates)

    def rate(self, channel: Channel) -> RealArray:
        rows = [i for i, j in enumerate(self.system.jumps) if j.channel == channel]
        return self.op_rates[rows].sum(axis=0) if rows else np.zeros(len(self.states))

    def mode(self, channel: Channel) -> PhotonMode:
        """Raw emitted mode sqrt(kappa) |c(t)| of one cavity channel."""
        polarization = "R" if channel.endswith("-R") else "L"
        return PhotonMode(self.grid, np.sqrt(self.rate(channel)), polarization)

    def total_mode(self) -> PhotonMode:
        """Mode of all cavity channels together, sqrt of the summed rates."""
        total = sum(
            (self.rate(c) for c in self.system.cavity_channels),
            start=np.zeros(len(self.states)),
        )
        return PhotonMode(self.grid, np.sqrt(total))

    def emission_probability(self, channel: Channel | None = None) -> float:
        """Integrated emission into one channel, or all cavity channels."""
        channels = self.system.cavity_channels if channel is None else (channel,)
        return sum(integrate_on(self.grid, self.rate(c)) for c in channels)

    @property
    def loss_probability(self) -> float:
        return integrate_on(self.grid, self.rate("spontaneous"))

    @property
    def final(self) -> StateVector:
        """Unnormalized no-jump state at T."""
        return StateVector(self.system.space, self.states[-1], normalized=False)

    def conditional(self, index: int = -1) -> StateVector:
        """Renormalized no-jump state at a grid sample."""
        return StateVector.from_amplitudes(self.system.space, self.states[index])


def evolve_no_jump(
    system: DrivenSystem,
    psi0: StateVector,
    config: EvolutionConfig | None = None,
) -> NoJumpResult:
    """Integrate the no-jump evolution over the drive pulse's grid.

    Args:
        system: Driven system with its jump operators
        psi0: Normalized initial state
        config: Integrator settings

    Raises:
        NormalizationError: If psi0 is not normalized
        SpaceMismatchError: If psi0 lives on another space
        GridMismatchError: If the config grid differs from the pulse grid
        StabilityGuardError: If the guard cannot be met
        NormIncreaseError: If the norm grows
        TruncationError: If a two-photon state gets populated
    """
    config = config or EvolutionConfig()
    if config.grid is not None:
        config.grid.require_same(system.envelope.grid)
    if abs(psi0.norm() - 1.0) > NORM_INCREASE_TOL:
        msg = f"Initial state norm is {psi0.norm():.12g}, expected 1"
        raise NormalizationError(msg)
    if psi0.space != system.space:
        msg = f"Initial state lives on {psi0.space}, system on {system.space}"
        raise SpaceMismatchError(msg)
    substeps = choose_substeps(system, config)
    logger.info(
        "No-jump evolution on %s: %d samples, %d substeps",
        system.space,
        system.envelope.grid.n_steps + 1,
        substeps,
    )
    states = propagate(system, psi0.amplitudes, 0, substeps)
    result = NoJumpResult(system, states, substeps)
    logger.debug("Final no-jump probability %.6g", result.norms[-1])
    return result
