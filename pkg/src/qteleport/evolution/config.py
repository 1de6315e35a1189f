"""Evolution settings."""

from __future__ import annotations

from typing import Literal

from pydantic import ConfigDict, Field
from schemez import Schema

from qteleport.pulses import TimeGrid


class EvolutionConfig(Schema):
    """How the driven systems are integrated and unravelled."""

    model_config = ConfigDict(frozen=True)

    method: Literal["no-jump", "trajectory"] = "no-jump"
    """Deterministic no-jump propagation or Monte-Carlo trajectories."""

    n_trajectories: int = Field(default=1000, ge=1)
    """Trajectories per ensemble."""

    seed: int = Field(default=0, ge=0)
    """Base seed; trajectory k draws from default_rng([seed, k])."""

    substeps: int | None = Field(default=None, ge=1)
    """RK4 steps per grid interval. None picks the smallest count meeting the guard."""

    guard: float = Field(default=0.05, gt=0)
    """Upper bound on h * ||generator||_inf for every RK4 step of size h."""

    max_jumps: int = Field(default=4, ge=1)
    """Jumps after which a trajectory is considered runaway."""

    grid: TimeGrid | None = None
    """Integration grid; defaults to the drive pulse's grid."""
