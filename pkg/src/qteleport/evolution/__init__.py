"""Propagation of the driven atom-cavity systems with cavity decay."""

from __future__ import annotations

from qteleport.evolution.system import DrivenSystem, JumpOperator
from qteleport.evolution.config import EvolutionConfig
from qteleport.evolution.integrator import NoJumpResult, evolve_no_jump
from qteleport.evolution.trajectories import (
    JumpEvent,
    TrajectoryEnsemble,
    TrajectoryRecord,
    evolve_trajectories,
)
from qteleport.evolution.adiabaticity import AdiabaticityReport, adiabaticity_report

__all__ = [
    "AdiabaticityReport",
    "DrivenSystem",
    "EvolutionConfig",
    "JumpEvent",
    "JumpOperator",
    "NoJumpResult",
    "TrajectoryEnsemble",
    "TrajectoryRecord",
    "adiabaticity_report",
    "evolve_no_jump",
    "evolve_trajectories",
]
