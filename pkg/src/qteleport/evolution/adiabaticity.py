"""Fidelity of the no-jump evolution to an adiabatic reference track."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from qteleport.exceptions import SpaceMismatchError
from qteleport.log import get_logger


if TYPE_CHECKING:
    from qteleport.atoms import DarkStateTrack
    from qteleport.evolution.integrator import NoJumpResult
    from qteleport.type_utils import RealArray


logger = get_logger("evolution.adiabaticity")


@dataclass(frozen=True)
class AdiabaticityReport:
    times: RealArray
    fidelity: RealArray

    @property
    def minimum(self) -> float:
        return float(self.fidelity.min())

    @property
    def worst_time(self) -> float:
        return float(self.times[int(self.fidelity.argmin())])


def adiabaticity_report(
    result: NoJumpResult,
    reference: DarkStateTrack,
) -> AdiabaticityReport:
    """|<D(t)|psi(t)>|^2 with psi the renormalized no-jump state.

    Raises:
        GridMismatchError: If the track and the evolution use different grids
        SpaceMismatchError: If they live on different spaces
    """
    result.grid.require_same(reference.grid)
    if reference.space != result.system.space:
        msg = f"Track space {reference.space} differs from {result.system.space}"
        raise SpaceMismatchError(msg)
    states = np.asarray(result.states)
    norms = np.sqrt(result.norms)
    overlaps = np.einsum("ti,ti->t", reference.states.conj(), states) / norms
    fidelity = np.clip(np.abs(overlaps) ** 2, 0.0, 1.0)
    report = AdiabaticityReport(result.grid.times, fidelity)
    logger.info(
        "Adiabaticity %.6f (worst at t=%.3g)", report.minimum, report.worst_time
    )
    return report
