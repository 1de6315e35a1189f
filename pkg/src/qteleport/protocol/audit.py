"""Closed-form fidelity against the brute-force two-photon calculation."""

from __future__ import annotations

import asyncio
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import functools
from typing import TYPE_CHECKING

from qteleport.exceptions import AuditError
from qteleport.log import get_logger
from qteleport.optics import build_bsm_network
from qteleport.protocol.config import BLOCH_GRID, InputState
from qteleport.protocol.fidelity import fidelity_formula, oracle_fidelity


if TYPE_CHECKING:
    from collections.abc import Sequence

    from qteleport.optics import BsmNetwork, DetectionModel


logger = get_logger("protocol.audit")

AUDIT_OVERLAPS: tuple[float, ...] = tuple(round(0.1 * k, 10) for k in range(1, 11))
BOUND_TOL = 1e-6
AGREEMENT_TOL = 1e-9


@dataclass(frozen=True)
class AuditRow:
    theta: float
    phi: float
    a: complex
    b: complex
    overlap: float
    oracle: float
    formula: float

    @property
    def bound(self) -> float:
        """Lower bound 1 - delta, the overlap of Alice's branch modes."""
        return self.overlap

    @property
    def deviation(self) -> float:
        return self.oracle - self.formula


@dataclass(frozen=True)
class AuditTable:
    rows: tuple[AuditRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def max_deviation(self) -> float:
        """Largest |oracle - formula| over the grid."""
        return max((abs(r.deviation) for r in self.rows), default=0.0)

    @property
    def worst(self) -> AuditRow | None:
        return max(self.rows, key=lambda r: abs(r.deviation), default=None)

    def disagreements(self, tol: float = AGREEMENT_TOL) -> list[AuditRow]:
        return [r for r in self.rows if abs(r.deviation) > tol]


def audit_point(
    theta: float,
    phi: float,
    overlap: float,
    network: BsmNetwork,
    detection: DetectionModel | None = None,
) -> AuditRow:
    """Oracle and closed form for one input state and branch overlap.

    Raises:
        AuditError: If the oracle falls below the 1 - delta bound
    """
    state = InputState.from_bloch(theta, phi)
    row = AuditRow(
        theta=theta,
        phi=phi,
        a=state.a,
        b=state.b,
        overlap=overlap,
        oracle=oracle_fidelity(state.a, state.b, overlap, network, detection),
        formula=fidelity_formula(state.a, state.b, overlap),
    )
    if row.oracle < row.bound - BOUND_TOL:
        msg = (
            f"Oracle fidelity {row.oracle:.9f} below the bound {row.bound:.9f} "
            f"at theta={theta:.6g}, phi={phi:.6g}"
        )
        raise AuditError(msg)
    return row


async def aformula_audit(
    bloch: Sequence[tuple[float, float]] = BLOCH_GRID,
    overlaps: Sequence[float] = AUDIT_OVERLAPS,
    network: BsmNetwork | None = None,
    detection: DetectionModel | None = None,
    jobs: int = 1,
) -> AuditTable:
    """Compare the closed-form fidelity with the two-photon oracle on a grid.

    Every point checks the oracle against the 1 - delta lower bound. Points where
    oracle and closed form disagree are recorded, never raised. Rows come out
    Bloch-major whatever the number of workers.

    Args:
        bloch: (theta, phi) Bloch angles of Alice's input states
        overlaps: Overlap values O of Alice's two branch modes
        network: Analyzer to use, the default network if omitted
        detection: Detector model, ideal if omitted
        jobs: Worker processes; 1 runs in-process

    Raises:
        AuditError: If the oracle falls below the 1 - delta bound
    """
    network = network or build_bsm_network()
    points = [(theta, phi, o) for theta, phi in bloch for o in overlaps]
    logger.info("Auditing %d grid points with %d jobs", len(points), jobs)
    if jobs <= 1:
        rows = [audit_point(t, p, o, network, detection) for t, p, o in points]
    else:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                loop.run_in_executor(
                    pool, functools.partial(audit_point, t, p, o, network, detection)
                )
                for t, p, o in points
            ]
            rows = list(await asyncio.gather(*futures))

    table = AuditTable(tuple(rows))
    if (worst := table.worst) is not None and (n := len(table.disagreements())):
        logger.warning(
            "Closed form and oracle disagree at %d of %d points, max %.6g at O=%.3g",
            n,
            len(table),
            table.max_deviation,
            worst.overlap,
        )
    return table


def formula_audit(
    bloch: Sequence[tuple[float, float]] = BLOCH_GRID,
    overlaps: Sequence[float] = AUDIT_OVERLAPS,
    network: BsmNetwork | None = None,
    detection: DetectionModel | None = None,
    jobs: int = 1,
) -> AuditTable:
    """Synchronous wrapper around `aformula_audit`."""
    return asyncio.run(aformula_audit(bloch, overlaps, network, detection, jobs))
