"""Projective measurements and partial traces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from qteleport.core.spaces import HilbertSpace
from qteleport.core.states import DensityOperator, StateVector
from qteleport.exceptions import (
    IncompleteMeasurementError,
    SpaceError,
    SpaceMismatchError,
)
from qteleport.log import get_logger


if TYPE_CHECKING:
    from collections.abc import Sequence

    from qteleport.core.operators import Operator


logger = get_logger("core.measurement")

COMPLETENESS_TOL = 1e-10


@dataclass(frozen=True)
class MeasurementResult:
    outcome: int
    state: StateVector
    probability: float


def measure_projective(
    psi: StateVector,
    projectors: Sequence[Operator],
    seed: int | np.random.Generator | None = None,
) -> MeasurementResult:
    """Sample a projective measurement with Born probabilities.

    Args:
        psi: State to measure (renormalized if needed)
        projectors: Projectors resolving the identity
        seed: Seed or generator for the outcome draw

    Returns:
        Outcome index, collapsed normalized state and its probability

    Raises:
        IncompleteMeasurementError: If the projectors do not sum to the identity
        SpaceMismatchError: If a projector lives on another space
    """
    if not projectors:
        msg = "A measurement needs at least one projector"
        raise IncompleteMeasurementError(msg)
    for projector in projectors:
        if projector.space != psi.space:
            msg = f"Projector space {projector.space} does not match {psi.space}"
            raise SpaceMismatchError(msg)
    total = sum(p.matrix for p in projectors)
    defect = np.linalg.norm(total - np.eye(psi.space.dim), np.inf)
    if defect > COMPLETENESS_TOL:
        msg = f"Projectors miss the identity by {defect:.3e}"
        raise IncompleteMeasurementError(msg)

    amps = psi.amplitudes / psi.norm()
    branches = [p.matrix @ amps for p in projectors]
    probs = np.array([np.vdot(b, b).real for b in branches])
    probs = np.clip(probs, 0.0, None)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    outcome = int(rng.choice(len(probs), p=probs / probs.sum()))
    probability = float(probs[outcome])
    collapsed = StateVector.from_amplitudes(psi.space, branches[outcome])
    logger.debug("Projective outcome %d with probability %.6g", outcome, probability)
    return MeasurementResult(outcome, collapsed, probability)


def partial_trace(rho: DensityOperator, keep: Sequence[str]) -> DensityOperator:
    """Trace out every factor not listed in keep.

    The kept factors stay in the order of the original space.

    Raises:
        UnknownFactorError: If a kept factor does not exist
        SpaceError: If nothing is kept
    """
    space = rho.space
    kept = sorted({space.position(name) for name in keep})
    if not kept:
        msg = "partial_trace needs at least one factor to keep"
        raise SpaceError(msg)
    n = len(space.factors)
    ket = [chr(ord("a") + i) for i in range(n)]
    bra = [chr(ord("a") + n + i) if i in kept else ket[i] for i in range(n)]
    out = [ket[i] for i in kept] + [bra[i] for i in kept]
    tensor = rho.matrix.reshape(space.dims + space.dims)
    reduced = np.einsum(f"{''.join(ket)}{''.join(bra)}->{''.join(out)}", tensor)
    sub = HilbertSpace(tuple(space.factors[i] for i in kept))
    return DensityOperator(sub, reduced.reshape(sub.dim, sub.dim))

