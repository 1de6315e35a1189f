"""Teleportation fidelity: closed form, Bob's correction and the brute-force oracle."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from qteleport.core import DensityOperator, StateVector
from qteleport.optics import (
    BOB_QUBIT,
    DetectionModel,
    build_bsm_network,
    bsm_probabilities,
    teleportation_state_from_gram,
)


if TYPE_CHECKING:
    from collections.abc import Iterable

    from qteleport.optics import BsmNetwork, BsmOutcome
    from qteleport.type_utils import ComplexArray


PHASE_FLIP = np.diag([1.0, -1.0]).astype(np.complex128)


def fidelity_formula(a: complex, b: complex, overlap: float) -> float:
    """sqrt(|a|^4 + |b|^4 + 2 |a|^2 |b|^2 O^2), the published closed form."""
    pa, pb = abs(a) ** 2, abs(b) ** 2
    return math.sqrt(pa**2 + pb**2 + 2 * pa * pb * overlap**2)


def correction(outcome: str) -> ComplexArray:
    """Bob's unitary after a heralded outcome: identity for Plus, Z for Minus."""
    return PHASE_FLIP if outcome == "Minus" else np.eye(2, dtype=np.complex128)


def corrected_matrix(outcomes: Iterable[BsmOutcome]) -> ComplexArray | None:
    """Unnormalized atom-2 state summed over corrected success patterns."""
    total = np.zeros((2, 2), dtype=np.complex128)
    found = False
    for o in outcomes:
        if o.outcome == "Failure" or o.weighted_state is None:
            continue
        u = correction(o.outcome)
        total += u @ o.weighted_state @ u.conj().T
        found = True
    return total if found and np.trace(total).real > 0 else None


def corrected_state(outcomes: Iterable[BsmOutcome]) -> DensityOperator | None:
    """Bob's normalized state after correction, averaged over success patterns."""
    matrix = corrected_matrix(outcomes)
    if matrix is None:
        return None
    return DensityOperator.from_unnormalized(BOB_QUBIT, matrix)


def target_state(a: complex, b: complex) -> StateVector:
    return StateVector.from_amplitudes(BOB_QUBIT, np.array([a, b], dtype=np.complex128))


def pattern_fidelity(outcome: BsmOutcome, a: complex, b: complex) -> float | None:
    """Fidelity of one success pattern's corrected state to a|0> + b|1>."""
    state = outcome.state
    if outcome.outcome == "Failure" or state is None:
        return None
    return state.transformed(correction(outcome.outcome)).fidelity(target_state(a, b))


def oracle_fidelity(
    a: complex,
    b: complex,
    overlap: float,
    network: BsmNetwork | None = None,
    detection: DetectionModel | None = None,
) -> float:
    """Fidelity from the full two-photon calculation.

    Bob's mode equals Alice's branch-1 mode and Alice's branch modes overlap by O.
    """
    gram = np.array([[1.0, 1.0, overlap], [1.0, 1.0, overlap], [overlap, overlap, 1.0]])
    state = teleportation_state_from_gram(a, b, gram)
    outcomes = bsm_probabilities(state, network or build_bsm_network(), detection)
    rho = corrected_state(outcomes)
    return 0.0 if rho is None else rho.fidelity(target_state(a, b))
