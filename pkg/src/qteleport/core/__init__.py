"""Finite-dimensional state-space arithmetic."""

from __future__ import annotations

from qteleport.core.spaces import Factor, HilbertSpace, compose
from qteleport.core.states import DensityOperator, StateVector, tensor
from qteleport.core.operators import Operator, apply
from qteleport.core.measurement import (
    MeasurementResult,
    measure_projective,
    partial_trace,
)

__all__ = [
    "DensityOperator",
    "Factor",
    "HilbertSpace",
    "MeasurementResult",
    "Operator",
    "StateVector",
    "apply",
    "compose",
    "measure_projective",
    "partial_trace",
    "tensor",
]
