"""Type definitions for qteleport."""

from __future__ import annotations

from typing import Any, Literal, TypeGuard

import numpy as np
import numpy.typing as npt


ComplexArray = npt.NDArray[np.complex128]
RealArray = npt.NDArray[np.float64]

Polarization = Literal["L", "R"]
Channel = Literal["cavA-L", "cavA-R", "cavB-L", "cavB-R", "spontaneous"]
OutcomeClass = Literal["Plus", "Minus", "Failure"]
Side = Literal["alice", "bob"]

CAVITY_CHANNELS: tuple[Channel, ...] = ("cavA-L", "cavA-R", "cavB-L", "cavB-R")


def is_complex_vector(value: Any, dim: int | None = None) -> TypeGuard[ComplexArray]:
    """Check if a value is a one-dimensional numeric array (of length dim)."""
    if not isinstance(value, np.ndarray) or value.ndim != 1:
        return False
    if not np.issubdtype(value.dtype, np.number):
        return False
    return dim is None or value.shape[0] == dim


def is_square_matrix(value: Any, dim: int | None = None) -> TypeGuard[ComplexArray]:
    """Check if a value is a square numeric matrix (of size dim)."""
    if not isinstance(value, np.ndarray) or value.ndim != 2:  # noqa: PLR2004
        return False
    if value.shape[0] != value.shape[1]:
        return False
    return dim is None or value.shape[0] == dim


def is_cavity_channel(channel: str) -> TypeGuard[Channel]:
    """Check if a jump channel belongs to a cavity mode."""
    return channel in CAVITY_CHANNELS


def frozen_array(values: Any, dtype: Any = np.complex128) -> npt.NDArray[Any]:
    """Copy values into a new read-only array."""
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array
