"""Exceptions for qteleport."""

from __future__ import annotations


class QTeleportError(Exception):
    """Base exception for qteleport."""


# quantum-core


class SpaceError(QTeleportError):
    """Raised when Hilbert-space bookkeeping is inconsistent."""


class DuplicateFactorError(SpaceError):
    """Raised when composing spaces with clashing factor names."""


class UnknownFactorError(SpaceError):
    """Raised when a factor or level label does not exist."""


class SpaceMismatchError(SpaceError):
    """Raised when combining objects that live on different spaces."""


class NormalizationError(QTeleportError):
    """Raised when a state or amplitude pair is not normalized."""


class IncompleteMeasurementError(QTeleportError):
    """Raised when projectors do not resolve the identity."""


# pulses


class PulseError(QTeleportError):
    """Raised for invalid pulse or mode data."""


class PulseBoundaryError(PulseError):
    """Raised when a drive envelope is not switched off at the grid edges."""


class GridMismatchError(PulseError):
    """Raised when combining tracks sampled on different grids."""


class ModeNormalizationError(PulseError):
    """Raised when a photon mode carries too little probability to normalize."""


class QuadratureError(PulseError):
    """Raised when a quadrature result is outside its mathematical range."""


# evolution


class NumericalGuardError(QTeleportError):
    """Raised when a numerical safety check fails."""


class StabilityGuardError(NumericalGuardError):
    """Raised when the integrator step is too large for the Hamiltonian."""


class NormIncreaseError(NumericalGuardError):
    """Raised when the no-jump norm grows."""


class TruncationError(NumericalGuardError):
    """Raised when population leaves the one-photon-per-mode truncation."""


class TrajectoryError(NumericalGuardError):
    """Raised when a trajectory cannot be unravelled."""


class AuditError(NumericalGuardError):
    """Raised when a fidelity audit violates the 1 - delta bound."""


# optics


class OpticsError(QTeleportError):
    """Raised for invalid optical networks or photon states."""


class NoElementError(OpticsError):
    """Raised when no element class is registered for a kind."""


class ContractError(OpticsError):
    """Raised when a network fails the Bell-discrimination contract."""


class PhotonNumberError(OpticsError):
    """Raised when a photon state does not hold exactly two photons."""


class UnknownDetectorError(OpticsError):
    """Raised when a click pattern names an unknown detector."""


# configuration


class ConfigError(QTeleportError):
    """Raised when a configuration cannot be loaded or validated."""


class ParameterPathError(ConfigError):
    """Raised when a dotted parameter path does not resolve."""
