from __future__ import annotations

import math

import pytest

from qteleport.atoms import SystemParams
from qteleport.protocol import ProtocolConfig, PulseConfig
from qteleport.pulses import CgTable


@pytest.fixture
def cg() -> CgTable:
    return CgTable()


@pytest.fixture
def params() -> SystemParams:
    return SystemParams()


@pytest.fixture
def pulse_config() -> PulseConfig:
    """Gaussian drive of the reference configuration (T = 40, width sqrt2 T / 10)."""
    return PulseConfig()


@pytest.fixture
def alice_pulse(pulse_config: PulseConfig, cg: CgTable):
    return pulse_config.alice_pulse(cg)


@pytest.fixture
def bob_pulse(pulse_config: PulseConfig, cg: CgTable):
    return pulse_config.bob_pulse(cg)


@pytest.fixture
def config() -> ProtocolConfig:
    return ProtocolConfig()


@pytest.fixture
def ideal_config() -> ProtocolConfig:
    """Mode-matched photons and perfect detectors."""
    return ProtocolConfig(force_mode_match=True)


@pytest.fixture
def balanced() -> tuple[complex, complex]:
    return 1 / math.sqrt(2), 1 / math.sqrt(2)
