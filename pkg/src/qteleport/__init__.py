"""QTeleport: main package.

Simulate atomic-state teleportation through cavity decay and a linear-optics
Bell-state measurement.
"""

from __future__ import annotations

from importlib.metadata import version

__version__ = version("qteleport")
__title__ = "QTeleport"

__author__ = "Philipp Temminghoff"

from qteleport.exceptions import QTeleportError
from qteleport.protocol import (
    InputState,
    ProtocolConfig,
    ProtocolReport,
    fidelity_formula,
    formula_audit,
    load_config,
    run_teleportation,
)

__all__ = [
    "InputState",
    "ProtocolConfig",
    "ProtocolReport",
    "QTeleportError",
    "__version__",
    "fidelity_formula",
    "formula_audit",
    "load_config",
    "run_teleportation",
]
