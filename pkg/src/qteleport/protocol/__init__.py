"""Teleportation protocol: configuration, fidelity, end-to-end runs and audits."""

from __future__ import annotations

from qteleport.protocol.config import (
    BLOCH_GRID,
    InputState,
    ProtocolConfig,
    PulseConfig,
    SystemConfig,
    apply_overrides,
    load_config,
    set_path,
)
from qteleport.protocol.fidelity import (
    corrected_state,
    correction,
    fidelity_formula,
    oracle_fidelity,
    pattern_fidelity,
    target_state,
)
from qteleport.protocol.report import PatternRow, ProtocolReport
from qteleport.protocol.runner import (
    PhotonModes,
    TeleportationRun,
    run_diagnostics,
    run_teleportation,
    simulate_teleportation,
)
from qteleport.protocol.audit import (
    AUDIT_OVERLAPS,
    AuditRow,
    AuditTable,
    aformula_audit,
    formula_audit,
)

__all__ = [
    "AUDIT_OVERLAPS",
    "BLOCH_GRID",
    "AuditRow",
    "AuditTable",
    "InputState",
    "PatternRow",
    "PhotonModes",
    "ProtocolConfig",
    "ProtocolReport",
    "PulseConfig",
    "SystemConfig",
    "TeleportationRun",
    "aformula_audit",
    "apply_overrides",
    "corrected_state",
    "correction",
    "fidelity_formula",
    "formula_audit",
    "load_config",
    "oracle_fidelity",
    "pattern_fidelity",
    "run_diagnostics",
    "run_teleportation",
    "set_path",
    "simulate_teleportation",
    "target_state",
]
