"""Level schemes, Hamiltonians and adiabatic states of the two nodes."""

from __future__ import annotations

from qteleport.atoms.levels import (
    ALICE,
    BOB,
    AliceLevelScheme,
    BobLevelScheme,
    LevelScheme,
    SystemParams,
    Transition,
)
from qteleport.atoms.hamiltonians import (
    alice_system,
    bob_system,
    build_H1,
    build_H2,
    dark_state_bob,
    dark_states_alice,
)
from qteleport.atoms.adiabatic import (
    DarkStateTrack,
    PhaseCheck,
    adiabatic_state_alice,
    adiabatic_state_bob,
    alice_state_at_angles,
    bob_state_at_angle,
    dark_state_track_alice,
    dark_state_track_bob,
    geometric_phase,
    phase_check,
)
from qteleport.atoms.preparation import (
    alice_initial_state,
    bob_initial_state,
    prepare_initial_state,
)

__all__ = [
    "ALICE",
    "BOB",
    "AliceLevelScheme",
    "BobLevelScheme",
    "DarkStateTrack",
    "LevelScheme",
    "PhaseCheck",
    "SystemParams",
    "Transition",
    "adiabatic_state_alice",
    "adiabatic_state_bob",
    "alice_initial_state",
    "alice_state_at_angles",
    "alice_system",
    "bob_initial_state",
    "bob_state_at_angle",
    "bob_system",
    "build_H1",
    "build_H2",
    "dark_state_bob",
    "dark_state_track_alice",
    "dark_state_track_bob",
    "dark_states_alice",
    "geometric_phase",
    "phase_check",
    "prepare_initial_state",
]
