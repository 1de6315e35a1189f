"""Serializable result of a teleportation run."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import ConfigDict
from schemez import Schema

from qteleport.type_utils import OutcomeClass


class PatternRow(Schema):
    """One click pattern of the Bell-state measurement."""

    model_config = ConfigDict(frozen=True)

    pattern: str
    outcome: OutcomeClass
    probability: float
    fidelity: float | None = None
    """Fidelity of the corrected conditional state, success patterns only."""


class ProtocolReport(Schema):
    """Outcome, success probability, fidelity and diagnostics of one run."""

    model_config = ConfigDict(frozen=True)

    mode: Literal["analytic", "trajectory"]
    outcome: OutcomeClass
    """Most probable success class, Failure if no success pattern can occur."""

    p_success: float
    """Heralded success probability given that both atoms released their excitation."""

    p_success_overall: float
    """Success probability including the chance that an atom keeps its excitation."""

    p_plus: float
    p_minus: float
    p_failure: float

    fidelity: float | None
    """sqrt(<target|rho|target>) of Bob's corrected state; None without successes."""

    fidelity_formula: float
    """Closed-form prediction for the same amplitudes and branch overlap."""

    one_minus_delta: float
    """Overlap of Alice's two branch modes."""

    o_left: float
    """Overlap of Alice's branch-0 mode with Bob's mode."""

    o_right: float
    """Overlap of Alice's branch-1 mode with Bob's mode."""

    emission_alice: float
    """Probability that atom 1 released its excitation."""

    emission_bob: float
    """Probability that atom 2 released its excitation."""

    bob_state: list[list[complex]] | None = None
    """Corrected conditional density matrix of atom 2."""

    patterns: list[PatternRow] = []
    """Pattern table, sorted by pattern."""

    adiabaticity_alice: float | None = None
    adiabaticity_bob: float | None = None
    bob_populations: dict[str, float] | None = None
    """Atom-2 level populations at T, emitted branches included."""

    n_samples: int | None = None
    counts: dict[str, int] | None = None
    p_success_stderr: float | None = None
    fidelity_stderr: float | None = None

    @property
    def succeeded(self) -> bool:
        return self.outcome != "Failure"

    def summary(self) -> dict[str, Any]:
        """Scalar fields in display order."""
        fields = (
            "mode",
            "outcome",
            "fidelity",
            "fidelity_formula",
            "one_minus_delta",
            "p_success",
            "p_success_overall",
            "p_plus",
            "p_minus",
            "p_failure",
            "o_left",
            "o_right",
            "emission_alice",
            "emission_bob",
            "adiabaticity_alice",
            "adiabaticity_bob",
            "n_samples",
            "p_success_stderr",
            "fidelity_stderr",
        )
        return {name: getattr(self, name) for name in fields}

    def to_text(self) -> str:
        """key = value lines."""
        lines = []
        for key, value in self.summary().items():
            if value is None:
                continue
            text = f"{value:.12g}" if isinstance(value, float) else str(value)
            lines.append(f"{key} = {text}")
        return "\n".join(lines)
