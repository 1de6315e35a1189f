"""Hamiltonians and dark states of Alice's and Bob's nodes."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from qteleport.atoms.levels import ALICE, BOB, LOST, LevelScheme
from qteleport.core import HilbertSpace, Operator, StateVector
from qteleport.evolution.system import DrivenSystem, JumpOperator


if TYPE_CHECKING:
    from qteleport.atoms.levels import SystemParams
    from qteleport.pulses import DrivePulse
    from qteleport.type_utils import ComplexArray


ANNIHILATE = np.array([[0, 1], [0, 0]], dtype=np.complex128)


def _flip(space: HilbertSpace, factor: str, lower: str, upper: str) -> ComplexArray:
    """|lower><upper| on one factor, lifted."""
    local_factor = space.factor(factor)
    local = np.zeros((local_factor.dim, local_factor.dim), dtype=np.complex128)
    local[local_factor.index(lower), local_factor.index(upper)] = 1.0
    return space.lift(local, factor)


def _antihermitian_part(op: ComplexArray) -> ComplexArray:
    """i (A - A^dagger), hermitian for any A."""
    return 1j * (op - op.conj().T)


def _two_photon_states(space: HilbertSpace, scheme: LevelScheme) -> tuple[int, ...]:
    names = space.names
    left, right = names.index(scheme.cavity_left), names.index(scheme.cavity_right)
    return tuple(
        i
        for i, labels in enumerate(space.basis_labels())
        if labels[left] == "1" and labels[right] == "1"
    )


def _jumps(
    params: SystemParams,
    space: HilbertSpace,
    scheme: LevelScheme,
    prefix: str,
) -> tuple[JumpOperator, ...]:
    root = math.sqrt(params.kappa)
    a_left = space.lift(ANNIHILATE, scheme.cavity_left)
    a_right = space.lift(ANNIHILATE, scheme.cavity_right)
    jumps = [
        JumpOperator(f"{prefix}-L", root * a_left),  # type: ignore[arg-type]
        JumpOperator(f"{prefix}-R", root * a_right),  # type: ignore[arg-type]
    ]
    if params.with_loss:
        jumps.extend(
            JumpOperator(
                "spontaneous",
                math.sqrt(params.gamma) * _flip(space, scheme.atom, LOST, level),
            )
            for level in scheme.excited
        )
    return tuple(jumps)


def _cavity_term(
    space: HilbertSpace,
    scheme: LevelScheme,
    cavity: str,
    lower: str,
    upper: str,
    coupling: float,
) -> ComplexArray:
    """-i g (a^dagger A - A^dagger a) with A = |lower><upper|."""
    a = space.lift(ANNIHILATE, cavity)
    atom = _flip(space, scheme.atom, lower, upper)
    term = a.conj().T @ atom
    return -1j * coupling * (term - term.conj().T)


def alice_parts(params: SystemParams) -> tuple[HilbertSpace, ComplexArray, ComplexArray]:
    """Space, drive part (per unit envelope) and static part of H1."""
    space = ALICE.space(params.with_loss)
    a0 = _flip(space, ALICE.atom, "g0", "e0")
    a1 = _flip(space, ALICE.atom, "g1", "e1")
    drive = params.rabi(params.cg.c_omega0, 1.0) * _antihermitian_part(a0)
    drive = drive + params.rabi(params.cg.c_omega1, 1.0) * _antihermitian_part(a1)
    g = params.g1
    static = _cavity_term(space, ALICE, ALICE.cavity_left, "r", "e0", g)
    static = static + _cavity_term(space, ALICE, ALICE.cavity_right, "r", "e1", g)
    return space, drive, static


def bob_parts(params: SystemParams) -> tuple[HilbertSpace, ComplexArray, ComplexArray]:
    """Space, drive part (per unit envelope) and static part of H2."""
    space = BOB.space(params.with_loss)
    a2 = _flip(space, BOB.atom, "g", "e")
    drive = params.rabi(params.cg.c_omega2, 1.0) * _antihermitian_part(a2)
    g = params.g2
    static = _cavity_term(space, BOB, BOB.cavity_left, "1", "e", g)
    static = static + _cavity_term(space, BOB, BOB.cavity_right, "0", "e", g)
    return space, drive, static


def build_H1(params: SystemParams, value: float) -> Operator:  # noqa: N802
    """Alice's Hamiltonian at drive envelope value E1."""
    space, drive, static = alice_parts(params)
    return Operator(space, value * drive + static, hermitian=True)


def build_H2(params: SystemParams, value: float) -> Operator:  # noqa: N802
    """Bob's Hamiltonian at drive envelope value E2."""
    space, drive, static = bob_parts(params)
    return Operator(space, value * drive + static, hermitian=True)


def alice_system(params: SystemParams, pulse: DrivePulse) -> DrivenSystem:
    space, drive, static = alice_parts(params)
    return DrivenSystem(
        space,
        drive,
        static,
        pulse,
        _jumps(params, space, ALICE, "cavA"),
        _two_photon_states(space, ALICE),
    )


def bob_system(params: SystemParams, pulse: DrivePulse) -> DrivenSystem:
    space, drive, static = bob_parts(params)
    return DrivenSystem(
        space,
        drive,
        static,
        pulse,
        _jumps(params, space, BOB, "cavB"),
        _two_photon_states(space, BOB),
    )


def dark_states_alice(
    params: SystemParams, value: float
) -> tuple[StateVector, StateVector]:
    """The two zero-energy eigenstates of H1 at envelope value E1.

    D_i = (g1 |g_i>|0> + Omega_i |r>|photon_i>) / sqrt(g1^2 + Omega_i^2).
    """
    space = ALICE.space(params.with_loss)
    g = params.g1
    states = []
    for ground, c_omega, photon in (
        ("g0", params.cg.c_omega0, {"cavA_L": 1, "cavA_R": 0}),
        ("g1", params.cg.c_omega1, {"cavA_L": 0, "cavA_R": 1}),
    ):
        omega = params.rabi(c_omega, value)
        amps = g * space.basis_vector(atom1=ground, cavA_L=0, cavA_R=0)
        amps = amps + omega * space.basis_vector(atom1="r", **photon)
        states.append(StateVector(space, amps / math.hypot(g, omega)))
    return states[0], states[1]


def dark_state_bob(params: SystemParams, value: float) -> StateVector:
    """Zero-energy eigenstate of H2 at envelope value E2.

    D2 = (sqrt2 g2 |g>|0> + Omega2 (|0>|R> + |1>|L>) / sqrt2) / sqrt(2 g2^2 + Omega2^2).
    """
    space = BOB.space(params.with_loss)
    g = params.g2
    omega = params.rabi(params.cg.c_omega2, value)
    photons = space.basis_vector(atom2="0", cavB_L=0, cavB_R=1)
    photons = photons + space.basis_vector(atom2="1", cavB_L=1, cavB_R=0)
    amps = math.sqrt(2) * g * space.basis_vector(atom2="g", cavB_L=0, cavB_R=0)
    amps = amps + omega * photons / math.sqrt(2)
    return StateVector(space, amps / math.sqrt(2 * g**2 + omega**2))
