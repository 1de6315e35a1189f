"""Configuration tree of a teleportation run and its TOML loader."""

from __future__ import annotations

import cmath
import math
import tomllib
from typing import TYPE_CHECKING, Any, Literal, Self

import numpy as np
from pydantic import ConfigDict, Field, ValidationError, model_validator
from schemez import Schema
from upath import UPath

from qteleport.atoms import SystemParams
from qteleport.evolution import EvolutionConfig
from qteleport.exceptions import ConfigError, ParameterPathError
from qteleport.log import get_logger
from qteleport.optics import DetectionModel, NetworkConfig
from qteleport.pulses import CgTable, TimeGrid, gaussian_pulse
from qteleport.pulses.grid import GaussianConvention


if TYPE_CHECKING:
    from collections.abc import Iterable
    import os

    from qteleport.pulses import DrivePulse
    from qteleport.type_utils import ComplexArray


logger = get_logger("protocol.config")

AMPLITUDE_TOL = 1e-10

# poles, four equatorial points and two generic points
BLOCH_GRID: tuple[tuple[float, float], ...] = (
    (0.0, 0.0),
    (math.pi, 0.0),
    (math.pi / 2, 0.0),
    (math.pi / 2, math.pi / 2),
    (math.pi / 2, math.pi),
    (math.pi / 2, 3 * math.pi / 2),
    (math.pi / 4, math.pi / 4),
    (3 * math.pi / 4, 5 * math.pi / 4),
)


class InputState(Schema):
    """Amplitudes of Alice's qubit a|g0> + b|g1>."""

    model_config = ConfigDict(frozen=True)

    a: complex = 1 / math.sqrt(2)
    """Amplitude of |g0>."""

    b: complex = 1 / math.sqrt(2)
    """Amplitude of |g1>."""

    @model_validator(mode="after")
    def _normalized(self) -> Self:
        error = abs(abs(self.a) ** 2 + abs(self.b) ** 2 - 1.0)
        if error > AMPLITUDE_TOL:
            msg = f"|a|^2 + |b|^2 must be 1, off by {error:.3e}"
            raise ValueError(msg)
        return self

    @classmethod
    def from_bloch(cls, theta: float, phi: float) -> InputState:
        """cos(theta/2) |g0> + e^{i phi} sin(theta/2) |g1>."""
        return cls(a=math.cos(theta / 2), b=cmath.exp(1j * phi) * math.sin(theta / 2))

    @classmethod
    def bloch_grid(cls) -> list[InputState]:
        return [cls.from_bloch(theta, phi) for theta, phi in BLOCH_GRID]

    @property
    def target(self) -> ComplexArray:
        """Bob's intended qubit a|0> + b|1>."""
        return np.array([self.a, self.b], dtype=np.complex128)

    def with_phase(self, phase: float) -> InputState:
        factor = cmath.exp(1j * phase)
        return InputState(a=self.a * factor, b=self.b * factor)


class SystemConfig(Schema):
    """Physical parameters shared by both nodes, with per-node atom positions."""

    model_config = ConfigDict(frozen=True)

    cg: CgTable = Field(default_factory=CgTable)
    """Clebsch-Gordan factors."""

    kappa: float = Field(default=1.0, gt=0)
    """Common cavity decay rate."""

    gamma: float = Field(default=0.0, ge=0)
    """Spontaneous emission rate of the excited levels."""

    g0: float = Field(default=5.0, gt=0)
    """Coupling magnitude in units of kappa."""

    s_A: float = Field(default=1.0, gt=0, le=1)  # noqa: N815
    """Spatial-mode value at atom 1."""

    s_B: float = Field(default=1.0, gt=0, le=1)  # noqa: N815
    """Spatial-mode value at atom 2."""

    def alice(self) -> SystemParams:
        return SystemParams(
            cg=self.cg,
            kappa=self.kappa,
            gamma=self.gamma,
            g0=self.g0,
            spatial_mode=self.s_A,
        )

    def bob(self) -> SystemParams:
        return SystemParams(
            cg=self.cg,
            kappa=self.kappa,
            gamma=self.gamma,
            g0=self.g0,
            spatial_mode=self.s_B,
        )


class PulseConfig(Schema):
    """Gaussian drive pulses of both nodes."""

    model_config = ConfigDict(frozen=True)

    duration: float = Field(default=40.0, gt=0)
    """Pulse window T in units of 1/kappa."""

    n_steps: int = Field(default=4000, ge=2)
    """Grid intervals."""

    peak_fraction: float = Field(default=0.5, gt=0, lt=1)
    """Peak time as a fraction of T."""

    width: float | None = Field(default=None, gt=0)
    """Gaussian width t_w; defaults to sqrt(2) T / 10."""

    amplitude: float | None = Field(default=None, gt=0)
    """Alice's peak E1; defaults to C_g1 / C_Omega0."""

    convention: GaussianConvention = "e-fold"
    """How the width is read."""

    ratio: float | None = Field(default=None, gt=0)
    """E2 / E1; defaults to the ratio matching Bob's photon to Alice's branch 1."""

    delay: float = 0.0
    """Shift of Bob's pulse peak relative to Alice's."""

    def grid(self) -> TimeGrid:
        return TimeGrid(duration=self.duration, n_steps=self.n_steps)

    @property
    def t_w(self) -> float:
        return self.width if self.width is not None else math.sqrt(2) * self.duration / 10

    @property
    def t_peak(self) -> float:
        return self.peak_fraction * self.duration

    def alice_pulse(self, cg: CgTable) -> DrivePulse:
        e_max = self.amplitude if self.amplitude is not None else cg.balanced_amplitude
        return gaussian_pulse(self.grid(), self.t_peak, self.t_w, e_max, self.convention)

    def bob_pulse(self, cg: CgTable) -> DrivePulse:
        e_max = self.amplitude if self.amplitude is not None else cg.balanced_amplitude
        ratio = self.ratio if self.ratio is not None else cg.matched_ratio
        return gaussian_pulse(
            self.grid(),
            self.t_peak + self.delay,
            self.t_w,
            ratio * e_max,
            self.convention,
        )


class ProtocolConfig(Schema):
    """Everything a teleportation run needs."""

    model_config = ConfigDict(frozen=True)

    state: InputState = Field(default_factory=InputState)
    """Qubit to teleport."""

    system: SystemConfig = Field(default_factory=SystemConfig)
    """Atom-cavity parameters."""

    pulses: PulseConfig = Field(default_factory=PulseConfig)
    """Drive pulses."""

    detection: DetectionModel = Field(default_factory=DetectionModel)
    """Losses and detectors."""

    network: NetworkConfig = Field(default_factory=NetworkConfig)
    """Bell-state analyzer."""

    evolution: EvolutionConfig = Field(default_factory=EvolutionConfig)
    """Integrator settings for diagnostics and trajectories."""

    mode: Literal["analytic", "trajectory"] = "analytic"
    """Closed-form photon modes, or Monte-Carlo sampling of emissions and clicks."""

    n_samples: int = Field(default=100_000, ge=1)
    """Trials in trajectory mode."""

    seed: int = Field(default=0, ge=0)
    """Seed of every random draw."""

    force_mode_match: bool = False
    """Give all photons Bob's temporal mode (overlap forced to 1)."""

    diagnostics: bool = False
    """Integrate the dynamics for adiabaticity and emission diagnostics."""


def parse_value(raw: str) -> Any:
    """TOML literal if possible, otherwise the raw string."""
    try:
        return tomllib.loads(f"value = {raw}")["value"]
    except tomllib.TOMLDecodeError:
        return raw


def _validate(data: dict[str, Any], source: str) -> ProtocolConfig:
    try:
        return ProtocolConfig.model_validate(data)
    except ValidationError as e:
        msg = f"Invalid configuration from {source}: {e}"
        raise ConfigError(msg) from e


def load_config(path: str | os.PathLike[str] | None = None) -> ProtocolConfig:
    """Read a TOML configuration file; defaults when no path is given.

    Raises:
        ConfigError: If the file cannot be read, parsed or validated
    """
    if path is None:
        return ProtocolConfig()
    try:
        with UPath(path).open("rb") as f:
            data = tomllib.load(f)
    except (OSError, tomllib.TOMLDecodeError) as e:
        msg = f"Cannot read configuration {path}: {e}"
        raise ConfigError(msg) from e
    data.pop("sweep", None)  # read by the sweep harness
    logger.info("Loaded configuration from %s", path)
    return _validate(data, str(path))


def set_path(config: ProtocolConfig, path: str, value: Any) -> ProtocolConfig:
    """Copy of the config with one dotted parameter replaced.

    Raises:
        ParameterPathError: If the path does not exist in the config tree
        ConfigError: If the new value fails validation
    """
    data = config.model_dump()
    node: Any = data
    *parents, leaf = path.split(".")
    for key in parents:
        if not isinstance(node, dict) or not isinstance(node.get(key), dict):
            msg = f"Unknown parameter path {path!r}"
            raise ParameterPathError(msg)
        node = node[key]
    if leaf not in node:
        msg = f"Unknown parameter path {path!r}"
        raise ParameterPathError(msg)
    node[leaf] = value
    return _validate(data, f"--set {path}")


def apply_overrides(config: ProtocolConfig, overrides: Iterable[str]) -> ProtocolConfig:
    """Apply `path=value` assignments in order.

    Raises:
        ConfigError: If an assignment is malformed or invalid
        ParameterPathError: If a path does not resolve
    """
    for item in overrides:
        path, sep, raw = item.partition("=")
        if not sep or not path.strip():
            msg = f"Override {item!r} is not of the form path=value"
            raise ConfigError(msg)
        config = set_path(config, path.strip(), parse_value(raw.strip()))
    return config
