"""Run manifest written next to every command's outputs."""

from __future__ import annotations

from datetime import UTC, datetime
from importlib.metadata import PackageNotFoundError, version
import time
from typing import TYPE_CHECKING, Any

from pydantic import ConfigDict, Field
from schemez import Schema
from upath import UPath

from qteleport.log import get_logger


if TYPE_CHECKING:
    import os

    from qteleport.protocol import ProtocolConfig


logger = get_logger("harness.manifest")

MANIFEST_NAME = "manifest.json"


def code_version() -> str:
    try:
        return version("qteleport")
    except PackageNotFoundError:
        return "unknown"


class RunManifest(Schema):
    """What ran, with which inputs, and what it produced."""

    model_config = ConfigDict(frozen=True)

    command: str
    """CLI command name."""

    config: dict[str, Any]
    """Snapshot of the effective configuration after overrides."""

    version: str = Field(default_factory=code_version)
    """Package version that produced the outputs."""

    seed: int = 0
    started: str = ""
    """UTC start time, ISO 8601."""

    wall_clock: float = 0.0
    """Elapsed seconds."""

    outputs: list[str] = []
    """Output files relative to the output directory."""

    extra: dict[str, Any] = {}
    """Command-specific parameters, such as the sweep specification."""

    def write(self, directory: str | os.PathLike[str]) -> UPath:
        target = UPath(directory) / MANIFEST_NAME
        target.write_text(self.model_dump_json(indent=2), encoding="utf-8")
        logger.info("Wrote %s", target)
        return target


class ManifestRecorder:
    """Collect outputs of one command and write its manifest at the end."""

    def __init__(
        self,
        command: str,
        config: ProtocolConfig,
        out: str | os.PathLike[str],
    ) -> None:
        self.command = command
        self.config = config
        self.out = UPath(out)
        self.out.mkdir(parents=True, exist_ok=True)
        self.outputs: list[str] = []
        self.extra: dict[str, Any] = {}
        self._started = datetime.now(UTC)
        self._clock = time.perf_counter()

    def path(self, name: str) -> UPath:
        """Location of an output file, registered for the manifest."""
        self.outputs.append(name)
        return self.out / name

    def finish(self) -> RunManifest:
        manifest = RunManifest(
            command=self.command,
            config=self.config.model_dump(mode="json"),
            seed=self.config.seed,
            started=self._started.isoformat(),
            wall_clock=time.perf_counter() - self._clock,
            outputs=sorted(self.outputs),
            extra=self.extra,
        )
        manifest.write(self.out)
        return manifest
