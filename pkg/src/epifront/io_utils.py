"""Deterministic file output: CSV/JSON writers, config hashing, run manifests.

Floats are rendered with 17 significant digits and newline-terminated rows so
repeated runs of the same configuration produce byte-identical data files.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path


def fmt_float(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, (int,)):
        return str(x)
    return format(float(x), ".17g")


def write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(x if isinstance(x, str) else fmt_float(x) for x in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_json(path: Path, obj: dict) -> None:
    path.write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")


def canonical_config_hash(cfg_dict: dict) -> str:
    canon = json.dumps(cfg_dict, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


@dataclass
class RunManifest:
    command: str
    config_hash: str
    dx: float
    dt: float | None
    status: str
    outputs: list[str] = field(default_factory=list)
    wall_clock_s: float = 0.0
    version: str = "0.1.0"

    def write(self, path: Path) -> None:
        write_json(
            path,
            {
                "command": self.command,
                "config_hash": self.config_hash,
                "grid": {"dx": self.dx, "dt": self.dt},
                "status": self.status,
                "outputs": self.outputs,
                "wall_clock_s": self.wall_clock_s,
                "version": self.version,
            },
        )


class ManifestTimer:
    """Collects output paths and wall-clock for one CLI invocation."""

    def __init__(self, command: str, cfg_dict: dict, dx: float, dt: float | None):
        self.manifest = RunManifest(
            command=command,
            config_hash=canonical_config_hash(cfg_dict),
            dx=dx,
            dt=dt,
            status="ok",
        )
        self._start = time.perf_counter()

    def add(self, path: Path) -> Path:
        self.manifest.outputs.append(str(path))
        return path

    def finish(self, path: Path, status: str = "ok") -> None:
        self.manifest.status = status
        self.manifest.wall_clock_s = time.perf_counter() - self._start
        self.manifest.write(path)
