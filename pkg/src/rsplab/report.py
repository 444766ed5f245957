"""JSON report assembly shared by the CLI and the acceptance runner."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

from . import __version__


@dataclass
class Check:
    name: str
    passed: bool
    max_residual: float = 0.0
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": bool(self.passed),
            "max_residual": _finite(self.max_residual),
            "detail": self.detail,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.name}  max_residual={self.max_residual:.3e}"
        return f"{text}  {self.detail}" if self.detail else text


def _finite(x: float):
    x = float(x)
    return x if math.isfinite(x) else str(x)


@dataclass
class Report:
    command: str
    config: dict
    tolerances: dict
    checks: list[Check] = field(default_factory=list)
    transcripts: list[dict] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)
    wall_time_s: float = 0.0

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "artifact_version": __version__,
            "command": self.command,
            "config": self.config,
            "tolerances": self.tolerances,
            "checks": [c.to_dict() for c in self.checks],
            "transcripts": self.transcripts,
            "data": self.data,
            "overall_pass": self.overall_pass,
            "wall_time_s": self.wall_time_s,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"
