"""Deterministic JSON report envelopes for the command-line tools.

Every command emits a single JSON document: tool identity and version, the
command name, a schema tag, the full run configuration, sha256 hashes of
the inputs, and the result.  Reports carry no timestamps or environment
data, so identical configurations give byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

TOOL_NAME = "polyloj"
VERSION = "0.1.0"


@dataclass(frozen=True)
class RunConfig:
    """Everything that can influence a run, serialized into its report."""

    seed: int = 0
    budget: int = 48
    trials: int = 100
    attempts: int = 2000
    epsilon: float = 1e-6
    mode: str = "auto"
    samples: int = 100000
    tolerances: tuple[tuple[str, float], ...] = field(default=())
    out: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "budget": self.budget,
            "trials": self.trials,
            "attempts": self.attempts,
            "epsilon": self.epsilon,
            "mode": self.mode,
            "samples": self.samples,
            "tolerances": {k: v for k, v in self.tolerances},
        }


def input_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _sanitize(value):
    """Replace non-finite floats so the emitted JSON stays standard."""
    if isinstance(value, float):
        if value != value:
            return "NaN"
        if value == float("inf"):
            return "Infinity"
        if value == float("-inf"):
            return "-Infinity"
        return value
    if isinstance(value, dict):
        return {k: _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    return value


def build_report(
    command: str,
    config: RunConfig,
    inputs: Sequence[tuple[str, str]],
    result: dict,
) -> dict:
    return {
        "tool": {"name": TOOL_NAME, "version": VERSION},
        "command": command,
        "schema": f"{TOOL_NAME}/{command}/v1",
        "config": config.to_json(),
        "inputs": [
            {"name": name, "sha256": input_hash(text)} for name, text in inputs
        ],
        "result": result,
    }


def dumps(report: dict) -> str:
    return json.dumps(_sanitize(report), indent=2, sort_keys=True) + "\n"
