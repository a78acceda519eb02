"""JSON result documents.  Output is deterministic: keys are sorted and no
wall-clock data is included unless requested."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class ResultDocument:
    command: str
    inputs: list[str]
    flags: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    ok: bool = True

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": list(self.inputs),
            "flags": dict(self.flags),
            "results": self.results,
            "ok": self.ok,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "ResultDocument":
        doc = json.loads(text)
        return cls(doc["command"], doc["inputs"], doc["flags"], doc["results"], doc["ok"])


def bigraded_json(dims: dict[tuple[int, int], int]) -> list[dict]:
    return [{"h": h, "q": q, "dim": v} for (h, q), v in sorted(dims.items())]


def kh_pretty(dims: dict[tuple[int, int], int]) -> str:
    """Poincare polynomial, e.g. ``q + q^3 + t^2q^5 + t^3q^9``."""
    parts = []
    for (h, q), v in sorted(dims.items()):
        c = "" if v == 1 else str(v)
        t = "" if h == 0 else ("t" if h == 1 else f"t^{h}")
        qq = "" if q == 0 else ("q" if q == 1 else f"q^{q}")
        mono = c + t + qq
        parts.append(mono or "1")
    return " + ".join(parts) if parts else "0"
