"""Check records and deterministic JSON reports."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import Poly

SCHEMA = "omnilie/1"
VERSION = "0.1.0"

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "version", "command", "seed", "params", "checks", "summary", "payload"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA},
        "version": {"type": "string"},
        "command": {"type": "string"},
        "seed": {"type": ["integer", "null"]},
        "params": {"type": "object"},
        "checks": {"type": "array", "items": {
            "type": "object", "required": ["name", "anchor", "passed", "witness"],
            "additionalProperties": False,
            "properties": {"name": {"type": "string"}, "anchor": {"type": "string"},
                           "passed": {"type": "boolean"}, "witness": {}}}},
        "summary": {"type": "object", "required": ["total", "passed", "failed"],
                    "additionalProperties": False,
                    "properties": {k: {"type": "integer", "minimum": 0} for k in ("total", "passed", "failed")}},
        "payload": {},
    },
}


def rat_str(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def jsonable(obj):
    """Convert library values into plain JSON data with a stable layout."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, Poly):
        return repr(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return repr(obj)


@dataclass
class Check:
    name: str
    passed: bool
    anchor: str = ""
    witness: object = None

    def to_json(self) -> dict:
        return {"name": self.name, "anchor": self.anchor or self.name,
                "passed": bool(self.passed), "witness": jsonable(self.witness)}


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)
    seed: int | None = None
    params: dict = field(default_factory=dict)
    payload: object = None

    def add(self, name: str, passed: bool, witness=None, anchor: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), anchor, witness))
        return bool(passed)

    def extend(self, other: Report, prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.anchor, c.witness))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        passed = sum(c.passed for c in self.checks)
        return {
            "schema": SCHEMA,
            "version": VERSION,
            "command": self.command,
            "seed": self.seed,
            "params": jsonable(self.params),
            "checks": [c.to_json() for c in self.checks],
            "summary": {"total": len(self.checks), "passed": passed,
                        "failed": len(self.checks) - passed},
            "payload": jsonable(self.payload),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    def text(self) -> str:
        lines = [f"{self.command}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            line = f"  [{'pass' if c.passed else 'FAIL'}] {c.name}"
            if not c.passed and c.witness is not None:
                line += f"  witness={json.dumps(jsonable(c.witness), sort_keys=True)}"
            lines.append(line)
        n = len(self.checks)
        lines.append(f"{n - len(self.failures())}/{n} checks passed")
        return "\n".join(lines) + "\n"
