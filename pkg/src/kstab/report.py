from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    statement: str = ""
    witness: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "statement": self.statement,
                "witness": self.witness}

    @classmethod
    def from_json(cls, data: dict) -> "Check":
        return cls(data["name"], bool(data["passed"]), data.get("statement", ""),
                   dict(data.get("witness", {})))


@dataclass
class VerificationReport:
    """Per-hypothesis results; ``overall`` is their conjunction."""

    subject: str
    params: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, statement: str = "", **witness: Any) -> bool:
        self.checks.append(Check(name, bool(passed), statement, witness))
        return bool(passed)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "params": self.params,
            "checks": [c.to_json() for c in self.checks],
            "notes": self.notes,
            "overall": self.overall,
        }

    @classmethod
    def from_json(cls, data: dict) -> "VerificationReport":
        rep = cls(data["subject"], dict(data.get("params", {})),
                  [Check.from_json(c) for c in data.get("checks", [])], list(data.get("notes", [])))
        if "overall" in data and data["overall"] != rep.overall:
            raise ValueError("overall flag inconsistent with checks")
        return rep

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def table(self) -> str:
        width = max((len(c.name) for c in self.checks), default=4)
        lines = [f"{self.subject}  " + "  ".join(f"{k}={v}" for k, v in self.params.items())]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name.ljust(width)}  {c.statement}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        lines.append(f"  overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines)
