"""Verification reports: an ordered list of named pass/fail checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: Any = None


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Any = None) -> bool:
        self.checks.append(Check(name, bool(passed), None if passed else witness))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness))
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __len__(self):
        return len(self.checks)

    def summary(self) -> str:
        bad = len(self.failures())
        if not bad:
            return f"pass ({len(self.checks)} checks)"
        return f"fail ({bad} of {len(self.checks)} checks failed)"
