"""Verdict objects shared by every validator and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .tensor import Witness

PASS, FAIL, UNTESTED = "pass", "fail", "untested"


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS


@dataclass
class Report:
    """An ordered list of named checks, plus summaries of derived data."""

    subject: str
    checks: list[Check] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    def check(self, name: str, outcome, detail: str = "") -> bool:
        """Record ``outcome``: a bool, a Witness (failure) or None (success)."""
        if isinstance(outcome, Witness):
            self.checks.append(Check(name, FAIL, outcome.describe()))
            return False
        if outcome is None or outcome is True:
            self.checks.append(Check(name, PASS, detail))
            return True
        if isinstance(outcome, Report):
            for c in outcome.checks:
                self.checks.append(Check(f"{name}.{c.name}", c.status, c.detail))
            return outcome.ok
        self.checks.append(Check(name, FAIL, detail))
        return False

    def untested(self, name: str, reason: str) -> None:
        self.checks.append(Check(name, UNTESTED, reason))

    def extend(self, other: "Report", prefix: str = "") -> bool:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.detail))
        self.data.update({prefix + k: v for k, v in other.data.items()})
        return other.ok

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def status(self, name: str) -> str:
        return self[name].status

    def passed(self, name: str) -> bool:
        return self[name].passed

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def render(self) -> str:
        lines = [f"# {self.subject}"]
        for c in self.checks:
            tag = c.status.upper()
            lines.append(f"{tag:8} {c.name}" + (f": {c.detail}" if c.detail else ""))
        for k, v in self.data.items():
            lines.append(f"{'DATA':8} {k} = {v}")
        verdict = "OK" if self.ok else "FAILED"
        lines.append(f"# result: {verdict}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in self.checks],
            "data": {k: str(v) for k, v in self.data.items()},
        }
