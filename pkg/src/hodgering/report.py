"""Certificate reports: named checks with a pass flag and a witness string."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    witness: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        w = f"  [{self.witness}]" if self.witness else ""
        return f"{status} {self.name}{w}"


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, witness: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), witness))
        return bool(passed)

    def merge(self, other: "Report", prefix: str | None = None):
        for c in other.checks:
            name = f"{prefix}.{c.name}" if prefix else c.name
            self.checks.append(Check(name, c.passed, c.witness))
        return self

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def lines(self) -> list[str]:
        out = [f"[{self.title}]"]
        for k, v in self.info.items():
            out.append(f"  {k}: {v}")
        out.extend("  " + c.line() for c in self.checks)
        return out

    def __str__(self):
        return "\n".join(self.lines())
