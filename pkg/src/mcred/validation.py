"""Ordered check results with first-counterexample payloads."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": "pass" if self.passed else "fail",
            "witness": self.witness,
        }


@dataclass
class ValidationReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: dict | None = None) -> None:
        self.checks.append(CheckResult(name, passed, witness))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> CheckResult | None:
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dicts(self) -> list[dict]:
        return [c.as_dict() for c in self.checks]

    def render(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            extra = f"  witness: {c.witness}" if c.witness else ""
            lines.append(f"[{mark}] {c.name}{extra}")
        return "\n".join(lines)
