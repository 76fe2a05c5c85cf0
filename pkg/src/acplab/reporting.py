"""Validation and search reports: plain data, renderable as text or JSON."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    """A titled list of pass/fail checks plus non-gating warnings and notes."""

    title: str
    checks: list[Check] = field(default_factory=list)
    warnings: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def require(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))
        return passed

    def warn(self, name, passed, detail=""):
        self.warnings.append(Check(name, bool(passed), detail))
        return passed

    def note(self, text):
        self.notes.append(text)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def render(self) -> str:
        lines = [self.title, "-" * len(self.title)]
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            suffix = f"  ({c.detail})" if c.detail else ""
            lines.append(f"  [{status}] {c.name}{suffix}")
        for c in self.warnings:
            status = "ok" if c.passed else "WARN"
            suffix = f"  ({c.detail})" if c.detail else ""
            lines.append(f"  [{status}] {c.name}{suffix}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        lines.append(f"  => {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
            "warnings": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.warnings
            ],
            "notes": list(self.notes),
        }
