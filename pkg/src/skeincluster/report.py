"""Pass/fail reports produced by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    check_id: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class Report:
    suite: str
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_obj(self) -> dict:
        return {
            "suite": self.suite,
            "status": "pass" if self.passed else "fail",
            "checks": [
                {"id": c.check_id, "status": "pass" if c.passed else "fail", "detail": c.detail}
                for c in self.checks
            ],
        }

    def format_text(self) -> str:
        lines = [f"suite {self.suite}: {'pass' if self.passed else 'FAIL'}"]
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            suffix = f"  ({c.detail})" if c.detail else ""
            lines.append(f"  [{status}] {c.check_id}{suffix}")
        return "\n".join(lines)
