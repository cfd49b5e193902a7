"""Result records shared by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int = 0
    details: dict = field(default_factory=dict)
    counterexample: dict | None = None

    def raise_if_failed(self) -> "CheckResult":
        if not self.passed:
            raise CounterexampleFound(self)
        return self

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": "pass" if self.passed else "fail", "checked": self.checked}
        if self.details:
            out["details"] = self.details
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


class CounterexampleFound(AssertionError):
    def __init__(self, result: CheckResult):
        super().__init__(f"{result.name}: {result.counterexample}")
        self.result = result


def merge(name: str, results: list[CheckResult], details: dict | None = None) -> CheckResult:
    """First failure wins; sample counts add up."""
    checked = sum(r.checked for r in results)
    for r in results:
        if not r.passed:
            return CheckResult(name, False, checked, details or {}, r.counterexample)
    return CheckResult(name, True, checked, details or {})
