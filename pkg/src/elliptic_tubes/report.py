"""Verifier reports with deterministic text serialization."""

from __future__ import annotations

from dataclasses import dataclass, field


def _fmt(value):
    if isinstance(value, float):
        return format(value, ".15g")
    return str(value)


@dataclass
class VerifierReport:
    """Outcome of one sampling verifier.

    ``verdict`` is pass exactly when ``violations`` is empty.  Reports for a
    fixed seed are reproducible bit for bit.
    """

    name: str
    samples_run: int = 0
    tolerance: float = 0.0
    seed: int = 0
    violations: list = field(default_factory=list)
    max_error: float = 0.0
    skipped: int = 0
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.violations

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    def record(self, message, error=None):
        self.violations.append(str(message))
        if error is not None:
            self.observe(error)

    def observe(self, error):
        if error > self.max_error:
            self.max_error = float(error)

    def to_text(self, max_violations=20):
        """Structured text document (same key: value family as domain specs)."""
        lines = [
            f"report: {self.name}",
            f"verdict: {self.verdict}",
            f"samples_run: {self.samples_run}",
            f"skipped: {self.skipped}",
            f"violations: {len(self.violations)}",
            f"max_error: {_fmt(self.max_error)}",
            f"tolerance: {_fmt(self.tolerance)}",
            f"seed: {self.seed}",
        ]
        for key in sorted(self.details):
            lines.append(f"{key}: {_fmt(self.details[key])}")
        for text in self.violations[:max_violations]:
            lines.append(f"violation: {text}")
        if len(self.violations) > max_violations:
            lines.append(f"violation: ... {len(self.violations) - max_violations} more")
        return "\n".join(lines) + "\n"

    def summary(self):
        """One-line pass/fail summary for standard output."""
        return (
            f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: "
            f"{self.samples_run} samples, {len(self.violations)} violations, "
            f"max_error={_fmt(self.max_error)}, tol={_fmt(self.tolerance)}, "
            f"seed={self.seed}"
        )
