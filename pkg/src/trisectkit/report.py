"""Validation reports returned by the ``validate_*`` functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of a validation.

    ``failures`` lists problems in the order they were detected, so the first
    entry pinpoints the first failing check.  ``info`` carries computed data
    such as indices, and ``warnings`` carries non-fatal observations.
    """

    failures: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    @property
    def first_failure(self) -> str | None:
        return self.failures[0] if self.failures else None

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def warn(self, message: str) -> None:
        self.warnings.append(message)

    def merge(self, other: "CheckReport", prefix: str = "") -> None:
        self.failures.extend(prefix + m for m in other.failures)
        self.warnings.extend(prefix + m for m in other.warnings)

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(self.failures)
