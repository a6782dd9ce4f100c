"""Exception types shared across the simulator."""

from __future__ import annotations

from dataclasses import dataclass


class SimulationError(Exception):
    """Base class for all simulator errors."""


@dataclass(frozen=True)
class ValidationIssue:
    """One violated scenario invariant: which field, and why."""

    field: str
    reason: str

    def __str__(self) -> str:
        return f"{self.field}: {self.reason}"


class ValidationError(SimulationError):
    """Raised by scenario validation with *all* violations, not just the first."""

    def __init__(self, issues: list[ValidationIssue]):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class DomainError(SimulationError):
    """An argument is outside the mathematical domain of an operation."""


class LengthMismatchError(SimulationError):
    """Vectors that must share the element count do not."""


class EmptySamplesError(SimulationError):
    """Aggregation was asked to summarize zero trials."""


class ConfigError(SimulationError):
    """Scenario file / override problem (unknown key, bad structure, bad value)."""
