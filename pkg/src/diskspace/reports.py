"""Result containers returned by checks and functionals."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Verdict(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Report:
    """Outcome of a simple check (majorant axioms, elementary inequalities)."""

    name: str
    verdict: Verdict
    value: float | None = None
    message: str = ""
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS


@dataclass(frozen=True)
class Sample:
    point: Any
    lhs: float
    rhs: float

    @property
    def violation(self) -> float:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class TheoremReport:
    """Two-sided comparison of a claimed inequality or equivalence.

    ``max_violation`` is ``max(lhs - rhs)`` over the samples, so a value
    ``<= tolerance`` means every sample satisfied the claim.
    """

    theorem_id: str
    verdict: Verdict
    max_violation: float
    tolerance: float
    samples: tuple[Sample, ...] = ()
    worst: Sample | None = None
    message: str = ""
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS


def report_from_samples(theorem_id, samples, tolerance, *, rel=True, message="",
                        detail=None) -> TheoremReport:
    """Build a Pass/Fail report; slack is ``tolerance * (1 + |rhs|)`` when ``rel``."""
    samples = tuple(samples)
    if not samples:
        return TheoremReport(theorem_id, Verdict.INCONCLUSIVE, float("nan"), tolerance,
                             message=message or "no samples", detail=detail or {})
    worst = None
    max_excess = -float("inf")
    max_violation = -float("inf")
    for s in samples:
        slack = tolerance * (1.0 + abs(s.rhs)) if rel else tolerance
        excess = s.violation - slack
        if excess > max_excess:
            max_excess, worst = excess, s
        max_violation = max(max_violation, s.violation)
    verdict = Verdict.PASS if max_excess <= 0 else Verdict.FAIL
    return TheoremReport(theorem_id, verdict, float(max_violation), tolerance, samples,
                         worst, message, detail or {})
