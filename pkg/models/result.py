"""Check result data structures."""

from dataclasses import dataclass
from enum import Enum
from typing import Any


class CheckStatus(Enum):
    """Status of a numerical check."""

    PASS = "pass"
    WARNING = "warning"
    FAIL = "fail"


@dataclass
class CheckResult:
    """Standard result structure for all locality checks."""

    name: str
    status: CheckStatus
    summary: str
    details: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "status": self.status.value,
            "summary": self.summary,
            "details": self.details,
        }


def check(name: str, passed: bool, summary: str, **details: Any) -> CheckResult:
    """Build a PASS/FAIL result from a boolean outcome."""
    return CheckResult(
        name=name,
        status=CheckStatus.PASS if passed else CheckStatus.FAIL,
        summary=summary,
        details=details,
    )


def compute_overall_status(results: list[CheckResult]) -> CheckStatus:
    """
    Compute overall status from multiple check results.

    Logic:
    - If any FAIL → overall FAIL
    - If any WARNING (but no FAIL) → overall WARNING
    - If all PASS → overall PASS
    """
    statuses = [r.status for r in results]

    if CheckStatus.FAIL in statuses:
        return CheckStatus.FAIL
    if CheckStatus.WARNING in statuses:
        return CheckStatus.WARNING
    return CheckStatus.PASS
