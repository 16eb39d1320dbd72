"""
Incremental assembly of VerificationReports.
"""

from typing import Any, Dict, Optional

from ..models.reports import (
    MAX_OFFENDING_PER_CHECK,
    CheckResult,
    OffendingSample,
    VerificationReport,
)


class ReportBuilder:
    """
    Collects check outcomes for one verifier run.

    A check fails on a sample when its residual exceeds the tolerance (NaN
    always fails) or when a required condition is false.
    """

    def __init__(self, theorem: str, seed: Optional[int] = None):
        self.theorem = theorem
        self.seed = seed
        self.sample_count = 0
        self._checks: Dict[str, CheckResult] = {}
        self._offending: Dict[str, list] = {}
        self._skipped: list = []
        self._notes: Dict[str, Any] = {}

    def _check(self, name: str, tolerance: float) -> CheckResult:
        if name not in self._checks:
            self._checks[name] = CheckResult(name=name, tolerance=tolerance)
            self._offending[name] = []
        return self._checks[name]

    def _fail(self, check: CheckResult, sample: str, residual: float):
        check.failures += 1
        offenders = self._offending[check.name]
        if len(offenders) < MAX_OFFENDING_PER_CHECK:
            offenders.append(OffendingSample(check=check.name, sample=sample, residual=residual))

    def measure(self, name: str, residual: float, tolerance: float, sample: str = "") -> bool:
        """Record a residual; returns whether it was within tolerance."""
        check = self._check(name, tolerance)
        residual = float(residual)
        check.samples += 1
        ok = residual <= tolerance
        if ok:
            check.max_residual = max(check.max_residual, residual)
        else:
            check.max_residual = max(check.max_residual, residual) if residual == residual else float("inf")
            self._fail(check, sample, residual)
        return ok

    def require(self, name: str, condition: bool, sample: str = "", residual: float = 0.0) -> bool:
        """Record a pass/fail condition."""
        check = self._check(name, 0.0)
        check.samples += 1
        if not condition:
            self._fail(check, sample, residual)
        return bool(condition)

    def skip(self, sample: str):
        self._skipped.append(sample)

    def note(self, key: str, value: Any):
        self._notes[key] = value

    def count_sample(self, n: int = 1):
        self.sample_count += n

    def build(self) -> VerificationReport:
        return VerificationReport(
            theorem=self.theorem,
            seed=self.seed,
            sample_count=self.sample_count,
            checks=[check.model_copy() for check in self._checks.values()],
            offending=[o for offenders in self._offending.values() for o in offenders],
            skipped=list(self._skipped),
            notes=dict(self._notes),
        )
