"""
Serializable output records.

These models define what the command-line front end writes: solution
records, scan rows and verification reports.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

MAX_OFFENDING_PER_CHECK = 20


class ComplexValue(BaseModel):
    """A complex number as its real and imaginary parts."""

    re: float = Field(..., description="Real part")
    im: float = Field(..., description="Imaginary part")

    @classmethod
    def of(cls, z: complex) -> "ComplexValue":
        z = complex(z)
        return cls(re=z.real, im=z.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class SolveRecord(BaseModel):
    """Solution of one filling equation, as printed by ``solve``."""

    side: str = Field(..., description="alpha or beta")
    p: Optional[float] = Field(None, description="Surgery coefficient p (absent for the complete structure)")
    q: Optional[float] = Field(None, description="Surgery coefficient q (absent for the complete structure)")
    param: ComplexValue = Field(..., description="Solved alpha or beta")
    u: ComplexValue = Field(..., description="Logarithm of the meridian holonomy")
    v: ComplexValue = Field(..., description="Logarithm of the longitude holonomy")
    branch_u: int = Field(0, description="2 pi i multiples added to Log m")
    branch_v: int = Field(0, description="2 pi i multiples added to Log l")
    residual: float = Field(..., description="|p u + q v - 2 pi i|")
    iterations: int = Field(0, description="Newton iterations")
    restarts: int = Field(0, description="Newton restarts used")
    volume: Optional[float] = Field(None, description="Volume of A* with the other side complete or solved")
    core_length: Optional[ComplexValue] = Field(None, description="Complex length of the core geodesic")
    cone_order: Optional[int] = Field(None, description="Common factor divided out of (p, q)")
    orientation: Optional[str] = Field(None, description="Per-simplex orientation string z1..z4 w1..w4")


class ScanRecord(BaseModel):
    """One grid point of a surgery-space scan."""

    p1: Optional[float] = Field(None, description="alpha-side p (absent when complete)")
    q1: Optional[float] = Field(None, description="alpha-side q (absent when complete)")
    p2: Optional[float] = Field(None, description="beta-side p (absent when complete)")
    q2: Optional[float] = Field(None, description="beta-side q (absent when complete)")
    alpha: Optional[ComplexValue] = Field(None, description="Solved alpha")
    beta: Optional[ComplexValue] = Field(None, description="Solved beta")
    volume: Optional[float] = Field(None, description="Total signed volume")
    core_len_alpha: Optional[float] = Field(None, description="Core geodesic length for the alpha pair")
    core_len_beta: Optional[float] = Field(None, description="Core geodesic length for the beta pair")
    residual: Optional[float] = Field(None, description="Largest filling residual")
    orient: str = Field("", description="Orientation string z1..z4 w1..w4")
    status: str = Field("ok", description="ok, no-converge or degenerate")


class CheckResult(BaseModel):
    """One named check inside a verification report."""

    name: str = Field(..., description="What is checked")
    tolerance: float = Field(0.0, description="Largest accepted residual")
    samples: int = Field(0, description="Number of evaluations")
    failures: int = Field(0, description="Evaluations exceeding the tolerance")
    max_residual: float = Field(0.0, description="Largest residual observed")

    @property
    def passed(self) -> bool:
        return self.failures == 0


class OffendingSample(BaseModel):
    """A sample that failed a check."""

    check: str
    sample: str
    residual: float


class VerificationReport(BaseModel):
    """Outcome of one verifier run."""

    theorem: str = Field(..., description="Verifier id (thm1, thm2, thm3, consistency, octagon, corollary)")
    seed: Optional[int] = Field(None, description="Seed of the sample generator")
    sample_count: int = Field(0, description="Number of samples evaluated")
    checks: List[CheckResult] = Field(default_factory=list)
    offending: List[OffendingSample] = Field(default_factory=list)
    skipped: List[str] = Field(default_factory=list, description="Samples deliberately not evaluated")
    notes: Dict[str, Any] = Field(default_factory=dict, description="Recorded conventions and tables")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def max_residual(self) -> float:
        return max((check.max_residual for check in self.checks), default=0.0)

    def check(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def summary(self) -> Dict[str, Any]:
        """JSON-friendly dump including the derived pass flag."""
        data = self.model_dump()
        data["passed"] = self.passed
        data["max_residual"] = self.max_residual
        return data
