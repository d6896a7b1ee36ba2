from typing import Any, Dict, List

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """Outcome of one named identity check."""
    name: str = Field(..., description="What was checked, e.g. 'coxeter numbers up to rank 24'")
    passed: bool
    details: Dict[str, Any] = Field(default_factory=dict)


class SuiteReport(BaseModel):
    suite: str
    full: bool = False
    passed: bool = True
    checks: List[CheckResult] = Field(default_factory=list)
    seconds: float = 0.0
    metadata: Dict[str, Any] = Field(default_factory=dict)

    model_config = {
        "json_schema_extra": {
            "example": {
                "suite": "ch1",
                "full": False,
                "passed": True,
                "checks": [{"name": "coxeter numbers up to rank 24", "passed": True, "details": {}}],
            }
        }
    }

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]
