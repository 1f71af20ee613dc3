from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, model_validator


class ComplexValue(BaseModel):
    re: float
    im: float

    @classmethod
    def of(cls, value: complex) -> "ComplexValue":
        value = complex(value)
        return cls(re=value.real, im=value.imag)


class MatrixPayload(BaseModel):
    """Matrix JSON schema: {"dim": n, "re": [[...]], "im": [[...]]}"""

    dim: int
    re: List[List[float]]
    im: List[List[float]]

    @model_validator(mode="after")
    def check_shape(self):
        for part in (self.re, self.im):
            if len(part) != self.dim or any(len(row) != self.dim for row in part):
                raise ValueError(f"re/im must be {self.dim}x{self.dim}")
        return self

    @classmethod
    def from_matrix(cls, matrix) -> "MatrixPayload":
        matrix = np.asarray(matrix, dtype=complex)
        return cls(dim=matrix.shape[0], re=matrix.real.tolist(), im=matrix.imag.tolist())

    def to_matrix(self) -> np.ndarray:
        return np.array(self.re, dtype=float) + 1j * np.array(self.im, dtype=float)


class CheckStatus(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"


class Comparison(str, Enum):
    AT_MOST = "<="
    AT_LEAST = ">="


class CheckRecord(BaseModel):
    """One verified invariant: residual compared against its tolerance"""

    category: str
    check: str
    status: CheckStatus
    residual: float
    tolerance: float
    comparison: Comparison = Comparison.AT_MOST
    details: Optional[str] = None


class Report(BaseModel):
    model: str
    quantities: Dict[str, Any] = {}
    residuals: Dict[str, float] = {}
    tolerances_used: Dict[str, float] = {}
    notes: Dict[str, str] = {}

    @model_validator(mode="after")
    def residuals_have_tolerances(self):
        missing = sorted(set(self.residuals) - set(self.tolerances_used))
        if missing:
            raise ValueError(f"residuals without tolerance: {missing}")
        return self


class VerificationReport(BaseModel):
    ok: bool
    passed: int
    failed: int
    records: List[CheckRecord]
