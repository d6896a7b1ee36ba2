from typing import List, Optional, Union

from pydantic import BaseModel, Field, model_validator

Rational = Union[int, str]


class LatticeRecord(BaseModel):
    """Serialized Gram matrix: ``gram / den`` is the exact bilinear form."""
    rank: int = Field(..., ge=0, description="Dimension of the lattice")
    den: int = Field(1, ge=1, description="Common denominator of the Gram entries")
    gram: List[List[int]] = Field(..., description="Integral matrix den * Gram")
    label: Optional[str] = Field(None, description="Human readable name, e.g. 'd16 e8'")

    model_config = {
        "json_schema_extra": {
            "example": {
                "rank": 2,
                "den": 1,
                "gram": [[2, -1], [-1, 2]],
                "label": "a2",
            }
        }
    }

    @model_validator(mode="after")
    def check_shape(self) -> "LatticeRecord":
        if len(self.gram) != self.rank or any(len(row) != self.rank for row in self.gram):
            raise ValueError(f"gram must be a {self.rank}x{self.rank} matrix")
        for i in range(self.rank):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError(f"gram is not symmetric at ({i}, {j})")
        return self


class VectorShellRecord(BaseModel):
    """All enumerated vectors of one norm (or squared distance)."""
    norm: str = Field(..., description="Exact norm as 'p/q' or integer string")
    count: int
    vectors: Optional[List[List[int]]] = None


class ShellsDocument(BaseModel):
    lattice: Optional[str] = None
    center: Optional[List[str]] = None
    radius_sq: str
    shells: List[VectorShellRecord]
    meta: dict = {}


class VinbergDocument(BaseModel):
    lattice: Optional[str] = None
    controlling: List[int]
    roots: List[List[Rational]]
    distances: List[Rational]
    step0: int
    termination: str
    finite_volume: Optional[bool] = None
    gram: List[List[Rational]]
    meta: dict = {}
