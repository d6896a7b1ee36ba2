from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from hyperlat.models.lattice import Rational


class OrbitTableRow(BaseModel):
    """One enumerated orbit in the column layout of the published tables."""
    height: int = Field(..., ge=0)
    letter: Optional[str] = Field(None, description="Published letter when the row was matched, '*' marks type 1")
    root_system: str = Field(..., description="Root system of u^perp, '-' when empty")
    type: str
    published: Optional[bool] = Field(None, description="None past the shipped table prefix")
    dim: Optional[str] = None
    neighbors: Optional[List[str]] = None


class OrbitDetail(BaseModel):
    norm: int
    height: int
    root_system: str
    type: str
    roots: int
    rho_norm: Rational
    z1: int = 0
    z2: int = 0
    dim: Optional[str] = None
    neighbors: List[str] = Field(default_factory=list)
    niemeier: Optional[str] = None
    source: str = ""
    witness: List[Rational]
    unresolved: bool = False


class OrbitsDocument(BaseModel):
    norm: int
    max_height: Optional[int] = None
    count: int
    rows: List[OrbitTableRow]
    records: List[OrbitDetail]
    identities: Dict[str, int] = Field(default_factory=dict, description="identity -> number of failing records")
    duality: List[List[str]] = Field(default_factory=list)
    meta: Dict[str, Any] = Field(default_factory=dict)

    model_config = {
        "json_schema_extra": {
            "example": {
                "norm": -2,
                "count": 1,
                "rows": [{"height": 2, "letter": "a", "root_system": "a2", "type": "2", "published": True}],
            }
        }
    }
