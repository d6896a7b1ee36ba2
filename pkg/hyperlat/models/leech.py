from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from hyperlat.models.lattice import LatticeRecord, Rational


class NiemeierRow(BaseModel):
    """A Niemeier lattice with the identities checked on it."""
    name: str = Field(..., description="Compact root system, e.g. 'A5^4D4', or 'Leech'")
    root_system: str
    coxeter_number: int = Field(..., ge=0)
    roots: int
    glue_index: int
    rho_norm: Rational
    checks: Dict[str, bool] = Field(default_factory=dict)


class LeechDocument(BaseModel):
    via: str = Field(..., description="halving, weyl or holy")
    seed: Optional[str] = None
    chain: List[NiemeierRow] = Field(default_factory=list)
    minimum: Rational
    lattice: LatticeRecord
    meta: Dict[str, Any] = Field(default_factory=dict)


class HoleRow(BaseModel):
    """A deep hole of the Leech lattice."""
    niemeier: str
    center: List[Rational]
    radius_sq: Rational
    vertex_count: int
    vertex_diagram: str
    height: int
    checks: Dict[str, bool] = Field(default_factory=dict)


class HolesDocument(BaseModel):
    count: int
    holes: List[HoleRow]
    missing: List[str] = Field(default_factory=list, description="Niemeier lattices the inventory did not reach")
    meta: Dict[str, Any] = Field(default_factory=dict)
