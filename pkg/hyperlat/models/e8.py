from typing import Any, Dict, List

from pydantic import BaseModel, Field

from hyperlat.models.lattice import Rational


class E8OrbitModel(BaseModel):
    """A Weyl orbit of e8 vectors, keyed by the products with the simple roots."""
    n: int = Field(..., ge=0, description="Alcove parameter n(x)")
    x: str = Field(..., description="Simple root products in the order 765(8)4321")
    norm: Rational
    size: int
    nearest: int
    rule: str = ""


class ModNOrbit(BaseModel):
    x: str
    size: int


class E8OrbitsDocument(BaseModel):
    max_n: int
    rows: List[E8OrbitModel]
    mod_n: Dict[str, List[ModNOrbit]] = Field(default_factory=dict)
    table: str = ""
    meta: Dict[str, Any] = Field(default_factory=dict)
