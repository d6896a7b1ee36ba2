from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from hyperlat.models.lattice import Rational


class ThetaDocument(BaseModel):
    """Theta coefficients by norm and, for unimodular lattices, the a_r."""
    lattice: Optional[str] = None
    max_norm: Rational
    coeffs: Dict[str, int]
    a: Optional[List[int]] = None
    characteristic: Optional[Dict[str, int]] = Field(None, description="norm -> characteristic vectors, 24 <= n < 32")
    meta: Dict[str, Any] = Field(default_factory=dict)
