from typing import List

from pydantic import BaseModel, Field


class Norm2TableRow(BaseModel):
    """A row of the published list of norm -2 vectors of D."""
    height: int = Field(..., ge=1)
    letter: str = Field(..., min_length=1, max_length=1)
    type1: bool = Field(False, description="u^perp is a Niemeier lattice plus a1")
    roots: str = Field("", description="Root orbits in TeX form, e.g. 'a_2a_1^{12}'")
    s: int = Field(..., ge=0, description="Maximal number of orthogonal roots")
    norm0: str = Field("", description="One letter per root orbit naming its norm 0 vector")

    @property
    def name(self) -> str:
        return f"{self.height}{self.letter}{'*' if self.type1 else ''}"


class Norm4TableRow(BaseModel):
    """A row of the published list of norm -4 vectors of D."""
    height: int = Field(..., ge=1)
    dim: int = Field(..., ge=0, le=25, description="Dimension of A with its norm 1 vectors split off")
    even: bool = False
    roots: str = ""
    group: int = Field(..., ge=1)
    norm2: str = Field("", description="Norm -2 letter reached from each root orbit")
    neighbors: List[str] = Field(default_factory=list)

    @property
    def dim_label(self) -> str:
        if self.dim == 24:
            return "24E" if self.even else "24O"
        return str(self.dim)


class E8TableRow(BaseModel):
    """A row of the published e8 alcove table."""
    n: int = Field(..., ge=0)
    x: str = Field(..., description="Simple root products in the order 765(8)4321")
    norm: int
    size: int
    nearest: int
