from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from hyperlat.models.lattice import LatticeRecord


class Provenance(BaseModel):
    """How a corpus entry was produced."""
    command: str = Field(..., description="Builder that generated the lattice")
    inputs: Dict[str, Any] = Field(default_factory=dict, description="Builder arguments")
    inputs_hash: str = Field("", description="sha256 of the canonical JSON of the inputs")
    version: Optional[str] = None


class CorpusEntry(BaseModel):
    name: str = Field(..., description="Unique corpus name, e.g. 'leech'")
    provenance: Provenance
    lattice: LatticeRecord
    invariants: Dict[str, Any] = Field(default_factory=dict)
    content_hash: str = Field("", description="sha256 of the lattice record")

    model_config = {
        "json_schema_extra": {
            "example": {
                "name": "e8",
                "provenance": {"command": "root_lattice", "inputs": {"name": "e8"}, "inputs_hash": "..."},
                "lattice": {"rank": 8, "den": 1, "gram": [[2]], "label": "e8"},
                "invariants": {"det": 1, "even": True},
            }
        }
    }


class CorpusIndex(BaseModel):
    entries: List[str] = Field(default_factory=list)
