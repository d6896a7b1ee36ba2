"""
Pydantic records for hyperlat
Every JSON document the command line reads or writes is one of these
"""

from hyperlat.models.lattice import LatticeRecord, ShellsDocument, VectorShellRecord, VinbergDocument
from hyperlat.models.corpus import CorpusEntry, CorpusIndex, Provenance
from hyperlat.models.orbits import OrbitDetail, OrbitTableRow, OrbitsDocument
from hyperlat.models.leech import HoleRow, HolesDocument, LeechDocument, NiemeierRow
from hyperlat.models.e8 import E8OrbitModel, E8OrbitsDocument, ModNOrbit
from hyperlat.models.theta import ThetaDocument
from hyperlat.models.tables import E8TableRow, Norm2TableRow, Norm4TableRow
from hyperlat.models.report import CheckResult, SuiteReport

__all__ = [
    "LatticeRecord", "ShellsDocument", "VectorShellRecord", "VinbergDocument",
    "CorpusEntry", "CorpusIndex", "Provenance",
    "OrbitDetail", "OrbitTableRow", "OrbitsDocument",
    "HoleRow", "HolesDocument", "LeechDocument", "NiemeierRow",
    "E8OrbitModel", "E8OrbitsDocument", "ModNOrbit",
    "ThetaDocument",
    "E8TableRow", "Norm2TableRow", "Norm4TableRow",
    "CheckResult", "SuiteReport",
]
