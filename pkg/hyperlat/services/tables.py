"""Published rows of the norm -2, norm -4 and e8 alcove tables.

The rows ship as JSON under ``hyperlat/data``. Each row carries enough
to check a handful of identities without any lattice computation: the
root system fixes rho^2, the root count and S, and the letter columns
point at Niemeier cusps or at rows of the norm -2 table.
"""

from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple

from hyperlat.core.logging import get_logger
from hyperlat.core.utils import load_json
from hyperlat.models.tables import E8TableRow, Norm2TableRow, Norm4TableRow
from hyperlat.services.leech import NIEMEIER_ROOT_SYSTEMS
from hyperlat.services.rootsys import Component, RootDatum, parse_orbits

logger = get_logger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@lru_cache(maxsize=1)
def norm2_rows() -> Tuple[Norm2TableRow, ...]:
    return tuple(Norm2TableRow.model_validate(r) for r in load_json(DATA_DIR / "table_norm2.json"))


@lru_cache(maxsize=1)
def norm4_rows() -> Tuple[Norm4TableRow, ...]:
    """Rows up to height 12."""
    return tuple(Norm4TableRow.model_validate(r) for r in load_json(DATA_DIR / "table_norm4_prefix.json"))


@lru_cache(maxsize=1)
def e8_rows() -> Tuple[E8TableRow, ...]:
    return tuple(E8TableRow.model_validate(r) for r in load_json(DATA_DIR / "e8_alcove.json"))


def norm4_max_height() -> int:
    return max(r.height for r in norm4_rows())


def row_datum(roots: str) -> RootDatum:
    return RootDatum.parse(roots)


def niemeier_datum(name: str) -> RootDatum:
    """``"A_5^4D_4"``, ``"A5^4D4"`` or ``"Leech"``; a leading 2 (twice a primitive cusp) is ignored."""
    name = name.lstrip("2")
    return RootDatum() if name in ("Leech", "") else RootDatum.parse(name)


def niemeier_coxeter(name: str) -> int:
    return niemeier_datum(name).common_coxeter_number or 0


@lru_cache(maxsize=1)
def _cusp_letters() -> Set[Tuple[str, int]]:
    """(first letter, Coxeter number) of the 24 Niemeier lattices; x is the Leech lattice."""
    out = set()
    for text in NIEMEIER_ROOT_SYSTEMS:
        datum = RootDatum.parse(text)
        if datum.is_empty:
            out.add(("x", 0))
        else:
            first = text.replace(" ", "")[0]
            out.add((first, datum.common_coxeter_number))
    return out


def _cusp_ok(letter: str, height: int) -> bool:
    if letter.isupper():
        if height % 2:
            return False
        letter, height = letter.lower(), height // 2
    return (letter, height) in _cusp_letters()


def _first_coxeter(orbit: RootDatum) -> int:
    return orbit.components[0].coxeter_number


def norm2_row_identities(row: Norm2TableRow) -> Dict[str, bool]:
    """Identities a norm -2 row satisfies by itself.

    2 rho^2 = t^2; #roots = 12t - 18 + 4 z1 leaves a count z1 >= 0; a
    type 1 row is a Niemeier root system plus a1 at height 1 + 2h; any
    other row sends a root orbit of Coxeter number h to a cusp of
    height t - h + 1.
    """
    orbits = parse_orbits(row.roots)
    datum = row_datum(row.roots)
    t = row.height
    z1 = datum.root_count - 12 * t + 18
    out = {
        "2 rho^2 = t^2": 2 * datum.weyl_vector_norm == t * t,
        "roots = 12t - 18 + 4z1": z1 >= 0 and z1 % 4 == 0,
        "S of the root system": datum.s_invariant == row.s,
        "one norm 0 letter per orbit": len(row.norm0) == len(orbits),
    }
    if row.type1:
        comps = list(datum.components)
        if Component("a", 1) in comps:
            comps.remove(Component("a", 1))
            h = RootDatum.from_components(comps).common_coxeter_number
            out["type 1 height = 1 + 2h"] = h is not None and t == 1 + 2 * h
        else:
            out["type 1 height = 1 + 2h"] = False
    else:
        out["norm 0 letters are cusps"] = all(
            _cusp_ok(letter, t - _first_coxeter(orbit) + 1) for letter, orbit in zip(row.norm0, orbits)
        )
    return out


def norm4_row_identities(row: Norm4TableRow) -> Dict[str, bool]:
    """Identities a norm -4 row satisfies given the norm -2 table.

    A root of orbit X (Coxeter number h) added to u lands on the norm -2
    row of height t - h + 1 (t - h for 24E) with the listed letter. With
    2n >= 4 norm 1 vectors t = 2(h + n - 1) and rho^2 = (h + n - 1)^2;
    with two of them t = h1 + h2 and rho^2 = h1 h2.
    """
    orbits = parse_orbits(row.roots)
    datum = row_datum(row.roots)
    t = row.height
    rho2 = datum.weyl_vector_norm
    known = {(r.height, r.letter) for r in norm2_rows()}
    offset = 0 if row.even else 1
    out = {
        "one norm -2 letter per orbit": len(row.norm2) == len(orbits),
        "norm -2 letters exist": all(
            (t - _first_coxeter(orbit) + offset, letter) in known for letter, orbit in zip(row.norm2, orbits)
        ),
    }
    if row.even:
        h = niemeier_coxeter(row.neighbors[0]) if row.neighbors else 0
        out["type 1 height = 1 + 3h"] = t == 1 + 3 * h
        out["roots of the Niemeier lattice"] = bool(row.neighbors) and datum == niemeier_datum(row.neighbors[0])
        return out
    if row.dim < 25:
        z1 = datum.root_count - 8 * t + 20 - 4 * (25 - row.dim)
        out["roots = 8t - 20 + 2z2 + 8z1"] = z1 >= 0 and z1 % 8 == 0
    if row.dim <= 23 and row.neighbors:
        k = niemeier_coxeter(row.neighbors[0]) + (25 - row.dim) - 1
        out["t = 2(h + n - 1)"] = t == 2 * k
        out["rho^2 = (h + n - 1)^2"] = rho2 == k * k
    elif row.dim == 24 and len(row.neighbors) == 2:
        h1, h2 = (niemeier_coxeter(x) for x in row.neighbors)
        out["t = h1 + h2"] = t == h1 + h2
        out["rho^2 = h1 h2"] = rho2 == h1 * h2
    return out


def e8_row_x(row: E8TableRow) -> Tuple[int, ...]:
    """x_1..x_8 from the ``765(8)4321`` label."""
    s = row.x
    head, rest = s.split("(")
    x8, tail = rest.split(")")
    x7, x6, x5 = (int(c) for c in head)
    x4, x3, x2, x1 = (int(c) for c in tail)
    return (x1, x2, x3, x4, x5, x6, x7, int(x8))


def match_norm2(height: int, datum: RootDatum) -> Optional[Norm2TableRow]:
    for row in norm2_rows():
        if row.height == height and row_datum(row.roots) == datum:
            return row
    return None


def match_norm4(height: int, datum: RootDatum, dim_label: Optional[str] = None) -> List[Norm4TableRow]:
    """Rows with this height and root system (and dimension column when given); several can share both."""
    return [
        row for row in norm4_rows()
        if row.height == height and row_datum(row.roots) == datum and (dim_label is None or row.dim_label == dim_label)
    ]
