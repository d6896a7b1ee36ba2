"""Weyl orbits of e8 vectors, listed by the alcove parameter n(x).

Nodes are numbered along the long chain 7-6-5-4-3-2-1 with node 8 on
node 5; x_i = (x, alpha_i) >= 0 for a dominant x. The highest root pairs
only with node 1, so n(x) = sum w_i x_i with w the highest root weights
and x / n(x) lies on the boundary of the Voronoi cell of 0.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from hyperlat.core.exceptions import ConstructionError, ValidationError
from hyperlat.core.logging import get_logger, log_structured
from hyperlat.services import exact
from hyperlat.services.lattice import Lattice
from hyperlat.services.rootsys import RootDatum, diagram_datum

logger = get_logger(__name__)

E8_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8))
E8_WEIGHTS = (2, 3, 4, 5, 6, 4, 2, 3)
# the extended node is joined to node 1
EXTENDED_NEIGHBOR = 1
WEYL_E8 = 696729600

X = Tuple[int, ...]


@lru_cache(maxsize=1)
def e8_cartan() -> List[List[int]]:
    c = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for a, b in E8_EDGES:
        c[a - 1][b - 1] = c[b - 1][a - 1] = -1
    return c


@lru_cache(maxsize=1)
def _weight_gram() -> List[List[Fraction]]:
    return exact.inverse(e8_cartan())


def e8_lattice() -> Lattice:
    """e8 in the simple root basis numbered as above."""
    return Lattice(e8_cartan(), "e8")


def n_of_x(x: Sequence[int]) -> int:
    return sum(w * xi for w, xi in zip(E8_WEIGHTS, x))


def dominant_norm(x: Sequence[int]) -> Fraction:
    """Norm of the dominant vector with simple root products x."""
    return exact.bilinear(_weight_gram(), x, x)


def _extended_gram(nodes: Sequence[int]) -> List[List[int]]:
    """Cartan matrix on nodes of the extended diagram; node 0 is the extended node."""

    def entry(a: int, b: int) -> int:
        if a == b:
            return 2
        if 0 in (a, b):
            return -1 if max(a, b) == EXTENDED_NEIGHBOR else 0
        return e8_cartan()[a - 1][b - 1]

    return [[entry(a, b) for b in nodes] for a in nodes]


def _stabilizer(nodes: Sequence[int]) -> RootDatum:
    return diagram_datum(_extended_gram(nodes)) if nodes else RootDatum()


def stabilizer_datum(x: Sequence[int]) -> RootDatum:
    """Root system of the parabolic subgroup fixing x."""
    return _stabilizer([i + 1 for i, xi in enumerate(x) if xi == 0])


def orbit_size(x: Sequence[int]) -> int:
    return WEYL_E8 // stabilizer_datum(x).weyl_group_order


def nearest_point_count(x: Sequence[int]) -> int:
    """Points of e8 nearest to x / n(x): |W(affine stabiliser)| / |W(finite stabiliser)|."""
    if n_of_x(x) == 0:
        return 1
    zero = [i + 1 for i, xi in enumerate(x) if xi == 0]
    return _stabilizer([0] + zero).weyl_group_order // _stabilizer(zero).weyl_group_order


def label(x: Sequence[int]) -> str:
    """Table order 765(8)4321."""
    return "".join(str(x[i - 1]) for i in (7, 6, 5)) + f"({x[7]})" + "".join(str(x[i - 1]) for i in (4, 3, 2, 1))


@dataclass
class E8OrbitRow:
    x: X
    n_of_x: int
    norm: Fraction
    orbit_size: int
    nearest: int
    rule: str = ""

    @property
    def label(self) -> str:
        return label(self.x)

    @property
    def size_label(self) -> str:
        """"9.240" style, as the orbit sizes are multiples of 240 away from 0."""
        if self.orbit_size % 240 or self.orbit_size == 240:
            return str(self.orbit_size)
        return f"{self.orbit_size // 240}.240"

    def to_dict(self) -> dict:
        return {
            "n": self.n_of_x,
            "x": self.label,
            "norm": self.norm,
            "size": self.orbit_size,
            "nearest": self.nearest,
            "rule": self.rule,
        }


def _dominant_with_n(n: int) -> Iterator[X]:
    """All x >= 0 with sum w_i x_i = n."""

    def rec(i: int, left: int, prefix: Tuple[int, ...]) -> Iterator[X]:
        if i == 8:
            if left == 0:
                yield prefix
            return
        w = E8_WEIGHTS[i]
        for k in range(left // w + 1):
            yield from rec(i + 1, left - k * w, prefix + (k,))

    yield from rec(0, n, ())


def _rule_step(n: int, by_n: Dict[int, List[X]]) -> Dict[X, Tuple[str, int]]:
    """Orbits with n(x) = n from those with smaller n, with their nearest point counts."""
    out: Dict[X, Tuple[str, int]] = {}
    if n % 2 == 0:
        out[(0, 0, 0, 0, 0, 0, n // 2, 0)] = ("1", 16)
    for y in by_n.get(n - 2, []):
        out[(y[0] + 1,) + tuple(y[1:])] = ("2", 2)
    for y in by_n.get(n - 1, []):
        if not any(y[:5]) and y[7] == 1:
            out[(0, 0, 0, 0, 0, y[5] + 1, y[6], 0)] = ("3", 8)
        first = next((i for i in range(7) if y[i]), None)
        if first is None or y[first] != 1:
            continue
        i = first + 1
        x = [0] * 8
        x[7] = y[7] if i <= 4 else y[7] + 1
        if i <= 6:
            x[i] = 1 + y[i]
        for j in range(i + 2, 8):
            x[j - 1] = y[j - 1]
        out[tuple(x)] = (f"4.{i}", i + 2)
    return out


def enumerate_e8(max_n: int, check: bool = True) -> List[E8OrbitRow]:
    """Dominant e8 vectors with n(x) <= max_n, built incrementally.

    With ``check`` every level is compared against the direct list of
    solutions of sum w_i x_i = n and the nearest point counts of the
    rules against the stabiliser formula.
    """
    if max_n < 0:
        raise ValidationError(detail="max_n must be non-negative")
    rows = [E8OrbitRow((0,) * 8, 0, Fraction(0), 1, 1, "0")]
    by_n: Dict[int, List[X]] = {0: [(0,) * 8]}
    for n in range(1, max_n + 1):
        found = _rule_step(n, by_n)
        if check:
            direct: Set[X] = set(_dominant_with_n(n))
            if direct != set(found):
                raise ConstructionError(
                    detail=f"incremental rules disagree with the direct list at n = {n}",
                    context={"missing": sorted(direct - set(found)), "extra": sorted(set(found) - direct)},
                )
        level = []
        for x, (rule, nearest) in found.items():
            norm = dominant_norm(x)
            if check and nearest != nearest_point_count(x):
                raise ConstructionError(detail=f"rule {rule} predicts {nearest} nearest points for {label(x)}")
            if not Fraction(n * n, 2) <= norm <= n * n:
                raise ConstructionError(detail=f"{label(x)} has norm {norm} outside [n^2/2, n^2]")
            level.append(E8OrbitRow(x, n, norm, orbit_size(x), nearest, rule))
        level.sort(key=lambda r: (r.norm, r.label))
        rows.extend(level)
        by_n[n] = [r.x for r in level]
    log_structured(logger, "info", "e8 orbits", {"max_n": max_n, "rows": len(rows)})
    return rows


def e8_mod_n_orbits(n: int, rows: Optional[List[E8OrbitRow]] = None) -> List[Tuple[E8OrbitRow, int]]:
    """Orbits of W(e8) on e8/ne8 as (row, divisor); the orbit has row.orbit_size / divisor elements.

    Rows with n(x) < n stand for one class each; rows with n(x) = n are
    shared by the points of e8 nearest to x/n.
    """
    if n < 1:
        raise ValidationError(detail="n must be positive")
    rows = rows or enumerate_e8(n)
    out = []
    for row in rows:
        if row.n_of_x > n:
            continue
        divisor = row.nearest if row.n_of_x == n else 1
        if row.orbit_size % divisor:
            raise ConstructionError(detail=f"orbit of {row.label} does not split evenly over {divisor} points")
        out.append((row, divisor))
    total = sum(row.orbit_size // d for row, d in out)
    if total != n ** 8:
        raise ConstructionError(detail=f"e8/{n}e8 orbit sizes add up to {total}, not {n ** 8}")
    return out


def shell_counts(rows: Sequence[E8OrbitRow], max_norm: int) -> Dict[int, int]:
    """Vectors of each norm <= max_norm, summed over orbits.

    Complete once every orbit of norm <= max_norm is in ``rows``; n(x) <= 6
    covers norm 24.
    """
    out: Dict[int, int] = {}
    for row in rows:
        if row.norm <= max_norm:
            out[int(row.norm)] = out.get(int(row.norm), 0) + row.orbit_size
    return dict(sorted(out.items()))


def format_table(rows: Sequence[E8OrbitRow]) -> str:
    """Plain text table with the columns n, x, norm, orbit size and nearest points."""
    lines = [f"{'n':>2}  {'x':<12} {'norm':>5} {'size':>10} {'m/n':>4}"]
    for row in rows:
        lines.append(f"{row.n_of_x:>2}  {row.label:<12} {str(row.norm):>5} {row.size_label:>10} {row.nearest:>4}")
    return "\n".join(lines) + "\n"
