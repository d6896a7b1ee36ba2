"""Orbits of negative norm vectors of II_{25,1}.

Everything happens in the Leech model Λ (+) U (:class:`LeechModel`) whose
fundamental domain D contains w = (0, 0, 1). A vector u of D of norm -2n
arises in one of three ways:

* it has type 0 or 1 and is read off from a Niemeier cusp;
* u = v + theta for a vector v of D of norm -2(n-1), theta being the
  highest root of a connected spherical diagram C of simple roots whose
  nodes pair with v exactly as theta pairs with them;
* u = v + k w for some v of D, which are the u whose u^perp has no roots.

Vectors of D lie in one orbit exactly when their orthogonal complements
are isometric, so orbits are separated on the lattice side.
"""

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from multiprocessing import Pool
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from hyperlat.core.config import settings
from hyperlat.core.exceptions import BudgetExceededError, ConstructionError, ValidationError
from hyperlat.core.logging import get_logger, log_structured
from hyperlat.services import exact
from hyperlat.services.enumerate import lll_reduce, shell, vectors_in_ball
from hyperlat.services.hyperbolic import LeechModel, norm0_classify, pairing_partner
from hyperlat.services.isometry import compare_invariants, is_isometric, lattice_invariants
from hyperlat.services.lattice import Lattice, change_basis, direct_sum, hyperbolic_plane, orthogonal_complement, sublattice
from hyperlat.services.leech import NiemeierInventory, leech_lattice, niemeier_inventory
from hyperlat.services.rootsys import (
    Component,
    RootDatum,
    SimpleRootSet,
    affine_datum,
    diagram_datum,
    diagram_kinds,
    identify_roots,
    opposition_map,
    weyl_data,
)
from hyperlat.services.tables import match_norm2, match_norm4, norm4_max_height

logger = get_logger(__name__)

Vector = tuple

# Co_0 is transitive on the vectors of Λ of each of these norms
TRANSITIVE_SHELLS = (4, 6, 8)


def default_model() -> LeechModel:
    """The Leech lattice in the model Λ (+) U, from the corpus."""
    return LeechModel(leech_lattice())


def _niemeier_h(name: Optional[str]) -> int:
    if not name or name == "Leech":
        return 0
    h = RootDatum.parse(name).common_coxeter_number
    return h or 0


def _add(x: Sequence, y: Sequence, k: int = 1) -> Vector:
    return tuple(a + k * b for a, b in zip(x, y))


# ----------------------------------------------------------------- records

@dataclass
class OrbitRecord:
    """One orbit of vectors of D, with a witness in D."""
    norm: int
    height: int
    witness: Vector
    datum: RootDatum
    vtype: Optional[int]  # None when larger than the type search cap
    z1: int = 0
    z2: int = 0
    source: str = ""
    niemeier: Optional[str] = None  # the cusp of a type 0 or type 1 vector
    dim: Optional[int] = None  # norm -4: dimension of A with its norm 1 vectors removed
    odd: Optional[bool] = None
    neighbors: List[str] = field(default_factory=list)
    component: Optional[str] = None
    parent_datum: Optional[str] = None
    type3_predicted: Optional[bool] = None
    unresolved: bool = False
    lattice: Optional[Lattice] = field(default=None, repr=False)

    @property
    def root_count(self) -> int:
        return self.datum.root_count

    @property
    def rho_norm(self) -> Fraction:
        return self.datum.weyl_vector_norm

    @property
    def type_label(self) -> str:
        return str(self.vtype) if self.vtype is not None else f">={settings.type_search_cap + 1}"

    @property
    def dim_label(self) -> Optional[str]:
        """Table style dimension column: "24E", "24O", "25" or e.g. "22"."""
        if self.dim is None:
            return None
        if self.dim == 24:
            return "24O" if self.odd else "24E"
        return str(self.dim)

    def to_dict(self) -> dict:
        return {
            "norm": self.norm,
            "height": self.height,
            "root_system": str(self.datum),
            "type": self.type_label,
            "roots": self.root_count,
            "rho_norm": self.rho_norm,
            "z1": self.z1,
            "z2": self.z2,
            "dim": self.dim_label,
            "neighbors": self.neighbors,
            "niemeier": self.niemeier,
            "source": self.source,
            "witness": list(self.witness),
            "unresolved": self.unresolved,
        }


@dataclass
class ExtensionCandidate:
    """u = v + theta(C) for a diagram C of simple roots around the source v."""
    source: OrbitRecord
    nodes: Tuple[Vector, ...]
    component: Component
    clause: str
    witness: Vector
    height: int
    key: Tuple = ()
    type3_predicted: Optional[bool] = None


# ----------------------------------------------------------------- tau and types

def _perp_roots(model: LeechModel, u: Sequence) -> SimpleRootSet:
    return SimpleRootSet.from_roots(model.lattice, [model.simple_root(lam) for lam in model.ri_points(u, 0)])


def tau(u: Sequence, v: Sequence, model: Optional[LeechModel] = None) -> Vector:
    """tau_u(v) = u + sigma(v), sigma the opposition involution of u^perp (-1 off its roots).

    (u, v) + (u, tau_u(v)) = u^2 and tau_u is an involution.
    """
    model = model or default_model()
    if model.norm(u) >= 0:
        raise ValidationError(detail="tau needs u of negative norm")
    sigma = opposition_map(_perp_roots(model, u))
    return tuple(_add(u, sigma(v)))


def vector_type(u: Sequence, model: Optional[LeechModel] = None, cap: Optional[int] = None) -> Optional[int]:
    """Smallest -(u, z) over norm 0 vectors z; None when it exceeds ``cap``."""
    model = model or default_model()
    return model.vector_type(u, cap)


# ----------------------------------------------------------------- lattices attached to u

def perp_lattice(model: LeechModel, u: Sequence) -> Lattice:
    """u^perp, LLL reduced."""
    lattice, _ = orthogonal_complement(model.lattice, [exact.to_int_vector(u)])
    return lll_reduce(lattice)[0]


def unimodular_of_norm4(ambient: Lattice, u: Sequence) -> Lattice:
    """The unimodular A whose even vectors are u^perp, for u of norm -4 in an even unimodular lattice.

    The odd vectors of A are the projections y - u/2 of the y with (y, u) = -2.
    """
    if ambient.norm(u) != -4:
        raise ValidationError(detail=f"u has norm {ambient.norm(u)}, expected -4")
    u = exact.to_int_vector(u)
    p = pairing_partner(ambient, u)
    odd = [2 * a - Fraction(b, 2) for a, b in zip(p, u)]
    perp = exact.integer_kernel([ambient.gram_times(u)])
    lattice, _ = sublattice(ambient, perp + [odd])
    if not (lattice.is_integral and lattice.is_unimodular and lattice.is_odd):
        raise ConstructionError(detail="u^perp does not extend to an odd unimodular lattice")
    return lll_reduce(lattice)[0]


def _norm4_data(model: LeechModel, u: Sequence) -> Tuple[int, bool]:
    """(dimension, oddness) of A with its norm 1 vectors split off."""
    a = unimodular_of_norm4(model.lattice, u)
    units = shell(a, 1)
    if not units:
        return a.rank, True
    a1, _ = orthogonal_complement(a, units)
    return a1.rank, a1.is_odd


def _classify_cusps(model: LeechModel, zs: Sequence[Vector]) -> List[str]:
    names = []
    for z in zs:
        z = exact.primitive_part(exact.to_int_vector(z))
        names.append(norm0_classify(model.lattice, z).label)
    return names


def orbit_record(
    model: LeechModel,
    u: Sequence,
    source: str = "",
    niemeier: Optional[str] = None,
    with_lattice: bool = True,
) -> OrbitRecord:
    """Everything the tables list about a vector u of D."""
    u = tuple(int(x) for x in exact.to_int_vector(u))
    if not model.in_domain(u):
        raise ConstructionError(detail="witness is not in the fundamental domain", context={"source": source})
    norm = int(model.norm(u))
    height = int(model.height(u))
    if norm == 0:
        if model.is_w_multiple(u):
            return OrbitRecord(0, 0, u, RootDatum(), 0, source=source or "type 0", niemeier="Leech")
        roots = [model.simple_root(lam) for lam in model.ri_points(u, 0)]
        gram = [[model.inner(a, b) for b in roots] for a in roots]
        datum = affine_datum(gram)
        return OrbitRecord(0, height, u, datum, 0, source=source or "type 0", niemeier=datum.niemeier_name())
    roots = [model.simple_root(lam) for lam in model.ri_points(u, 0)]
    gram = [[model.inner(a, b) for b in roots] for a in roots]
    datum = diagram_datum(gram) if roots else RootDatum()
    z1s = model.norm0_at(u, 1)
    z2s = model.norm0_at(u, 2)
    if z1s:
        vtype = 1
    elif z2s:
        vtype = 2
    else:
        vtype = next((i for i in range(3, settings.type_search_cap + 1) if model.norm0_at(u, i, limit=1)), None)
    rec = OrbitRecord(norm, height, u, datum, vtype, len(z1s), len(z2s), source, niemeier)
    if norm == -4:
        rec.dim, rec.odd = _norm4_data(model, u)
        if z2s and vtype == 2:
            rec.neighbors = _classify_cusps(model, z2s[:1] if len(z2s) > 2 else z2s)
    if with_lattice:
        rec.lattice = perp_lattice(model, u)
    return rec


# ----------------------------------------------------------------- seeds

def seed_orbits(norm: int, inventory: NiemeierInventory, model: LeechModel) -> List[OrbitRecord]:
    """Type 0 records (norm 0) or the type 1 records of the given norm.

    A type 1 vector of norm -2n is (n + 1) z + r for a cusp z of D and a
    simple root r with (r, z) = -1; its height is 1 + (n + 1) h.
    """
    if norm > 0 or norm % 2:
        raise ValidationError(detail=f"norm must be even and non-positive, got {norm}")
    cusps: Dict[str, Vector] = {"Leech": model.w}
    cusps.update({name: z for name, z in inventory.cusps.items() if name != "Leech"})
    out: List[OrbitRecord] = []
    if norm == 0:
        for name, z in sorted(cusps.items(), key=lambda item: model.height(item[1])):
            out.append(orbit_record(model, z, "type 0", name))
        return out
    n = -norm // 2
    for name, z in sorted(cusps.items(), key=lambda item: model.height(item[1])):
        if model.is_w_multiple(z):
            r = model.simple_root((0,) * model.dim)
        else:
            r = model.simple_root(model.ri_points(z, 1)[0])
        u, _ = model.reduce_to_domain(_add(r, z, n + 1))
        rec = orbit_record(model, u, "type 1", name)
        expected = 1 + (n + 1) * _niemeier_h(name)
        if rec.height != expected:
            raise ConstructionError(detail=f"type 1 vector over {name} has height {rec.height}, expected {expected}")
        out.append(rec)
    return out


# ----------------------------------------------------------------- the simple roots near v

class RootNeighborhood:
    """S(v): the simple roots of D with inner product 0, -1 or -2 with v.

    The diagram is kept on R_0 and R_1 only; R_2 nodes are only ever used
    as single a1 diagrams. A shell of R_2 around a point of Λ of norm 4, 6
    or 8 is one orbit of the stabiliser of v and keeps a single node.
    """

    def __init__(self, model: LeechModel, v: Sequence):
        self.model = model
        self.v = tuple(v)
        self.roots: List[Vector] = []
        self.level: List[int] = []
        self.collapsed = False
        for i in (0, 1, 2):
            for lam in self._points(i):
                self.roots.append(model.simple_root(lam))
                self.level.append(i)
        self._inner: Dict[Tuple[int, int], Fraction] = {}
        self.graph = nx.Graph()
        low = self.indices(0) + self.indices(1)
        for k in low:
            self.graph.add_node(k, level=self.level[k])
        for a, k in enumerate(low):
            for j in low[a + 1:]:
                p = self.inner(k, j)
                if p:
                    self.graph.add_edge(k, j, weight=-p)

    def _points(self, i: int) -> List[Vector]:
        center, radius_sq = self.model.ri_sphere(self.v, i)
        if radius_sq < 0:
            return []
        if i == 2 and radius_sq in TRANSITIVE_SHELLS and all(c.denominator == 1 for c in center):
            self.collapsed = True
            return vectors_in_ball(self.model.leech, radius_sq, center=center,
                                   predicate=lambda x, d: d == radius_sq, limit=1)
        return self.model.ri_points(self.v, i)

    def indices(self, i: int) -> List[int]:
        return [k for k, lv in enumerate(self.level) if lv == i]

    def inner(self, a: int, b: int) -> Fraction:
        key = (a, b) if a <= b else (b, a)
        if key not in self._inner:
            self._inner[key] = self.model.inner(self.roots[a], self.roots[b])
        return self._inner[key]

    def gram(self, nodes: Sequence[int]) -> List[List[Fraction]]:
        return [[self.inner(a, b) for b in nodes] for a in nodes]


def _spherical(nb: RootNeighborhood, nodes: Sequence[int]) -> Optional[Component]:
    kinds = diagram_kinds(nb.gram(nodes))
    if not kinds or len(kinds) != 1 or kinds[0].affine:
        return None
    return kinds[0].component


def _admissible(nb: RootNeighborhood, nodes: Sequence[int]) -> Optional[Tuple[Component, List[int]]]:
    """Type and highest root weights of C when (c, theta) = level(c) for every node c."""
    comp = _spherical(nb, nodes)
    if comp is None:
        return None
    levels = [nb.level[k] for k in nodes]
    weights = exact.solve(nb.gram(nodes), levels)
    if any(m.denominator != 1 or m <= 0 for m in weights):
        return None
    if sum(m * lv for m, lv in zip(weights, levels)) != 2:
        return None
    return comp, [int(m) for m in weights]


def _clause(comp: Component, levels: Sequence[int]) -> str:
    if comp.family == "a" and comp.rank == 1 and levels[0] == 2:
        return "a1 in R2"
    if comp.family == "a":
        return "ends in R1"
    return "special node in R1"


def _chordless_paths(g: nx.Graph, x: int, r0: set) -> Iterator[Tuple[int, ...]]:
    """Induced simply laced paths from x through R_0 to a later node of R_1."""
    stack = [(x,)]
    while stack:
        path = stack.pop()
        last = path[-1]
        for y in g.neighbors(last):
            if y in path or g[last][y]["weight"] != 1:
                continue
            if any(g.has_edge(y, p) for p in path[:-1]):
                continue
            if y in r0:
                stack.append(path + (y,))
            elif y > x:
                yield path + (y,)


def _connected_sets(g: nx.Graph, root: int, allowed: set, accept: Callable[[frozenset], bool]) -> List[frozenset]:
    """Connected node sets containing ``root`` inside ``allowed``; ``accept`` must be hereditary."""
    out: List[frozenset] = []

    def grow(current: frozenset, frontier: set, banned: frozenset) -> None:
        out.append(current)
        order = sorted(frontier)
        for i, y in enumerate(order):
            nxt = current | {y}
            if not accept(nxt):
                continue
            skip = banned | frozenset(order[:i])
            nbrs = {z for z in g.neighbors(y) if z in allowed}
            grow(nxt, (set(order[i + 1:]) | nbrs) - nxt - skip, skip)

    grow(frozenset([root]), {z for z in g.neighbors(root) if z in allowed}, frozenset([root]))
    return out


def _special_node_diagrams(nb: RootNeighborhood, x: int, r0: set) -> Iterator[Tuple[int, ...]]:
    """d_n and e_n diagrams whose only node outside R_0 is x."""
    g = nb.graph
    touching = {p for p in g.neighbors(x) if p in r0}
    nbrs = sorted(p for p in touching if g[x][p]["weight"] == 1)

    def spherical(nodes: frozenset) -> bool:
        return _spherical(nb, sorted(nodes)) is not None

    for trio in combinations(nbrs, 3):
        if not any(g.has_edge(a, b) for a, b in combinations(trio, 2)):
            yield (x,) + trio
    pieces = {p: _connected_sets(g, p, r0 - (touching - {p}), spherical) for p in nbrs}
    for b in nbrs:
        for piece in pieces[b]:
            if len(piece) >= 5 and len(piece) <= 7:
                yield (x,) + tuple(sorted(piece))
            if len(piece) < 3:
                continue
            for a in nbrs:
                if a != b and a not in piece and not any(g.has_edge(a, q) for q in piece):
                    yield (x, a) + tuple(sorted(piece))


def candidate_diagrams(nb: RootNeighborhood) -> Iterator[Tuple[int, ...]]:
    """Node sets that may satisfy the pairing condition; :func:`_admissible` decides."""
    seen = set()
    r0 = set(nb.indices(0))
    gen = [((k,) for k in nb.indices(2))]
    gen += [_chordless_paths(nb.graph, x, r0) for x in nb.indices(1)]
    gen += [_special_node_diagrams(nb, x, r0) for x in nb.indices(1)]
    for it in gen:
        for nodes in it:
            key = frozenset(nodes)
            if key not in seen:
                seen.add(key)
                yield nodes


# ----------------------------------------------------------------- extension

def _highest_roots(nb: RootNeighborhood) -> Optional[List[List[Fraction]]]:
    nodes = nb.indices(0)
    if not nodes:
        return []
    kinds = diagram_kinds(nb.gram(nodes))
    if kinds is None or any(k.affine for k in kinds):
        return None
    simple = SimpleRootSet.from_roots(nb.model.lattice, [nb.roots[k] for k in nodes])
    return [c.highest_root for c in weyl_data(simple).components]


def _local_key(nb: RootNeighborhood, nodes: Sequence[int], weights: Sequence[int], height: int, comp: Component) -> Optional[Tuple]:
    """(height, C, root system of u^perp, pairing profile), all read off S(v).

    None when a root of R_0(v) or R_1(v) pairs positively with u = v + theta.
    """
    c = set(nodes)
    zero = list(nodes)
    profile: Counter = Counter()
    for s in nb.indices(0) + nb.indices(1):
        if s in c:
            continue
        p = sum(m * nb.inner(s, k) for m, k in zip(weights, nodes))
        if p > nb.level[s]:
            return None
        if p == nb.level[s]:
            zero.append(s)
        elif p:
            profile[(nb.level[s], p)] += 1
    datum = diagram_datum(nb.gram(zero))
    return height, str(comp), str(datum), tuple(sorted(profile.items()))


def _extend_from_w(record: OrbitRecord, model: LeechModel) -> List[ExtensionCandidate]:
    """All simple roots pair -1 with w, so C is an a2: one orbit, pairs at distance^2 6."""
    mu = vectors_in_ball(model.leech, 6, predicate=lambda x, d: d == 6, limit=1)[0]
    x, y = model.simple_root((0,) * model.dim), model.simple_root(mu)
    u = _add(_add(model.w, x), y)
    return [ExtensionCandidate(record, (x, y), Component("a", 2), "ends in R1", u, 2, (2, "a2"))]


def extend(record: OrbitRecord, model: Optional[LeechModel] = None) -> List[ExtensionCandidate]:
    """The vectors u of D with u^2 = (u, v) = v^2 - 2 for the witness v of ``record``.

    Candidates with the same key (see :func:`_local_key`) are collapsed to
    one; :func:`dedup` settles the rest on the lattice side.
    """
    model = model or default_model()
    v = record.witness
    if model.is_w_multiple(v):
        return _extend_from_w(record, model)
    nb = RootNeighborhood(model, v)
    vnorm = model.norm(v)
    highest = _highest_roots(nb) if record.vtype is None or record.vtype >= 2 else None
    out: Dict[Tuple, ExtensionCandidate] = {}
    for nodes in candidate_diagrams(nb):
        found = _admissible(nb, nodes)
        if found is None:
            continue
        comp, weights = found
        theta = (0,) * len(v)
        for m, k in zip(weights, nodes):
            theta = _add(theta, nb.roots[k], m)
        u = _add(v, theta)
        if model.norm(u) != vnorm - 2 or model.inner(u, v) != vnorm - 2:
            raise ConstructionError(detail="extension broke the norm or pairing", context={"diagram": str(comp)})
        height = record.height + sum(weights)
        key = _local_key(nb, nodes, weights, height, comp)
        if key is None or key in out or not model.in_domain(u):
            continue
        predicted = None
        if highest is not None:
            predicted = all(model.inner(theta, r) in (0, 1) for r in highest)
        clause = _clause(comp, [nb.level[k] for k in nodes])
        out[key] = ExtensionCandidate(record, tuple(nb.roots[k] for k in nodes), comp, clause, u, height, key, predicted)
    log_structured(logger, "debug", "extension", {
        "source_height": record.height, "source": str(record.datum), "candidates": len(out), "collapsed": nb.collapsed,
    })
    return list(out.values())


def w_shift_candidates(records: Sequence[OrbitRecord], norm: int) -> List[Tuple[OrbitRecord, int]]:
    """(v, k) with (v + k w)^2 = v^2 - 2k height(v) = norm, k >= 1."""
    out = []
    for rec in records:
        if rec.height <= 0 or rec.norm <= norm:
            continue
        diff = rec.norm - norm
        if diff % (2 * rec.height) == 0:
            out.append((rec, diff // (2 * rec.height)))
    return out


# ----------------------------------------------------------------- dedup

def _same_orbit(a: OrbitRecord, b: OrbitRecord, budget: Optional[int]) -> bool:
    if a.norm == 0:
        return str(a.datum) == str(b.datum)
    if compare_invariants(lattice_invariants(a.lattice), lattice_invariants(b.lattice)) is not None:
        return False
    try:
        return bool(is_isometric(a.lattice, b.lattice, budget))
    except BudgetExceededError:
        logger.warning(f"isometry undecided for height {a.height} {a.datum}; kept as separate orbits")
        a.unresolved = True
        return False


def orbit_key(rec: OrbitRecord) -> Tuple:
    return rec.norm, rec.height, str(rec.datum), rec.vtype, rec.z1, rec.z2, rec.dim, rec.odd


def dedup(records: Sequence[OrbitRecord], budget: Optional[int] = None) -> List[OrbitRecord]:
    """One record per isometry class of witness^perp, bucketed by cheap orbit invariants."""
    buckets: Dict[Tuple, List[OrbitRecord]] = {}
    out: List[OrbitRecord] = []
    for rec in records:
        same = buckets.setdefault(orbit_key(rec), [])
        if any(_same_orbit(rec, old, budget) for old in same):
            continue
        same.append(rec)
        out.append(rec)
    out.sort(key=lambda r: (-r.norm, r.height, str(r.datum)))
    return out


# ----------------------------------------------------------------- B/nB

def bmodn_bridge(b_lattice: Lattice, n: int, b: Sequence[int], k: Optional[int] = None) -> Tuple[Lattice, Vector, Vector]:
    """(B (+) U, z, u) with z^2 = 0, (z, u) = -n and u = b + m z + n z', u^2 = k.

    ``k`` defaults to the representative of b^2 mod 2n in (-2n, 0].
    Coordinates are (b, p, q) with norm b^2 - 2pq, z = (0, 0, 1), z' = (0, 1, 0).
    """
    if n < 1:
        raise ValidationError(detail="n must be positive")
    if not (b_lattice.is_even and b_lattice.is_unimodular and b_lattice.is_positive_definite):
        raise ValidationError(detail="B must be even unimodular positive definite")
    b2 = int(b_lattice.norm(b))
    if k is None:
        k = -((-b2) % (2 * n)) if b2 % (2 * n) else 0
    if (b2 - k) % (2 * n):
        raise ValidationError(detail=f"b^2 = {b2} is not congruent to k = {k} mod {2 * n}")
    m = (b2 - k) // (2 * n)
    ambient = direct_sum(b_lattice, hyperbolic_plane())
    z = (0,) * b_lattice.rank + (0, 1)
    u = tuple(int(x) for x in b) + (n, m)
    return ambient, z, u


def bridge_root_datum(b_lattice: Lattice, b: Sequence[int]) -> RootDatum:
    """Root system of the roots of B with even inner product with b."""
    gb = b_lattice.gram_times(b)
    roots = [r for r in shell(b_lattice, 2) if sum(x * y for x, y in zip(r, gb)) % 2 == 0]
    return identify_roots(b_lattice, roots).datum if roots else RootDatum()


# ----------------------------------------------------------------- identities

def check_norm2_identities(rec: OrbitRecord) -> Dict[str, bool]:
    """#roots = 12t - 18 + 4 z1 and 2 rho^2 = t^2."""
    t = rec.height
    return {
        "roots = 12t - 18 + 4z1": rec.root_count == 12 * t - 18 + 4 * rec.z1,
        "2 rho^2 = t^2": 2 * rec.rho_norm == t * t,
        "type 1 or 2": rec.vtype in (1, 2),
    }


def check_norm4_identities(rec: OrbitRecord) -> Dict[str, bool]:
    """Root count, Weyl vector and height identities for a norm -4 record.

    With 2n >= 4 norm 1 vectors in A and even neighbors of Coxeter number
    h: rho^2 = (h + n - 1)^2 and t = 2(h + n - 1). With exactly two, the
    two neighbors satisfy t = h1 + h2 and rho^2 = h1 h2. For type 3,
    4 rho^2 <= t^2.
    """
    t = rec.height
    out = {
        "roots = 8t - 20 + 2z2 + 8z1": rec.root_count == 8 * t - 20 + 2 * rec.z2 + 8 * rec.z1,
        "type at most 3": rec.vtype is not None and rec.vtype <= 3,
    }
    if rec.dim is not None:
        out["norm 1 vectors = z2"] = 25 - rec.dim == rec.z2 // 2 or (rec.dim == 25 and rec.z2 == 0)
    if rec.vtype == 2 and rec.z2 >= 4 and rec.neighbors:
        h = _niemeier_h(rec.neighbors[0])
        n = rec.z2 // 2
        out["rho^2 = (h + n - 1)^2"] = rec.rho_norm == (h + n - 1) ** 2
        out["t = 2(h + n - 1)"] = t == 2 * (h + n - 1)
    if rec.vtype == 2 and rec.z2 == 2 and len(rec.neighbors) == 2:
        h1, h2 = (_niemeier_h(x) for x in rec.neighbors)
        out["t = h1 + h2"] = t == h1 + h2
        out["rho^2 = h1 h2"] = rec.rho_norm == h1 * h2
    if rec.vtype == 3:
        out["4 rho^2 <= t^2"] = 4 * rec.rho_norm <= t * t
    if rec.type3_predicted is not None and rec.vtype is not None:
        out["type >= 3 predicted from the source"] = rec.type3_predicted == (rec.vtype >= 3)
    if rec.vtype is not None and rec.vtype >= 3 and rec.component and rec.component[0] != "a" and rec.parent_datum is not None:
        out["S grows by one"] = rec.datum.s_invariant == RootDatum.parse(rec.parent_datum).s_invariant + 1
    return out


def table_row(rec: OrbitRecord) -> Dict[str, Any]:
    """Height, letter, root system and the neighbor or dimension columns.

    The letter and the ``published`` flag come from matching (height, root
    system) against the published rows; norm -4 rows past the shipped
    prefix are left unmatched.
    """
    row: Dict[str, Any] = {
        "height": rec.height,
        "letter": None,
        "root_system": str(rec.datum) or "-",
        "type": rec.type_label,
        "published": None,
    }
    if rec.norm == -2:
        match = match_norm2(rec.height, rec.datum)
        row["published"] = match is not None
        if match is not None:
            row["letter"] = match.letter + ("*" if match.type1 else "")
    if rec.norm == -4:
        row["dim"] = rec.dim_label
        row["neighbors"] = rec.neighbors
        if rec.height <= norm4_max_height():
            row["published"] = bool(match_norm4(rec.height, rec.datum, rec.dim_label))
    return row


_DUAL_SWAPS = {("d", 4): "a1^4", ("e", 6): "a7", ("d", 5): "a7"}


def _dual_form(datum: RootDatum) -> str:
    comps: List[Component] = []
    for c in datum.components:
        if (c.family, c.rank) in _DUAL_SWAPS:
            comps.extend(RootDatum.parse(_DUAL_SWAPS[(c.family, c.rank)]).components)
        elif c.family == "a" and c.rank % 2 == 0:
            comps.append(Component("a", c.rank - 1))
        else:
            comps.append(c)
    return str(RootDatum.from_components(comps))


def duality_report(records: Sequence[OrbitRecord]) -> List[List[str]]:
    """Groups of norm -2 root systems related by a_{2n-1} <-> a_{2n}, d4 <-> a1^4 and e6, d5 <-> a8.

    Only an observation; groups with a single member are left out.
    """
    groups: Dict[Tuple[int, str], List[str]] = {}
    for rec in records:
        if rec.norm != -2:
            continue
        groups.setdefault((rec.datum.s_invariant, _dual_form(rec.datum)), []).append(str(rec.datum))
    return [sorted(set(v)) for _, v in sorted(groups.items()) if len(set(v)) > 1]


# ----------------------------------------------------------------- the driver

def _extend_task(args) -> List[ExtensionCandidate]:
    leech, record = args
    return extend(record, LeechModel(leech))


def _record_task(args) -> OrbitRecord:
    leech, cand = args
    model = LeechModel(leech)
    rec = orbit_record(model, cand.witness, f"extend {cand.clause}")
    rec.component = str(cand.component)
    rec.parent_datum = str(cand.source.datum)
    rec.type3_predicted = cand.type3_predicted
    if rec.height != cand.height:
        raise ConstructionError(detail=f"extension height {rec.height} differs from t(v) + h - 1 = {cand.height}")
    return rec


def _map(func: Callable, items: List, workers: int) -> List:
    if workers > 1 and len(items) > 1:
        with Pool(processes=workers) as pool:
            return pool.map(func, items)
    return [func(x) for x in items]


def enumerate_orbits(
    norm: int,
    max_height: Optional[int] = None,
    workers: Optional[int] = None,
    inventory: Optional[NiemeierInventory] = None,
    model: Optional[LeechModel] = None,
    rng: Optional[random.Random] = None,
) -> List[OrbitRecord]:
    """Orbits of vectors of D of norm 0, -2 or -4.

    Args:
        norm: 0, -2 or -4
        max_height: Drop everything above this height
        workers: Process pool size for extension and record building
        inventory: Niemeier lattices and their cusps; derived when omitted

    Returns:
        Deduplicated records sorted by height
    """
    if norm not in (0, -2, -4):
        raise ValidationError(detail=f"orbit enumeration covers norms 0, -2 and -4, not {norm}")
    model = model or default_model()
    workers = workers or settings.workers
    inventory = inventory or niemeier_inventory(model.leech, rng=rng)
    if not inventory.seeded:
        missing = sorted(set(inventory.missing() + inventory.missing_cusps()))
        logger.warning(f"no cusp for {missing}; the orbit list will be short")

    def keep(h: int) -> bool:
        return max_height is None or h <= max_height

    zero = [r for r in seed_orbits(0, inventory, model) if keep(r.height)]
    if norm == 0:
        return dedup(zero)
    sources = zero if norm == -2 else enumerate_orbits(-2, max_height, workers, inventory, model)
    seeds = [r for r in seed_orbits(norm, inventory, model) if keep(r.height)]

    batches = _map(_extend_task, [(model.leech, r) for r in sources], workers)
    candidates = [c for batch in batches for c in batch if keep(c.height)]
    built = _map(_record_task, [(model.leech, c) for c in candidates], workers)
    for v, k in w_shift_candidates(zero + (sources if norm == -4 else []), norm):
        if keep(v.height):
            built.append(orbit_record(model, _add(v.witness, model.w, k), f"w-shift {k}"))

    records = dedup(seeds + built)
    log_structured(logger, "info", "orbit enumeration", {
        "norm": norm,
        "sources": len(sources),
        "candidates": len(candidates),
        "orbits": len(records),
        "unresolved": sum(r.unresolved for r in records),
        "inventory_complete": inventory.seeded,
    })
    return records
