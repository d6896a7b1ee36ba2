"""Kneser's neighbor method for unimodular lattices.

Two unimodular lattices are neighbors when their intersection has index
2 in each. An odd unimodular lattice A of signature divisible by 8 has
exactly two even neighbors, obtained from its even sublattice A0 by
adding c/2 or c/2 + v (c characteristic, v of odd norm). An even
unimodular B has one odd neighbor for every nonzero class b of B/2B with
b^2 = 0 mod 4: B_b = {x : (x, b) even} plus whichever of b/2, b/2 + x
((x, b) odd) has odd norm.
"""

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from hyperlat.core.config import settings
from hyperlat.core.exceptions import BudgetExceededError, ValidationError
from hyperlat.core.logging import get_logger, log_structured
from hyperlat.core.utils import check_deadline, deadline_after
from hyperlat.services import exact
from hyperlat.services.enumerate import (
    EnumerationRequest,
    babai_point,
    closest_vectors,
    lll_reduce,
    shell,
    vectors_in_ball,
)
from hyperlat.services.isometry import LatticeInvariants, compare_invariants, is_isometric, lattice_invariants
from hyperlat.services.lattice import Lattice, change_basis, characteristic_vector, even_sublattice, glue
from hyperlat.services.rootsys import RootDatum, identify_roots

logger = get_logger(__name__)


def _check_unimodular(lattice: Lattice) -> None:
    if not (lattice.is_integral and lattice.is_unimodular):
        raise ValidationError(detail="the neighbor method needs an integral unimodular lattice")


def _express(vectors: Sequence[Sequence], basis: Sequence[Sequence]) -> List[List[Fraction]]:
    """Coordinates of ambient vectors in a full rank sublattice basis."""
    inv = exact.inverse(basis)
    return [exact.vec_mat([Fraction(x) for x in v], inv) for v in vectors]


def even_neighbor_bases(lattice: Lattice) -> List[Tuple[Lattice, List[List[Fraction]]]]:
    """The two even neighbors of an odd unimodular lattice, with bases in its coordinates.

    Works for indefinite lattices too; the signature must be 0 mod 8.
    """
    _check_unimodular(lattice)
    if lattice.is_even:
        raise ValidationError(detail="even_neighbors needs an odd lattice")
    pos, neg, _ = lattice.signature
    if (pos - neg) % 8:
        raise ValidationError(detail=f"signature {pos - neg} is not divisible by 8")
    a0, b0 = even_sublattice(lattice)
    c = characteristic_vector(lattice)
    odd = next(i for i in range(lattice.rank) if lattice.gram[i][i].numerator % 2)
    v = [int(i == odd) for i in range(lattice.rank)]
    half = [Fraction(x, 2) for x in c]
    out = []
    for extra in (half, exact.add(half, v)):
        glued = glue(a0, _express([extra], b0))
        out.append((glued.lattice, exact.mat_mul(glued.basis, b0)))
    return out


def even_neighbors(lattice: Lattice) -> Tuple[Lattice, Lattice]:
    """The two even unimodular neighbors, LLL reduced."""
    first, second = (lll_reduce(l)[0] for l, _ in even_neighbor_bases(lattice))
    return first, second


def even_pairing_basis(lattice: Lattice, b: Sequence[int]) -> List[List[int]]:
    """Basis of B_b = {x : (x, b) even}, rows in ``lattice`` coordinates."""
    gb = [int(x) for x in lattice.gram_times(b)]
    n = lattice.rank
    odd = [i for i in range(n) if gb[i] % 2]
    if not odd:
        return exact.identity(n)
    i0 = odd[0]
    rows = []
    for j in range(n):
        e = [0] * n
        if j == i0:
            e[j] = 2
        else:
            e[j] = 1
            if j in odd:
                e[i0] = 1
        rows.append(e)
    return exact.hnf_rows(rows, n)


def _check_class(lattice: Lattice, b: Sequence[int]) -> List[int]:
    _check_unimodular(lattice)
    if not lattice.is_even:
        raise ValidationError(detail="odd neighbors are taken of even lattices")
    b = [int(x) for x in b]
    if lattice.norm(b) % 4 or all(x % 2 == 0 for x in b):
        raise ValidationError(detail="b must have norm 0 mod 4 and lie outside 2B")
    return b


def coset_parities(lattice: Lattice, b: Sequence[int]) -> List[int]:
    """Norms mod 2 of the three nonzero cosets b/2, x, b/2 + x of B_b^* / B_b."""
    b = _check_class(lattice, b)
    gb = lattice.gram_times(b)
    i = next(k for k in range(lattice.rank) if gb[k].numerator % 2)
    x = [int(k == i) for k in range(lattice.rank)]
    half = [Fraction(v, 2) for v in b]
    return sorted(int(lattice.norm(v) % 2) for v in (half, x, exact.add(half, x)))


def odd_neighbor(lattice: Lattice, b: Sequence[int]) -> Lattice:
    """The odd neighbor of an even unimodular lattice for the class of b (b^2 = 0 mod 4)."""
    b = _check_class(lattice, b)
    sub = even_pairing_basis(lattice, b)
    base = change_basis(lattice, sub)
    half = [Fraction(x, 2) for x in b]
    if (lattice.norm(b) // 4) % 2 == 0:
        gb = lattice.gram_times(b)
        i = next(k for k in range(lattice.rank) if gb[k].numerator % 2)
        half[i] += 1
    glued = glue(base, _express([half], sub))
    return lll_reduce(glued.lattice)[0]


def reduce_mod_2(lattice: Lattice, b: Sequence[int], deadline: Optional[float] = None) -> Tuple[Tuple[int, ...], Fraction]:
    """A shortest vector of the class b + 2L and its norm.

    In an integral lattice every norm in the class is b^2 mod 4, so the
    squared distance to b/2 is tried at (b^2 mod 4)/4, then in steps of 1
    up to the Babai bound; the first radius holding a point is the minimum.
    """
    center = [Fraction(x, 2) for x in b]
    if not lattice.is_integral:
        found = closest_vectors(EnumerationRequest(lattice, 0, center=center))
        return tuple(int(x) - 2 * v for x, v in zip(b, found.vectors[0])), 4 * found.norm
    y = babai_point(lattice, center)
    dist = lattice.norm([v - c for v, c in zip(y, center)])
    radius = Fraction(int(lattice.norm(b)) % 4, 4)
    while radius < dist:
        hit = vectors_in_ball(lattice, radius, center=center, limit=1, with_norms=True, deadline=deadline)
        if hit:
            y, dist = hit[0]
            break
        radius += 1
    return tuple(int(x) - 2 * v for x, v in zip(b, y)), 4 * dist


def _class_keys(
    lattice: Lattice,
    roots: Sequence[Sequence[int]],
    vectors: Sequence[Sequence[int]],
    deadline: Optional[float] = None,
    chunk: int = 4096,
) -> List[Tuple]:
    """Orbit invariants under Aut(L): the norm of b and the distribution of |(r, b)| over roots."""
    n = lattice.rank
    gram = np.array(lattice.int_gram, dtype=np.int64)
    root_images = np.array(roots, dtype=np.int64).reshape(len(roots), n) @ gram
    keys: List[Tuple] = []
    for start in range(0, len(vectors), chunk):
        check_deadline(deadline, "class invariants")
        block = np.array(vectors[start:start + chunk], dtype=np.int64).reshape(-1, n)
        norms = np.einsum("ij,jk,ik->i", block, gram, block)
        pairing = np.abs(block @ root_images.T)
        for norm, row in zip(norms.tolist(), pairing):
            values, counts = np.unique(row, return_counts=True)
            keys.append((Fraction(norm, lattice.den), tuple(zip(values.tolist(), counts.tolist()))))
    return keys


def admissible_classes(
    lattice: Lattice,
    samples: Optional[int] = None,
    rng: Optional[random.Random] = None,
    exhaustive_norm4: Optional[bool] = None,
    deadline: Optional[float] = None,
) -> List[Tuple[int, ...]]:
    """Representatives of classes b of L/2L with b^2 = 0 mod 4, one per invariant bucket.

    Norm 4 vectors are taken exhaustively in rank <= 16; further classes come
    from uniformly random elements of L/2L reduced to minimal norm.
    """
    samples = settings.neighbor_samples if samples is None else samples
    rng = rng or random.Random(settings.random_seed)
    if exhaustive_norm4 is None:
        exhaustive_norm4 = lattice.rank <= 16
    roots = shell(lattice, 2, deadline=deadline)
    candidates: List[Tuple[int, ...]] = []
    if exhaustive_norm4:
        candidates.extend(shell(lattice, 4, deadline=deadline))
    for _ in range(samples):
        raw = [rng.randrange(2) for _ in range(lattice.rank)]
        if not any(raw) or lattice.norm(raw) % 4:
            continue
        rep, _ = reduce_mod_2(lattice, raw, deadline=deadline)
        if any(rep):
            candidates.append(rep)
    buckets: Dict[Tuple, Tuple[int, ...]] = {}
    for key, b in zip(_class_keys(lattice, roots, candidates, deadline), candidates):
        if key not in buckets or tuple(b) < buckets[key]:
            buckets[key] = tuple(b)
    return [buckets[k] for k in sorted(buckets)]


def odd_neighbors(
    lattice: Lattice,
    samples: Optional[int] = None,
    rng: Optional[random.Random] = None,
    deadline: Optional[float] = None,
) -> List[Lattice]:
    """Odd neighbors for the admissible classes, deduplicated up to isometry."""
    found: List[Lattice] = []
    for b in admissible_classes(lattice, samples, rng, deadline=deadline):
        check_deadline(deadline, "odd neighbors")
        candidate = odd_neighbor(lattice, b)
        if not any(is_isometric(candidate, other, deadline=deadline) for other in found):
            found.append(candidate)
    return found


# ----------------------------------------------------------------- classification graph

@dataclass
class NeighborNode:
    id: int
    lattice: Lattice
    even: bool
    datum: str
    norm1: int  # half the number of norm 1 vectors
    invariants: dict = field(default_factory=dict)

    @property
    def root_datum(self) -> RootDatum:
        return RootDatum.parse(self.datum)

    @property
    def name(self) -> str:
        if self.even:
            if self.lattice.rank == 24:
                return self.root_datum.niemeier_name()
            return self.datum or "no roots"
        return f"odd {self.datum or 'no roots'}" + (f" + I{self.norm1}" if self.norm1 else "")


@dataclass
class NeighborGraph:
    """Even classes as nodes; odd classes without norm 1 vectors as edges."""
    dimension: int
    nodes: List[NeighborNode] = field(default_factory=list)
    edges: List[Tuple[int, int, int]] = field(default_factory=list)  # (odd node, even, even)
    complete: bool = True
    frontier: List[int] = field(default_factory=list)

    @property
    def even_nodes(self) -> List[NeighborNode]:
        return [n for n in self.nodes if n.even]

    @property
    def odd_nodes(self) -> List[NeighborNode]:
        return [n for n in self.nodes if not n.even]

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "complete": self.complete,
            "frontier": self.frontier,
            "nodes": [
                {
                    "id": n.id,
                    "name": n.name,
                    "even": n.even,
                    "root_system": n.datum,
                    "norm1_vectors": 2 * n.norm1,
                    "gram": n.lattice.to_record().gram,
                    "invariants": n.invariants,
                }
                for n in self.nodes
            ],
            "edges": [{"odd": o, "even": [a, b]} for o, a, b in self.edges],
        }

    def to_dot(self, name: str = "neighbors") -> str:
        lines = [f"graph {name} {{"]
        for n in self.even_nodes:
            lines.append(f'  n{n.id} [label="{n.name}"];')
        for o, a, b in self.edges:
            odd = self.nodes[o]
            lines.append(f'  n{a} -- n{b} [label="{odd.datum or "-"}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _describe(lattice: Lattice, inv: LatticeInvariants) -> Tuple[str, int, dict]:
    norm1 = len(shell(lattice, 1)) // 2 if lattice.is_odd else 0
    datum = identify_roots(lattice).datum
    data = {
        "minimum": str(inv.minimum),
        "theta": {str(k): v for k, v in sorted(inv.theta.items())},
        "s_invariant": datum.s_invariant,
        "coxeter": datum.common_coxeter_number,
    }
    return str(datum), norm1, data


def classify_dimension(
    dimension: int,
    start: Lattice,
    samples: Optional[int] = None,
    max_nodes: int = 200,
    rng: Optional[random.Random] = None,
    time_budget: Optional[float] = None,
    target_even: Optional[int] = None,
) -> NeighborGraph:
    """Close {start} under even_neighbors / odd_neighbors up to isometry.

    Args:
        dimension: A multiple of 8 (8, 16 and 24 are practical)
        start: Positive definite unimodular lattice of that dimension
        samples: Random classes of B/2B tried per even lattice
        max_nodes: Node budget; reaching it leaves a frontier report
        time_budget: Seconds of wall time; running out also leaves a frontier
        target_even: Stop once this many even classes are known

    Returns:
        NeighborGraph; ``complete`` is False when a budget ran out
    """
    if dimension % 8 or start.rank != dimension:
        raise ValidationError(detail=f"start lattice must have dimension {dimension}, a multiple of 8")
    _check_unimodular(start)
    if not start.is_positive_definite:
        raise ValidationError(detail="classification needs a positive definite start lattice")
    rng = rng or random.Random(settings.random_seed)
    graph = NeighborGraph(dimension)
    index: Dict[Tuple, List[int]] = {}
    known: Dict[int, LatticeInvariants] = {}
    queue: deque = deque()
    deadline = deadline_after(time_budget)

    def intern(lattice: Lattice) -> int:
        check_deadline(deadline, "classification")
        reduced = lll_reduce(lattice)[0]
        # norms up to 2 and the minimum are enough to bucket; isometry settles the rest
        inv = lattice_invariants(reduced, max_norm=max(2, min(reduced.gram[i][i] for i in range(reduced.rank))))
        datum, norm1, data = _describe(reduced, inv)
        key = (reduced.is_even, datum, norm1)
        for nid in index.get(key, []):
            if compare_invariants(inv, known[nid]) is None and is_isometric(reduced, graph.nodes[nid].lattice, deadline=deadline):
                return nid
        if len(graph.nodes) >= max_nodes:
            raise BudgetExceededError(detail=f"neighbor graph reached {max_nodes} nodes")
        node = NeighborNode(len(graph.nodes), reduced.with_label(None), reduced.is_even, datum, norm1, data)
        graph.nodes.append(node)
        known[node.id] = inv
        index.setdefault(key, []).append(node.id)
        queue.append(node.id)
        log_structured(logger, "info", "new neighbor class", {"id": node.id, "lattice": node.name, "even": node.even})
        return node.id

    edges = set()
    try:
        intern(start)
        while queue and not (target_even and len(graph.even_nodes) >= target_even):
            check_deadline(deadline, f"classification ({time_budget} s)")
            node = graph.nodes[queue[0]]
            if node.even:
                for odd in odd_neighbors(node.lattice, samples, rng, deadline):
                    intern(odd)
            else:
                a, b = sorted(intern(e) for e in even_neighbors(node.lattice))
                if node.norm1 == 0:
                    edges.add((node.id, a, b))
            queue.popleft()
        if queue:
            graph.complete = False
            graph.frontier = list(queue)
    except BudgetExceededError:
        graph.complete = False
        graph.frontier = list(queue)
        logger.warning(f"classification stopped with {len(queue)} unexplored classes")
    graph.edges = sorted(edges)
    log_structured(logger, "info", "classification finished", {
        "dimension": dimension,
        "even": len(graph.even_nodes),
        "odd": len(graph.odd_nodes),
        "complete": graph.complete,
    })
    return graph


def graph_checks(graph: NeighborGraph) -> Dict[str, bool]:
    """Structural facts every neighbor graph must satisfy.

    In dimension 24 each even class has a root system of rank 0 or 24 with
    a single Coxeter number h, and an odd class without norm 1 vectors
    joining even classes with h1 <= h2 has rho^2 = h1 h2,
    8(h1 + h2 - 2) roots and h2 <= 2 h1 + 2.
    """
    checks = {
        "edge ends even": all(graph.nodes[a].even and graph.nodes[b].even for _, a, b in graph.edges),
        "edges are odd": all(not graph.nodes[o].even and graph.nodes[o].norm1 == 0 for o, _, _ in graph.edges),
    }
    if graph.dimension != 24:
        return checks
    evens = graph.even_nodes
    checks["root rank 0 or 24"] = all(n.root_datum.rank in (0, 24) for n in evens)
    checks["single coxeter number"] = all(n.root_datum.common_coxeter_number is not None for n in evens)
    rho, roots, bound = True, True, True
    for o, a, b in graph.edges:
        h1, h2 = sorted(graph.nodes[i].root_datum.common_coxeter_number for i in (a, b))
        odd = graph.nodes[o].root_datum
        rho &= odd.weyl_vector_norm == h1 * h2
        roots &= odd.root_count == 8 * (h1 + h2 - 2)
        bound &= h2 <= 2 * h1 + 2
    checks["rho^2 = h1 h2"] = rho
    checks["roots = 8(h1 + h2 - 2)"] = roots
    checks["h2 <= 2 h1 + 2"] = bound
    return checks
