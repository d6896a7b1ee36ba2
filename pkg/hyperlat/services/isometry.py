"""Isometry testing for positive definite lattices.

Cheap invariants are compared first (rank, determinant, parity, theta
prefix, root system). Only when they agree does a backtracking search
look for images of a spanning frame of short vectors among the short
vectors of the second lattice, pruning by inner products with the images
already chosen.
"""

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from hyperlat.core.config import settings
from hyperlat.core.exceptions import BudgetExceededError, ValidationError
from hyperlat.core.logging import get_logger
from hyperlat.core.utils import check_deadline
from hyperlat.services import exact
from hyperlat.services.enumerate import lll_reduce, vectors_in_ball
from hyperlat.services.lattice import Lattice
from hyperlat.services.rootsys import identify_roots

logger = get_logger(__name__)


@dataclass
class IsometryCertificate:
    """Outcome of :func:`is_isometric`.

    ``matrix`` has the images of the basis of the first lattice as rows, in
    coordinates of the second, so that matrix G2 matrix^T = G1. A
    refutation names the first invariant that differs instead.
    """
    isometric: bool
    matrix: Optional[List[List[int]]] = None
    invariant: Optional[str] = None
    values: Optional[Tuple[Any, Any]] = None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.isometric

    def verify(self, first: Lattice, second: Lattice) -> bool:
        if not self.isometric or self.matrix is None:
            return False
        m = self.matrix
        return exact.mat_mul(exact.mat_mul(m, second.gram), exact.transpose(m)) == [list(r) for r in first.gram] \
            and abs(exact.determinant(m)) == 1


@dataclass
class LatticeInvariants:
    rank: int
    determinant: Fraction
    even: bool
    minimum: Optional[Fraction]
    theta: Dict[Fraction, int] = field(default_factory=dict)
    datum: Optional[str] = None

    def items(self) -> List[Tuple[str, Any]]:
        return [
            ("rank", self.rank),
            ("determinant", self.determinant),
            ("parity", "even" if self.even else "odd"),
            ("minimum", self.minimum),
            ("theta", sorted(self.theta.items())),
            ("root system", self.datum),
        ]


def lattice_invariants(lattice: Lattice, max_norm=None) -> LatticeInvariants:
    """Invariants used to refute isometry before searching.

    ``max_norm`` defaults to the largest diagonal entry of an LLL reduced
    Gram matrix, which is the range the basis search needs anyway.
    """
    if not lattice.is_positive_definite:
        raise ValidationError(detail="isometry testing needs positive definite lattices")
    reduced, _ = lll_reduce(lattice)
    if max_norm is None:
        max_norm = max((reduced.gram[i][i] for i in range(reduced.rank)), default=Fraction(0))
    counts = Counter(d for x, d in vectors_in_ball(reduced, max_norm, with_norms=True) if any(x))
    datum = None
    if lattice.is_integral and counts.get(Fraction(2)):
        datum = str(identify_roots(reduced).datum)
    elif lattice.is_integral:
        datum = ""
    return LatticeInvariants(
        rank=lattice.rank,
        determinant=lattice.determinant,
        even=lattice.is_even,
        minimum=min(counts) if counts else None,
        theta=dict(counts),
        datum=datum,
    )


def compare_invariants(first: LatticeInvariants, second: LatticeInvariants) -> Optional[Tuple[str, Any, Any]]:
    """First invariant that differs, or None."""
    for (name, a), (_, b) in zip(first.items(), second.items()):
        if name == "theta":
            # compare on the common range only
            top = min(max((k for k, _ in a), default=0), max((k for k, _ in b), default=0))
            a = [(k, v) for k, v in a if k <= top]
            b = [(k, v) for k, v in b if k <= top]
        if a != b:
            return name, a, b
    return None


class _RationalSpan:
    """Echelon rows over Q; ``add`` reports whether a vector raised the rank."""

    def __init__(self):
        self.rows: List[Tuple[int, List[Fraction]]] = []

    def add(self, v) -> bool:
        w = [Fraction(x) for x in v]
        for p, row in self.rows:
            if w[p]:
                f = w[p] / row[p]
                w = [a - f * b for a, b in zip(w, row)]
        pivot = next((i for i, x in enumerate(w) if x), None)
        if pivot is None:
            return False
        self.rows.append((pivot, w))
        return True

    def __len__(self) -> int:
        return len(self.rows)


def _frame(lattice: Lattice, vectors: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    """A full rank set of short vectors, each one meeting an earlier one where possible.

    Connected frames give the backtracking search inner products to prune on.
    """
    span = _RationalSpan()
    chosen: List[Tuple[int, ...]] = []
    images: List[List[int]] = []
    remaining = sorted(vectors, key=lambda x: (lattice.norm(x), x))
    while len(chosen) < lattice.rank:
        if not remaining:
            raise ValidationError(detail="short vectors do not span the lattice")
        skipped = []
        for y in remaining:
            if len(chosen) == lattice.rank:
                break
            if images and not any(exact.dot(y, g) for g in images):
                skipped.append(y)
            elif span.add(y):
                chosen.append(y)
                images.append(exact.mat_vec(lattice.int_gram, y))
        if len(skipped) == len(remaining):
            # nothing left meets the frame; start a new component
            images = []
        remaining = skipped
    return chosen


def _spanning_vectors(reduced: Lattice) -> Tuple[Fraction, List[Tuple[int, ...]]]:
    """Smallest diagonal bound N of ``reduced`` whose vectors of norm <= N span it, and those vectors."""
    for bound in sorted(set(reduced.gram[i][i] for i in range(reduced.rank))):
        vectors = [x for x in vectors_in_ball(reduced, bound) if any(x)]
        span = _RationalSpan()
        for x in vectors:
            if span.add(x) and len(span) == reduced.rank:
                return bound, vectors
    raise ValidationError(detail="reduced basis does not span the lattice")


class _FrameSearch:
    """Backtracking for vectors y_i of the second lattice with (y_i, y_j) = F G1 F^T.

    Every level narrows the candidate lists of all deeper levels by the
    inner product with the vector just chosen. A complete assignment is
    kept only when the induced rational map sends the whole first lattice
    into the second, i.e. F^-1 Y is integral.
    """

    def __init__(
        self,
        target: List[List[int]],
        gram2: List[List[int]],
        pools: Dict[int, List[Tuple[int, ...]]],
        frame_inverse: List[List[Fraction]],
        budget: int,
        deadline: Optional[float] = None,
    ):
        self.target = target
        self.gram2 = gram2
        self.pools = pools
        self.frame_inverse = frame_inverse
        self.budget = budget
        self.deadline = deadline
        self.nodes = 0
        self.n = len(target)
        self.chosen: List[Tuple[int, ...]] = []
        self.map: Optional[List[List[int]]] = None

    def _times(self, y) -> List[int]:
        return [sum(a * b for a, b in zip(row, y)) for row in self.gram2]

    def _integral_map(self) -> Optional[List[List[int]]]:
        m = exact.mat_mul(self.frame_inverse, self.chosen)
        if all(x.denominator == 1 for row in m for x in row):
            return [[int(x) for x in row] for row in m]
        return None

    def _narrow(self, lists, depth: int, gy: List[int]) -> Optional[list]:
        narrowed = list(lists[: depth + 1])
        cache: Dict[Tuple[int, int], list] = {}
        for e in range(depth + 1, self.n):
            want = self.target[e][depth]
            key = (id(lists[e]), want)
            if key not in cache:
                cache[key] = [z for z in lists[e] if sum(a * b for a, b in zip(z, gy)) == want]
            if not cache[key]:
                return None
            narrowed.append(cache[key])
        return narrowed

    def run(self, depth: int = 0, lists: Optional[list] = None) -> bool:
        if lists is None:
            lists = [self.pools[self.target[e][e]] for e in range(self.n)]
        if depth == self.n:
            self.map = self._integral_map()
            return self.map is not None
        for y in lists[depth]:
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceededError(detail=f"isometry search exceeded {self.budget} nodes")
            if self.nodes % 512 == 0:
                check_deadline(self.deadline, "isometry search")
            narrowed = self._narrow(lists, depth, self._times(y))
            if narrowed is None:
                continue
            self.chosen.append(y)
            if self.run(depth + 1, narrowed):
                return True
            self.chosen.pop()
        return False


def is_isometric(
    first: Lattice,
    second: Lattice,
    budget: Optional[int] = None,
    deadline: Optional[float] = None,
) -> IsometryCertificate:
    """Decide whether two positive definite lattices are isometric.

    Args:
        first: Positive definite lattice
        second: Positive definite lattice of the same rank
        budget: Maximum number of backtracking nodes
        deadline: ``time.monotonic()`` value after which the search gives up

    Returns:
        IsometryCertificate with a basis matrix or the refuting invariant

    Raises:
        BudgetExceededError: The search ran out of nodes or time; ``partial``
            holds the invariant report
    """
    budget = budget or settings.isometry_budget
    check_deadline(deadline, "isometry search")
    if first.rank != second.rank:
        return IsometryCertificate(False, invariant="rank", values=(first.rank, second.rank))
    if first.determinant != second.determinant:
        return IsometryCertificate(False, invariant="determinant", values=(first.determinant, second.determinant))
    if first.is_even != second.is_even:
        return IsometryCertificate(False, invariant="parity", values=(first.is_even, second.is_even))
    if first.rank == 0:
        return IsometryCertificate(True, matrix=[])
    r1, h1 = lll_reduce(first)
    r2, h2 = lll_reduce(second)
    top1, short1 = _spanning_vectors(r1)
    top2, _ = _spanning_vectors(r2)
    top = max(top1, top2)
    inv1, inv2 = lattice_invariants(first, top), lattice_invariants(second, top)
    diff = compare_invariants(inv1, inv2)
    if diff is not None:
        logger.debug(f"isometry refuted by {diff[0]}")
        return IsometryCertificate(False, invariant=diff[0], values=(diff[1], diff[2]))

    frame = _frame(r1, short1)
    scale = math.lcm(first.den, second.den)
    target = [[int(r1.inner(x, y) * scale) for y in frame] for x in frame]
    gram2 = [[int(x * scale) for x in row] for row in r2.gram]
    pools: Dict[int, List[Tuple[int, ...]]] = {}
    for x, d in vectors_in_ball(r2, top, with_norms=True):
        if any(x):
            pools.setdefault(int(d * scale), []).append(x)
    for i in range(len(frame)):
        pools.setdefault(target[i][i], [])
    search = _FrameSearch(target, gram2, pools, exact.inverse(frame), budget, deadline)
    try:
        found = search.run()
    except BudgetExceededError as e:
        e.partial = {name: value for name, value in inv1.items()}
        e.context.update({"nodes": search.nodes})
        logger.warning(f"isometry search inconclusive after {search.nodes} nodes; invariants agree")
        raise
    if not found:
        return IsometryCertificate(False, invariant="basis search", nodes=search.nodes)
    # search.map sends the reduced basis of ``first`` to coordinates of the reduced basis of ``second``
    matrix = exact.mat_mul(exact.mat_mul(exact.inverse(h1), search.map), h2)
    matrix = [[int(x) for x in row] for row in matrix]
    logger.debug(f"isometry found after {search.nodes} nodes")
    return IsometryCertificate(True, matrix=matrix, nodes=search.nodes)
