"""Exact short and close vector enumeration in positive definite lattices.

Fincke-Pohst over an exact completion of squares, on an LLL-reduced
basis. Every pruning bound is an exact rational comparison; integer
interval ends come from an integer square root followed by an exact
correction step.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor, isqrt
from multiprocessing import Pool
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from fpylll import GSO, LLL, IntegerMatrix

from hyperlat.core.config import settings
from hyperlat.core.exceptions import BudgetExceededError, IndefiniteLatticeError, ValidationError
from hyperlat.core.logging import get_logger
from hyperlat.core.utils import check_deadline
from hyperlat.services import exact
from hyperlat.services.lattice import Lattice

logger = get_logger(__name__)

IntVector = Tuple[int, ...]


@dataclass
class EnumerationRequest:
    lattice: Lattice
    radius_sq: Fraction
    center: Optional[List[Fraction]] = None
    mode: str = "all"  # all | count | orbit_reps
    budget: Optional[int] = None

    def __post_init__(self):
        self.radius_sq = Fraction(self.radius_sq)
        if self.radius_sq < 0:
            raise ValidationError(detail="radius_sq must be nonnegative")
        if self.mode not in ("all", "count", "orbit_reps"):
            raise ValidationError(detail=f"unknown enumeration mode {self.mode!r}")
        if self.center is not None:
            self.center = [Fraction(x) for x in self.center]
            if len(self.center) != self.lattice.rank:
                raise ValidationError(detail="center has the wrong dimension")


@dataclass
class VectorShell:
    norm: Fraction  # norm, or squared distance to the center
    vectors: List[IntVector] = field(default_factory=list)
    count: int = 0

    def __post_init__(self):
        if not self.count:
            self.count = len(self.vectors)


# ----------------------------------------------------------------- LLL

def _lll_int_gram(gram: List[List[int]], delta: float = 0.99) -> List[List[int]]:
    """Unimodular H whose rows are an LLL-reduced basis of an integer Gram matrix.

    fplll works on the Gram matrix directly (``INT_GRAM``); the reduced
    Gram matrix itself is recomputed exactly by the caller.
    """
    n = len(gram)
    if n == 0:
        return []
    a = IntegerMatrix.from_matrix([[int(x) for x in row] for row in gram])
    u = IntegerMatrix.identity(n)
    m = GSO.Mat(a, U=u, flags=GSO.INT_GRAM)
    m.update_gso()
    LLL.Reduction(m, delta=delta)()
    h = [[0] * n for _ in range(n)]
    u.to_matrix(h)
    return h


@lru_cache(maxsize=256)
def _lll_cached(gram: Tuple[Tuple[Fraction, ...], ...]) -> Tuple[Tuple[Tuple[Fraction, ...], ...], Tuple[Tuple[int, ...], ...]]:
    den = exact.common_denominator(x for row in gram for x in row)
    h = _lll_int_gram([[int(x * den) for x in row] for row in gram])
    reduced = exact.mat_mul(exact.mat_mul(h, [list(row) for row in gram]), exact.transpose(h)) if h else []
    if any(reduced[i][i] <= 0 for i in range(len(reduced))):
        raise IndefiniteLatticeError(detail="LLL needs a positive definite Gram matrix")
    return (
        tuple(tuple(Fraction(x) for x in row) for row in reduced),
        tuple(tuple(int(x) for x in row) for row in h),
    )


def lll_reduce(lattice: Lattice) -> Tuple[Lattice, List[List[int]]]:
    """LLL-reduced Gram matrix and the unimodular change of basis.

    Rows of the returned matrix are the reduced basis vectors in the
    coordinates of ``lattice``.
    """
    if lattice.rank and not lattice.is_positive_definite:
        raise IndefiniteLatticeError(detail="LLL needs a positive definite lattice")
    gram, h = _lll_cached(lattice.gram)
    return Lattice(gram, lattice.label), [list(row) for row in h]


# ----------------------------------------------------------------- Fincke-Pohst

def _interval(m: Fraction, s: Fraction) -> Tuple[int, int]:
    """Integers x with (x - m)^2 <= s, as an inclusive range (lo > hi if empty)."""
    if s < 0:
        return 1, 0
    r = isqrt(s.numerator // s.denominator) + 1
    lo = floor(m) - r
    while lo < m and (lo - m) ** 2 > s:
        lo += 1
    hi = floor(m) + r + 1
    while hi > m and (hi - m) ** 2 > s:
        hi -= 1
    return lo, hi


class _Enumerator:
    """Depth-first Fincke-Pohst traversal of {x : Q(x - c) <= R}."""

    def __init__(self, gram: Sequence[Sequence[Fraction]], center: Optional[Sequence[Fraction]]):
        self.n = len(gram)
        try:
            q = exact.quadratic_completion(gram)
        except ValueError as e:
            raise IndefiniteLatticeError(detail="enumeration needs a positive definite lattice") from e
        self.diag = [q[i][i] for i in range(self.n)]
        self.upper = [[q[i][j] if j > i else Fraction(0) for j in range(self.n)] for i in range(self.n)]
        self.center = [Fraction(x) for x in center] if center is not None else None

    def walk(self, radius_sq: Fraction, top: Optional[int] = None, canonical: bool = False) -> Iterator[Tuple[IntVector, Fraction]]:
        """Yield (x, Q(x - c)) in lexicographic traversal order.

        With ``canonical`` only vectors whose last nonzero coordinate is
        positive (and the zero vector) are produced.
        """
        n = self.n
        if n == 0:
            yield (), Fraction(0)
            return
        c = self.center or [Fraction(0)] * n
        diag, upper = self.diag, self.upper
        x = [0] * n
        hi = [0] * n
        rest = [Fraction(0)] * (n + 1)  # rest[i]: radius left for levels < i
        rest[n] = Fraction(radius_sq)
        shift = [Fraction(0)] * n  # shift[i] = sum_{j>i} q_ij (x_j - c_j)
        level = n - 1

        def bounds(i):
            u = sum((upper[i][j] * (x[j] - c[j]) for j in range(i + 1, n)), Fraction(0))
            shift[i] = u
            lo, h = _interval(c[i] - u, rest[i + 1] / diag[i])
            if canonical and all(v == 0 for v in x[i + 1:]):
                lo = max(lo, 0)
            if top is not None and i == n - 1:
                lo, h = max(lo, top), min(h, top)
            return lo, h

        lo, hi[level] = bounds(level)
        x[level] = lo
        while True:
            if x[level] > hi[level]:
                level += 1
                if level == n:
                    return
                x[level] += 1
                continue
            t = x[level] - c[level] + shift[level]
            left = rest[level + 1] - diag[level] * t * t
            if left < 0:
                x[level] += 1
                continue
            if level == 0:
                yield tuple(x), radius_sq - left
                x[0] += 1
                continue
            rest[level] = left
            level -= 1
            lo, hi[level] = bounds(level)
            x[level] = lo


def _walk_task(args) -> List[Tuple[IntVector, Fraction]]:
    gram, center, radius_sq, top, canonical = args
    return list(_Enumerator(gram, center).walk(radius_sq, top=top, canonical=canonical))


def vectors_in_ball(
    lattice: Lattice,
    radius_sq,
    center: Optional[Sequence] = None,
    budget: Optional[int] = None,
    predicate: Optional[Callable[[IntVector, Fraction], bool]] = None,
    limit: Optional[int] = None,
    workers: Optional[int] = None,
    with_norms: bool = False,
    deadline: Optional[float] = None,
) -> list:
    """All x in L with |x - center|^2 <= radius_sq, sorted by distance then coordinates.

    Args:
        lattice: Positive definite lattice
        radius_sq: Exact squared radius
        center: Optional rational center (lattice coordinates)
        budget: Maximum number of vectors before BudgetExceededError
        predicate: Keep only vectors for which predicate(x, dist_sq) holds
        limit: Stop after this many kept vectors (traversal order, then sorted)
        workers: Split the outermost coordinate over a process pool
        with_norms: Return (x, dist_sq) pairs instead of bare vectors
        deadline: ``time.monotonic()`` value after which the walk gives up

    Returns:
        Sorted list of integer coordinate tuples
    """
    radius_sq = Fraction(radius_sq)
    budget = budget or settings.enumeration_budget
    workers = workers or settings.workers
    reduced, h = lll_reduce(lattice)
    symmetric = center is None or all(Fraction(x) == 0 for x in center)
    rcenter = None
    if not symmetric:
        # center in reduced coordinates: c' = c H^-1
        rcenter = exact.vec_mat([Fraction(x) for x in center], exact.inverse(h))

    def back(y):
        return tuple(int(v) for v in exact.vec_mat(y, h))

    found: List[Tuple[IntVector, Fraction]] = []
    emitted = 0

    def accept(y, dist):
        nonlocal emitted
        emitted += 1
        if emitted > budget:
            raise BudgetExceededError(
                detail=f"enumeration exceeded {budget} vectors",
                partial={"emitted": emitted - 1},
                context={"radius_sq": radius_sq, "rank": lattice.rank},
            )
        if deadline is not None and emitted % 4096 == 0:
            check_deadline(deadline, "enumeration")
        xv = back(y)
        if predicate is None or predicate(xv, dist):
            found.append((xv, dist))
        return limit is not None and len(found) >= limit

    if workers > 1 and limit is None and predicate is None and lattice.rank > 1:
        stream = _parallel_walk(reduced, rcenter, radius_sq, symmetric, workers)
    else:
        stream = _Enumerator(reduced.gram, rcenter).walk(radius_sq, canonical=symmetric)

    done = False
    for y, dist in stream:
        if symmetric and any(y):
            if accept(y, dist) or accept(tuple(-v for v in y), dist):
                done = True
        elif accept(y, dist):
            done = True
        if done:
            break
    found.sort(key=lambda item: (item[1], item[0]))
    logger.debug(f"enumerated {emitted} vectors within {radius_sq} in rank {lattice.rank}")
    if with_norms:
        return found
    return [xv for xv, _ in found]


def _parallel_walk(reduced: Lattice, center, radius_sq: Fraction, canonical: bool, workers: int):
    enum = _Enumerator(reduced.gram, center)
    n = reduced.rank
    c = center or [Fraction(0)] * n
    lo, hi = _interval(c[n - 1], radius_sq / enum.diag[n - 1])
    if canonical:
        lo = max(lo, 0)
    tops = list(range(lo, hi + 1))
    if len(tops) < 2:
        yield from enum.walk(radius_sq, canonical=canonical)
        return
    tasks = [(reduced.gram, center, radius_sq, t, canonical) for t in tops]
    logger.info(f"splitting enumeration over {len(tops)} subtrees on {workers} workers")
    with Pool(processes=workers) as pool:
        for chunk in pool.map(_walk_task, tasks):
            yield from chunk


# ----------------------------------------------------------------- public operations

def short_vectors(req: EnumerationRequest) -> List[VectorShell]:
    """Complete shells of norm (or squared distance) up to ``req.radius_sq``."""
    lattice = req.lattice
    found = vectors_in_ball(lattice, req.radius_sq, center=req.center, budget=req.budget, with_norms=True)
    shells: List[VectorShell] = []
    for xv, dist in found:
        if not shells or shells[-1].norm != dist:
            shells.append(VectorShell(norm=dist))
        shell = shells[-1]
        shell.count += 1
        if req.mode == "all":
            shell.vectors.append(xv)
        elif req.mode == "orbit_reps":
            nz = [v for v in xv if v]
            if not nz or nz[-1] > 0:
                shell.vectors.append(xv)
    return shells


def shell(
    lattice: Lattice,
    norm,
    center: Optional[Sequence] = None,
    budget: Optional[int] = None,
    deadline: Optional[float] = None,
) -> List[IntVector]:
    """Vectors at exactly the given norm (squared distance from ``center``)."""
    norm = Fraction(norm)
    return vectors_in_ball(lattice, norm, center=center, budget=budget, predicate=lambda x, d: d == norm, deadline=deadline)


def count_vectors(lattice: Lattice, max_norm, budget: Optional[int] = None) -> dict:
    """Norm -> number of vectors, for all norms up to ``max_norm``.

    Streams the walk over one vector of each pair +-x; nothing is stored.
    """
    budget = budget or settings.enumeration_budget
    reduced, _ = lll_reduce(lattice)
    counts: dict = {}
    emitted = 0
    for y, dist in _Enumerator(reduced.gram, None).walk(Fraction(max_norm), canonical=True):
        k = 2 if any(y) else 1
        emitted += k
        if emitted > budget:
            raise BudgetExceededError(
                detail=f"enumeration exceeded {budget} vectors",
                partial=dict(counts),
                context={"radius_sq": max_norm, "rank": lattice.rank},
            )
        counts[dist] = counts.get(dist, 0) + k
    return counts


def babai_point(lattice: Lattice, center: Sequence) -> IntVector:
    """Nearest-plane rounding in the reduced basis (an upper bound for CVP)."""
    reduced, h = lll_reduce(lattice)
    n = reduced.rank
    c = exact.vec_mat([Fraction(x) for x in center], exact.inverse(h))
    q = exact.quadratic_completion(reduced.gram)
    y = [0] * n
    for i in range(n - 1, -1, -1):
        u = sum((q[i][j] * (y[j] - c[j]) for j in range(i + 1, n)), Fraction(0))
        y[i] = round(c[i] - u)
    return tuple(int(v) for v in exact.vec_mat(y, h))


def closest_vectors(req: EnumerationRequest) -> VectorShell:
    """All lattice points at minimal distance from ``req.center``."""
    lattice = req.lattice
    center = req.center or [Fraction(0)] * lattice.rank
    guess = babai_point(lattice, center)
    diff = [g - c for g, c in zip(guess, center)]
    bound = lattice.norm(diff)
    found = vectors_in_ball(lattice, bound, center=center, budget=req.budget, with_norms=True)
    best = found[0][1]
    return VectorShell(norm=best, vectors=[xv for xv, d in found if d == best])


def minimum(lattice: Lattice, budget: Optional[int] = None) -> Fraction:
    """Minimal norm of a nonzero vector."""
    if lattice.rank == 0:
        raise ValidationError(detail="the zero lattice has no nonzero vectors")
    reduced, _ = lll_reduce(lattice)
    bound = min(reduced.gram[i][i] for i in range(reduced.rank))
    found = vectors_in_ball(lattice, bound, budget=budget, with_norms=True)
    return min(d for xv, d in found if any(xv))
