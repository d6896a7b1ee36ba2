"""Lorentzian lattices, Vinberg's algorithm and the Leech model of II_{25,1}.

A fundamental domain is described by outward simple roots r, the domain
being {x : (x, r) <= 0}. Roots are vectors of norm 1 or 2. The future
cone is the one containing the distinguished negative norm vector, and
heights -(v, w) are positive on it.
"""

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from hyperlat.core.config import settings
from hyperlat.core.exceptions import BudgetExceededError, ConstructionError, ValidationError
from hyperlat.core.logging import get_logger, log_structured
from hyperlat.services import exact
from hyperlat.services.enumerate import EnumerationRequest, closest_vectors, lll_reduce, shell, vectors_in_ball
from hyperlat.services.lattice import Lattice, change_basis, direct_sum, hyperbolic_plane, isotropic_quotient_basis
from hyperlat.services.rootsys import diagram_graph, diagram_kinds, dynkin_dot, identify_roots, positive_and_simple

logger = get_logger(__name__)

Vector = Tuple[int, ...]

DEFAULT_MAX_DISTANCE = Fraction(8)
SUBDIAGRAM_CAP = 200_000
REDUCTION_STEPS = 100_000


def _vector(v: Sequence) -> tuple:
    """Integer tuple when every entry is integral, Fraction tuple otherwise."""
    f = [Fraction(x) for x in v]
    if all(x.denominator == 1 for x in f):
        return tuple(int(x) for x in f)
    return tuple(f)


def _negative_vector(lattice: Lattice) -> Vector:
    n = lattice.rank
    for i in range(n):
        e = [0] * n
        e[i] = 1
        if lattice.norm(e) < 0:
            return tuple(e)
    for i, j in combinations(range(n), 2):
        for s in (1, -1):
            e = [0] * n
            e[i], e[j] = 1, s
            if lattice.norm(e) < 0:
                return tuple(e)
    raise ValidationError(detail="no short negative norm vector found; pass the cone vector explicitly")


class LorentzLattice:
    """A lattice of signature (n, 1) with a chosen future cone."""

    def __init__(self, lattice: Lattice, cone: Optional[Sequence[int]] = None):
        pos, neg, zero = lattice.signature
        if neg != 1 or zero != 0:
            raise ValidationError(detail=f"signature ({pos}, {neg}, {zero}) is not Lorentzian")
        self.lattice = lattice
        self.cone = tuple(int(x) for x in cone) if cone is not None else _negative_vector(lattice)
        if lattice.norm(self.cone) >= 0:
            raise ValidationError(detail="the cone vector must have negative norm")

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        return self.lattice.inner(x, y)

    def norm(self, x: Sequence) -> Fraction:
        return self.lattice.norm(x)

    def in_cone(self, v: Sequence) -> bool:
        """True for nonzero v of norm <= 0 in the future cone."""
        return any(v) and self.norm(v) <= 0 and self.inner(v, self.cone) < 0


def _as_lattice(lattice: Union[Lattice, LorentzLattice]) -> Lattice:
    return lattice.lattice if isinstance(lattice, LorentzLattice) else lattice


# ----------------------------------------------------------------- basic geometry

def reflect(lattice: Union[Lattice, LorentzLattice], v: Sequence, r: Sequence) -> tuple:
    """Image of v under the reflection in the hyperplane r^perp."""
    lattice = _as_lattice(lattice)
    n = lattice.norm(r)
    if n == 0:
        raise ValidationError(detail="cannot reflect in a norm 0 vector")
    c = 2 * lattice.inner(v, r) / n
    return _vector(Fraction(x) - c * y for x, y in zip(v, r))


def is_root(lattice: Union[Lattice, LorentzLattice], r: Sequence, norms: Sequence[int] = (1, 2)) -> bool:
    """r has one of the given norms and its reflection preserves the lattice."""
    lattice = _as_lattice(lattice)
    n = lattice.norm(r)
    if n not in norms or n == 0:
        return False
    return all((2 * x / n).denominator == 1 for x in lattice.gram_times(r))


def height(lattice: Union[Lattice, LorentzLattice], v: Sequence, w: Sequence) -> Fraction:
    """-(v, w)."""
    return -_as_lattice(lattice).inner(v, w)


def norm0_classify(lattice: Union[Lattice, LorentzLattice], z: Sequence) -> Lattice:
    """The even lattice z^perp / z, LLL reduced and labelled by its root system."""
    lattice = _as_lattice(lattice)
    quotient, _ = isotropic_quotient_basis(lattice, z)
    reduced, _ = lll_reduce(quotient)
    datum = identify_roots(reduced).datum
    if reduced.rank == 24 and reduced.is_even and reduced.is_unimodular:
        label = datum.niemeier_name()
    else:
        label = str(datum) or "no roots"
    return reduced.with_label(label)


def pairing_partner(lattice: Lattice, w: Sequence[int]) -> Vector:
    """Some w' in L with (w, w') = -1."""
    gw = [int(x) for x in lattice.gram_times(w)]
    g, x = 0, [0] * len(gw)
    for i, a in enumerate(gw):
        s, t, g2 = exact.xgcd(g, a)
        x = [s * v for v in x]
        x[i] += t
        g = g2
    if g != 1:
        raise ValidationError(detail=f"(w, L) = {g}Z; an isotropic controlling vector must pair unimodularly")
    return tuple(-v for v in x)


# ----------------------------------------------------------------- finite volume

def _elliptic(gram, nodes) -> bool:
    kinds = diagram_kinds(gram, nodes)
    return kinds is not None and not any(c.affine for c in kinds)


def finite_volume(gram: Sequence[Sequence], dimension: int, cap: int = SUBDIAGRAM_CAP) -> Optional[bool]:
    """Vinberg's criterion for the polyhedron bounded by simple roots with Gram matrix ``gram``.

    Every elliptic subdiagram of rank dimension - 1 has to extend in exactly
    two ways, to an elliptic subdiagram of rank ``dimension`` or to a
    parabolic one of rank dimension - 1. Returns None when the diagram has
    roots of norm other than 2 or the search would exceed ``cap`` subsets.
    """
    k = len(gram)
    if any(gram[i][i] != 2 for i in range(k)):
        return None
    size = dimension - 1
    if size < 1 or k < size:
        return False
    if math.comb(k, size) > cap:
        return None
    work = 0
    found = False
    for s in combinations(range(k), size):
        kinds = diagram_kinds(gram, s)
        if kinds is None or any(c.affine for c in kinds):
            continue
        found = True
        rest = [v for v in range(k) if v not in s]
        extensions = sum(1 for v in rest if _elliptic(gram, s + (v,)))
        for t in range(1, len(kinds) + 1):
            work += math.comb(len(rest), t)
            if work > cap:
                return None
            for extra in combinations(rest, t):
                ext = diagram_kinds(gram, tuple(sorted(s + extra)))
                if ext and all(c.affine for c in ext) and sum(c.rank for c in ext) == size:
                    extensions += 1
        if extensions != 2:
            return False
    return found


# ----------------------------------------------------------------- Vinberg

@dataclass
class VinbergRun:
    lattice: Lattice
    controlling: Vector
    roots: List[Vector] = field(default_factory=list)
    distances: List[Fraction] = field(default_factory=list)
    step0: int = 0
    termination: str = "distance budget"  # finite-volume | root budget | distance budget
    finite_volume: Optional[bool] = None

    @property
    def gram(self) -> List[List[Fraction]]:
        return [[self.lattice.inner(a, b) for b in self.roots] for a in self.roots]

    def diagram(self) -> nx.Graph:
        return diagram_graph(self.gram)

    def to_dot(self, name: str = "vinberg") -> str:
        return dynkin_dot(self.gram, [str(i) for i in range(len(self.roots))], name)


class _TimelikeRoots:
    """Roots at given (r, w) for w of negative norm, via the majorant x^2 - 2(x,w)^2/w^2."""

    def __init__(self, lattice: Lattice, w: Vector, norms: Sequence[int]):
        self.lattice, self.w, self.norms = lattice, w, norms
        gw = lattice.gram_times(w)
        self.wn = lattice.norm(w)
        n = lattice.rank
        self.majorant = Lattice([[lattice.gram[i][j] - 2 * gw[i] * gw[j] / self.wn for j in range(n)] for i in range(n)])

    def roots(self, j: int, k: int) -> List[Vector]:
        bound = k - 2 * Fraction(j * j) / self.wn
        lat, w = self.lattice, self.w
        return vectors_in_ball(
            self.majorant, bound,
            predicate=lambda x, d: d == bound and lat.inner(x, w) == -j,
        )

    def step0(self) -> List[Vector]:
        found = [r for k in self.norms for r in self.roots(0, k)]
        _, simple = positive_and_simple(found)
        return [tuple(-x for x in a) for a in simple]


class _IsotropicRoots:
    """Roots for a norm 0 controlling vector, using L = K (+) <w, w'> with (w, w') = -1.

    A root k + a w + b w' has (r, w) = -b. Step 0 is the affine chamber of
    the roots of K shifted by multiples of w; later candidates must pair
    nonpositively with it, which confines k to b times the fundamental
    alcove whenever the roots of K span K.
    """

    def __init__(self, lattice: Lattice, w: Vector, norms: Sequence[int],
                 partner: Optional[Sequence[int]], candidate_norm_bound):
        self.lattice, self.w, self.norms = lattice, w, norms
        self.wp = tuple(int(x) for x in partner) if partner is not None else pairing_partner(lattice, w)
        if lattice.inner(w, self.wp) != -1:
            raise ValidationError(detail="partner vector must have inner product -1 with w")
        self.wp_norm = lattice.norm(self.wp)
        self.basis = exact.integer_kernel([lattice.gram_times(w), lattice.gram_times(self.wp)])
        self.K = change_basis(lattice, self.basis)
        if not self.K.is_positive_definite:
            raise ValidationError(detail="w^perp / w is not positive definite")
        k_roots = [r for k in norms for r in shell(self.K, k)]
        _, simple = positive_and_simple(k_roots)
        self.simple = simple
        self.highest, vertex_bound = self._components(k_roots)
        if candidate_norm_bound is not None:
            self.bound = lambda b: Fraction(candidate_norm_bound)
        elif len(simple) == self.K.rank:
            self.bound = lambda b: b * b * vertex_bound
        else:
            raise ValidationError(
                detail="the roots of w^perp/w do not span it; give candidate_norm_bound",
                context={"rank": self.K.rank, "root_rank": len(simple)},
            )

    def _components(self, k_roots) -> Tuple[List[Vector], Fraction]:
        K = self.K
        g = nx.Graph()
        g.add_nodes_from(range(len(self.simple)))
        for i, j in combinations(range(len(self.simple)), 2):
            if K.inner(self.simple[i], self.simple[j]) != 0:
                g.add_edge(i, j)
        positive = [r for r in k_roots if r > tuple(0 for _ in r)]
        highest, bound = [], Fraction(0)
        for comp in nx.connected_components(g):
            nodes = sorted(comp)
            basis = [self.simple[i] for i in nodes]
            cartan = [[K.inner(a, b) for b in basis] for a in basis]
            inv = exact.inverse(cartan)
            # rho with (rho, alpha_i) = 1 on this component
            rho = [Fraction(0)] * K.rank
            for c, a in zip(exact.mat_vec(inv, [1] * len(nodes)), basis):
                rho = exact.add(rho, exact.scale(a, c))
            members = [r for r in positive if any(K.inner(r, a) != 0 for a in basis)]
            theta = max(members, key=lambda r: (K.inner(r, rho), r))
            highest.append(theta)
            m = exact.mat_vec(inv, [K.inner(theta, a) for a in basis])
            bound += max(inv[i][i] / (m[i] * m[i]) for i in range(len(nodes)))
        return highest, bound

    def lift(self, k: Sequence) -> List[Fraction]:
        out = [Fraction(0)] * self.lattice.rank
        for c, row in zip(k, self.basis):
            if c:
                out = exact.add(out, exact.scale(row, c))
        return out

    def step0(self) -> List[Vector]:
        out = [_vector(exact.scale(self.lift(a), -1)) for a in self.simple]
        out += [_vector(exact.add(self.lift(t), self.w)) for t in self.highest]
        return out

    def roots(self, b: int, k: int) -> Iterator[Vector]:
        for x in vectors_in_ball(self.K, self.bound(b)):
            num = self.K.norm(x) + b * b * self.wp_norm - k
            if num % (2 * b):
                continue
            a = num / (2 * b)
            r = exact.add(self.lift(x), exact.add(exact.scale(self.w, a), exact.scale(self.wp, b)))
            yield _vector(r)


def vinberg(
    lattice: Union[Lattice, LorentzLattice],
    controlling: Sequence[int],
    root_norms: Sequence[int] = (2,),
    max_roots: Optional[int] = None,
    max_distance=None,
    candidate_norm_bound=None,
    partner: Optional[Sequence[int]] = None,
) -> VinbergRun:
    """Simple roots of a fundamental domain containing ``controlling``.

    Step 0 takes a chamber of the roots orthogonal to the controlling
    vector w; afterwards roots are taken in increasing -(r, w)/r^2, ties
    in coordinate order, and accepted when they pair nonpositively with
    every root accepted so far.

    Args:
        lattice: Lorentzian lattice
        controlling: Vector w of norm <= 0
        root_norms: Subset of {1, 2}
        max_roots: Stop once this many roots are accepted
        max_distance: Largest distance key examined
        candidate_norm_bound: For norm 0 w whose orthogonal roots do not span
            w^perp/w, a bound on the w^perp/w part of candidate roots
        partner: For norm 0 w, a vector w' with (w, w') = -1

    Returns:
        VinbergRun with the termination reason
    """
    lattice = _as_lattice(lattice)
    w = tuple(int(x) for x in controlling)
    norms = tuple(sorted({int(k) for k in root_norms}))
    if not norms or any(k not in (1, 2) for k in norms):
        raise ValidationError(detail="root norms must be a subset of {1, 2}")
    if not lattice.is_integral:
        raise ValidationError(detail="Vinberg's algorithm needs an integral lattice")
    if lattice.is_even and 1 in norms:
        norms = tuple(k for k in norms if k != 1) or (2,)
    wn = lattice.norm(w)
    if wn > 0:
        raise ValidationError(detail=f"controlling vector has positive norm {wn}")
    max_roots = max_roots or settings.vinberg_max_roots
    max_distance = Fraction(max_distance) if max_distance is not None else DEFAULT_MAX_DISTANCE

    source = _TimelikeRoots(lattice, w, norms) if wn < 0 else _IsotropicRoots(lattice, w, norms, partner, candidate_norm_bound)
    run = VinbergRun(lattice, w)
    run.roots = sorted(source.step0())
    run.distances = [Fraction(0)] * len(run.roots)
    run.step0 = len(run.roots)
    dimension = lattice.rank - 1

    keys = sorted({Fraction(j, k) for k in norms for j in range(1, int(max_distance * k) + 1)})
    for d in keys:
        batch = []
        for k in norms:
            j = d * k
            if j.denominator != 1:
                continue
            for r in source.roots(int(j), k):
                if all(lattice.inner(r, s) <= 0 for s in run.roots):
                    batch.append(r)
        batch = sorted(set(batch))
        for a, b in combinations(batch, 2):
            if lattice.inner(a, b) > 0:
                raise ConstructionError(detail="two roots of one Vinberg batch pair positively", context={"distance": d})
        run.roots.extend(batch)
        run.distances.extend([d] * len(batch))
        if batch:
            logger.debug(f"accepted {len(batch)} roots at distance {d}")
            run.finite_volume = finite_volume(run.gram, dimension)
            if run.finite_volume:
                run.termination = "finite-volume"
                break
        if len(run.roots) >= max_roots:
            run.termination = "root budget"
            break
    log_structured(logger, "info", "vinberg run finished", {
        "rank": lattice.rank, "roots": len(run.roots), "step0": run.step0, "termination": run.termination,
    })
    return run


# ----------------------------------------------------------------- reduction into a fundamental domain

def reduce_to_domain(
    lattice: Union[Lattice, LorentzLattice],
    v: Sequence[int],
    w: Sequence[int],
    simple_roots: Sequence[Sequence[int]],
    rng: Optional[random.Random] = None,
    budget: Optional[int] = None,
) -> Tuple[Vector, int]:
    """Reflect v into {x : (x, r) <= 0 for all simple r}.

    Each step reflects in a violated simple root with the largest drop in
    -(v, w); ``rng`` shuffles the order in which equal drops are tried.

    Returns:
        (reduced vector, number of reflections)
    """
    lattice = _as_lattice(lattice)
    roots = [tuple(r) for r in simple_roots]
    v = _vector(v)
    if lattice.norm(v) > 0:
        raise ValidationError(detail="only vectors of norm <= 0 can be reduced")
    if lattice.inner(v, w) > 0:
        raise ValidationError(detail="vector is not in the cone of the controlling vector")
    order = list(range(len(roots)))
    if rng is not None:
        rng.shuffle(order)
    budget = budget or REDUCTION_STEPS
    steps = 0
    while True:
        best, best_gain = None, None
        for i in order:
            r = roots[i]
            p = lattice.inner(v, r)
            if p > 0:
                gain = 2 * p * -lattice.inner(r, w) / lattice.norm(r)
                if best_gain is None or gain > best_gain:
                    best, best_gain = r, gain
        if best is None:
            return v, steps
        v = reflect(lattice, v, best)
        steps += 1
        if steps > budget:
            raise BudgetExceededError(detail=f"reduction did not finish in {budget} reflections", partial={"vector": v})


# ----------------------------------------------------------------- II_{25,1} in Leech coordinates

class LeechModel:
    """II_{25,1} = Λ (+) U with coordinates (λ, m, n), norm λ^2 - 2mn and Weyl vector w = (0, 0, 1).

    The simple roots of the fundamental domain containing w are the
    vectors (λ, 1, λ^2/2 - 1) for λ in Λ, so every question about simple
    roots becomes a sphere question in Λ: for u = (μ, a, b) with a > 0,

        (r_λ, u) = -(a/2)|λ - μ/a|^2 + u^2/(2a) + a.
    """

    def __init__(self, leech: Lattice):
        if not (leech.is_even and leech.is_positive_definite):
            raise ValidationError(detail="the Leech model needs an even positive definite lattice")
        self.leech = leech
        self.dim = leech.rank
        self.lattice = direct_sum(leech, hyperbolic_plane()).with_label(f"{leech.label or 'N'} + U")
        self.w: Vector = (0,) * self.dim + (0, 1)
        self.w_prime: Vector = (0,) * self.dim + (1, 0)

    # coordinates
    def vector(self, lam: Sequence, m, n) -> tuple:
        return _vector(list(lam) + [m, n])

    def split(self, v: Sequence) -> Tuple[tuple, Fraction, Fraction]:
        return tuple(v[: self.dim]), Fraction(v[self.dim]), Fraction(v[self.dim + 1])

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        return self.lattice.inner(x, y)

    def norm(self, x: Sequence) -> Fraction:
        return self.lattice.norm(x)

    def height(self, v: Sequence) -> Fraction:
        return -self.inner(v, self.w)

    def simple_root(self, lam: Sequence[int]) -> Vector:
        n = self.leech.norm(lam) / 2 - 1
        return self.vector(lam, 1, n)

    def is_w_multiple(self, v: Sequence) -> bool:
        lam, m, _ = self.split(v)
        return m == 0 and not any(lam)

    # Z-space
    def z_map(self, v: Sequence) -> Optional[Tuple[Fraction, ...]]:
        """λ/m, or None (the point at infinity) for multiples of w."""
        lam, m, _ = self.split(v)
        if m == 0:
            if any(lam):
                if self.norm(v) > 0:
                    raise ValidationError(detail="Z is undefined on vectors of positive norm orthogonal to w")
                raise ConstructionError(detail="vector of norm <= 0 orthogonal to w must be a multiple of w")
            return None
        return tuple(Fraction(x) / m for x in lam)

    def zspace_distance(self, z1: Sequence, z2: Sequence) -> Optional[Fraction]:
        """-2(z1, z2)/(height(z1) height(z2)); None stands for infinity."""
        inf1, inf2 = self.is_w_multiple(z1), self.is_w_multiple(z2)
        if inf1 and inf2:
            return Fraction(0)
        if inf1 or inf2:
            return None
        return -2 * self.inner(z1, z2) / (self.height(z1) * self.height(z2))

    def reflect(self, v: Sequence, r: Sequence) -> tuple:
        return reflect(self.lattice, v, r)

    # the fundamental domain
    def _center(self, v: Sequence) -> Tuple[List[Fraction], Fraction]:
        lam, m, _ = self.split(v)
        return [Fraction(x) / m for x in lam], m

    def _check_cone(self, v: Sequence) -> Fraction:
        m = self.height(v)
        if m < 0 or (m == 0 and not (self.is_w_multiple(v) and self.split(v)[2] > 0)):
            raise ValidationError(detail="vector is not in the future cone")
        return m

    def closest_simple_roots(self, v: Sequence) -> Tuple[Fraction, List[Vector]]:
        """Squared distance from λ/m to Λ and the closest points."""
        center, _ = self._center(v)
        found = closest_vectors(EnumerationRequest(self.leech, 0, center=center))
        return found.norm, found.vectors

    def in_domain(self, v: Sequence) -> bool:
        m = self._check_cone(v)
        if m == 0:
            return True
        dist, _ = self.closest_simple_roots(v)
        return dist >= 2 + self.norm(v) / (m * m)

    def reduce_to_domain(self, v: Sequence, rng: Optional[random.Random] = None,
                         budget: Optional[int] = None) -> Tuple[tuple, int]:
        """Reflect v into the fundamental domain; each step strictly lowers the height.

        The reflection is in the simple root closest to λ/m; ``rng`` picks
        among equally close ones (lowest coordinates otherwise).
        """
        v = _vector(v)
        if self.norm(v) > 0:
            raise ValidationError(detail="only vectors of norm <= 0 can be reduced")
        budget = budget or REDUCTION_STEPS
        steps = 0
        while True:
            m = self._check_cone(v)
            if m == 0:
                return v, steps
            dist, closest = self.closest_simple_roots(v)
            if dist >= 2 + self.norm(v) / (m * m):
                return v, steps
            lam = rng.choice(closest) if rng is not None else closest[0]
            v = self.reflect(v, self.simple_root(lam))
            steps += 1
            if steps > budget:
                raise BudgetExceededError(detail=f"reduction did not finish in {budget} reflections", partial={"vector": v})

    # spheres
    def ri_sphere(self, u: Sequence, i: int) -> Tuple[List[Fraction], Fraction]:
        """Center μ/a and squared radius 2 + u^2/a^2 + 2i/a of the sphere holding R_i(u)."""
        center, a = self._center_checked(u)
        return center, 2 + self.norm(u) / (a * a) + Fraction(2 * i) / a

    def _center_checked(self, u: Sequence) -> Tuple[List[Fraction], Fraction]:
        lam, a, _ = self.split(u)
        if a <= 0:
            raise ValidationError(detail="R_i sets are infinite for multiples of w and undefined outside the cone")
        return [Fraction(x) / a for x in lam], a

    def ri_points(self, u: Sequence, i: int) -> List[Vector]:
        """Points λ of Λ whose simple roots have inner product -i with u."""
        center, radius_sq = self.ri_sphere(u, i)
        if radius_sq < 0:
            return []
        return shell(self.leech, radius_sq, center=center)

    def ri_sets(self, u: Sequence, i_max: int) -> Dict[int, List[Vector]]:
        """i -> simple roots r with (r, u) = -i, for 0 <= i <= i_max."""
        return {i: [self.simple_root(lam) for lam in self.ri_points(u, i)] for i in range(i_max + 1)}

    def norm0_at(self, u: Sequence, i: int, limit: Optional[int] = None) -> List[tuple]:
        """Norm 0 vectors z = (λ, a, λ^2/2a) of the future cone with (z, u) = -i.

        For u = (μ, b, c) they satisfy |λ - aμ/b|^2 = 2ai/b + a^2 u^2/b^2, so
        a <= 2ib/|u^2|; a = 0 gives the multiple (i/b) w when b divides i.
        """
        mu, b, _ = self.split(u)
        un = self.norm(u)
        if b <= 0:
            raise ValidationError(detail="u must have positive height")
        out: List[tuple] = []
        if i % b == 0:
            out.append(tuple(int(i // b) * x for x in self.w))
        if un >= 0:
            raise ValidationError(detail="norm 0 search needs u of negative norm")
        a_max = int((2 * i * b) // -un)
        for a in range(1, a_max + 1):
            if limit is not None and len(out) >= limit:
                break
            radius_sq = Fraction(2 * a * i) / b + Fraction(a * a) * un / (b * b)
            if radius_sq < 0:
                continue
            center = [Fraction(a) * x / b for x in mu]
            pts = vectors_in_ball(
                self.leech, radius_sq, center=center,
                predicate=lambda x, d, a=a, radius_sq=radius_sq: d == radius_sq and (self.leech.norm(x) / 2) % a == 0,
                limit=None if limit is None else limit - len(out),
            )
            out.extend(self.vector(lam, a, self.leech.norm(lam) / (2 * a)) for lam in pts)
        return out

    def vector_type(self, u: Sequence, cap: Optional[int] = None) -> Optional[int]:
        """Smallest -(u, z) over norm 0 vectors z; None when it exceeds ``cap``."""
        if self.norm(u) == 0:
            return 0
        cap = cap or settings.type_search_cap
        for i in range(1, cap + 1):
            if self.norm0_at(u, i, limit=1):
                return i
        return None
