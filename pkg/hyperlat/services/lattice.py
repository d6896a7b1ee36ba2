"""Exact lattice algebra.

A :class:`Lattice` is a Gram matrix of exact rationals and nothing else;
embeddings are carried around as explicit basis matrices (rows are
coordinates in the parent basis).
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from typing import Dict, List, Optional, Sequence, Tuple

from hyperlat.core.exceptions import (
    ConstructionError,
    NotIsotropicError,
    NotPrimitiveError,
    SingularLatticeError,
    ValidationError,
)
from hyperlat.core.logging import get_logger
from hyperlat.models.lattice import LatticeRecord
from hyperlat.services import exact

logger = get_logger(__name__)


class Lattice:
    """Immutable lattice given by its Gram matrix."""

    def __init__(self, gram: Sequence[Sequence], label: Optional[str] = None):
        g = tuple(tuple(Fraction(x) for x in row) for row in gram)
        n = len(g)
        for i, row in enumerate(g):
            if len(row) != n:
                raise ValidationError(detail="Gram matrix is not square")
            for j in range(i):
                if row[j] != g[j][i]:
                    raise ValidationError(detail=f"Gram matrix is not symmetric at ({i}, {j})")
        self.gram: Tuple[Tuple[Fraction, ...], ...] = g
        self.label = label

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"<Lattice{name} rank={self.rank} det={self.determinant}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and self.gram == other.gram

    def __hash__(self) -> int:
        return hash(self.gram)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def den(self) -> int:
        return exact.common_denominator(x for row in self.gram for x in row)

    @cached_property
    def int_gram(self) -> List[List[int]]:
        """Gram matrix scaled by ``den``."""
        d = self.den
        return [[int(x * d) for x in row] for row in self.gram]

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    @property
    def is_even(self) -> bool:
        return self.is_integral and all(self.gram[i][i].numerator % 2 == 0 for i in range(self.rank))

    @property
    def is_odd(self) -> bool:
        return self.is_integral and not self.is_even

    @cached_property
    def determinant(self) -> Fraction:
        return exact.determinant(self.gram)

    @property
    def is_unimodular(self) -> bool:
        return self.is_integral and abs(self.determinant) == 1

    @cached_property
    def signature(self) -> Tuple[int, int, int]:
        return exact.signature(self.gram)

    @property
    def is_positive_definite(self) -> bool:
        pos, _, _ = self.signature
        return pos == self.rank

    @property
    def is_lorentzian(self) -> bool:
        pos, neg, zero = self.signature
        return neg == 1 and zero == 0

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        if len(x) != self.rank or len(y) != self.rank:
            raise ValidationError(detail=f"vector length does not match rank {self.rank}")
        return exact.bilinear(self.gram, x, y)

    def norm(self, x: Sequence) -> Fraction:
        return self.inner(x, x)

    def gram_times(self, x: Sequence) -> List[Fraction]:
        """G x: inner products of x with the basis vectors."""
        return exact.mat_vec(self.gram, x)

    def with_label(self, label: Optional[str]) -> "Lattice":
        return Lattice(self.gram, label)

    def to_record(self) -> LatticeRecord:
        return LatticeRecord(rank=self.rank, den=self.den, gram=self.int_gram, label=self.label)

    @classmethod
    def from_record(cls, record: LatticeRecord) -> "Lattice":
        return cls([[Fraction(x, record.den) for x in row] for row in record.gram], record.label)


def inner_product(lattice: Lattice, x: Sequence, y: Sequence) -> Fraction:
    return lattice.inner(x, y)


def change_basis(lattice: Lattice, basis: Sequence[Sequence], label: Optional[str] = None) -> Lattice:
    """Lattice spanned by the rows of ``basis`` (coordinates in ``lattice``)."""
    b = [list(row) for row in basis]
    g = exact.mat_mul(exact.mat_mul(b, lattice.gram), exact.transpose(b)) if b else []
    return Lattice(g, label)


# ----------------------------------------------------------------- builders

def integer_lattice(n: int) -> Lattice:
    return Lattice(exact.identity(n), f"I{n}" if n else "0")


def hyperbolic_plane() -> Lattice:
    """U = II_{1,1} with basis z, z' of norm 0 and (z, z') = -1."""
    return Lattice([[0, -1], [-1, 0]], "U")


def cartan_matrix(family: str, n: int) -> List[List[int]]:
    """Positive definite Cartan matrix of a_n, d_n (n >= 2) or e_n (6 <= n <= 8)."""
    edges: List[Tuple[int, int]]
    if family == "a" and n >= 1:
        edges = [(i, i + 1) for i in range(n - 1)]
    elif family == "d" and n >= 2:
        if n == 2:
            edges = []
        else:
            edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif family == "e" and n in (6, 7, 8):
        # chain 1-3-4-5-...-n with node 2 on node 4 (Bourbaki numbering, zero based)
        chain = [0] + list(range(2, n))
        edges = [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)] + [(1, 3)]
    else:
        raise ValidationError(detail=f"no root system {family}{n}")
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        m[i][j] = m[j][i] = -1
    return m


def root_lattice(name: str) -> Lattice:
    """Root lattice of a datum string such as ``"a2"``, ``"e8^2"`` or ``"d4 a1"``."""
    from hyperlat.services.rootsys import RootDatum

    datum = RootDatum.parse(name)
    blocks = [Lattice(cartan_matrix(c.family, c.rank)) for c in datum.expanded()]
    if not blocks:
        return Lattice([], name)
    return direct_sum(*blocks).with_label(str(datum))


def even_unimodular_lorentzian(n: int) -> Lattice:
    """II_{n,1} as e8^k (+) U with n = 8k + 1."""
    if n % 8 != 1:
        raise ValidationError(detail="II_{n,1} exists only for n = 1 mod 8")
    k = n // 8
    parts = [Lattice(cartan_matrix("e", 8))] * k + [hyperbolic_plane()]
    return direct_sum(*parts).with_label(f"II_{n},1")


def odd_lorentzian(n: int) -> Lattice:
    """I_{n,1} with the last basis vector of norm -1."""
    g = exact.identity(n + 1)
    g[n][n] = -1
    return Lattice(g, f"I_{n},1")


def scaled(lattice: Lattice, k) -> Lattice:
    k = Fraction(k)
    return Lattice([[x * k for x in row] for row in lattice.gram], lattice.label)


def negated(lattice: Lattice) -> Lattice:
    return scaled(lattice, -1)


def direct_sum(*lattices: Lattice) -> Lattice:
    n = sum(l.rank for l in lattices)
    g = [[Fraction(0)] * n for _ in range(n)]
    offset = 0
    for l in lattices:
        for i in range(l.rank):
            for j in range(l.rank):
                g[offset + i][offset + j] = l.gram[i][j]
        offset += l.rank
    parts = [l for l in lattices if l.rank]
    label = " + ".join(l.label for l in parts) if parts and all(l.label for l in parts) else None
    return Lattice(g, label)


# ----------------------------------------------------------------- duals

def dual_basis(lattice: Lattice) -> List[List[Fraction]]:
    """Rows of G^-1: the dual basis in coordinates of ``lattice``."""
    if lattice.determinant == 0:
        raise SingularLatticeError(detail="the dual of a singular lattice is undefined")
    return exact.inverse(lattice.gram)


@dataclass(frozen=True)
class DiscriminantGroup:
    """L'/L as a product of cyclic groups with the induced quadratic form."""
    generators: Tuple[Tuple[Fraction, ...], ...]
    orders: Tuple[int, ...]
    norms: Tuple[Fraction, ...]  # q(g) reduced mod 2 (even) or mod 1 (odd)
    modulus: int

    @property
    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return self.order == 1

    def elements(self) -> List[Tuple[Fraction, ...]]:
        """All elements as dual vectors (sums of multiples of generators)."""
        out: List[Tuple[Fraction, ...]] = [tuple(Fraction(0) for _ in range(len(self.generators[0])))] if self.generators else [()]
        for g, d in zip(self.generators, self.orders):
            out = [tuple(x + k * y for x, y in zip(e, g)) for e in out for k in range(d)]
        return out


def discriminant_group(lattice: Lattice) -> DiscriminantGroup:
    if not lattice.is_integral:
        raise ValidationError(detail="discriminant group needs an integral lattice")
    if lattice.determinant == 0:
        raise SingularLatticeError(detail="discriminant group of a singular lattice is undefined")
    d, _, v = exact.smith_normal_form(lattice.int_gram)
    modulus = 2 if lattice.is_even else 1
    gens, orders, norms = [], [], []
    for i, di in enumerate(d):
        if di == 1:
            continue
        g = tuple(Fraction(v[k][i], di) for k in range(lattice.rank))
        gens.append(g)
        orders.append(di)
        norms.append(lattice.norm(g) % modulus)
    return DiscriminantGroup(tuple(gens), tuple(orders), tuple(norms), modulus)


# ----------------------------------------------------------------- characteristic vectors

def characteristic_vector(lattice: Lattice) -> List[int]:
    """The characteristic class as a 0/1 vector: (c, v) = v^2 mod 2 for all v (L unimodular)."""
    if not lattice.is_unimodular:
        raise ValidationError(detail="characteristic vectors are defined here for unimodular lattices")
    diag = [lattice.gram[i][i] for i in range(lattice.rank)]
    c = exact.mat_vec(exact.inverse(lattice.gram), diag)
    return [x % 2 for x in exact.to_int_vector(c)]


def is_characteristic(lattice: Lattice, c: Sequence) -> bool:
    gc = lattice.gram_times(c)
    return all((gc[i] - lattice.gram[i][i]) % 2 == 0 for i in range(lattice.rank))


def characteristic_vectors(lattice: Lattice, norm_bound, budget: Optional[int] = None) -> List[List[int]]:
    """All characteristic vectors of norm at most ``norm_bound``.

    c + 2y has norm <= B exactly when y lies within squared distance B/4
    of -c/2, so this is one closest-vector style enumeration.
    """
    from hyperlat.services.enumerate import vectors_in_ball

    if not lattice.is_positive_definite:
        raise ValidationError(detail="characteristic vector enumeration needs a definite lattice")
    c = characteristic_vector(lattice)
    center = [Fraction(-x, 2) for x in c]
    found = vectors_in_ball(lattice, Fraction(norm_bound) / 4, center=center, budget=budget)
    out = [[ci + 2 * yi for ci, yi in zip(c, y)] for y in found]
    out.sort(key=lambda v: (lattice.norm(v), v))
    return out


# ----------------------------------------------------------------- sublattices and overlattices

def sublattice(lattice: Lattice, vectors: Sequence[Sequence], label: Optional[str] = None) -> Tuple[Lattice, List[List[Fraction]]]:
    """Lattice generated by ``vectors`` and its Hermite basis in parent coordinates."""
    basis = exact.rational_row_basis(vectors)
    return change_basis(lattice, basis, label), basis


def even_sublattice(lattice: Lattice) -> Tuple[Lattice, List[List[int]]]:
    """{x : x^2 even}; index 2 in an odd integral lattice."""
    n = lattice.rank
    odd = [i for i in range(n) if lattice.gram[i][i].numerator % 2]
    if not odd:
        return lattice, exact.identity(n)
    i0 = odd[0]
    basis = []
    for j in range(n):
        e = [0] * n
        if j == i0:
            e[j] = 2
        else:
            e[j] = 1
            if j in odd:
                e[i0] = 1
        basis.append(e)
    basis = exact.hnf_rows(basis, n)
    return change_basis(lattice, basis), basis


def orthogonal_complement(lattice: Lattice, vectors: Sequence[Sequence]) -> Tuple[Lattice, List[List[int]]]:
    rows = [lattice.gram_times(v) for v in vectors]
    basis = exact.integer_kernel(rows)
    return change_basis(lattice, basis), basis


@dataclass
class GluedOverlattice:
    base: Lattice
    glue_vectors: List[List[Fraction]]
    lattice: Lattice
    basis: List[List[Fraction]] = field(default_factory=list)  # rows in base coordinates
    index: int = 1


def glue(base: Lattice, glue_vectors: Sequence[Sequence], require_integral: bool = True) -> GluedOverlattice:
    """Overlattice of ``base`` generated by extra rational vectors.

    The basis is completed by Hermite normal form; the result must be an
    integral lattice unless ``require_integral`` is off.
    """
    glue_vectors = [[Fraction(x) for x in v] for v in glue_vectors]
    rows = [[Fraction(int(i == j)) for j in range(base.rank)] for i in range(base.rank)] + glue_vectors
    basis = exact.rational_row_basis(rows)
    result = change_basis(base, basis)
    if require_integral and not result.is_integral:
        raise ValidationError(detail="glue vectors do not pair integrally", context={"den": result.den})
    index_sq = base.determinant / result.determinant if result.determinant else Fraction(0)
    if index_sq <= 0 or index_sq.denominator != 1 or math.isqrt(index_sq.numerator) ** 2 != index_sq.numerator:
        raise ConstructionError(detail=f"overlattice index^2 = {index_sq} is not a square")
    return GluedOverlattice(base, glue_vectors, result, basis, math.isqrt(index_sq.numerator))


def _check_isotropic_primitive(lattice: Lattice, w: Sequence) -> List[int]:
    try:
        wi = exact.to_int_vector(w)
    except ValueError as e:
        raise NotPrimitiveError(detail="isotropic vector must have integral coordinates") from e
    if lattice.norm(wi) != 0:
        raise NotIsotropicError(detail=f"vector has norm {lattice.norm(wi)}, not 0")
    if exact.content(wi) != 1:
        raise NotPrimitiveError(detail="isotropic vector is not primitive")
    return wi


def isotropic_quotient_basis(lattice: Lattice, w: Sequence) -> Tuple[Lattice, List[List[int]]]:
    """w^perp / w together with lifts of its basis (rows in ``lattice`` coordinates)."""
    wi = _check_isotropic_primitive(lattice, w)
    kernel = exact.integer_kernel([lattice.gram_times(wi)])
    # coordinates of w in the kernel basis
    kkt = exact.mat_mul(kernel, exact.transpose(kernel))
    coeffs = exact.solve(kkt, exact.mat_vec(kernel, wi))
    try:
        c = exact.to_int_vector(coeffs)
    except ValueError as e:
        raise ConstructionError(detail="isotropic vector not in its own orthogonal complement") from e
    u = exact.unimodular_completion(c)
    new_basis = exact.mat_mul(u, kernel)
    if new_basis[0] != wi:
        raise ConstructionError(detail="basis completion lost the isotropic vector")
    lifts = [list(map(int, row)) for row in new_basis[1:]]
    return change_basis(lattice, lifts), lifts


def isotropic_quotient(lattice: Lattice, w: Sequence) -> Lattice:
    return isotropic_quotient_basis(lattice, w)[0]


def invariants_summary(lattice: Lattice) -> Dict[str, object]:
    pos, neg, zero = lattice.signature
    return {
        "rank": lattice.rank,
        "det": lattice.determinant,
        "signature": [pos, neg, zero],
        "integral": lattice.is_integral,
        "even": lattice.is_even,
    }
