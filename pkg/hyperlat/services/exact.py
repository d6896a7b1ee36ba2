"""Exact linear algebra over the integers and the rationals.

Everything here works on plain lists of ints and ``Fraction``s. Lattice
code above this layer never touches floating point for a decision.
"""

from bisect import bisect_left
from fractions import Fraction
import itertools
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from hyperlat.core.exceptions import NotPrimitiveError, SingularLatticeError

Vector = List[Fraction]
Matrix = List[List[Fraction]]
IntMatrix = List[List[int]]


def to_fraction_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def to_int_vector(v: Sequence) -> List[int]:
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"non-integral entry {x}")
        out.append(x.numerator)
    return out


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*m)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_mat(v: Sequence, a: Sequence[Sequence]) -> list:
    n = len(a[0]) if a else 0
    out = [0] * n
    for x, row in zip(v, a):
        if x:
            for j in range(n):
                out[j] += x * row[j]
    return out


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def bilinear(gram: Sequence[Sequence], x: Sequence, y: Sequence):
    """x^T G y."""
    return dot(vec_mat(x, gram), y)


def add(u: Sequence, v: Sequence) -> list:
    return [a + b for a, b in zip(u, v)]


def sub(u: Sequence, v: Sequence) -> list:
    return [a - b for a, b in zip(u, v)]


def scale(v: Sequence, s) -> list:
    return [x * s for x in v]


def common_denominator(values: Iterable) -> int:
    d = 1
    for x in values:
        q = Fraction(x).denominator
        d = d * q // gcd(d, q)
    return d


def clear_denominators(rows: Sequence[Sequence]) -> Tuple[IntMatrix, int]:
    """Scale rational rows by their common denominator."""
    d = common_denominator(x for row in rows for x in row)
    return [[int(Fraction(x) * d) for x in row] for row in rows], d


def content(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive_part(v: Sequence) -> List[int]:
    """Smallest positive rational multiple of ``v`` that is an integral primitive vector."""
    ints, _ = clear_denominators([v])
    g = content(ints[0])
    if g == 0:
        raise NotPrimitiveError("zero vector has no primitive part")
    return [x // g for x in ints[0]]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    # Maintain the invariants:
    #          x * a +      y * b ==      g
    #     next_x * a + next_y * b == next_g
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def determinant(m: Sequence[Sequence]) -> Fraction:
    a = to_fraction_matrix(m)
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                row_c = a[col]
                a[r] = [x - f * y for x, y in zip(a[r], row_c)]
    return det


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(to_fraction_matrix(m))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularLatticeError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def row_reduce(m: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    a = to_fraction_matrix(m)
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(row_reduce(m)[1])


def solve(m: Sequence[Sequence], b: Sequence) -> Vector:
    """Solve the square system m x = b exactly."""
    return mat_vec(inverse(m), [Fraction(x) for x in b])


def rational_nullspace(m: Sequence[Sequence]) -> Matrix:
    """Basis over Q of {x : m x = 0}."""
    cols = len(m[0]) if m else 0
    red, pivots = row_reduce(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


class IntegerEchelon:
    """Incrementally maintained echelon basis of a subgroup of Z^N.

    Vectors are inserted one at a time; the basis stays in row echelon
    form with one pivot per row, so membership tests and the final Hermite
    basis are cheap.
    """

    __slots__ = ["N", "basis", "pivot_location_in_column", "pivot_location_in_row"]

    def __init__(self, ambient_dimension: int):
        self.N = ambient_dimension
        self.pivot_location_in_column: List[Optional[int]] = [None] * ambient_dimension
        self.pivot_location_in_row: List[int] = []
        self.basis: IntMatrix = []

    def __len__(self) -> int:
        return len(self.basis)

    def __contains__(self, vec: Sequence[int]) -> bool:
        vec = list(vec)
        col_piv = self.pivot_location_in_column
        for j in range(self.N):
            if not vec[j]:
                continue
            p = col_piv[j]
            if p is None:
                return False
            row = self.basis[p]
            q, r = divmod(vec[j], row[j])
            if r:
                return False
            for jj in range(j, self.N):
                vec[jj] -= q * row[jj]
        return True

    def add_vector(self, vec0: Sequence[int]) -> None:
        col_piv = self.pivot_location_in_column
        row_piv = self.pivot_location_in_row
        basis = self.basis
        N = self.N
        if len(vec0) != N:
            raise ValueError("dimension mismatch")
        vec = [int(x) for x in vec0]
        for j in range(N):
            if not vec[j]:
                continue
            p = col_piv[j]
            if p is None:
                # insert so that its first entry is a pivot
                if vec[j] < 0:
                    vec = [-x for x in vec]
                where = bisect_left(row_piv, j)
                basis.insert(where, vec)
                row_piv.insert(where, j)
                for ii in range(where, len(basis)):
                    col_piv[row_piv[ii]] = ii
                return
            row = basis[p]
            a = row[j]
            b = vec[j]
            if b % a == 0:
                q = b // a
                for jj in range(j, N):
                    vec[jj] -= q * row[jj]
            else:
                x, y, g = xgcd(a, b)
                ag = a // g
                mbg = -b // g
                for jj in range(j, N):
                    aa = row[jj]
                    bb = vec[jj]
                    row[jj] = x * aa + y * bb
                    vec[jj] = mbg * aa + ag * bb

    def hermite_basis(self) -> IntMatrix:
        """Basis in Hermite normal form (positive pivots, reduced above)."""
        rows = [r[:] for r in self.basis]
        for i, pj in enumerate(self.pivot_location_in_row):
            piv = rows[i][pj]
            for k in range(i):
                q = rows[k][pj] // piv
                if q:
                    rows[k] = [x - q * y for x, y in zip(rows[k], rows[i])]
        return rows


def hnf_rows(rows: Iterable[Sequence[int]], dimension: Optional[int] = None) -> IntMatrix:
    rows = [list(map(int, r)) for r in rows]
    if dimension is None:
        dimension = len(rows[0]) if rows else 0
    ech = IntegerEchelon(dimension)
    for r in rows:
        ech.add_vector(r)
    return ech.hermite_basis()


def rational_row_basis(rows: Sequence[Sequence]) -> Matrix:
    """Z-basis (Hermite form) of the group generated by rational rows."""
    if not rows:
        return []
    ints, d = clear_denominators(rows)
    return [[Fraction(x, d) for x in r] for r in hnf_rows(ints, len(rows[0]))]


def integer_kernel(m: Sequence[Sequence]) -> IntMatrix:
    """Z-basis of {x in Z^n : m x = 0} for a rational matrix m."""
    n = len(m[0]) if m else 0
    if not m:
        return identity(n)
    ints, _ = clear_denominators(m)
    k = len(ints)
    ech = IntegerEchelon(k + n)
    for j in range(n):
        ech.add_vector([ints[i][j] for i in range(k)] + [int(i == j) for i in range(n)])
    kernel = [row[k:] for row, p in zip(ech.basis, ech.pivot_location_in_row) if p >= k]
    return hnf_rows(kernel, n) if kernel else []


def unimodular_completion(c: Sequence[int]) -> IntMatrix:
    """Unimodular integer matrix whose first row is the primitive vector ``c``."""
    n = len(c)
    a = [int(x) for x in c]
    v = identity(n)
    for j in range(1, n):
        if a[j] == 0:
            continue
        x, y, g = xgcd(a[0], a[j])
        p, q = a[0] // g, a[j] // g
        for k in range(n):
            c0, cj = v[k][0], v[k][j]
            v[k][0] = x * c0 + y * cj
            v[k][j] = -q * c0 + p * cj
        a[0], a[j] = g, 0
    if abs(a[0]) != 1:
        raise NotPrimitiveError(f"vector {list(c)} is not primitive")
    if a[0] == -1:
        for k in range(n):
            v[k][0] = -v[k][0]
    return [to_int_vector(row) for row in inverse(v)]


def smith_normal_form(m: Sequence[Sequence[int]]) -> Tuple[List[int], IntMatrix, IntMatrix]:
    """Return (d, U, V) with U m V = diag(d), U and V unimodular, d_i | d_{i+1}."""
    a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    u = identity(rows)
    v = identity(cols)

    def row_op(i, t, q):
        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
        u[i] = [x - q * y for x, y in zip(u[i], u[t])]

    def col_op(j, t, q):
        for k in range(rows):
            a[k][j] -= q * a[k][t]
        for k in range(cols):
            v[k][j] -= q * v[k][t]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    row_op(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    col_op(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            row_op(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    d = [a[i][i] for i in range(min(rows, cols))]
    return d, u, v


def quadratic_completion(gram: Sequence[Sequence]) -> Matrix:
    """Completion of squares: Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.

    Returns the matrix q (upper triangle and diagonal meaningful).
    Raises ValueError when a pivot is not positive.
    """
    n = len(gram)
    q = to_fraction_matrix(gram)
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def is_positive_definite(gram: Sequence[Sequence]) -> bool:
    try:
        quadratic_completion(gram)
    except ValueError:
        return False
    return True


def signature(gram: Sequence[Sequence]) -> Tuple[int, int, int]:
    """(positive, negative, zero) counts by congruence diagonalization over Q."""
    a = to_fraction_matrix(gram)
    n = len(a)
    pos = neg = zero = 0
    for i in range(n):
        if a[i][i] == 0:
            j = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[i], a[j] = a[j], a[i]
                for row in a:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if j is None:
                    zero += 1
                    continue
                a[i] = [x + y for x, y in zip(a[i], a[j])]
                for row in a:
                    row[i] += row[j]
        p = a[i][i]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for k in range(i + 1, n):
            f = a[k][i] / p
            if f:
                a[k] = [x - f * y for x, y in zip(a[k], a[i])]
                for row in a:
                    row[k] -= f * row[i]
    return pos, neg, zero


def int_combinations(bound: int, length: int) -> Iterable[Tuple[int, ...]]:
    """All integer tuples with entries in [-bound, bound] (oracle searches)."""
    return itertools.product(range(-bound, bound + 1), repeat=length)
