from fractions import Fraction

import pytest

from hyperlat.core.exceptions import NotPrimitiveError, SingularLatticeError
from hyperlat.services import exact


def test_determinant_and_inverse():
    m = [[2, 1], [1, 2]]
    assert exact.determinant(m) == 3
    inv = exact.inverse(m)
    assert inv == [[Fraction(2, 3), Fraction(-1, 3)], [Fraction(-1, 3), Fraction(2, 3)]]
    assert exact.mat_mul(m, inv) == exact.identity(2)


def test_inverse_of_singular_matrix():
    with pytest.raises(SingularLatticeError):
        exact.inverse([[1, 2], [2, 4]])
    assert exact.determinant([[1, 2], [2, 4]]) == 0


def test_solve():
    assert exact.solve([[2, 1], [1, 2]], [3, 3]) == [1, 1]


@pytest.mark.parametrize("a, b", [(240, 46), (-12, 18), (7, 0), (0, -5)])
def test_xgcd(a, b):
    x, y, g = exact.xgcd(a, b)
    assert g >= 0
    assert x * a + y * b == g
    if a or b:
        assert a % g == 0 and b % g == 0


def test_smith_normal_form():
    m = [[2, 4], [6, 8]]
    d, u, v = exact.smith_normal_form(m)
    assert d == [2, 4]
    assert exact.mat_mul(exact.mat_mul(u, m), v) == [[2, 0], [0, 4]]
    assert abs(exact.determinant(u)) == 1
    assert abs(exact.determinant(v)) == 1


def test_hnf_rows():
    assert exact.hnf_rows([[2, 0], [0, 2], [1, 1]]) == [[1, 1], [0, 2]]


def test_integer_echelon_membership():
    ech = exact.IntegerEchelon(2)
    ech.add_vector([2, 0])
    ech.add_vector([1, 1])
    assert len(ech) == 2
    assert [3, 1] in ech
    assert [1, 0] not in ech


def test_integer_kernel():
    kernel = exact.integer_kernel([[1, 1, 1]])
    assert len(kernel) == 2
    for row in kernel:
        assert sum(row) == 0
    assert abs(exact.determinant([kernel[0], kernel[1], [0, 0, 1]])) == 1


def test_rational_nullspace_and_rank():
    m = [[1, 2, 3], [2, 4, 6]]
    assert exact.rank(m) == 1
    basis = exact.rational_nullspace(m)
    assert len(basis) == 2
    for v in basis:
        assert exact.mat_vec(m, v) == [0, 0]


def test_unimodular_completion():
    u = exact.unimodular_completion([2, 3, 5])
    assert u[0] == [2, 3, 5]
    assert abs(exact.determinant(u)) == 1
    with pytest.raises(NotPrimitiveError):
        exact.unimodular_completion([2, 4])


def test_primitive_part():
    assert exact.primitive_part([Fraction(1, 2), 1]) == [1, 2]
    assert exact.primitive_part([2, -4, 6]) == [1, -2, 3]
    with pytest.raises(NotPrimitiveError):
        exact.primitive_part([0, 0])


@pytest.mark.parametrize(
    "gram, expected",
    [
        ([[2, -1], [-1, 2]], (2, 0, 0)),
        ([[0, 1], [1, 0]], (1, 1, 0)),
        ([[1, 0, 0], [0, -1, 0], [0, 0, 0]], (1, 1, 1)),
        ([[0, 0], [0, 0]], (0, 0, 2)),
    ],
)
def test_signature(gram, expected):
    assert exact.signature(gram) == expected


def test_positive_definiteness():
    assert exact.is_positive_definite([[2, -1], [-1, 2]])
    assert not exact.is_positive_definite([[1, 2], [2, 1]])
    q = exact.quadratic_completion([[2, 1], [1, 2]])
    assert q[0][0] == 2 and q[0][1] == Fraction(1, 2) and q[1][1] == Fraction(3, 2)


def test_int_combinations():
    assert len(list(exact.int_combinations(1, 3))) == 27
