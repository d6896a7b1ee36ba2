import time

import pytest

from hyperlat.core.exceptions import BudgetExceededError, ValidationError
from hyperlat.services.isometry import compare_invariants, is_isometric, lattice_invariants
from hyperlat.services.lattice import Lattice, change_basis, direct_sum, integer_lattice, root_lattice
from hyperlat.services.neighbor import even_neighbors


def skew(n):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    m[0][1] = 1
    m[2][n - 1] = -1
    m[n - 1][1] = 2
    return m


def test_isometric_after_change_of_basis(e8):
    other = change_basis(e8, skew(8))
    cert = is_isometric(e8, other)
    assert cert
    assert cert.verify(e8, other)


def test_a2_with_opposite_sign_convention(a2):
    other = Lattice([[2, 1], [1, 2]])
    cert = is_isometric(a2, other)
    assert cert.isometric and cert.verify(a2, other)


@pytest.mark.parametrize(
    "second, invariant",
    [
        (Lattice([[2, 0], [0, 2]]), "determinant"),
        (Lattice([[2]]), "rank"),
        (Lattice([[1, 0], [0, 3]]), "parity"),
    ],
)
def test_refuted_by_cheap_invariants(a2, second, invariant):
    cert = is_isometric(a2, second)
    assert not cert
    assert cert.invariant == invariant
    assert not cert.verify(a2, second)


def test_refuted_by_minimum():
    cert = is_isometric(Lattice([[2, 0], [0, 6]]), Lattice([[4, 2], [2, 4]]))
    assert not cert
    assert cert.invariant == "minimum"


def test_odd_and_even_unimodular_in_dimension_8(e8):
    cert = is_isometric(integer_lattice(8), e8)
    assert cert.invariant == "parity"


def test_budget_exceeded_reports_invariants(e8):
    with pytest.raises(BudgetExceededError) as info:
        is_isometric(e8, e8, budget=1)
    assert info.value.partial["rank"] == 8
    assert info.value.partial["root system"] == "e8"


def test_invariants(d4, plane):
    inv = lattice_invariants(d4)
    assert inv.minimum == 2
    assert inv.theta[2] == 24
    assert inv.datum == "d4"
    assert compare_invariants(inv, lattice_invariants(change_basis(d4, skew(4)))) is None
    with pytest.raises(ValidationError):
        lattice_invariants(plane)


def test_past_deadline_is_inconclusive(e8):
    with pytest.raises(BudgetExceededError):
        is_isometric(e8, change_basis(e8, skew(8)), deadline=time.monotonic() - 1)


def test_isometric_with_an_orthogonal_summand(e8):
    first = direct_sum(integer_lattice(2), e8)
    second = change_basis(direct_sum(e8, integer_lattice(2)), skew(10))
    cert = is_isometric(first, second)
    assert cert and cert.verify(first, second)


@pytest.mark.slow
def test_the_two_even_neighbors_of_i16_are_isometric():
    first, second = even_neighbors(integer_lattice(16))
    cert = is_isometric(first, second)
    assert cert and cert.verify(first, second)
    assert not is_isometric(first, direct_sum(root_lattice("e8"), root_lattice("e8")))
