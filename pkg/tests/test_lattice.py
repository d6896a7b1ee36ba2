from fractions import Fraction

import pytest

from hyperlat.core.exceptions import NotIsotropicError, NotPrimitiveError, ValidationError
from hyperlat.services.lattice import (
    Lattice,
    change_basis,
    characteristic_vector,
    characteristic_vectors,
    direct_sum,
    discriminant_group,
    dual_basis,
    even_sublattice,
    even_unimodular_lorentzian,
    glue,
    hyperbolic_plane,
    inner_product,
    invariants_summary,
    is_characteristic,
    isotropic_quotient,
    odd_lorentzian,
    orthogonal_complement,
    scaled,
)


def test_e8_invariants(e8):
    assert e8.rank == 8
    assert e8.determinant == 1
    assert e8.is_even and e8.is_unimodular and e8.is_positive_definite
    assert discriminant_group(e8).is_trivial()


def test_hyperbolic_plane(plane):
    assert plane.signature == (1, 1, 0)
    assert plane.is_even and plane.is_unimodular and plane.is_lorentzian
    assert plane.determinant == -1


def test_lorentzian_builders():
    ii = even_unimodular_lorentzian(9)
    assert ii.label == "II_9,1"
    assert ii.rank == 10 and ii.is_even and ii.is_unimodular and ii.is_lorentzian
    odd = odd_lorentzian(3)
    assert odd.is_odd and odd.determinant == -1 and odd.signature == (3, 1, 0)
    with pytest.raises(ValidationError):
        even_unimodular_lorentzian(10)


@pytest.mark.parametrize("gram", [[[1, 2], [3, 1]], [[1, 2]]])
def test_gram_must_be_symmetric_square(gram):
    with pytest.raises(ValidationError):
        Lattice(gram)


def test_rational_gram(a2):
    half = scaled(a2, Fraction(1, 2))
    assert half.den == 2
    assert half.int_gram == [[2, -1], [-1, 2]]
    assert not half.is_integral
    assert Lattice.from_record(half.to_record()) == half


def test_inner_rejects_wrong_length(a2):
    with pytest.raises(ValidationError):
        a2.norm([1, 0, 0])


def test_discriminant_groups(a2, d4):
    a2_group = discriminant_group(a2)
    assert a2_group.order == 3
    assert a2_group.norms == (Fraction(2, 3),)
    d4_group = discriminant_group(d4)
    assert sorted(d4_group.orders) == [2, 2]
    assert set(d4_group.norms) == {Fraction(1)}
    assert len(d4_group.elements()) == 4


def test_characteristic_vectors(i3):
    c = characteristic_vector(i3)
    assert is_characteristic(i3, c)
    shortest = characteristic_vectors(i3, 3)
    assert len(shortest) == 8
    assert all(i3.norm(v) == 3 for v in shortest)


def test_characteristic_vector_of_even_lattice_is_zero(e8):
    assert characteristic_vector(e8) == [0] * 8
    skewed = change_basis(e8, [[1 if i == j else (2 if j == i + 1 else 0) for j in range(8)] for i in range(8)])
    assert characteristic_vector(skewed) == [0] * 8


def test_characteristic_vector_is_a_class_mod_2(i3):
    skewed = change_basis(i3, [[1, 0, 0], [5, 1, 0], [7, 3, 1]])
    c = characteristic_vector(skewed)
    assert set(c) <= {0, 1}
    assert is_characteristic(skewed, c)


def test_even_sublattice(i3, e8):
    even, basis = even_sublattice(i3)
    assert even.is_even
    assert even.determinant == 4
    assert len(basis) == 3
    same, _ = even_sublattice(e8)
    assert same == e8


def test_orthogonal_complement_of_root_in_e8(e8):
    root = [1] + [0] * 7
    complement, basis = orthogonal_complement(e8, [root])
    assert complement.rank == 7
    assert complement.determinant == 2
    assert all(e8.inner(b, root) == 0 for b in basis)


def test_glue_to_integer_lattice():
    a1a1 = Lattice([[2, 0], [0, 2]])
    over = glue(a1a1, [[Fraction(1, 2), Fraction(1, 2)]])
    assert over.index == 2
    assert over.lattice.determinant == 1
    assert over.lattice.is_odd
    with pytest.raises(ValidationError):
        glue(a1a1, [[Fraction(1, 2), 0]])


def test_isotropic_quotient_of_ii91_is_e8():
    ii = even_unimodular_lorentzian(9)
    quotient = isotropic_quotient(ii, [0] * 8 + [1, 0])
    assert quotient.rank == 8
    assert quotient.is_even and quotient.is_unimodular and quotient.is_positive_definite


def test_isotropic_quotient_rejects_bad_vectors():
    ii = even_unimodular_lorentzian(9)
    with pytest.raises(NotIsotropicError):
        isotropic_quotient(ii, [0] * 8 + [1, 1])
    with pytest.raises(NotPrimitiveError):
        isotropic_quotient(ii, [0] * 8 + [2, 0])


def test_direct_sum_and_change_basis(e8, plane):
    total = direct_sum(e8, plane)
    assert total.label == "e8 + U"
    assert total.rank == 10
    swapped = change_basis(plane, [[0, 1], [1, 0]])
    assert swapped == plane
    summary = invariants_summary(total)
    assert summary["signature"] == [9, 1, 0]
    assert summary["even"] is True


def test_inner_product_on_hyperbolic_plane():
    u = hyperbolic_plane()
    assert inner_product(u, (1, 0), (0, 1)) == -1
    assert inner_product(u, (1, 0), (1, 0)) == 0
    assert inner_product(u, (1, 1), (1, 1)) == -2


def test_dual_basis_of_a2(a2):
    third = Fraction(1, 3)
    assert dual_basis(a2) == [[2 * third, third], [third, 2 * third]]
