from fractions import Fraction

import pytest

from hyperlat.core.exceptions import ValidationError
from hyperlat.services.lattice import integer_lattice, root_lattice
from hyperlat.services.theta import (
    QSeries,
    ThetaDecomposition,
    bimodular_theta,
    characteristic_counts_from,
    decompose,
    height_linearity_report,
    height_term,
    leech_theta,
    solve_coefficients,
    standard_series,
    theta_of_dual,
    theta_series,
    unimodular25_theta,
)


def test_series_arithmetic():
    one_plus_q = QSeries.from_list([1, 1])
    assert (QSeries({0: 1, 1: 1}, 5) ** 2).coefficients() == [1, 2, 1, 0, 0]
    assert QSeries({0: 1, 1: -1}, 5).inverse().coefficients() == [1, 1, 1, 1, 1]
    assert one_plus_q.substitute(2).coefficients() == [1, 0, 1, 0]
    assert QSeries.from_list([1, 2, 3, 4]).even_part().coefficients() == [1, 0, 3, 0]
    assert one_plus_q * 3 == QSeries.from_list([3, 3])
    assert one_plus_q - 1 == QSeries.from_list([0, 1])


def test_series_equality_uses_common_precision():
    assert QSeries.from_list([1, 2, 3]) == QSeries.from_list([1, 2])
    assert QSeries.from_list([1, 2, 3]) != QSeries.from_list([1, 3])


def test_series_exponents():
    s = QSeries({Fraction(1, 4): 2}, 1)
    assert s[Fraction(1, 4)] == 2
    with pytest.raises(ValidationError):
        QSeries({Fraction(1, 3): 1}, 1)
    with pytest.raises(ValidationError):
        s[1]


def test_standard_series():
    assert standard_series("theta1", 10).coefficients() == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]
    assert standard_series("delta8", 4).coefficients(4) == [0, 1, -8, 28]
    inv = standard_series("delta_inv", 2)
    assert (inv[-1], inv[0], inv[1]) == (1, 24, 324)
    assert standard_series("tau", 6).coefficients() == [0, 0, 1, 0, -24, 0]
    with pytest.raises(ValidationError):
        standard_series("eta", 4)


def test_theta_series_of_e8(e8):
    assert theta_series(e8, 4).coefficients(5) == [1, 0, 240, 0, 2160]


def test_theta_of_dual_of_a1():
    theta = theta_of_dual(root_lattice("a1"), 2)
    assert theta[Fraction(1, 2)] == 2
    assert theta[2] == 2


def test_decompose_e8(e8):
    result = decompose(e8)
    assert result.a == [1, -16]
    assert result.reconstruct(6) == result.theta


def test_decompose_needs_unimodular(a2):
    with pytest.raises(ValidationError):
        decompose(a2)


def test_decompose_small_odd_lattice():
    assert decompose(integer_lattice(3)).a == [1]


def test_solve_coefficients():
    assert solve_coefficients(26, [1, 0, 0], known={3: 0}) == [1, -52, 156, 0]
    assert solve_coefficients(24, [1, 0, 0, 0]) == [1, -48, 48, -4096]
    with pytest.raises(ValidationError):
        solve_coefficients(24, [1, 0])


def test_leech_theta():
    assert leech_theta(5).coefficients() == [1, 0, 0, 0, 196560]


def test_characteristic_counts():
    leech = ThetaDecomposition(24, [1, -48, 48, -4096])
    assert leech.characteristic_counts() == {Fraction(0): 1}
    with pytest.raises(ValidationError):
        characteristic_counts_from(16, [1, -32, 0])


def test_bimodular_and_height_checks():
    with pytest.raises(ValidationError):
        bimodular_theta(3, 1)
    with pytest.raises(ValidationError):
        unimodular25_theta(3, -1, 0)
    with pytest.raises(ValidationError):
        height_term(-6)


def test_height_linearity_report():
    samples = [(QSeries.from_list([1, 2 * t]), t) for t in (1, 2, 5)]
    assert height_linearity_report(samples)["linear"] is True
    bent = samples[:2] + [(QSeries.from_list([1, 7]), 5)]
    report = height_linearity_report(bent)
    assert report["linear"] is False and report["mismatched_heights"] == [5]
    assert height_linearity_report(samples[:2])["linear"] is None
