from fractions import Fraction

import pytest

from hyperlat.core.exceptions import BudgetExceededError, IndefiniteLatticeError, ValidationError
from hyperlat.services import exact
from hyperlat.services.enumerate import (
    EnumerationRequest,
    babai_point,
    closest_vectors,
    count_vectors,
    lll_reduce,
    minimum,
    shell,
    short_vectors,
    vectors_in_ball,
)
from hyperlat.services.lattice import Lattice, change_basis

HALF = Fraction(1, 2)


def test_e8_shell_counts(e8):
    assert count_vectors(e8, 4) == {0: 1, 2: 240, 4: 2160}
    roots = shell(e8, 2)
    assert len(roots) == 240
    assert all(e8.norm(r) == 2 for r in roots)


@pytest.mark.parametrize("name, expected", [("e8", 2), ("a2", 2), ("d4", 2)])
def test_minimum_of_root_lattices(request, name, expected):
    assert minimum(request.getfixturevalue(name)) == expected


def test_minimum_of_integer_lattice(i3):
    assert minimum(i3) == 1


def test_minimum_of_zero_lattice():
    with pytest.raises(ValidationError):
        minimum(Lattice([]))


def test_results_are_sorted(a2):
    found = vectors_in_ball(a2, 6, with_norms=True)
    assert found[0] == ((0, 0), 0)
    keys = [(d, x) for x, d in found]
    assert keys == sorted(keys)


def test_budget_exceeded_carries_partial(e8):
    with pytest.raises(BudgetExceededError) as info:
        vectors_in_ball(e8, 4, budget=100)
    assert info.value.partial == {"emitted": 100}
    assert info.value.exit_code == 3


def test_indefinite_lattice_is_rejected(plane):
    with pytest.raises(IndefiniteLatticeError):
        vectors_in_ball(plane, 1)


def test_limit_and_predicate(e8):
    assert len(vectors_in_ball(e8, 2, limit=5)) == 5
    positive_first = vectors_in_ball(e8, 2, predicate=lambda x, d: d == 2 and x[0] > 0)
    assert positive_first and all(x[0] > 0 for x in positive_first)


def test_ball_around_deep_hole_of_cubic_lattice(i3):
    center = [HALF, HALF, HALF]
    found = vectors_in_ball(i3, Fraction(3, 4), center=center)
    assert len(found) == 8
    assert set(found) == {(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)}


def test_closest_vectors(i3):
    result = closest_vectors(EnumerationRequest(lattice=i3, radius_sq=0, center=[HALF, HALF, HALF]))
    assert result.norm == Fraction(3, 4)
    assert result.count == 8


def test_babai_point_is_a_lattice_point(a2):
    point = babai_point(a2, [Fraction(1, 3), Fraction(2, 3)])
    assert len(point) == 2 and all(isinstance(v, int) for v in point)


def test_short_vectors_modes(a2):
    shells = short_vectors(EnumerationRequest(lattice=a2, radius_sq=2))
    assert [(s.norm, s.count) for s in shells] == [(0, 1), (2, 6)]
    reps = short_vectors(EnumerationRequest(lattice=a2, radius_sq=2, mode="orbit_reps"))
    assert reps[1].count == 6 and len(reps[1].vectors) == 3
    counted = short_vectors(EnumerationRequest(lattice=a2, radius_sq=2, mode="count"))
    assert counted[1].count == 6 and counted[1].vectors == []


@pytest.mark.parametrize("kwargs", [{"radius_sq": -1}, {"radius_sq": 1, "mode": "some"}, {"radius_sq": 1, "center": [0]}])
def test_invalid_requests(a2, kwargs):
    with pytest.raises(ValidationError):
        EnumerationRequest(lattice=a2, **kwargs)


def test_lll_reduce_is_a_change_of_basis(i3):
    skewed = change_basis(i3, [[1, 0, 0], [5, 1, 0], [7, 3, 1]])
    reduced, h = lll_reduce(skewed)
    assert abs(exact.determinant(h)) == 1
    assert reduced.gram == change_basis(skewed, h).gram
    assert minimum(skewed) == 1


def test_parallel_walk_matches_serial(e8):
    assert count_vectors(e8, 2) == {0: 1, 2: 240}
    parallel = vectors_in_ball(e8, 2, workers=2)
    assert parallel == vectors_in_ball(e8, 2, workers=1)


def test_lll_shortens_a_skewed_e8_basis(e8):
    skewed = change_basis(e8, [[1 if i == j else (3 if j == i + 1 else 0) for j in range(8)] for i in range(8)])
    reduced, h = lll_reduce(skewed)
    assert reduced.gram[0][0] == 2
    assert reduced.gram == change_basis(skewed, h).gram
    assert reduced.determinant == 1
