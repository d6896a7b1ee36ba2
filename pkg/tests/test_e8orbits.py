from fractions import Fraction

import pytest

from hyperlat.core.exceptions import ValidationError
from hyperlat.services.e8orbits import (
    WEYL_E8,
    dominant_norm,
    e8_lattice,
    e8_mod_n_orbits,
    enumerate_e8,
    format_table,
    label,
    n_of_x,
    nearest_point_count,
    orbit_size,
    shell_counts,
    stabilizer_datum,
)
from hyperlat.services.tables import e8_row_x, e8_rows

HIGHEST = (1, 0, 0, 0, 0, 0, 0, 0)
NODE7 = (0, 0, 0, 0, 0, 0, 1, 0)
BRANCH = (0, 0, 0, 0, 1, 0, 0, 0)


def test_e8_lattice():
    lattice = e8_lattice()
    assert lattice.is_even and lattice.is_unimodular
    assert n_of_x((1,) * 8) == 29


@pytest.mark.parametrize(
    "x,norm,stabilizer,size,nearest",
    [
        (HIGHEST, 2, "e7", 240, 2),
        (NODE7, 4, "d7", 2160, 16),
        (BRANCH, 30, "a1 a2 a4", 483840, 6),
    ],
)
def test_fundamental_weights(x, norm, stabilizer, size, nearest):
    assert dominant_norm(x) == norm
    assert str(stabilizer_datum(x)) == stabilizer
    assert orbit_size(x) == size
    assert nearest_point_count(x) == nearest


def test_origin():
    zero = (0,) * 8
    assert orbit_size(zero) == 1
    assert nearest_point_count(zero) == 1
    assert str(stabilizer_datum(zero)) == "e8"
    assert WEYL_E8 == 696729600


def test_label_order():
    assert label(HIGHEST) == "000(0)0001"
    assert label(NODE7) == "100(0)0000"
    assert label((0,) * 7 + (1,)) == "000(1)0000"


def test_enumerate_e8():
    rows = enumerate_e8(3)
    assert [(r.n_of_x, r.label) for r in rows] == [
        (0, "000(0)0000"), (2, "000(0)0001"), (2, "100(0)0000"), (3, "000(0)0010"), (3, "000(1)0000"),
    ]
    assert rows[3].norm == 6 and rows[3].nearest == 3
    with pytest.raises(ValidationError):
        enumerate_e8(-1)


def test_rows_match_published_table():
    rows = {r.label: r for r in enumerate_e8(6) if r.n_of_x}
    published = e8_rows()
    assert len(rows) == len(published)
    for pub in published:
        row = rows[pub.x]
        assert row.x == e8_row_x(pub)
        assert (row.n_of_x, row.norm, row.orbit_size, row.nearest) == (pub.n, pub.norm, pub.size, pub.nearest)


@pytest.mark.parametrize("n,orbits", [(1, 1), (2, 3), (3, 5)])
def test_orbits_mod_n(n, orbits):
    found = e8_mod_n_orbits(n)
    assert len(found) == orbits
    assert sum(row.orbit_size // d for row, d in found) == n ** 8


def test_orbits_mod_n_needs_positive_n():
    with pytest.raises(ValidationError):
        e8_mod_n_orbits(0)


def test_shell_counts():
    assert shell_counts(enumerate_e8(3), 6) == {0: 1, 2: 240, 4: 2160, 6: 6720}


def test_size_labels_and_table():
    rows = enumerate_e8(2)
    assert [r.size_label for r in rows] == ["1", "240", "9.240"]
    table = format_table(rows)
    assert table.endswith("\n")
    lines = table.splitlines()
    assert len(lines) == 4
    assert "100(0)0000" in lines[3] and "9.240" in lines[3]
    d = rows[1].to_dict()
    assert d["x"] == "000(0)0001" and d["norm"] == Fraction(2) and d["nearest"] == 2
