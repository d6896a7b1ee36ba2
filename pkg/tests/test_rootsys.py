from fractions import Fraction

import pytest

from hyperlat.core.exceptions import ValidationError
from hyperlat.services.enumerate import shell
from hyperlat.services.lattice import Lattice, cartan_matrix, root_lattice
from hyperlat.services.rootsys import (
    Component,
    RootDatum,
    affine_datum,
    classify_diagram,
    classify_norm4,
    deleted_points_pairing,
    diagram_datum,
    dominant,
    dynkin_dot,
    extended_diagram,
    fixed_rank,
    identify_roots,
    index_two_pairings,
    max_orthogonal_roots,
    maximal_subsystems,
    minimal_vectors,
    norm4_c,
    norm4_cross_row,
    norm4_table_rows,
    opposition_involution,
    opposition_map,
    parse_orbits,
    root_lattice_gram,
    s_rho_roots_congruence,
    sub_diagram_type,
    weyl_vector_norm,
)

NIEMEIER_DATA = ["e8^3", "d16 e8", "a1^24", "a2^12", "d24", "a11 d7 e6", ""]


@pytest.mark.parametrize(
    "name, h, roots, rho_sq, s",
    [
        ("e8", 30, 240, Fraction(620), 8),
        ("e7", 18, 126, Fraction(399, 2), 7),
        ("e6", 12, 72, Fraction(78), 4),
        ("a1", 2, 2, Fraction(1, 2), 1),
        ("a5", 6, 30, Fraction(35, 2), 3),
        ("d24", 46, 1104, Fraction(4324), 24),
    ],
)
def test_component_formulas(name, h, roots, rho_sq, s):
    comp = RootDatum.parse(name).components[0]
    assert comp.coxeter_number == h
    assert comp.root_count == roots
    assert comp.weyl_vector_norm == rho_sq
    assert comp.s_invariant == s


def test_parse_and_format():
    assert str(RootDatum.parse("A11D7E6")) == "a11 d7 e6"
    assert str(RootDatum.parse("a_1^{24}")) == "a1^24"
    assert RootDatum.parse("d16 e8").niemeier_name() == "D16E8"
    assert RootDatum.parse("").niemeier_name() == "Leech"
    assert RootDatum.parse("d2") == RootDatum.parse("a1^2")
    assert RootDatum.parse("d3") == RootDatum.parse("a3")
    assert RootDatum.parse("e8 e8 e8") == RootDatum.parse("e8^3")
    with pytest.raises(ValidationError):
        RootDatum.parse("x5")
    with pytest.raises(ValidationError):
        Component("e", 9)


def test_parse_orbits_keeps_tokens_apart():
    assert [str(d) for d in parse_orbits("a_1^{16}a_1^2")] == ["a1^16", "a1^2"]


def test_datum_aggregates():
    datum = RootDatum.parse("a1^24")
    assert datum.rank == 24
    assert datum.root_count == 48
    assert datum.s_invariant == 24
    assert datum.common_coxeter_number == 2
    assert RootDatum.parse("d16 e8").common_coxeter_number == 30
    assert RootDatum.parse("a1 e8").common_coxeter_number is None
    assert weyl_vector_norm("d16 e8") == 1860


@pytest.mark.parametrize("name", NIEMEIER_DATA)
def test_s_rho_roots_congruence(name):
    assert s_rho_roots_congruence(name)


@pytest.mark.parametrize("name", ["a1", "a2", "a3", "a6", "d4", "d5", "d7", "e6", "e7", "e8"])
def test_fixed_rank_equals_s_invariant(name):
    assert fixed_rank(name) == RootDatum.parse(name).s_invariant


def test_opposition_involution():
    assert opposition_involution("a5 d6 e6") == [("a5", "flip"), ("d6", "identity"), ("e6", "flip")]
    assert opposition_involution("a1 e7") == [("a1", "identity"), ("e7", "identity")]


def test_identify_roots_of_e8(e8):
    analysis = identify_roots(e8)
    assert str(analysis.datum) == "e8"
    assert len(analysis.roots) == 240
    assert len(analysis.positive) == 120
    rho = analysis.weyl.rho
    assert e8.norm(rho) == 620
    assert all(e8.inner(rho, r) == -1 for r in analysis.simple.roots)
    (component,) = analysis.weyl.components
    assert component.coxeter_number == 30
    assert sum(component.weights) == 29
    assert e8.norm(component.highest_root) == 2


def test_identify_roots_of_mixed_lattice():
    lattice = root_lattice("d4 a2")
    datum, simple, weyl = identify_roots(lattice)
    assert datum == RootDatum.parse("a2 d4")
    assert len(simple.roots) == 6
    assert lattice.norm(weyl.rho) == weyl_vector_norm("a2 d4")


def test_identify_roots_without_roots():
    analysis = identify_roots(Lattice([[4]]))
    assert analysis.datum.is_empty
    assert analysis.roots == []


def test_a2_weyl_data(a2):
    analysis = identify_roots(a2)
    assert str(analysis.datum) == "a2"
    assert len(analysis.roots) == 6
    assert analysis.weyl.components[0].coxeter_number == 3


def test_classify_diagram_kinds():
    triangle = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    (comp,) = classify_diagram(triangle)
    assert (comp.family, comp.rank, comp.affine) == ("a", 2, True)
    assert affine_datum(triangle) == RootDatum.parse("a2")
    assert diagram_datum(cartan_matrix("e", 8)) == RootDatum.parse("e8")
    assert sub_diagram_type(cartan_matrix("d", 5)) == Component("d", 5)
    with pytest.raises(ValidationError):
        diagram_datum(triangle)


def test_root_lattice_gram_matches_builder():
    assert root_lattice_gram("a2 a1") == root_lattice("a1 a2").int_gram


def test_dynkin_dot():
    text = dynkin_dot(cartan_matrix("a", 3))
    assert text.startswith("graph dynkin {")
    assert text.count("--") == 2
    assert text.count("shape=circle") == 3


@pytest.mark.parametrize(
    "name, norms",
    [
        ("e8", [0]),
        ("e7", [0, Fraction(3, 2)]),
        ("a2", [0, Fraction(2, 3), Fraction(2, 3)]),
        ("d6", [0, 1, Fraction(3, 2), Fraction(3, 2)]),
    ],
)
def test_minimal_vectors(name, norms):
    assert [norm for _, norm in minimal_vectors(name)] == norms


@pytest.mark.parametrize("name", ["a4", "d5", "e6", "e7"])
def test_minimal_vectors_cover_the_discriminant_group(name):
    from hyperlat.services.lattice import discriminant_group

    assert len(minimal_vectors(name)) == discriminant_group(root_lattice(name)).order


@pytest.mark.parametrize("name, nodes", [("a1", 2), ("e8", 9), ("d4", 5)])
def test_extended_diagram(name, nodes):
    ext = extended_diagram(name)
    assert len(ext.simple.roots) == nodes
    assert affine_datum(ext.simple.gram) == RootDatum.parse(name)
    assert sum(ext.weights) == RootDatum.parse(name).components[0].coxeter_number


def test_extended_a1_has_double_bond():
    ext = extended_diagram("a1")
    assert ext.simple.gram[0][1] == -2


def test_maximal_subsystems_of_e8():
    found = {(str(s.datum), s.kind, s.prime) for s in maximal_subsystems("e8")}
    assert found == {
        ("d8", "prime", 2),
        ("a1 e7", "prime", 2),
        ("a8", "prime", 3),
        ("a2 e6", "prime", 3),
        ("a4^2", "prime", 5),
    }


def test_maximal_subsystems_of_a_n_are_corank_one():
    subs = maximal_subsystems("a4")
    assert subs and all(s.kind == "corank-1" for s in subs)
    assert {str(s.datum) for s in subs} == {"a3", "a1 a2"}


@pytest.mark.parametrize("name", ["a1", "a2", "a5", "d4", "d6", "e6", "e7", "e8"])
def test_index_two_pairings(name):
    for deleted, m, value, expected in index_two_pairings(name):
        assert value == expected, (deleted, m)


@pytest.mark.parametrize("name", ["a3", "d5", "e7"])
def test_deleted_points_pairing(name):
    for sub in maximal_subsystems(name):
        value, expected = deleted_points_pairing(name, sub.deleted)
        assert value == expected


@pytest.mark.parametrize("name, size", [("d4", 4), ("a1^3", 3), ("a3", 2)])
def test_max_orthogonal_roots(name, size):
    lattice = root_lattice(name)
    found = max_orthogonal_roots(lattice)
    assert len(found) == size == RootDatum.parse(name).s_invariant
    assert all(lattice.inner(a, b) == 0 for a in found for b in found if a != b)


@pytest.mark.slow
def test_max_orthogonal_roots_e8(e8):
    assert len(max_orthogonal_roots(e8)) == 8


def test_opposition_map_flips_a2(a2):
    simple = identify_roots(a2).simple
    sigma = opposition_map(simple)
    assert sigma(simple.roots[0]) == list(simple.roots[1])
    assert sigma(simple.roots[1]) == list(simple.roots[0])


def test_dominant_lands_in_chamber(a2):
    simple = identify_roots(a2).simple
    v = dominant(a2, simple, [3, -1])
    assert all(a2.inner(v, r) <= 0 for r in simple.roots)
    assert a2.norm(v) == a2.norm([3, -1])


@pytest.mark.parametrize("name", ["a3", "a5", "a8", "d4", "d5", "d8", "e6", "e7", "e8"])
def test_norm4_rows_satisfy_height_relation(name):
    for row in norm4_table_rows(name):
        assert norm4_c(row.t, row.m) == row.c


def test_classify_norm4_e8(e8):
    r = shell(e8, 4)[0]
    assert classify_norm4(e8, r) == norm4_table_rows("e8")[0]


def test_classify_norm4_d4(d4):
    for r in shell(d4, 4)[:6]:
        row = classify_norm4(d4, r)
        assert (row.R, row.n, row.t, row.m, row.c) == ("d4", 8, 6, 6, 0)


def test_classify_norm4_cross_case():
    lattice = Lattice([[2, 0], [0, 2]])
    row = classify_norm4(lattice, [1, 1])
    expected = norm4_cross_row("a1", "a1")
    assert row.cross and expected.cross
    assert (row.R, row.R2, row.n, row.t, row.m, row.c) == (expected.R, expected.R2, expected.n, expected.t, expected.m, expected.c)


def test_classify_norm4_minimal_and_errors(e8):
    row = classify_norm4(Lattice([[4]]), [1])
    assert row.minimal and row.m == 0
    with pytest.raises(ValidationError):
        classify_norm4(e8, [1] + [0] * 7)
