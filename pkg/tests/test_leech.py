import random
from fractions import Fraction

import pytest

from hyperlat.core.exceptions import ValidationError
from hyperlat.services.enumerate import minimum, shell
from hyperlat.services.isometry import is_isometric
from hyperlat.services.hyperbolic import LeechModel
from hyperlat.services.lattice import direct_sum, hyperbolic_plane, integer_lattice, root_lattice
from hyperlat.services.leech import (
    NIEMEIER_GLUE,
    NIEMEIER_ROOT_SYSTEMS,
    LeechFrame,
    characteristic_norm_counts,
    covering_radius_spot_check,
    deep_holes,
    halve_step,
    holy_construction,
    lattice26_noroots,
    leech_from_small,
    leech_vector,
    mod2_class_norms,
    niemeier_from_glue,
    niemeier_inventory,
    niemeier_names,
    niemeier_record,
    random_isotropic,
    root_square_sum,
    unimodular26_from_norm10,
    z_map,
)


def test_niemeier_names():
    names = niemeier_names()
    assert len(names) == len(set(names)) == 24
    assert "Leech" in names
    assert {"E8^3", "D16E8", "A11D7E6", "A1^24", "D24"} <= set(names)


def test_niemeier_root_systems_have_rank_24():
    from hyperlat.services.rootsys import RootDatum

    for text in NIEMEIER_ROOT_SYSTEMS:
        datum = RootDatum.parse(text)
        assert datum.rank in (0, 24)
        if datum.rank:
            assert datum.common_coxeter_number is not None


def test_niemeier_record_rejects_small_lattice(e8):
    with pytest.raises(ValidationError):
        niemeier_record(e8)


def test_leech_from_small_rejects_bad_input(i3):
    with pytest.raises(ValidationError):
        leech_from_small(i3)
    with pytest.raises(ValidationError):
        leech_from_small(integer_lattice(24))


@pytest.fixture
def frame(e8):
    return LeechFrame(direct_sum(e8, hyperbolic_plane()), (0,) * 8 + (1, 0))


def test_frame_splits_off_a_hyperbolic_plane(frame):
    assert frame.K.rank == 8
    assert frame.K.is_even and frame.K.is_unimodular
    assert frame.to_model(frame.v) == (0,) * 8 + (0, 1)
    assert frame.to_model(frame.vp) == (0,) * 8 + (1, 0)


def test_frame_preserves_norms(frame):
    model = frame.model()
    for x in [(1, 0, 0, 0, 0, 0, 0, 0, 2, 3), (0, 1, -1, 0, 0, 0, 1, 0, 0, 1), (0,) * 8 + (1, 1)]:
        assert model.norm(frame.to_model(x)) == frame.lattice.norm(x)


def test_frame_needs_norm_zero(e8):
    with pytest.raises(ValidationError):
        LeechFrame(direct_sum(e8, hyperbolic_plane()), (0,) * 8 + (1, 1))


def test_z_map(e8):
    model = LeechModel(e8)
    assert z_map(model.w, model) is None
    u = model.vector([2] + [0] * 7, 2, 1)
    assert z_map(u, model) == (1,) + (0,) * 7


def test_random_isotropic_is_primitive_norm_zero(e8):
    model = LeechModel(e8)
    rng = random.Random(3)
    for _ in range(5):
        z = random_isotropic(model, rng)
        _, m, _ = model.split(z)
        assert model.norm(z) == 0
        assert 2 <= m <= 48


def test_unimodular26_needs_norm_minus_ten(e8):
    with pytest.raises(ValidationError):
        unimodular26_from_norm10(direct_sum(e8, hyperbolic_plane()), (0,) * 10)


def test_mod2_classes_of_e8():
    counts = mod2_class_norms(root_lattice("e8"), 12, random.Random(0))
    assert sum(counts.values()) == 12
    assert set(counts) <= {0, 2, 4}


def test_covering_radius_of_e8():
    worst = covering_radius_spot_check(root_lattice("e8"), 3, random.Random(0), denominator=4)
    assert 0 <= worst <= 1


@pytest.mark.slow
def test_e8_cubed_record():
    e8 = root_lattice("e8")
    record = niemeier_record(direct_sum(e8, e8, e8))
    assert record.name == "E8^3"
    assert record.h == 30
    assert record.root_count == 720
    assert all(record.checks().values())
    ambient = direct_sum(record.lattice, hyperbolic_plane())
    assert ambient.norm(leech_vector(record)) == 0
    lhs, rhs = root_square_sum(record, [1] + [0] * 23)
    assert lhs == rhs


@pytest.mark.slow
def test_leech_has_no_roots():
    leech = leech_from_small()
    assert leech.rank == 24
    assert leech.is_even and leech.is_unimodular
    assert shell(leech, 2) == []
    assert Fraction(leech.determinant) == 1


@pytest.fixture(scope="module")
def glue_records():
    return {
        components: niemeier_record(niemeier_from_glue(components, words))
        for components, words in NIEMEIER_GLUE
    }


def test_glue_table_covers_the_rooted_niemeier_lattices():
    from hyperlat.services.rootsys import RootDatum

    glued = sorted(str(RootDatum.parse(components)) for components, _ in NIEMEIER_GLUE)
    listed = sorted(str(RootDatum.parse(text)) for text in NIEMEIER_ROOT_SYSTEMS if text)
    assert glued == listed


def test_d24_from_glue():
    lattice = niemeier_from_glue("d24", ("1",))
    assert lattice.rank == 24
    assert lattice.is_even and lattice.is_unimodular
    assert minimum(lattice) == 2


def test_glue_word_must_match_components():
    with pytest.raises(ValidationError):
        niemeier_from_glue("d12^2", ("1",))


@pytest.mark.slow
def test_glue_inventory_derives_all_24():
    inventory = niemeier_inventory(leech_from_small(), samples=0, source="glue")
    assert inventory.complete
    assert all(inventory.checks().values())
    assert not inventory.seeded
    assert sorted(inventory.records) == sorted(niemeier_names())


@pytest.mark.slow
def test_glue_records_have_the_listed_coxeter_numbers(glue_records):
    assert len(glue_records) == 23
    for rec in glue_records.values():
        assert all(rec.checks().values()), rec.name
        assert rec.h == rec.datum.common_coxeter_number


@pytest.mark.slow
def test_holy_construction_for_every_rooted_niemeier_lattice(glue_records):
    for rec in glue_records.values():
        leech = holy_construction(rec)
        assert leech.rank == 24, rec.name
        assert minimum(leech) == 4, rec.name


@pytest.mark.slow
def test_halving_d24(glue_records):
    rec = glue_records["d24"]
    assert rec.h == 46
    half = halve_step(rec)
    assert 2 * half.h <= 46
    assert all(half.checks().values())


@pytest.mark.slow
def test_deep_holes_have_the_extended_diagram(glue_records):
    chosen = [glue_records[c] for c in ("a1^24", "d4^6", "e8^3")]
    holes = deep_holes(chosen)
    assert [h.height for h in holes] == [2, 6, 30]
    for rec, hole in zip(sorted(chosen, key=lambda r: r.h), holes):
        assert all(hole.checks(rec.datum).values()), rec.name
        assert hole.radius_sq == 2


@pytest.mark.slow
def test_lattice26_has_624_shortest_characteristic_vectors(glue_records):
    result = lattice26_noroots(record=glue_records["a4^6"])
    assert result.lattice.rank == 26
    assert result.lattice.norm(result.characteristic) == 10
    assert characteristic_norm_counts(result.lattice, 10) == {10: 624}


@pytest.mark.slow
def test_holy_construction_matches_the_small_lattice_construction(glue_records):
    cert = is_isometric(holy_construction(glue_records["e8^3"]), leech_from_small())
    assert cert.isometric
    assert cert.matrix is not None
