import random

import pytest

from hyperlat.core.exceptions import ValidationError
from hyperlat.services.enumerate import shell
from hyperlat.services.hyperbolic import LeechModel
from hyperlat.services.lattice import direct_sum, hyperbolic_plane, root_lattice
from hyperlat.services.leech import NiemeierInventory, niemeier_inventory
from hyperlat.services.orbits25 import (
    OrbitRecord,
    bmodn_bridge,
    bridge_root_datum,
    check_norm2_identities,
    check_norm4_identities,
    dedup,
    duality_report,
    enumerate_orbits,
    orbit_record,
    perp_lattice,
    seed_orbits,
    table_row,
    tau,
    unimodular_of_norm4,
    w_shift_candidates,
)
from hyperlat.services.rootsys import RootDatum
from hyperlat.services.verify import small_model, tau_witnesses


def record(norm, height, roots, vtype=2, **kwargs):
    return OrbitRecord(norm, height, (0,) * 10, RootDatum.parse(roots), vtype, **kwargs)


def test_tau_is_an_involution():
    model = small_model()
    for u, v in tau_witnesses(model, 3, random.Random(1)):
        image = tau(u, v, model)
        assert tau(u, image, model) == tuple(v)
        assert model.inner(u, v) + model.inner(u, image) == model.norm(u)


def test_tau_needs_negative_norm(e8):
    model = LeechModel(e8)
    with pytest.raises(ValidationError):
        tau(model.w, model.w_prime, model)


def test_perp_lattice(e8):
    model = LeechModel(e8)
    perp = perp_lattice(model, (0,) * 8 + (1, 1))
    assert perp.rank == 9
    assert perp.is_even
    assert perp.determinant == 2


def test_unimodular_of_norm4(e8):
    ambient = direct_sum(e8, hyperbolic_plane())
    a = unimodular_of_norm4(ambient, (0,) * 8 + (1, 2))
    assert a.rank == 9
    assert a.is_odd and a.is_unimodular
    assert len(shell(a, 1)) == 2
    with pytest.raises(ValidationError):
        unimodular_of_norm4(ambient, (0,) * 8 + (1, 1))


def test_orbit_record_of_w(e8):
    model = LeechModel(e8)
    rec = orbit_record(model, model.w)
    assert rec.norm == 0 and rec.height == 0
    assert rec.niemeier == "Leech"
    assert rec.vtype == 0


def test_seed_orbits_rejects_odd_norm(e8):
    with pytest.raises(ValidationError):
        seed_orbits(-3, NiemeierInventory(), LeechModel(e8))


def test_enumerate_orbits_rejects_norm():
    with pytest.raises(ValidationError):
        enumerate_orbits(-6)


def test_w_shift_candidates():
    zero = record(0, 0, "", vtype=0)
    cusp = record(0, 2, "a1^24", vtype=0)
    root = record(-2, 1, "a1", vtype=1)
    assert w_shift_candidates([zero, cusp, root], -4) == [(cusp, 1), (root, 1)]
    assert w_shift_candidates([cusp], -2) == []


def test_norm2_identities():
    rec = record(-2, 2, "a2", vtype=2)
    assert all(check_norm2_identities(rec).values())
    assert not all(check_norm2_identities(record(-2, 3, "a2")).values())


def test_norm4_identities():
    rec = record(-4, 3, "a1^2", vtype=3)
    checks = check_norm4_identities(rec)
    assert checks["4 rho^2 <= t^2"]
    assert all(checks.values())


def test_table_row_matches_published_rows():
    row = table_row(record(-2, 2, "a2"))
    assert row["letter"] == "a" and row["published"] is True
    assert table_row(record(-2, 1, "a1", vtype=1))["letter"] == "a*"
    assert table_row(record(-2, 2, "a1"))["published"] is False
    norm4 = table_row(record(-4, 2, "a1^2", dim=23, odd=True))
    assert norm4["dim"] == "23"
    assert norm4["published"] is True


def test_dim_and_type_labels():
    assert record(-4, 1, "", dim=24, odd=False).dim_label == "24E"
    assert record(-4, 2, "", dim=24, odd=True).dim_label == "24O"
    assert record(-4, 3, "a1^2", dim=25).dim_label == "25"
    assert record(-4, 20, "", vtype=None).type_label.startswith(">=")
    d = record(-2, 2, "a2").to_dict()
    assert d["root_system"] == "a2" and d["roots"] == 6


def test_dedup_of_norm_zero_records():
    a = record(0, 2, "a1^24", vtype=0)
    b = record(0, 2, "a1^24", vtype=0)
    c = record(0, 0, "", vtype=0)
    assert dedup([a, b, c]) == [c, a]


def test_duality_report():
    records = [record(-2, 1, "a3"), record(-2, 2, "a4"), record(-2, 3, "d4"), record(-2, 4, "a1^4"), record(-2, 5, "e8")]
    assert duality_report(records) == [["a3", "a4"], ["a1^4", "d4"]]


def test_bmodn_bridge(e8):
    b = shell(e8, 2)[0]
    ambient, z, u = bmodn_bridge(e8, 3, b)
    assert ambient.norm(z) == 0
    assert ambient.inner(z, u) == -3
    assert ambient.norm(u) == -4
    with pytest.raises(ValidationError):
        bmodn_bridge(e8, 0, b)
    with pytest.raises(ValidationError):
        bmodn_bridge(e8, 3, b, k=-2)
    with pytest.raises(ValidationError):
        bmodn_bridge(root_lattice("a2"), 3, (1, 0))


def test_bridge_root_datum(e8):
    assert str(bridge_root_datum(e8, (0,) * 8)) == "e8"
    assert str(bridge_root_datum(e8, shell(e8, 2)[0])) == "a1 e7"


@pytest.mark.slow
def test_norm2_orbits_up_to_height_3():
    records = enumerate_orbits(-2, max_height=3)
    assert [(r.height, str(r.datum)) for r in records][:2] == [(1, "a1"), (2, "a2")]
    for rec in records:
        assert all(check_norm2_identities(rec).values())


@pytest.mark.slow
def test_all_121_norm2_orbits():
    inventory = niemeier_inventory(source="glue", rng=random.Random(0))
    assert inventory.seeded
    records = enumerate_orbits(-2, inventory=inventory)
    assert len(records) == 121
    assert [(r.height, str(r.datum)) for r in records][:2] == [(1, "a1"), (2, "a2")]
    for rec in records:
        assert all(check_norm2_identities(rec).values())
