import pytest

from hyperlat.services.rootsys import RootDatum
from hyperlat.services.tables import (
    e8_row_x,
    e8_rows,
    match_norm2,
    match_norm4,
    niemeier_coxeter,
    niemeier_datum,
    norm2_row_identities,
    norm2_rows,
    norm4_max_height,
    norm4_row_identities,
    norm4_rows,
)


def test_table_sizes():
    assert len(norm2_rows()) == 121
    assert norm4_max_height() == 12
    assert len(e8_rows()) == 26


@pytest.mark.parametrize("row", norm2_rows(), ids=lambda r: r.name)
def test_norm2_rows(row):
    failed = [k for k, ok in norm2_row_identities(row).items() if not ok]
    assert failed == []


@pytest.mark.parametrize("row", norm4_rows(), ids=lambda r: f"{r.height}-{r.dim_label}-{r.roots or 'none'}")
def test_norm4_rows(row):
    failed = [k for k, ok in norm4_row_identities(row).items() if not ok]
    assert failed == []


def test_norm2_identities_catch_a_bad_row():
    row = norm2_rows()[1].model_copy(update={"height": 3})
    assert not all(norm2_row_identities(row).values())


def test_niemeier_names():
    assert niemeier_datum("2Leech") == RootDatum()
    assert niemeier_datum("A_5^4D_4") == RootDatum.parse("a5^4 d4")
    assert niemeier_coxeter("D16E8") == 30
    assert niemeier_coxeter("Leech") == 0


def test_matching():
    assert match_norm2(2, RootDatum.parse("a2")).letter == "a"
    assert match_norm2(2, RootDatum.parse("a1")) is None
    rows = match_norm4(1, RootDatum(), "24E")
    assert len(rows) == 1 and rows[0].neighbors == ["2Leech"]
    assert match_norm4(1, RootDatum(), "23") == []


def test_e8_row_x():
    first = e8_rows()[0]
    assert first.x == "000(0)0001"
    assert e8_row_x(first) == (1, 0, 0, 0, 0, 0, 0, 0)
