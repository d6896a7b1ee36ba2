import pytest

from hyperlat.core.exceptions import ConstructionError, ValidationError
from hyperlat.models.corpus import CorpusEntry, Provenance
from hyperlat.services.corpus import CorpusStore, get_or_build, rebuild
from hyperlat.services.lattice import integer_lattice, root_lattice

BUILDER = "hyperlat.services.lattice.root_lattice"


@pytest.fixture
def store(tmp_path):
    return CorpusStore(tmp_path / "corpus")


def test_put_and_get(store, e8):
    entry = store.put("e8", e8, BUILDER, {"name": "e8"})
    assert "e8" in store
    assert "d4" not in store
    assert store.names() == ["e8"]
    assert store.get("e8").content_hash == entry.content_hash
    assert store.lattice("e8").gram == e8.gram
    assert store.path("e8").read_text().endswith("\n")


def test_store_defaults_to_cache_env(tmp_cache):
    assert CorpusStore().root == tmp_cache
    assert tmp_cache.is_dir()


def test_verify_rebuilds_recorded_builder(store, e8):
    store.put("e8", e8, BUILDER, {"name": "e8"})
    assert store.verify("e8")
    assert not store.verify("e8", builder=lambda: integer_lattice(8))


def test_missing_and_malformed_entries(store, e8):
    with pytest.raises(ValidationError):
        store.get("leech")
    store.put("e8", e8, BUILDER, {"name": "e8"})
    store.path("broken").write_text("{}\n")
    assert store.names() == ["e8"]
    with pytest.raises(ValidationError):
        store.get("broken")


def test_rebuild_with_unknown_builder(store, e8):
    entry = store.put("e8", e8, "hyperlat.services.lattice.no_such_builder")
    with pytest.raises(ValidationError):
        rebuild(entry)


def test_rebuild_runs_builder():
    entry = CorpusEntry(
        name="d4",
        provenance=Provenance(command=BUILDER, inputs={"name": "d4"}),
        lattice=root_lattice("d4").to_record(),
    )
    assert rebuild(entry).gram == root_lattice("d4").gram


def test_get_or_build_caches(store):
    calls = []

    def build():
        calls.append(1)
        return root_lattice("a2")

    first = get_or_build("a2", build, command=BUILDER, inputs={"name": "a2"}, store=store)
    second = get_or_build("a2", build, store=store)
    assert len(calls) == 1
    assert first.gram == second.gram
    assert store.get("a2").provenance.inputs == {"name": "a2"}


def test_get_or_build_rejects_empty_builder(store):
    with pytest.raises(ConstructionError):
        get_or_build("nothing", lambda: None, command=BUILDER, store=store)
