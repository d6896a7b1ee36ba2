import os

os.environ.setdefault("HYPERLAT_ENV", "testing")

import pytest

from hyperlat.core.config import TestingSettings, settings
from hyperlat.services.lattice import hyperbolic_plane, integer_lattice, root_lattice


@pytest.fixture(autouse=True)
def restore_settings():
    """Commands write budget flags onto the shared settings; put them back."""
    saved = settings.model_dump()
    yield
    for key, value in saved.items():
        setattr(settings, key, value)


@pytest.fixture
def testing_settings():
    return TestingSettings()


@pytest.fixture
def tmp_cache(tmp_path, monkeypatch):
    cache = tmp_path / "corpus"
    monkeypatch.setenv("HYPERLAT_CACHE", str(cache))
    return cache


@pytest.fixture
def e8():
    return root_lattice("e8")


@pytest.fixture
def d4():
    return root_lattice("d4")


@pytest.fixture
def a2():
    return root_lattice("a2")


@pytest.fixture
def i3():
    return integer_lattice(3)


@pytest.fixture
def plane():
    return hyperbolic_plane()
