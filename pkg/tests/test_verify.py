import pytest

from hyperlat.core.exceptions import ValidationError
from hyperlat.services.verify import SUITES, run_all, run_suite


def test_registered_suites():
    assert sorted(SUITES) == ["ch0", "ch1", "ch2", "ch3", "ch4", "ch5", "e8"]


@pytest.mark.parametrize("name", sorted(SUITES))
def test_fast_suite_passes(name):
    report = run_suite(name)
    assert report.suite == name and not report.full
    assert report.checks
    assert [c.name for c in report.failures] == []
    assert report.passed
    assert "system" not in report.metadata


def test_unknown_suite():
    with pytest.raises(ValidationError):
        run_suite("ch9")


def test_run_all_with_names():
    reports = run_all(names=["ch0", "e8"])
    assert [r.suite for r in reports] == ["ch0", "e8"]


@pytest.mark.slow
@pytest.mark.parametrize("name", ["ch1", "ch2", "ch3", "ch4", "ch5"])
def test_full_suite_passes(name):
    assert run_suite(name, full=True).passed
