import io
import json
import logging
from fractions import Fraction

import pydantic
import pytest

from hyperlat.core.config import ProductionSettings, Settings, get_settings
from hyperlat.core.error_handlers import as_hyperlat_exception, handle_cli_exception, with_error_handling
from hyperlat.core.exceptions import (
    BudgetExceededError,
    ConfigurationError,
    ConstructionError,
    HyperlatException,
    NotIsotropicError,
    UsageError,
    ValidationError,
)
from hyperlat.core.health import effective_budgets, run_metadata
from hyperlat.core.logging import get_logger, log_structured, setup_logging
from hyperlat.core.utils import (
    content_hash,
    dump_json,
    get_project_root,
    import_string,
    load_json,
    parse_rational,
    slug,
    to_jsonable,
)


def test_testing_profile_is_active(testing_settings):
    assert testing_settings.workers == 1
    assert testing_settings.niemeier_source == "glue"
    assert testing_settings.enumeration_budget == 5 * 10**6
    assert get_settings().log_level == "WARNING"


def test_cache_dir_alias(monkeypatch, tmp_path):
    monkeypatch.setenv("HYPERLAT_CACHE", str(tmp_path))
    assert Settings().cache_path == tmp_path


def test_invalid_environment_is_a_configuration_error(monkeypatch):
    monkeypatch.setenv("HYPERLAT_ENUMERATION_BUDGET", "0")
    with pytest.raises(ConfigurationError) as info:
        get_settings()
    assert info.value.exit_code == 6


def test_unknown_niemeier_source(monkeypatch):
    monkeypatch.setenv("HYPERLAT_NIEMEIER_SOURCE", "table")
    with pytest.raises(ConfigurationError):
        get_settings()


def test_production_needs_absolute_cache(monkeypatch):
    monkeypatch.setenv("HYPERLAT_CACHE", "relative/dir")
    with pytest.raises(pydantic.ValidationError):
        ProductionSettings()


@pytest.mark.parametrize(
    "exc, code",
    [
        (ValidationError(detail="bad"), 2),
        (UsageError(detail="bad"), 2),
        (BudgetExceededError(detail="over"), 3),
        (NotIsotropicError(), 4),
        (ConstructionError(), 5),
        (ConfigurationError(), 6),
    ],
)
def test_exit_codes(exc, code):
    assert exc.exit_code == code


def test_handle_cli_exception_writes_partial():
    stream = io.StringIO()
    code = handle_cli_exception(BudgetExceededError(detail="over", partial={"emitted": 10}), stream)
    report = json.loads(stream.getvalue())
    assert code == 3
    assert report["exit_code"] == 3
    assert report["context"]["partial"] == {"emitted": 10}


def test_handle_cli_exception_lists_validation_errors():
    stream = io.StringIO()
    errors = [{"loc": ["gram"], "msg": "not square", "type": "value_error"}]
    code = handle_cli_exception(ValidationError(detail="bad", errors=errors), stream)
    report = json.loads(stream.getvalue())
    assert code == 2
    assert report["detail"][0]["msg"] == "not square"


def test_unknown_exceptions_map_to_exit_1():
    mapped = as_hyperlat_exception(RuntimeError("boom"))
    assert mapped.exit_code == 1
    assert "boom" in mapped.detail


def test_with_error_handling_wraps_unexpected_errors():
    @with_error_handling
    def broken():
        raise KeyError("x")

    with pytest.raises(HyperlatException) as info:
        broken()
    assert info.value.exit_code == 1


def test_to_jsonable_exact_values():
    value = {"a": Fraction(3, 1), "b": Fraction(-3, 4), "c": (1, 2), 5: {Fraction(1, 2)}}
    assert to_jsonable(value) == {"a": 3, "b": "-3/4", "c": [1, 2], "5": ["1/2"]}


def test_dump_json_is_deterministic(tmp_path):
    path = tmp_path / "out" / "doc.json"
    text = dump_json({"b": 1, "a": [Fraction(1, 2)]}, path)
    assert text == dump_json({"a": [Fraction(1, 2)], "b": 1})
    assert text.endswith("\n")
    assert load_json(path) == {"a": ["1/2"], "b": 1}
    assert content_hash({"b": 1, "a": [Fraction(1, 2)]}) == content_hash({"a": ["1/2"], "b": 1})


def test_load_json_errors(tmp_path):
    with pytest.raises(ValidationError):
        load_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_json(bad)


def test_parse_rational():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(7) == 7
    with pytest.raises(ValidationError):
        parse_rational("three")


def test_slug():
    assert slug("d16 e8") == "d16-e8"
    assert slug("e8^3") == "e8-pow-3"


def test_import_string():
    assert import_string("hyperlat.core.utils.slug") is slug
    with pytest.raises(ImportError):
        import_string("hyperlat.core.utils.nothing_here")
    with pytest.raises(ImportError):
        import_string("nodots")


def test_project_root_holds_the_package():
    assert (get_project_root() / "hyperlat" / "core" / "utils.py").is_file()


def test_run_metadata_without_system():
    meta = run_metadata({"workers": 3}, include_system=False)
    assert meta["budgets"]["workers"] == 3
    assert "system" not in meta and "timestamp" not in meta


def test_run_metadata_with_system():
    meta = run_metadata()
    assert meta["system"]["status"] in ("healthy", "warning", "error")
    assert effective_budgets()["random_seed"] == meta["budgets"]["random_seed"]


def test_json_logging(tmp_path):
    log_file = tmp_path / "logs" / "run.log"
    logger = setup_logging("INFO", json_format=True, log_file=str(log_file))
    try:
        log_structured(get_logger("tests"), "info", "structured", {"rank": 8})
        for handler in logger.handlers:
            handler.flush()
        record = json.loads(log_file.read_text(encoding="utf-8").strip().splitlines()[-1])
        assert record["message"] == "structured"
        assert record["rank"] == 8
    finally:
        setup_logging("WARNING", json_format=False)


def test_get_logger_prefixes_package():
    assert get_logger("custom").name == "hyperlat.custom"
    assert isinstance(get_logger("hyperlat.services.exact", "DEBUG"), logging.Logger)
