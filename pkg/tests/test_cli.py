import json

import pytest

from hyperlat.core.config import settings
from hyperlat.core.utils import load_json
from hyperlat.main import run
from hyperlat.services.corpus import CorpusStore
from hyperlat.services.e8orbits import enumerate_e8, format_table


@pytest.fixture(autouse=True)
def isolated_cache(tmp_cache):
    return tmp_cache


def stdout_json(capsys):
    return json.loads(capsys.readouterr().out)


def test_shells(capsys):
    assert run(["shells", "--lattice", "a2", "--radius-sq", "2"]) == 0
    document = stdout_json(capsys)
    assert document["lattice"] == "a2"
    assert [(s["norm"], s["count"]) for s in document["shells"]] == [("0", 1), ("2", 6)]
    assert "system" not in document["meta"]


def test_shells_counts_only_to_file(tmp_path):
    out = tmp_path / "e8.json"
    assert run(["shells", "--lattice", "e8", "--radius-sq", "4", "--counts-only", "--json", str(out)]) == 0
    document = load_json(out)
    assert [s["count"] for s in document["shells"]] == [1, 240, 2160]
    assert all(s["vectors"] is None for s in document["shells"])


def test_shells_with_center(capsys):
    assert run(["shells", "--lattice", "I3", "--radius-sq", "3/4", "--center", "1/2,1/2,1/2"]) == 0
    document = stdout_json(capsys)
    assert document["shells"] == [{"norm": "3/4", "count": 8, "vectors": document["shells"][0]["vectors"]}]
    assert len(document["shells"][0]["vectors"]) == 8


def test_system_info_flag(capsys):
    assert run(["--system-info", "shells", "--lattice", "a1", "--radius-sq", "2"]) == 0
    assert "system" in stdout_json(capsys)["meta"]


@pytest.mark.parametrize(
    "argv",
    [
        ["shells"],
        ["frobnicate"],
        ["shells", "--lattice", "x5", "--radius-sq", "2"],
        ["shells", "--lattice", "a2", "--radius-sq", "2", "--center", "1,2,3"],
        ["--workers", "0", "shells", "--lattice", "a2", "--radius-sq", "2"],
        ["deep-holes", "--source", "table"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_error_report_on_stderr(capsys):
    assert run(["shells", "--lattice", "a2", "--radius-sq", "2", "--center", "1"]) == 2
    report = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert report["exit_code"] == 2


def test_budget_exceeded_writes_partial(tmp_path, capsys):
    out = tmp_path / "partial.json"
    code = run(["--enumeration-budget", "10", "shells", "--lattice", "e8", "--radius-sq", "4", "--json", str(out)])
    assert code == 3
    document = load_json(out)
    assert document["complete"] is False
    assert document["partial"]


def test_budget_flags_reach_settings(tmp_path):
    assert run(["--seed", "7", "shells", "--lattice", "a1", "--radius-sq", "2", "--json", str(tmp_path / "a1.json")]) == 0
    assert settings.random_seed == 7


def test_vinberg(tmp_path, capsys):
    dot = tmp_path / "i21.dot"
    argv = ["vinberg", "--lattice", "I_2,1", "--controlling", "0,0,1", "--root-norms", "1,2", "--max-dist", "2", "--dot", str(dot)]
    assert run(argv) == 0
    document = stdout_json(capsys)
    assert document["roots"] == [[-1, 1, 0], [0, -1, 0], [1, 1, 1]]
    assert dot.read_text().startswith("graph")


def test_theta_decompose(capsys):
    assert run(["theta", "--lattice", "e8", "--max-norm", "4", "--decompose"]) == 0
    document = stdout_json(capsys)
    assert document["a"] == [1, -16]
    assert document["coeffs"]["2"] == 240


def test_e8_orbits_table(capsys):
    assert run(["e8-orbits", "--max-n", "2", "--table"]) == 0
    assert capsys.readouterr().out == format_table(enumerate_e8(2))


def test_e8_orbits_document(capsys):
    assert run(["e8-orbits", "--max-n", "3"]) == 0
    document = stdout_json(capsys)
    assert len(document["mod_n"]["3"]) == 5
    assert len(document["rows"]) == 5


def test_corpus_list_and_show(capsys, e8):
    assert run(["corpus", "list"]) == 0
    assert stdout_json(capsys)["entries"] == []
    CorpusStore().put("e8", e8, "hyperlat.services.lattice.root_lattice", {"name": "e8"})
    assert run(["corpus", "list"]) == 0
    assert stdout_json(capsys)["entries"] == ["e8"]
    assert run(["corpus", "show", "e8"]) == 0
    assert stdout_json(capsys)["lattice"]["rank"] == 8
    assert run(["corpus", "verify", "e8"]) == 0
    assert stdout_json(capsys)["identical"] is True
    assert run(["corpus", "show", "leech"]) == 2


def test_verify_command(capsys):
    assert run(["verify", "--suite", "ch0"]) == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)["passed"] is True
    assert "ch0: 3/3 ok" in captured.err
