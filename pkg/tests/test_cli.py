"""CLI verbs, exit codes, and output formats."""

import json

import numpy as np
import pytest

from wirtinger.cli import main


@pytest.fixture()
def minimal_scene(tmp_path):
    doc = {
        "space": {"n": 1, "structure": "standard"},
        "subvarieties": [{"name": "M", "basis": np.eye(4).tolist()}],
    }
    path = tmp_path / "scene.json"
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture()
def chain_scene(tmp_path):
    from wirtinger.spaces import standard_space
    from wirtinger.subvariety import quaternionic_span

    line = quaternionic_span(standard_space(2), [np.eye(8)[0]], name="line")
    doc = {
        "space": {"n": 2, "structure": "standard"},
        "subvarieties": [
            {"name": "line", "basis": line.basis.T.tolist()},
            {"name": "M", "basis": np.eye(8).tolist()},
        ],
        "chains": [["line", "M"]],
    }
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_compute_table(minimal_scene, capsys):
    assert main(["compute", minimal_scene]) == 0
    out = capsys.readouterr().out
    assert "M" in out
    assert "True" in out


def test_compute_json(minimal_scene, capsys):
    assert main(["compute", minimal_scene, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["subvarieties"][0]["wirtinger"] == 1.0
    assert payload["metadata"]["tool"] == "wirtinger"


def test_compute_with_oracle(minimal_scene, capsys):
    assert main(["compute", minimal_scene, "--format", "json", "--oracle"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["subvarieties"][0]["strategies_agree"] is True


def test_check_passes_on_clean_scene(chain_scene, capsys):
    assert main(["check", chain_scene]) == 0


def test_missing_file_is_input_error(capsys):
    assert main(["compute", "/nonexistent/scene.json"]) == 2
    assert "error" in capsys.readouterr().err


def test_invalid_document_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{\"space\": {}}")
    assert main(["compute", str(path)]) == 2
    err = capsys.readouterr().err
    assert "error" in err


def test_odd_dimension_scene_errors_at_degree_stage(tmp_path, capsys):
    doc = {
        "space": {"n": 1, "structure": "standard"},
        "subvarieties": [{"name": "odd", "basis": [[1, 0, 0, 0], [0, 1, 0, 0]]}],
    }
    path = tmp_path / "odd.json"
    path.write_text(json.dumps(doc))
    assert main(["compute", str(path)]) == 2
    assert "odd" in capsys.readouterr().err


def test_determinism_byte_identical(chain_scene, capsys):
    assert main(["compute", chain_scene, "--format", "json"]) == 0
    first = capsys.readouterr().out
    assert main(["compute", chain_scene, "--format", "json"]) == 0
    second = capsys.readouterr().out
    assert first == second


def test_properties_verb(capsys):
    assert main(["properties", "--seed", "0", "--size", "1"]) == 0
    out = capsys.readouterr().out
    assert "properties passed" in out


def test_properties_json(capsys):
    assert main(["properties", "--seed", "0", "--size", "1", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["size"] == 1
    assert all(entry["passed"] for entry in payload["results"])


def test_properties_bad_size(capsys):
    assert main(["properties", "--size", "0"]) == 2


def test_console_entry_point_installed(minimal_scene):
    import subprocess
    import sys

    result = subprocess.run(
        [sys.executable, "-m", "wirtinger", "compute", minimal_scene],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "M" in result.stdout
