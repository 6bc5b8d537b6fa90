"""Scene parsing, validation errors, serialization round-trips, reports."""

import json
import math

import numpy as np
import pytest

from wirtinger.scene import (
    Scene,
    SceneError,
    parse_scene,
    run_scene,
    serialize_scene,
)
from wirtinger.spaces import standard_space


def minimal_scene_dict():
    return {
        "space": {"n": 1, "structure": "standard"},
        "subvarieties": [
            {"name": "M", "basis": np.eye(4).tolist()},
        ],
    }


def theta_scene_dict():
    from wirtinger.subvariety import interpolating_subspace, quaternionic_span

    s2 = standard_space(2)
    entries = []
    for label, theta in (
        ("eighth", math.pi / 8),
        ("quarter", math.pi / 4),
        ("three-eighths", 3 * math.pi / 8),
    ):
        X = interpolating_subspace(s2, theta, name=f"v-{label}")
        entries.append({"name": X.name, "basis": X.basis.T.tolist()})
    line = quaternionic_span(s2, [np.eye(8)[0]], name="quat-line")
    entries.append({"name": "quat-line", "basis": line.basis.T.tolist()})
    entries.append({"name": "M", "basis": np.eye(8).tolist()})
    return {
        "space": {"n": 2, "structure": "standard"},
        "subvarieties": entries,
        "chains": [["quat-line", "M"], ["v-quarter", "M"]],
        "options": {"seed": 3, "tolerance": 1e-9},
    }


# --- parsing -------------------------------------------------------------------


def test_parse_minimal_scene():
    scene = parse_scene(json.dumps(minimal_scene_dict()))
    assert scene.n == 1
    assert [s.name for s in scene.subvarieties] == ["M"]
    assert scene.options == {"seed": 0, "tolerance": 1e-9}


def test_parse_rejects_invalid_json():
    with pytest.raises(SceneError, match="invalid JSON"):
        parse_scene("{not json")


def test_parse_rejects_unknown_keys():
    doc = minimal_scene_dict()
    doc["extra"] = 1
    with pytest.raises(SceneError, match="unknown key"):
        parse_scene(doc)


def test_parse_rejects_bad_dimension_with_path():
    doc = minimal_scene_dict()
    doc["subvarieties"][0]["basis"] = [[1, 0, 0], [0, 1, 0]]
    with pytest.raises(SceneError) as err:
        parse_scene(doc)
    assert "$.subvarieties[0].basis" in str(err.value)


def test_parse_rejects_unresolved_chain_name():
    doc = minimal_scene_dict()
    doc["chains"] = [["M", "Y"]]
    with pytest.raises(SceneError, match="unresolved name Y"):
        parse_scene(doc)


def test_parse_rejects_duplicate_names():
    doc = minimal_scene_dict()
    doc["subvarieties"].append(doc["subvarieties"][0])
    with pytest.raises(SceneError, match="duplicate"):
        parse_scene(doc)


def test_parse_rejects_non_i_complex_basis_naming_it():
    doc = minimal_scene_dict()
    doc["subvarieties"][0]["basis"] = [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
    ]
    with pytest.raises(SceneError) as err:
        parse_scene(doc)
    assert "'M'" in str(err.value)
    assert "I-complex" in str(err.value)


def test_parse_rejects_incompatible_explicit_structure():
    s1 = standard_space(1)
    doc = {
        "space": {
            "n": 1,
            "structure": {
                "I": s1.I.tolist(),
                "J": s1.J.tolist(),
                "K": s1.K.tolist(),
                "g": np.diag([1.0, 2.0, 1.0, 1.0]).tolist(),
            },
        },
        "subvarieties": [{"name": "M", "basis": np.eye(4).tolist()}],
    }
    with pytest.raises(SceneError, match="quaternionic"):
        parse_scene(doc)


def test_parse_accepts_explicit_standard_structure():
    s1 = standard_space(1)
    doc = {
        "space": {
            "n": 1,
            "structure": {
                "I": s1.I.tolist(),
                "J": s1.J.tolist(),
                "K": s1.K.tolist(),
                "g": s1.g.tolist(),
            },
        },
        "subvarieties": [{"name": "M", "basis": np.eye(4).tolist()}],
    }
    scene = parse_scene(doc)
    report = run_scene(scene)
    assert report.subvarieties[0]["wirtinger"] == pytest.approx(1.0)


def test_parse_flags_odd_complex_dimension_with_warning():
    doc = {
        "space": {"n": 1, "structure": "standard"},
        "subvarieties": [
            {"name": "odd", "basis": [[1, 0, 0, 0], [0, 1, 0, 0]]},
        ],
    }
    scene = parse_scene(doc)
    assert any("odd complex dimension" in w for w in scene.warnings)
    with pytest.raises(SceneError, match="odd"):
        run_scene(scene)


def test_parse_rejects_bad_options():
    doc = minimal_scene_dict()
    doc["options"] = {"seed": "zero"}
    with pytest.raises(SceneError, match="seed"):
        parse_scene(doc)
    doc["options"] = {"unknown": 1}
    with pytest.raises(SceneError, match="unknown option"):
        parse_scene(doc)


# --- serialization ----------------------------------------------------------------


def test_round_trip_minimal():
    scene = parse_scene(minimal_scene_dict())
    again = parse_scene(serialize_scene(scene))
    assert again == scene


def test_round_trip_full_featured():
    scene = parse_scene(theta_scene_dict())
    again = parse_scene(serialize_scene(scene))
    assert again == scene


def test_round_trip_with_lattice_and_explicit_structure():
    s1 = standard_space(1)
    doc = {
        "space": {
            "n": 1,
            "structure": {
                "I": s1.I.tolist(),
                "J": s1.J.tolist(),
                "K": s1.K.tolist(),
                "g": s1.g.tolist(),
            },
        },
        "subvarieties": [
            {
                "name": "M",
                "basis": np.eye(4).tolist(),
                "lattice": (2.0 * np.eye(4)).tolist(),
            }
        ],
    }
    scene = parse_scene(doc)
    assert parse_scene(serialize_scene(scene)) == scene


# --- running ---------------------------------------------------------------------


def test_run_minimal_scene_fixture():
    report = run_scene(parse_scene(minimal_scene_dict()))
    row = report.subvarieties[0]
    assert row["d"] == 2
    assert row["deg_omega"] == pytest.approx(2.0)
    assert row["deg_Omega"] == pytest.approx(2.0)
    assert row["wirtinger"] == pytest.approx(1.0)
    assert row["trianalytic"] is True
    assert report.violations == []


def test_run_c2_plane_scene():
    basis = np.zeros((4, 8))
    basis[0, 0] = 1.0
    basis[1, 1] = 1.0
    basis[2, 4] = 1.0
    basis[3, 5] = 1.0
    doc = {
        "space": {"n": 2, "structure": "standard"},
        "subvarieties": [{"name": "plane", "basis": basis.tolist()}],
    }
    report = run_scene(parse_scene(doc))
    assert report.subvarieties[0]["wirtinger"] == pytest.approx(0.0, abs=1e-12)
    assert report.subvarieties[0]["trianalytic"] is False


def test_run_theta_scene_chains_pass():
    report = run_scene(parse_scene(theta_scene_dict()))
    values = {row["name"]: row["wirtinger"] for row in report.subvarieties}
    assert values["v-eighth"] == pytest.approx(math.cos(math.pi / 8), abs=1e-12)
    assert values["v-quarter"] == pytest.approx(math.cos(math.pi / 4), abs=1e-12)
    assert all(chain["verdict"] == "PASS" for chain in report.chains)


def test_run_with_oracle_strategies():
    report = run_scene(parse_scene(minimal_scene_dict()), oracle=True)
    row = report.subvarieties[0]
    assert row["strategies_agree"] is True
    assert row["strategies"]["oracle"] == pytest.approx(2.0)


def test_run_oracle_skips_above_cutoff():
    doc = {
        "space": {"n": 4, "structure": "standard"},
        "subvarieties": [{"name": "M", "basis": np.eye(16).tolist()}],
    }
    report = run_scene(parse_scene(doc), oracle=True)
    row = report.subvarieties[0]
    assert row["strategies"]["oracle"] is None
    assert row["strategies_agree"] is True


def test_report_deterministic_for_same_scene():
    doc = theta_scene_dict()
    a = run_scene(parse_scene(doc)).to_json()
    b = run_scene(parse_scene(doc)).to_json()
    assert a == b


def test_report_to_table_renders():
    report = run_scene(parse_scene(theta_scene_dict()))
    table = report.to_table()
    assert "v-quarter" in table
    assert "chain quat-line -> M: PASS" in table


def test_scene_build_subvarieties_names():
    scene = parse_scene(theta_scene_dict())
    built = scene.build_subvarieties()
    assert set(built) == {"v-eighth", "v-quarter", "v-three-eighths", "quat-line", "M"}


def test_scene_equality_detects_changes():
    scene = parse_scene(minimal_scene_dict())
    other_doc = minimal_scene_dict()
    other_doc["subvarieties"][0]["basis"][0][0] = 2.0
    other = parse_scene(json.dumps(other_doc))
    assert scene != other
    assert isinstance(scene, Scene)
