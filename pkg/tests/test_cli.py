import json
from pathlib import Path

import jsonschema
import pytest

from drguniform import read_edge_list
from drguniform.cli import main

SCHEMAS = Path(__file__).resolve().parents[1] / "src" / "drguniform" / "schemas"


def _schema(name):
    with open(SCHEMAS / name) as fh:
        return json.load(fh)


@pytest.fixture()
def h33_file(tmp_path):
    out = tmp_path / "h33.edges"
    assert main(["family", "hamming", "3", "3", "--out", str(out)]) == 0
    return out


def test_family_round_trip(h33_file, h33):
    g = read_edge_list(h33_file.read_text())
    assert g.n == 27 and sorted(g.edges()) == sorted(h33.edges())
    sidecar = json.loads((h33_file.parent / (h33_file.name + ".json")).read_text())
    assert sidecar["spec"] == {"family": "hamming", "params": [3, 3]}
    assert sidecar["n"] == 27 and sidecar["m"] == 81


def test_analyze_schema_and_content(h33_file, tmp_path):
    out = tmp_path / "analysis.json"
    assert main(["analyze", str(h33_file), "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    jsonschema.validate(payload, _schema("analysis.schema.json"))
    assert payload["n"] == 27
    assert payload["intersection_array"] == {
        "c": [1, 2, 3],
        "a": [0, 1, 2, 3],
        "b": [6, 4, 2],
    }
    assert payload["eigenvalues"] == ["6/1", "3/1", "0/1", "-3/1"]
    assert payload["classical_parameters"][0]["q"] == 1
    assert [0, 1, 2, 3] in payload["q_polynomial_orderings"]
    assert payload["near_polygon"] and not payload["bipartite"]


def test_certify_schema_and_determinism(h33_file, tmp_path):
    out1, out2 = tmp_path / "c1.json", tmp_path / "c2.json"
    assert main(["certify-uniform", str(h33_file), "--output", str(out1)]) == 0
    assert main(["certify-uniform", str(h33_file), "--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    payload = json.loads(out1.read_text())
    jsonschema.validate(payload, _schema("certificate.schema.json"))
    assert payload["verdict"] == "StronglyUniform"
    assert payload["e_minus"] == ["-1/2", "-1/2"]
    assert payload["f"][1:] == ["2/1", "2/1"]
    assert payload["checks"] == {"verify_given": True, "def_ii": True, "def_iii": True}


def test_certify_nouniform(tmp_path):
    out = tmp_path / "j63.edges"
    assert main(["family", "johnson", "6", "3", "--out", str(out)]) == 0
    cert = tmp_path / "cert.json"
    assert main(["certify-uniform", str(out), "--output", str(cert)]) == 0
    payload = json.loads(cert.read_text())
    jsonschema.validate(payload, _schema("certificate.schema.json"))
    assert payload["verdict"] == "NoUniform"
    assert payload["failure"]["kind"] == "inconsistent_layer_system"
    assert payload["e_minus"] is None


def test_flatten_cli(tmp_path):
    src = tmp_path / "shrik.edges"
    assert main(["family", "shrikhande", "--out", str(src)]) == 0
    flat = tmp_path / "flat.edges"
    assert main(["flatten", str(src), "--base", "0", "--out", str(flat)]) == 0
    g = read_edge_list(flat.read_text())
    assert g.is_bipartite()
    meta = json.loads((tmp_path / "flat.edges.json").read_text())
    assert meta["base"] == 0
    assert meta["removed_edges"] == 48 - g.m


def test_decompose_schema(h33_file, tmp_path):
    out = tmp_path / "mods.json"
    assert main(["decompose", str(h33_file), "--algebra", "T", "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    jsonschema.validate(payload, _schema("decompose.schema.json"))
    total = sum(m["dim"] * m["multiplicity_of_class"] for m in payload["modules"])
    assert total == 27
    assert all("dual_endpoint" in m for m in payload["modules"])


def test_verify_theorem_exit_code(capsys):
    assert main(["verify-theorem", "hamming"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_exit_code_parse(tmp_path):
    bad = tmp_path / "bad.edges"
    bad.write_text("not a graph\n")
    assert main(["analyze", str(bad)]) == 2
    assert main(["analyze", str(tmp_path / "missing.edges")]) == 2


def test_exit_code_budget(tmp_path):
    out = tmp_path / "big.edges"
    assert main(["family", "hamming", "4", "4", "--out", str(out), "--budget", "100"]) == 3


def test_config_file_override(h33_file, tmp_path):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({"vertex_budget": 20, "retry_count": 4}))
    # analyzing an existing file ignores the budget, but the config is echoed
    out = tmp_path / "a.json"
    assert main(["analyze", str(h33_file), "--config", str(cfg), "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["config"]["vertex_budget"] == 20
    assert payload["config"]["retry_count"] == 4
    # a family build under the same config hits the budget
    assert main(
        ["family", "hamming", "3", "3", "--out", str(tmp_path / "x.edges"), "--config", str(cfg)]
    ) == 3


def test_all_bases(tmp_path):
    src = tmp_path / "k4.edges"
    assert main(["family", "hamming", "1", "4", "--out", str(src)]) == 0
    out = tmp_path / "all.json"
    assert main(["certify-uniform", str(src), "--all-bases", "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert len(payload["per_base"]) == 4
    assert {p["verdict"] for p in payload["per_base"]} == {"StronglyUniform"}
