import json

import pytest

from adiankit.cli import main

ADIAN = {"alphabet": ["a", "b", "c"], "relations": [[["a", "b"], ["c"]], [["b", "a"], ["c"]]]}
NOT_ADIAN = {"alphabet": ["a"], "relations": [[["a", "a"], ["a"]]]}


@pytest.fixture()
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
        return str(path)

    return tmp_path, write


def test_adian_check_verdicts(files, capsys):
    tmp, write = files
    assert main(["adian", "check", write("p.json", ADIAN)]) == 0
    assert capsys.readouterr().out.strip() == "adian"

    assert main(["adian", "check", write("bad.json", NOT_ADIAN)]) == 1
    out = capsys.readouterr().out
    assert "not adian" in out and "loop at a (left graph, relation 0)" in out


def test_adian_check_graphs_and_json(files, capsys):
    tmp, write = files
    assert main(["adian", "check", write("p.json", ADIAN), "--graphs", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "adian"
    assert len(doc["left_graph"]["edges"]) == 2
    assert len(doc["right_graph"]["edges"]) == 2


def test_missing_file_is_exit_2(files, capsys):
    tmp, _ = files
    assert main(["adian", "check", str(tmp / "nope.json")]) == 2
    assert "error" in capsys.readouterr().err


def test_malformed_presentation_is_exit_2(files, capsys):
    tmp, write = files
    assert main(["adian", "check", write("broken.json", "{oops")]) == 2
    assert "syntax error" in capsys.readouterr().err


def test_diagram_random_is_byte_deterministic(files, capsys):
    tmp, write = files
    pres = write("p.json", ADIAN)
    out1, out2 = str(tmp / "d1.json"), str(tmp / "d2.json")
    assert main(["diagram", "random", pres, "--cells", "4", "--seed", "7", "-o", out1]) == 0
    assert main(["diagram", "random", pres, "--cells", "4", "--seed", "7", "-o", out2]) == 0
    assert (tmp / "d1.json").read_bytes() == (tmp / "d2.json").read_bytes()


def test_seed_env_default(files, monkeypatch):
    tmp, write = files
    pres = write("p.json", ADIAN)
    out1, out2 = str(tmp / "d1.json"), str(tmp / "d2.json")
    monkeypatch.setenv("ADIAN_KIT_SEED", "11")
    assert main(["diagram", "random", pres, "--cells", "3", "-o", out1]) == 0
    assert main(["diagram", "random", pres, "--cells", "3", "--seed", "11", "-o", out2]) == 0
    assert (tmp / "d1.json").read_bytes() == (tmp / "d2.json").read_bytes()


def test_validate_render_and_witness_pipeline(files, capsys):
    tmp, write = files
    pres = write("p.json", ADIAN)
    diagram = str(tmp / "d.json")
    cert = str(tmp / "cert.json")
    dot = str(tmp / "d.dot")

    assert main(["diagram", "random", pres, "--cells", "6", "--seed", "3", "-o", diagram]) == 0
    assert main(["diagram", "validate", diagram]) == 0
    assert capsys.readouterr().out.strip() == "ok"
    assert main(["diagram", "render", diagram, "-o", dot]) == 0
    assert (tmp / "d.dot").read_text().startswith("digraph")

    assert main(["witness", "generate", diagram, "-o", cert]) == 0
    assert main(["witness", "verify", cert, pres]) == 0
    assert capsys.readouterr().out.strip() == "accepted"


def test_tampered_certificate_rejected(files, capsys):
    tmp, write = files
    pres = write("p.json", ADIAN)
    diagram, cert = str(tmp / "d.json"), str(tmp / "cert.json")
    assert main(["diagram", "random", pres, "--cells", "4", "--seed", "5", "-o", diagram]) == 0
    assert main(["witness", "generate", diagram, "-o", cert]) == 0
    capsys.readouterr()

    doc = json.loads((tmp / "cert.json").read_text())

    def bump_relation(node):
        if node["step"]["kind"] == "relation_subst":
            node["step"]["relation"] += 1
            return True
        return any(bump_relation(child) for child in node["children"])

    assert bump_relation(doc)
    (tmp / "cert.json").write_text(json.dumps(doc))
    assert main(["witness", "verify", cert, pres]) == 1
    assert "rejected at" in capsys.readouterr().out


def test_invalid_diagram_validate_lists_violations(files, capsys):
    tmp, write = files
    pres = write("p.json", ADIAN)
    diagram = str(tmp / "d.json")
    assert main(["diagram", "random", pres, "--cells", "2", "--seed", "1", "-o", diagram]) == 0
    doc = json.loads((tmp / "d.json").read_text())
    # Re-point one cell at the wrong relation: the label no longer matches.
    for face in doc["faces"]:
        if face["kind"] != "outer":
            face["kind"]["cell"]["relation"] = 1 - face["kind"]["cell"]["relation"]
            break
    (tmp / "d.json").write_text(json.dumps(doc))
    assert main(["diagram", "validate", diagram]) == 1
    assert "violation" in capsys.readouterr().out


def test_witness_generate_requires_adian_presentation(files, capsys):
    tmp, write = files
    # Hand-build a one-edge tree diagram over a non-Adian presentation.
    diagram_doc = {
        "presentation": NOT_ADIAN,
        "vertices": [{"id": 0, "rotation": [0]}, {"id": 1, "rotation": [1]}],
        "darts": [
            {"id": 0, "inverse": 1, "letter": "a", "sign": 1, "tail": 0, "head": 1},
            {"id": 1, "inverse": 0, "letter": "a", "sign": -1, "tail": 1, "head": 0},
        ],
        "faces": [{"id": 0, "kind": "outer", "boundary": [0, 1]}],
        "base_vertex": 0,
    }
    path = write("d.json", diagram_doc)
    assert main(["witness", "generate", path, "-o", str(tmp / "c.json")]) == 2
    assert "Adian" in capsys.readouterr().err


def test_munn_commands(capsys):
    assert main(["munn", "dyck", "a b b' a'"]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert main(["munn", "reduce", "a a' b"]) == 0
    assert capsys.readouterr().out.strip() == "b"
    assert main(["munn", "dyck", "a"]) == 1
    assert capsys.readouterr().out.strip() == "false"
    assert main(["munn", "reduce", "a '"]) == 2
