import json

import pytest

from og4.cli import main

from oracles import instance


@pytest.fixture(autouse=True)
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_construct_edge_list(workdir):
    assert main(["construct", "A1", "--p", "5", "--export", "edge_list"]) == 0
    lines = (workdir / "A1_p5.edges").read_text().splitlines()
    assert len(lines) == 20
    meta = json.loads((workdir / "A1_p5.json").read_text())
    assert meta == {"schema": 1, "construction": "A1", "parameters": {"p": 5},
                    "vertex_count": 10, "valency": 4}


def test_construct_inadmissible(capsys):
    assert main(["construct", "A1", "--p", "7"]) == 2
    assert "p ≡ 1 (mod 4) required" in capsys.readouterr().err


def test_construct_coset_family_export_is_budget_exit(workdir):
    assert main(["construct", "C4", "--p", "7", "--export", "edge_list"]) == 3
    bundle = json.loads((workdir / "C4_p7.certificate.json").read_text())
    assert bundle["k"] == 8 and bundle["degree"] == 64
    assert bundle["order_H"] == 168 ** 8 * 4


def test_construct_vertex_budget(monkeypatch):
    monkeypatch.setenv("OG4_BUDGET_VERTICES", "10")
    assert main(["construct", "A1", "--p", "13"]) == 3


def test_construct_dot(workdir):
    assert main(["construct", "A2", "--p", "3", "--export", "dot_oriented"]) == 0
    text = (workdir / "A2_p3.dot").read_text()
    assert text.count("->") == 36  # one arc per edge


def test_verify_certificate_tier(workdir):
    assert main(["verify", "C2", "--p", "7", "--out", "r.json"]) == 0
    rep = json.loads((workdir / "r.json").read_text())
    assert rep["schema"] == 1 and rep["tier"] == "certificate" and rep["passed"]


def test_verify_explicit_failure_exit(workdir):
    # B1 is not basic (a central involution), so the check list fails
    assert main(["verify", "B1", "--n", "5"]) == 1


def test_verify_malformed_input(workdir):
    (workdir / "notagraph.json").write_text("{not json")
    assert main(["verify", "--input", "notagraph.json"]) == 4
    (workdir / "bad.json").write_text(json.dumps({"vertices": 3, "edges": [[0, 5]], "generators": [[0, 1, 2]]}))
    assert main(["verify", "--input", "bad.json"]) == 4
    assert main(["verify", "--input", "missing.json"]) == 4


def test_verify_input_file(workdir):
    pair = instance("A1", "p", 13).pair
    data = {"vertices": pair.graph.n, "edges": [list(e) for e in pair.graph.edges()],
            "generators": [list(g.images) for g in pair.generators]}
    (workdir / "a1.json").write_text(json.dumps(data))
    assert main(["verify", "--input", "a1.json", "--out", "rep.json"]) == 0
    rep = json.loads((workdir / "rep.json").read_text())
    assert rep["result"]["basic_type"] == "biquasiprimitive"
    assert (rep["result"]["case"], rep["result"]["k"]) == ("a", 1)


def test_table2_restricted(capsys):
    assert main(["table2", "--families", "A1,A2"]) == 0
    out = capsys.readouterr().out
    assert "2/2 rows verified" in out


def test_table2_bad_params_file(workdir, capsys):
    (workdir / "p.json").write_text(json.dumps({"A1": [{"p": 7}], "B4": [{"p": 5}]}))
    assert main(["table2", "--params-file", "p.json"]) == 0
    out = capsys.readouterr().out
    assert "0/2 rows verified" in out and "p ≡ 1 (mod 4) required" in out
    (workdir / "q.json").write_text("[1, 2")
    assert main(["table2", "--params-file", "q.json"]) == 4


def test_table2_report_is_byte_identical(workdir):
    args = ["table2", "--families", "A1,A2,C2"]
    assert main(args + ["--out", "a.json"]) == 0
    assert main(args + ["--out", "b.json"]) == 0
    assert (workdir / "a.json").read_bytes() == (workdir / "b.json").read_bytes()
    rep = json.loads((workdir / "a.json").read_text())
    assert rep["schema"] == 1 and rep["total"] == 3


def test_help_documents_exit_codes(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    assert "exit codes" in capsys.readouterr().out
