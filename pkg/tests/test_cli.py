"""
Tests for the command-line front end
"""

import json

import pytest

from beadcalc.contraction import break_graph
from beadcalc.eqlink import hopf_link
from beadcalc.formats import diagram_to_document, dumps, scheme_to_document
from beadcalc.graphs import graph_to_document, serialize_graph, strut, theta
from beadcalc_cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, main
from database import ResultsStore


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestDim:
    def test_text(self, capsys):
        status, out, _ = run(capsys, "dim", "--euler", "4")
        assert status == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "2"
        assert "# space: phi" in lines

    def test_json(self, capsys):
        status, out, _ = run(capsys, "--format", "json", "dim", "--euler", "2")
        assert status == EXIT_OK
        assert json.loads(out)["dimension"] == 1

    def test_bound(self, capsys):
        status, _, err = run(capsys, "dim", "--euler", "99")
        assert status == EXIT_DOMAIN
        assert err.startswith("error:")

    def test_store(self, capsys, tmp_path):
        db = str(tmp_path / "results.db")
        assert run(capsys, "--store", db, "dim", "--euler", "2")[0] == EXIT_OK
        store = ResultsStore(db)
        assert store.lookup_dimension("phi", 2).dimension == 1
        assert store.validate_data_integrity()["stats"]["audit_log"] >= 1


class TestUsage:
    def test_missing_verb(self, capsys):
        assert run(capsys)[0] == EXIT_USAGE

    def test_bad_option(self, capsys):
        assert run(capsys, "dim", "--euler", "two")[0] == EXIT_USAGE

    def test_help(self, capsys):
        assert run(capsys, "--help")[0] == EXIT_OK


class TestReduce:
    def test_theta(self, capsys, write):
        path = write("theta.json", serialize_graph(theta()))
        status, out, _ = run(capsys, "--format", "json", "reduce", path)
        assert status == EXIT_OK
        document = json.loads(out)
        assert document["euler_degree"] == 2
        assert document["zero"] is False

    def test_cancelling_terms(self, capsys, write):
        document = {"space": "phi", "terms": [{"graph": graph_to_document(theta())},
                                              {"coefficient": "-1", "graph": graph_to_document(theta())}]}
        status, out, _ = run(capsys, "reduce", write("zero.json", json.dumps(document)))
        assert status == EXIT_OK
        assert "zero in quotient: yes" in out

    def test_parse_error(self, capsys, write):
        status, _, err = run(capsys, "reduce", write("bad.json", "{"))
        assert status == EXIT_DOMAIN
        assert "bad.json" in err

    def test_missing_file(self, capsys, tmp_path):
        status, _, err = run(capsys, "reduce", str(tmp_path / "nowhere.json"))
        assert status == EXIT_DOMAIN
        assert err.startswith("error:")

    def test_repeatable_output(self, capsys, write):
        path = write("theta.json", serialize_graph(theta(["t", 1, 1])))
        first = run(capsys, "--format", "json", "reduce", "--bead-window", "1", path)[1]
        second = run(capsys, "--format", "json", "reduce", "--bead-window", "1", path)[1]
        assert first == second


class TestOtherVerbs:
    def test_hair(self, capsys, write):
        path = write("theta.json", serialize_graph(theta(["t", 1, 1])))
        status, out, _ = run(capsys, "--format", "json", "hair", path, "--max-degree", "3")
        assert status == EXIT_OK
        assert json.loads(out)["space"] == "star"

    def test_contract_scheme(self, capsys, write):
        path = write("scheme.json", dumps(scheme_to_document(break_graph(theta()))))
        status, out, _ = run(capsys, "--format", "json", "contract", path)
        assert status == EXIT_OK
        assert len(json.loads(out)["terms"]) == 1

    def test_contract_graph(self, capsys, write):
        path = write("theta.json", serialize_graph(theta()))
        assert run(capsys, "contract", "--graph", path)[0] == EXIT_OK

    def test_contract_graph_with_legs(self, capsys, write):
        path = write("strut.json", serialize_graph(strut()))
        assert run(capsys, "contract", "--graph", path)[0] == EXIT_DOMAIN

    @pytest.mark.parametrize("kind, rank", [("flag", 2), ("edge", 2), ("h1", 2)])
    def test_ring(self, capsys, write, kind, rank):
        path = write("theta.json", serialize_graph(theta()))
        status, out, _ = run(capsys, "--format", "json", "ring", path, "--kind", kind)
        assert status == EXIT_OK
        document = json.loads(out)
        assert document["rank"] == rank
        assert document["h1_rank"] == 2

    def test_eqlink(self, capsys, write):
        path = write("hopf.json", dumps(diagram_to_document(hopf_link(-1))))
        status, out, _ = run(capsys, "eqlink", path)
        assert status == EXIT_OK
        assert out.strip() == "-1"

    def test_eqlink_struts(self, capsys, write):
        path = write("hopf.json", dumps(diagram_to_document(hopf_link())))
        status, out, _ = run(capsys, "--format", "json", "eqlink", path, "--struts", "--max-degree", "2")
        assert status == EXIT_OK
        document = json.loads(out)
        assert document["space"] == "hairy"
        assert len(document["terms"]) == 1

    def test_eqlink_unknown_component(self, capsys, write):
        path = write("hopf.json", dumps(diagram_to_document(hopf_link())))
        status, _, err = run(capsys, "eqlink", path, "--to", "Z")
        assert status == EXIT_DOMAIN
        assert "Z" in err

    def test_eqlink_needs_input(self, capsys):
        assert run(capsys, "eqlink")[0] == EXIT_DOMAIN

    def test_eqlink_axioms(self, capsys):
        status, out, _ = run(capsys, "--format", "json", "eqlink", "--axioms", "--count", "5")
        assert status == EXIT_OK
        assert all(record["failed"] == 0 for record in json.loads(out))

    def test_axioms(self, capsys):
        status, out, _ = run(capsys, "axioms", "--suite", "linking", "--count", "4")
        assert status == EXIT_OK
        assert "symmetry" in out
