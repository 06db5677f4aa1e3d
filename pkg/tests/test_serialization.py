import json

import pytest
from sympy import QQ

from nilpotent import exact
from nilpotent.errors import DegenerateMetric, DuplicateBracket, InvalidInput, NotTwoStep
from nilpotent.serialization import (
    algebra_to_document,
    dumps,
    load_algebra,
    load_form,
    load_graph,
    load_metric,
    parse_document,
    verdict_to_model,
)
from nilpotent.symplectic import symplectic_exists
from schemas import AlgebraFile

H1 = {"name": "h1", "dim": 3, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]}]}


class TestAlgebraFiles:
    def test_load(self, write_json):
        algebra, metric = load_algebra(write_json("h1.json", H1))
        assert algebra.name == "h1"
        assert algebra.basis_bracket(0, 1) == exact.unit(3, 2)
        assert metric is None

    def test_rational_coefficients_and_metric(self, write_json):
        doc = {
            "dim": 3,
            "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "-3/6"}]}],
            "metric": [["2", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
        }
        algebra, metric = load_algebra(write_json("scaled.json", doc))
        assert algebra.basis_bracket(0, 1)[2] == QQ(-1, 2)
        assert metric.rows()[0][0] == 2
        assert algebra_to_document(algebra, metric)["metric"][0] == ["2", "0", "0"]

    def test_json_syntax_error_has_position(self, write_json):
        path = write_json("broken.json", '{"dim": 3,\n  "brackets": [}')
        with pytest.raises(InvalidInput) as info:
            load_algebra(path)
        assert info.value.detail.startswith(f"{path}:2:")

    def test_schema_error_names_the_field(self, write_json):
        doc = json.loads(json.dumps(H1))
        doc["brackets"][0]["terms"][0]["c"] = "1.5"
        with pytest.raises(InvalidInput, match=r"brackets\.0\.terms\.0\.c"):
            load_algebra(write_json("decimal.json", doc))

    def test_unknown_fields_are_rejected(self, write_json):
        with pytest.raises(InvalidInput, match="not permitted"):
            load_algebra(write_json("extra.json", dict(H1, step=2)))

    def test_three_step_algebra_is_rejected_with_source(self, write_json):
        doc = {
            "dim": 4,
            "brackets": [
                {"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]},
                {"i": 1, "j": 3, "terms": [{"k": 4, "c": "1"}]},
            ],
        }
        path = write_json("filiform.json", doc)
        with pytest.raises(NotTwoStep) as info:
            load_algebra(path)
        assert info.value.detail == f"{path}: [[e1,e2],e1] = -e4 is not zero"

    def test_repeated_term(self, write_json):
        doc = {"dim": 3, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}, {"k": 3, "c": "2"}]}]}
        with pytest.raises(InvalidInput, match="repeated"):
            load_algebra(write_json("repeat.json", doc))

    @pytest.mark.parametrize("first_terms", [[], [{"k": 3, "c": "0"}]])
    def test_pair_given_twice_after_a_zero_bracket(self, write_json, first_terms):
        doc = {
            "dim": 3,
            "brackets": [
                {"i": 1, "j": 2, "terms": first_terms},
                {"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]},
            ],
        }
        path = write_json("twice.json", doc)
        with pytest.raises(DuplicateBracket) as info:
            load_algebra(path)
        assert info.value.detail == f"{path}: bracket [e1,e2] given twice"

    def test_missing_file(self, tmp_path):
        with pytest.raises(InvalidInput, match="cannot read"):
            load_algebra(str(tmp_path / "absent.json"))

    def test_document_round_trip(self, entry):
        item = entry("hC-e")
        doc = parse_document(json.dumps(algebra_to_document(item.algebra)), AlgebraFile)
        assert doc.name == "hC-e"
        assert [(b.i, b.j) for b in doc.brackets] == [(1, 2), (1, 4), (2, 3), (3, 4)]


class TestMetrics:
    def test_random_spec(self):
        metric, tag = load_metric("random:1", 4)
        assert tag == "random:1"
        assert metric.dim == 4

    def test_bad_seed(self):
        with pytest.raises(InvalidInput):
            load_metric("random:x", 4)

    def test_bare_matrix_file(self, write_json):
        metric, tag = load_metric(write_json("g.json", [["2", "1"], ["1", "2"]]), 2)
        assert tag == "custom"
        assert metric.rows() == [[2, 1], [1, 2]]

    def test_wrapped_matrix_must_match_dimension(self, write_json):
        with pytest.raises(InvalidInput, match="3x3"):
            load_metric(write_json("g.json", {"metric": [["1"]]}), 3)

    def test_indefinite_matrix(self, write_json):
        with pytest.raises(DegenerateMetric):
            load_metric(write_json("g.json", [["0", "1"], ["1", "0"]]), 2)


def test_load_form(write_json):
    form = load_form(write_json("w.json", {"dim": 4, "entries": [{"i": 1, "j": 3, "c": "1/2"}]}))
    assert form.entries() == [(1, 3, QQ(1, 2))]


def test_load_graph(write_json):
    graph = load_graph(write_json("g.json", {"vertices": 3, "edges": [[1, 2], [3, 2]]}))
    assert graph.edges == ((1, 2), (3, 2))
    with pytest.raises(InvalidInput):
        load_graph(write_json("bad.json", {"vertices": 3, "edges": [[1, 2, 3]]}))


def test_verdict_model(entry):
    model = verdict_to_model(symplectic_exists(entry("h2+R").algebra))
    assert model.answer == "no"
    assert model.certificate.kind == "CommonRadical"
    assert model.certificate.label == "e5"
    assert model.witness is None


def test_dumps_is_sorted_and_stable(entry):
    first = dumps(verdict_to_model(symplectic_exists(entry("h1+h1").algebra)))
    second = dumps(verdict_to_model(symplectic_exists(entry("h1+h1").algebra)))
    assert first == second
    keys = list(json.loads(first))
    assert keys == sorted(keys)
