import json

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omnilie import catalog
from omnilie.algebroids import AnchorAlgebroid
from omnilie.exact import Poly
from omnilie.lie import LieStruct
from omnilie.modelfile import (ModelError, load_model, model_from_algebroid, model_from_lie, parse_model,
                               serialize_model)
from omnilie.report import REPORT_SCHEMA, Report


@pytest.mark.parametrize("name", list(catalog.ENTRIES))
def test_catalog_round_trip_is_bit_exact(name):
    m = catalog.get(name)
    text = serialize_model(m)
    again = parse_model(text)
    assert again == m
    assert serialize_model(again) == text


def test_catalog_names_unique_and_large_enough():
    names = [m.name for m in catalog.catalog()]
    assert len(names) == len(set(names)) >= 11


def aff1_doc():
    return json.loads(serialize_model(catalog.get("aff1")))


def test_denominator_zero_is_parse_error():
    doc = aff1_doc()
    doc["payload"]["lie"]["structure"][0][1][1] = "1/0"
    with pytest.raises(ModelError) as e:
        parse_model(json.dumps(doc))
    assert e.value.category == "parse" and e.value.path == "payload.lie.structure[0][1][1]"


def test_non_lowest_terms_is_semantic_error():
    doc = aff1_doc()
    doc["payload"]["lie"]["structure"][0][1][1] = "2/2"
    with pytest.raises(ModelError) as e:
        parse_model(json.dumps(doc))
    assert e.value.category == "semantic" and "lowest terms" in e.value.message


def test_diagonal_structure_constant_is_skewness_error():
    doc = aff1_doc()
    doc["payload"]["lie"]["structure"][1][1][0] = "1/1"
    with pytest.raises(ModelError) as e:
        parse_model(json.dumps(doc))
    assert e.value.category == "semantic" and "skewness" in str(e.value)


def test_integers_accepted_and_normalised():
    doc = aff1_doc()
    doc["payload"]["lie"]["structure"][0][1][1] = 1
    assert parse_model(json.dumps(doc)) == catalog.get("aff1")


@pytest.mark.parametrize("mutate,path", [
    (lambda d: d.pop("header"), ""),
    (lambda d: d.__setitem__("schema", "omnilie/2"), "schema"),
    (lambda d: d["header"].__setitem__("r", 0), "header.r"),
    (lambda d: d["payload"].__setitem__("kind", "nope"), "payload.kind"),
    (lambda d: d["payload"]["lie"].__setitem__("n", "2"), "payload.lie.n"),
])
def test_schema_violations_are_positioned(mutate, path):
    doc = aff1_doc()
    mutate(doc)
    with pytest.raises(ModelError) as e:
        parse_model(json.dumps(doc))
    assert e.value.category == "parse" and e.value.path == path


def test_malformed_json_reports_position():
    with pytest.raises(ModelError) as e:
        parse_model('{"schema": ')
    assert e.value.category == "parse" and e.value.path.startswith("line 1")


def test_dimension_mismatch_is_semantic():
    doc = aff1_doc()
    doc["payload"]["lie"]["n"] = 3
    with pytest.raises(ModelError) as e:
        parse_model(json.dumps(doc))
    assert e.value.category == "semantic"


def test_point_kind_needs_rational_header():
    doc = aff1_doc()
    doc["header"]["coefficients"] = "polynomial"
    with pytest.raises(ModelError, match="header.coefficients"):
        parse_model(json.dumps(doc))


def test_load_model_from_file(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(serialize_model(catalog.get("full-curved")), encoding="utf-8")
    assert load_model(str(p)) == catalog.get("full-curved")


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def skew_structures(draw):
    n = draw(st.integers(1, 3))
    brackets = {(i, j): [draw(fractions) for _ in range(n)] for i in range(n) for j in range(i + 1, n)}
    return LieStruct.from_brackets(n, brackets)


@settings(max_examples=40, deadline=None)
@given(skew_structures(), st.integers(1, 3))
def test_lie_models_round_trip(c, r):
    m = model_from_lie(c, c.n if c.n == r else r, "trivial", name="h")
    assert parse_model(serialize_model(m)) == m


@st.composite
def polys(draw, d=1):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * d), fractions, max_size=3))
    return Poly(d, terms)


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_algebroid_models_round_trip(a, b):
    A = AnchorAlgebroid(1, 2, [[a, b]])
    m = model_from_algebroid(A)
    back = parse_model(serialize_model(m))
    assert back == m and back.build()["algebroid"] == A


def test_report_json_matches_schema():
    rep = Report("x", seed=3, params={"count": 2})
    rep.add("a", True)
    rep.add("b", False, {"triple": (0, 1, 2), "value": Poly.var(2, 0)})
    data = json.loads(rep.dumps())
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["summary"] == {"total": 2, "passed": 1, "failed": 1}
    assert data["checks"][1]["witness"] == {"triple": [0, 1, 2], "value": "t1"}
