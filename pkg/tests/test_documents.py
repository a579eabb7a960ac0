import json
import random

import pytest
from hypothesis import given, strategies as st

from catlim.concept import IND, LimitExpression
from catlim.documents import (
    category_from_doc, category_to_doc, diagram_from_doc, diagram_to_doc, document_kind, dump_json,
    expression_from_doc, expression_to_doc, kb_from_doc, kb_to_doc, load_json, load_kb,
    presheaf_from_doc, presheaf_to_doc,
)
from catlim.errors import DocumentError, StructuralError
from catlim.fincat import validate_category
from catlim.finset import COVARIANT, CONTRAVARIANT
from catlim.fixtures import dp_kb, random_kb
from catlim.generators import random_category, random_presheaf, random_set_diagram
from catlim.lawsuite import DIAGRAM_SHAPES

seeds = st.integers(min_value=0, max_value=10**6)


@given(seeds)
def test_category_round_trip(seed):
    cat = random_category(random.Random(seed), 5, 12)
    back = category_from_doc(json.loads(dump_json(category_to_doc(cat))))
    assert back.objects == cat.objects
    assert set(back.morphisms) == set(cat.morphisms)
    assert back.compose == cat.compose
    assert not validate_category(back)


@given(seeds)
def test_diagram_round_trip(seed):
    rng = random.Random(seed)
    shape = rng.choice(DIAGRAM_SHAPES)
    d = random_set_diagram(rng, shape, 3, rng.choice([COVARIANT, CONTRAVARIANT]))
    back = diagram_from_doc(json.loads(dump_json(diagram_to_doc(d, shape))))
    assert {j: s.elements for j, s in back.objects.items()} == {j: s.elements for j, s in d.objects.items()}
    assert {m: f.table for m, f in back.morphisms.items()} == {m: f.table for m, f in d.morphisms.items()}


@given(seeds)
def test_presheaf_round_trip(seed):
    rng = random.Random(seed)
    cat = random_category(rng, 4, 10)
    p = random_presheaf(rng, cat, 3, rng.choice([COVARIANT, CONTRAVARIANT]))
    back = presheaf_from_doc(json.loads(dump_json(presheaf_to_doc(p, with_base=True))))
    assert back.variance == p.variance
    assert {x: s.elements for x, s in back.values.items()} == {x: s.elements for x, s in p.values.items()}
    assert {m: f.table for m, f in back.actions.items()} == {m: f.table for m, f in p.actions.items()}


def test_expression_round_trip():
    e = LimitExpression.make(IND, "discrete(2)", {"I1": "a", "I2": "b"})
    assert expression_from_doc(expression_to_doc(e)) == e
    with pytest.raises(DocumentError):
        expression_from_doc({"op": "ind", "shape": {"objects": []}, "nodes": {}})


@pytest.mark.parametrize("seed", range(5))
def test_kb_round_trip_is_exact(seed):
    for kb in (dp_kb(seed), random_kb(seed)):
        doc = kb_to_doc(kb)
        assert kb_to_doc(kb_from_doc(json.loads(dump_json(doc)))) == doc


def test_limit_override_is_realized():
    kb = dp_kb()
    doc = kb_to_doc(kb)
    expr = kb.entry("optimal_state").expressions[0]
    doc["presheaf_overrides"]["optimal_state"] = {"limit": expression_to_doc(expr)}
    back = kb_from_doc(doc)
    assert back.presheaf_overrides["optimal_state"][CONTRAVARIANT].size_profile() == \
        kb.presheaf_overrides["optimal_state"][CONTRAVARIANT].size_profile()


def test_shipped_kb_loads(data_dir):
    kb = load_kb(data_dir / "dp_kb.json")
    assert kb_to_doc(kb) == kb_to_doc(dp_kb())


def test_document_kinds(data_dir):
    assert document_kind(load_json(data_dir / "dp_kb.json")) == "kb"
    assert document_kind(load_json(data_dir / "fig_product.json")) == "diagram"
    assert document_kind(load_json(data_dir / "laws_default.json")) == "manifest"
    assert document_kind(load_json(data_dir / "dp_repair_target.json")) == "expression"
    assert document_kind({"objects": [], "morphisms": []}) == "category"
    with pytest.raises(DocumentError):
        document_kind({"hello": 1})
    with pytest.raises(DocumentError):
        document_kind(3)


def test_loader_errors(tmp_path):
    with pytest.raises(DocumentError):
        load_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(DocumentError, match="invalid JSON"):
        load_json(bad)
    with pytest.raises(DocumentError):
        category_from_doc({"objects": ["a"]})
    with pytest.raises(StructuralError):
        category_from_doc({"objects": ["a"], "morphisms": [{"id": "f", "src": "a", "dst": "zzz"}]})
    with pytest.raises(StructuralError):
        diagram_from_doc({"shape": "discrete(1)", "objects": {"I9": ["x"]}})
    with pytest.raises(StructuralError):
        presheaf_from_doc({"base": {"objects": ["a", "b"], "morphisms": []}, "values": {"a": ["x"]}})


def test_dump_is_canonical():
    assert dump_json({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
