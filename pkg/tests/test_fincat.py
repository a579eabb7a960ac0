import random

import pytest
from hypothesis import given, strategies as st

from catlim.config import Caps
from catlim.errors import CapacityError, LawError, StructuralError
from catlim.fincat import (
    FinCategory, Functor, Morphism, ShapeKind, build_shape, category, diagram, free_category,
    identity_functor, is_isomorphism, isomorphic_objects, opposite, poset_category, poset_join,
    poset_meet, shape_kind_of, thin_functor, validate_category,
)
from catlim.generators import codiscrete, cyclic_monoid, random_category, random_lattice, random_poset

seeds = st.integers(0, 10**6)


def test_category_helper_adds_identities():
    c = category("C", ["a", "b"], [("f", "a", "b")])
    assert c.identities == {"a": "id_a", "b": "id_b"}
    assert validate_category(c) == []
    assert c.comp("f", "id_a") == "f"


def test_missing_composite_is_a_totality_violation():
    c = category("C", ["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")])
    kinds = {v.kind for v in validate_category(c)}
    assert kinds == {"totality"}


def test_wrongly_typed_composite_is_a_closure_violation():
    c = category("C", ["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c"), ("h", "a", "b")],
                 [("g", "f", "h")])
    assert any(v.kind == "closure" for v in validate_category(c))


def test_non_associative_table_is_reported():
    # one object, e∘e = f, f∘e = e, e∘f = f: (e∘e)∘e = f∘e = e but e∘(e∘e) = e∘f = f
    c = category("M", ["*"], [("e", "*", "*"), ("f", "*", "*")],
                 [("e", "e", "f"), ("f", "e", "e"), ("e", "f", "f"), ("f", "f", "f")])
    assert any(v.kind == "associativity" for v in validate_category(c))


def test_dangling_ids_are_structural_errors():
    c = FinCategory("C", ["a"], [Morphism("id_a", "a", "a"), Morphism("f", "a", "zz")],
                    {"a": "id_a"}, {})
    with pytest.raises(StructuralError):
        validate_category(c)


def test_caps_are_enforced():
    with pytest.raises(CapacityError):
        category("C", [f"o{i}" for i in range(5)], [], caps=Caps(max_objects=4))


def test_free_category_counts_paths():
    c = free_category("F", ["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")])
    assert sorted(c.hom("a", "c")) == ["g.f", "h"]
    assert validate_category(c) == []


def test_free_category_on_cycle_hits_cap():
    with pytest.raises(CapacityError):
        free_category("loop", ["a"], [("f", "a", "a")])


def test_poset_closure_and_lattice_ops():
    p = poset_category("P", ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    assert p.hom("0", "1") == ("0<=1",)
    assert poset_join(p, ["a", "b"]) == "1"
    assert poset_meet(p, ["a", "b"]) == "0"
    assert p.is_thin()


@given(seeds)
def test_random_categories_are_valid(seed):
    c = random_category(random.Random(seed))
    assert validate_category(c) == []


@given(seeds)
def test_opposite_is_an_involution(seed):
    c = random_category(random.Random(seed))
    op = opposite(c)
    assert validate_category(op) == []
    assert opposite(op) == c
    for m in c.morphisms.values():
        assert (op.src(m.id), op.dst(m.id)) == (m.dst, m.src)


@given(seeds)
def test_lattices_have_meets(seed):
    lat = random_lattice(random.Random(seed))
    for a in lat.objects:
        for b in lat.objects:
            assert poset_meet(lat, [a, b]) is not None


def test_shapes():
    assert str(ShapeKind.parse("point")) == "discrete(1)"
    cospan = build_shape("cospan")
    assert cospan.src("m1") == "I1" and cospan.dst("m1") == "I3"
    span = build_shape("span")
    assert span.src("m1") == "I3" and span.dst("m1") == "I1"
    pp = build_shape("parallel_pair")
    assert set(pp.hom("I1", "I2")) == {"m1", "m2"}
    for text in ("discrete(0)", "discrete(3)", "parallel_pair", "cospan", "span"):
        assert str(shape_kind_of(build_shape(text))) == text
    with pytest.raises(StructuralError):
        ShapeKind.parse("pentagon")


def test_functor_laws_checked():
    c = free_category("F", ["a", "b"], [("f", "a", "b")])
    ok = diagram(build_shape("discrete(1)"), c, {"I1": "a"})
    assert ok.violations() == []
    bad = Functor(build_shape("parallel_pair"), c, {"I1": "a", "I2": "b"}, {"m1": "f", "m2": "id_a"})
    assert bad.violations()
    with pytest.raises(LawError):
        bad.check()


def test_functor_composition_and_identity():
    c = random_poset(random.Random(3), 4)
    ident = identity_functor(c)
    assert ident.then(ident).violations() == []


def test_thin_functor_requires_monotone():
    p = poset_category("P", ["a", "b"], [("a", "b")])
    with pytest.raises(LawError):
        thin_functor(p, p, {"a": "b", "b": "a"})


def test_isomorphisms():
    g = codiscrete(2)
    assert isomorphic_objects(g, "g0", "g1")
    z3 = cyclic_monoid(3)
    assert is_isomorphism(z3, "r1") == "r2"
    c = free_category("F", ["a", "b"], [("f", "a", "b")])
    assert is_isomorphism(c, "f") is None
