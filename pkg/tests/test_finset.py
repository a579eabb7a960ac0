import random

import pytest
from hypothesis import given, strategies as st

from catlim.errors import CapacityError, LawError, StructuralError
from catlim.config import Caps
from catlim.fincat import build_shape
from catlim.finset import (
    CONTRAVARIANT, COVARIANT, INDUCTIVE, PROJECTIVE, FinFunction, FinSet, SetDiagram, coequalizer,
    colim, constant_function, coproduct, default_probes, enumerate_functions, equalizer, finset,
    iso_sets, lim_as_nat_trans, lim_matching_families, limit, mediating_morphism, product, pullback,
    result_isomorphism, verify_universal_property,
)
from catlim.generators import random_finset, random_function, random_set_diagram
from catlim.lawsuite import DIAGRAM_SHAPES, mutate_leg

from oracles import components_colimit, raw_arrows, raw_sets, tuples_limit

seeds = st.integers(min_value=0, max_value=10**6)


def _diagram(seed, shapes=DIAGRAM_SHAPES, max_size=3):
    rng = random.Random(seed)
    return random_set_diagram(rng, rng.choice(shapes), max_size, rng.choice([COVARIANT, CONTRAVARIANT]))


def test_finset_rejects_duplicates():
    with pytest.raises(StructuralError):
        FinSet("S", ("a", "a"))


def test_function_must_be_total():
    x, y = finset("X", ["1", "2"]), finset("Y", ["a"])
    with pytest.raises(StructuralError):
        FinFunction(x, y, {"1": "a"})


def test_function_composition():
    x, y, z = finset("X", ["1", "2"]), finset("Y", ["a", "b"]), finset("Z", ["p"])
    f = FinFunction(x, y, {"1": "a", "2": "b"})
    g = constant_function(y, z, "p")
    assert f.then(g).table == {"1": "p", "2": "p"}


@given(seeds)
def test_limit_matches_tuple_oracle(seed):
    d = _diagram(seed)
    res = lim_matching_families(d)
    expected = tuples_limit(raw_sets(d), raw_arrows(d))
    got = {tuple(sorted((j, res.legs[j](e)) for j in d.shape.objects)) for e in res.apex.elements}
    assert got == expected
    assert len(res.apex) == len(expected)


@given(seeds)
def test_colimit_matches_component_oracle(seed):
    d = _diagram(seed)
    res = colim(d)
    comps = components_colimit(raw_sets(d), raw_arrows(d))
    assert len(res.apex) == len(comps)
    for comp in comps:
        classes = {res.legs[j](e) for j, e in comp}
        assert len(classes) == 1


@given(seeds)
def test_two_limit_definitions_agree_elementwise(seed):
    d = _diagram(seed)
    assert lim_matching_families(d).apex.elements == lim_as_nat_trans(d).apex.elements


@given(seeds)
def test_engine_limits_satisfy_universal_property(seed):
    d = _diagram(seed, max_size=2)
    for kind in (PROJECTIVE, INDUCTIVE):
        assert verify_universal_property(limit(d, kind), d, default_probes(2)).holds


@given(seeds)
def test_leg_mutation_breaks_universal_property(seed):
    rng = random.Random(seed)
    d = _diagram(seed, max_size=2)
    kind = rng.choice([PROJECTIVE, INDUCTIVE])
    res = limit(d, kind)
    options = []
    for j, leg in res.legs.items():
        for a in leg.source.elements:
            options.extend((j, a, b) for b in leg.target.elements if b != leg(a))
    if not options:
        return
    j, a, b = rng.choice(options)
    assert not verify_universal_property(mutate_leg(res, j, a, b), d, default_probes(2)).holds


def test_empty_diagram_gives_point_and_empty():
    d = SetDiagram(build_shape("discrete(0)"), {}, {})
    assert len(lim_matching_families(d).apex) == 1
    assert len(colim(d).apex) == 0


@given(st.integers(0, 4), st.integers(0, 4))
def test_product_and_coproduct_sizes(n, m):
    x = finset("X", [f"x{i}" for i in range(n)])
    y = finset("Y", [f"y{i}" for i in range(m)])
    assert len(product(x, y).apex) == n * m
    assert len(coproduct(x, y).apex) == n + m
    d = SetDiagram(build_shape("discrete(2)"), {"I1": x, "I2": y})
    assert result_isomorphism(product(x, y), lim_matching_families(d)) is not None
    assert result_isomorphism(coproduct(x, y), colim(d)) is not None


@given(seeds)
def test_equalizer_against_constant_is_preimage(seed):
    rng = random.Random(seed)
    x = random_finset(rng, "X", 4)
    y = random_finset(rng, "Y", 3, min_size=1)
    f = random_function(rng, x, y)
    b = rng.choice(y.elements)
    eq = equalizer(f, constant_function(x, y, b))
    assert set(eq.apex.elements) == {a for a in x.elements if f(a) == b}


@given(seeds)
def test_specialised_constructions_match_generic(seed):
    rng = random.Random(seed)
    x, y = random_finset(rng, "X", 3), random_finset(rng, "Y", 3)
    z = random_finset(rng, "Z", 2, min_size=1)
    f, g = random_function(rng, x, z), random_function(rng, y, z)
    pb = pullback(f, g)
    generic = lim_matching_families(pb.diagram)
    assert result_isomorphism(pb, generic) is not None
    h1, h2 = random_function(rng, x, z), random_function(rng, x, z)
    for special, kind in ((equalizer(h1, h2), PROJECTIVE), (coequalizer(h1, h2), INDUCTIVE)):
        assert result_isomorphism(special, limit(special.diagram, kind)) is not None


def test_coequalizer_is_quotient():
    x = finset("X", ["r1", "r2"])
    y = finset("Y", ["1", "2", "3", "4"])
    f = FinFunction(x, y, {"r1": "1", "r2": "2"})
    g = FinFunction(x, y, {"r1": "2", "r2": "3"})
    assert coequalizer(f, g).apex.elements == ("{1,2,3}", "{4}")


def test_mediating_morphism_factors_a_cone():
    x, y = finset("X", ["a", "b"]), finset("Y", ["c"])
    w = finset("W", ["w"])
    u = mediating_morphism(product(x, y), w, {"I1": FinFunction(w, x, {"w": "b"}),
                                             "I2": FinFunction(w, y, {"w": "c"})})
    assert u.table == {"w": "<b,c>"}


def test_mediating_morphism_rejects_a_non_cone():
    x = finset("X", ["a", "b"])
    ident = FinFunction(x, x, {"a": "a", "b": "b"})
    d = SetDiagram(build_shape("cospan"), {"I1": x, "I2": x, "I3": x}, {"m1": ident, "m2": ident})
    w = finset("W", ["w"])
    with pytest.raises(LawError):
        mediating_morphism(lim_matching_families(d), w, {
            "I1": FinFunction(w, x, {"w": "a"}), "I2": FinFunction(w, x, {"w": "b"}),
            "I3": FinFunction(w, x, {"w": "a"})})


def test_enumerate_functions_count_and_cap():
    x, y = finset("X", ["1", "2", "3"]), finset("Y", ["a", "b"])
    assert len(enumerate_functions(x, y)) == 8
    with pytest.raises(CapacityError):
        enumerate_functions(x, y, Caps(max_functions=7))


def test_iso_sets_only_for_equal_sizes():
    assert iso_sets(finset("A", ["1"]), finset("B", ["2", "3"])) is None
    assert iso_sets(finset("A", ["1"]), finset("B", ["2"])).table == {"1": "2"}


def test_diagram_violations_reported():
    x = finset("X", ["a"])
    shape = build_shape("cospan")
    d = SetDiagram(shape, {"I1": x, "I2": x})
    assert any("I3" in v for v in d.violations())
