import json
import random

import pytest
from hypothesis import given, strategies as st

from catlim.errors import DocumentError
from catlim.fincat import build_shape, diagram, free_category, identity_functor, poset_category, thin_functor
from catlim.finset import CONTRAVARIANT, COVARIANT, INDUCTIVE, PROJECTIVE
from catlim.generators import random_diagram_in, random_lattice, random_poset, random_presheaf
from catlim.laws import (
    FAILS, HOLDS, NOT_APPLICABLE, check_adjoint_preserves_lim, check_adjunction, check_hom_lim,
    check_indlim_hom, check_otherside_hom, check_preservation, check_prolim_hom, check_reflection,
    check_representable_colim, check_yoneda_extension, check_yoneda_preserves_limits,
    demonstrate_order_matters, find_order_counterexample, identity_adjunction, is_colimit_cocone,
    is_limit_cone, join_adjunction, recheck_counterexample,
)
from catlim.lawsuite import LAWS, run_manifest
from catlim.presheaf import CategoricalLimit, lift_h, lift_k, presheaf_limit, yoneda_h, yoneda_k

seeds = st.integers(min_value=0, max_value=10**6)


@pytest.fixture
def diamond():
    return poset_category("diamond", ["0", "a", "b", "1"],
                          [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


@pytest.fixture
def pair(diamond):
    return diagram(build_shape("discrete(2)"), diamond, {"I1": "a", "I2": "b"})


def _arrow(cat, x, y):
    (m,) = cat.hom(x, y)
    return m


# -- the hom/limit law ------------------------------------------------------------

def test_hom_lim_holds_for_meet_and_join(diamond, pair):
    for x in diamond.objects:
        assert check_hom_lim(pair, x, PROJECTIVE).verdict == HOLDS
        assert check_hom_lim(pair, x, INDUCTIVE).verdict == HOLDS


def test_hom_lim_rejects_a_false_claim():
    # "2" sits above the join "1", so it is an upper bound but not the least one.
    cat = poset_category("tall", ["0", "a", "b", "1", "2"],
                         [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1"), ("1", "2")])
    d = diagram(build_shape("discrete(2)"), cat, {"I1": "a", "I2": "b"})
    claim = CategoricalLimit(INDUCTIVE, "2", {"I1": _arrow(cat, "a", "2"), "I2": _arrow(cat, "b", "2")})
    rep = check_hom_lim(d, "1", INDUCTIVE, claim)
    assert rep.verdict == FAILS
    assert recheck_counterexample(rep)


def test_hom_lim_is_not_applicable_without_a_limit():
    cat = free_category("two", ["a", "b"], [])
    d = diagram(build_shape("discrete(2)"), cat, {"I1": "a", "I2": "b"})
    assert check_hom_lim(d, "a", PROJECTIVE).verdict == NOT_APPLICABLE


@given(seeds)
def test_hom_lim_holds_on_random_posets(seed):
    rng = random.Random(seed)
    cat = random_poset(rng, 5)
    shape = build_shape(rng.choice(["discrete(2)", "cospan", "span"]))
    nodes = {j: rng.choice(cat.objects) for j in shape.objects}
    d = diagram(shape, cat, nodes)
    if d.violations():
        return
    for x in cat.objects:
        for kind in (PROJECTIVE, INDUCTIVE):
            assert check_hom_lim(d, x, kind).ok


def test_cone_predicates(diamond, pair):
    assert is_limit_cone(pair, "0", {"I1": _arrow(diamond, "0", "a"), "I2": _arrow(diamond, "0", "b")})
    assert is_colimit_cocone(pair, "1", {"I1": _arrow(diamond, "a", "1"), "I2": _arrow(diamond, "b", "1")})
    assert not is_limit_cone(pair, "a", {"I1": diamond.id("a"), "I2": _arrow(diamond, "a", "1")})


def test_probe_side_matters():
    rep = find_order_counterexample(random.Random(3))
    assert rep is not None and rep.verdict == FAILS
    lhs, rhs = rep.counterexample["lhs_size"], rep.counterexample["rhs_size"]
    assert lhs != rhs


def test_order_matters_on_the_diamond(diamond, pair):
    # Hom(1, a ∨ b) has one arrow; colim of Hom(1, a), Hom(1, b) is empty.
    rep = demonstrate_order_matters(pair, "1")
    assert rep.verdict == FAILS
    assert (rep.counterexample["lhs_size"], rep.counterexample["rhs_size"]) == (1, 0)


# -- presheaf-level laws ---------------------------------------------------------

@given(seeds)
def test_indlim_and_prolim_hom_hold(seed):
    rng = random.Random(seed)
    cat = random_poset(rng, 4)
    shape = build_shape(rng.choice(["discrete(2)", "cospan", "span", "parallel_pair"]))
    d = random_diagram_in(rng, shape, cat)
    if d is None:
        return
    assert check_indlim_hom(d, random_presheaf(rng, cat, 2)).verdict == HOLDS
    assert check_prolim_hom(d, random_presheaf(rng, cat, 2, COVARIANT)).verdict == HOLDS
    for x in cat.objects:
        assert check_otherside_hom(d, x, rng.choice([CONTRAVARIANT, COVARIANT])).verdict == HOLDS


def test_wrong_colimit_is_caught_and_rechecked(diamond, pair):
    other = diagram(build_shape("discrete(2)"), diamond, {"I1": "a", "I2": "0"})
    bad = presheaf_limit(lift_h(other), INDUCTIVE, base=diamond, variance=CONTRAVARIANT)
    for rep in (check_indlim_hom(pair, yoneda_h(diamond, "1"), claimed=bad),
                check_otherside_hom(pair, "b", claimed=bad)):
        assert rep.verdict == FAILS
        assert recheck_counterexample(rep)


def test_wrong_prolim_is_caught(diamond, pair):
    other = diagram(build_shape("discrete(2)"), diamond, {"I1": "a", "I2": "1"})
    bad = presheaf_limit(lift_k(other), INDUCTIVE, base=diamond, variance=COVARIANT)
    rep = check_prolim_hom(pair, yoneda_k(diamond, "0"), claimed=bad)
    assert rep.verdict == FAILS
    assert recheck_counterexample(rep)


# -- adjunctions, preservation, reflection ----------------------------------------------

def test_identity_adjunction_holds_and_tampering_fails():
    g = free_category("G", ["X", "Y", "Z"], [("a", "X", "Y"), ("b", "X", "Y"), ("c", "Y", "Z")])
    w = identity_adjunction(g)
    assert check_adjunction(w).verdict == HOLDS
    w.phi[("X", "Y")] = {"a": "b", "b": "a"}
    rep = check_adjunction(w)
    assert rep.verdict == FAILS
    assert recheck_counterexample(rep)


@given(seeds)
def test_join_adjunction_preserves(seed):
    rng = random.Random(seed)
    cat = random_lattice(rng, 3)
    w = join_adjunction(cat, rng.choice(cat.objects))
    if w is None:  # some join is missing in this family
        return
    assert check_adjunction(w).verdict == HOLDS
    for kind, where in ((PROJECTIVE, w.left.target), (INDUCTIVE, cat)):
        d = random_diagram_in(rng, build_shape(rng.choice(["discrete(2)", "cospan", "span"])), where)
        if d is not None:
            assert check_adjoint_preserves_lim(w, d, kind).ok


def test_collapsing_functor_breaks_products(diamond, pair):
    two = poset_category("C", ["0", "1"], [("0", "1")])
    f = thin_functor(diamond, two, {"0": "0", "a": "1", "b": "1", "1": "1"})
    rep = check_preservation(f, pair, PROJECTIVE)
    assert rep.verdict == FAILS
    assert recheck_counterexample(rep)


def test_constant_functor_does_not_reflect():
    e = poset_category("E", ["a", "b", "t", "u"], [("a", "t"), ("b", "t"), ("a", "u"), ("b", "u")])
    d = diagram(build_shape("discrete(2)"), e, {"I1": "a", "I2": "b"})
    const = thin_functor(e, poset_category("T", ["*"], []), {x: "*" for x in e.objects}, name="const")
    rep = check_reflection(const, d)
    assert rep.verdict == FAILS
    assert recheck_counterexample(rep)
    assert check_reflection(identity_functor(e), d).verdict == HOLDS


def test_yoneda_preserves_meets(diamond, pair):
    assert check_yoneda_preserves_limits(pair).verdict == HOLDS


# -- representable colimits and extension ----------------------------------------------

def test_representable_colim_and_bad_claim(diamond, pair):
    f = random_presheaf(random.Random(1), diamond, 3, COVARIANT, min_size=1)
    # h(a) + h(b) is not representable even though a ∨ b exists.
    assert check_representable_colim(pair, f).verdict == NOT_APPLICABLE
    cospan = diagram(build_shape("cospan"), diamond, {"I1": "a", "I2": "b", "I3": "1"})
    assert check_representable_colim(cospan, f).verdict == HOLDS
    single = diagram(build_shape("discrete(1)"), diamond, {"I1": "a"})
    kb = yoneda_k(diamond, "b")
    claim = CategoricalLimit(INDUCTIVE, "1", {"I1": _arrow(diamond, "a", "1")})
    rep = check_representable_colim(single, kb, claim)
    assert rep.verdict == FAILS
    assert recheck_counterexample(rep)


@given(seeds)
def test_yoneda_extension_law(seed):
    rng = random.Random(seed)
    cat = random_poset(rng, 4)
    f = random_presheaf(rng, cat, 3, COVARIANT)
    for x in cat.objects:
        assert check_yoneda_extension(f, x).verdict == HOLDS


# -- manifests ------------------------------------------------------------------------

@pytest.mark.parametrize("law", sorted(LAWS))
def test_generated_suites_hold(law):
    params = {"seed": 11, "count": 5}
    if law == "yoneda":
        params.update(max_objects=3, max_morphisms=6, max_size=2)
    (res,) = run_manifest([{"law": law, "instance": {"generated": params}}])
    assert res.reports
    assert res.counts()[FAILS] == 0, res.to_dict()


def test_shipped_manifest_holds(data_dir):
    entries = json.loads((data_dir / "laws_default.json").read_text())
    results = run_manifest(entries)
    assert all(r.ok for r in results)
    assert sum(r.counts()[HOLDS] for r in results) > 0


def test_inline_leg_mutation_fails():
    inst = {"diagram": {"shape": "discrete(2)", "variance": "covariant",
                        "objects": {"I1": ["x", "y"], "I2": ["p"]}, "morphisms": {}},
            "kind": "projective"}
    (ok,) = run_manifest([{"law": "universal_property", "instance": {"inline": inst}}])
    assert ok.ok
    from catlim.documents import diagram_from_doc
    from catlim.finset import limit

    res = limit(diagram_from_doc(inst["diagram"]), PROJECTIVE)
    first = res.apex.elements[0]
    other = [e for e in res.legs["I1"].target.elements if e != res.legs["I1"](first)][0]
    bad = dict(inst, mutate_leg={"leg": "I1", "element": first, "to": other})
    (res2,) = run_manifest([{"law": "universal_property", "instance": {"inline": bad}}])
    assert not res2.ok


def test_manifest_errors():
    with pytest.raises(DocumentError):
        run_manifest({"law": "yoneda"})
    with pytest.raises(DocumentError):
        run_manifest([{"law": "nope", "instance": {"inline": {}}}])
    with pytest.raises(DocumentError):
        run_manifest([{"law": "yoneda", "instance": {"neither": 1}}])
