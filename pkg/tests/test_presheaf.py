import random

import pytest
from hypothesis import given, strategies as st

from catlim.errors import StructuralError
from catlim.fincat import build_shape, diagram, free_category, poset_category, poset_meet
from catlim.finset import CONTRAVARIANT, COVARIANT
from catlim.generators import (
    codiscrete, cyclic_monoid, random_category, random_diagram_in, random_poset, random_presheaf,
)
from catlim.presheaf import (
    category_of_elements, colimit_in_category, count_nat_trans, definition_lim, dual_extension,
    empty_presheaf, find_natural_iso, identity_nat, ind_lim, is_representable, isomorphic,
    limit_in_category, point_presheaf, pro_lim, representability_search, yoneda, yoneda_check,
    yoneda_extension, yoneda_h, yoneda_k,
)

from oracles import components_colimit, nat_count, tuples_limit

seeds = st.integers(min_value=0, max_value=10**6)
variances = st.sampled_from([CONTRAVARIANT, COVARIANT])


def _raw(p):
    sets = {x: list(p.at(x).elements) for x in p.base.objects}
    act = {m: dict(fn.table) for m, fn in p.actions.items()}
    arrows = [(m,) + p.arrow(m) for m in p.base.morphisms]
    return sets, act, arrows


def _oracle_nat(f, g):
    fs, fa, arrows = _raw(f)
    gs, ga, _ = _raw(g)
    return nat_count(list(f.base.objects), arrows, fs, fa, gs, ga)


def _small_cat(rng):
    return random_category(rng, 3, 8)


# -- representables --------------------------------------------------------------

def test_representables_on_a_path():
    cat = free_category("path", ["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")])
    hc = yoneda_h(cat, "c")
    assert hc.size_profile() == (1, 1, 1)
    ka = yoneda_k(cat, "a")
    assert ka.size_profile() == (1, 1, 1)
    hb = yoneda_h(cat, "b")
    assert [len(hb.at(x)) for x in ("a", "b", "c")] == [1, 1, 0]
    # h(c) acts by precomposition: restricting g along f gives g∘f
    assert hc.act("f", "g") == cat.comp("g", "f")


@given(seeds, variances)
def test_representables_satisfy_functor_laws(seed, variance):
    rng = random.Random(seed)
    cat = random_category(rng, 4, 12)
    for x in cat.objects:
        assert not yoneda(cat, x, variance).violations()


@given(seeds, variances)
def test_yoneda_count_matches_oracle(seed, variance):
    rng = random.Random(seed)
    cat = _small_cat(rng)
    a = random_presheaf(rng, cat, 2, variance)
    for x in cat.objects:
        rep = yoneda(cat, x, variance)
        assert _oracle_nat(rep, a) == len(a.at(x))
        check = yoneda_check(cat, x, a)
        assert check.ok and check.count == len(a.at(x))


@given(seeds, variances)
def test_nat_count_matches_brute_force(seed, variance):
    rng = random.Random(seed)
    cat = _small_cat(rng)
    f = random_presheaf(rng, cat, 2, variance)
    g = random_presheaf(rng, cat, 2, variance)
    assert count_nat_trans(f, g) == _oracle_nat(f, g)


def test_nat_count_on_a_monoid_is_equivariant_maps():
    m = cyclic_monoid(2)
    # The regular action of Z/2 has exactly two self-maps commuting with it.
    reg = yoneda_h(m, m.objects[0])
    assert count_nat_trans(reg, reg) == 2
    assert count_nat_trans(reg, point_presheaf(m)) == 1
    assert count_nat_trans(point_presheaf(m), reg) == 0


def test_mismatched_bases_are_rejected():
    a = point_presheaf(codiscrete(1))
    b = point_presheaf(codiscrete(2))
    with pytest.raises(StructuralError):
        count_nat_trans(a, b)


def test_identity_is_natural_and_iso():
    cat = free_category("arrow", ["a", "b"], [("f", "a", "b")])
    nt = identity_nat(yoneda_h(cat, "b"))
    assert nt.is_natural() and nt.is_iso()


@given(seeds)
def test_relabeling_preserves_isomorphism_class(seed):
    from catlim.fixtures import relabeled_copy

    rng = random.Random(seed)
    cat = _small_cat(rng)
    a = random_presheaf(rng, cat, 3, rng.choice([CONTRAVARIANT, COVARIANT]))
    b = relabeled_copy(a, rng)
    iso = find_natural_iso(a, b)
    assert iso is not None and iso.is_natural() and iso.is_iso()


# -- formal limits ---------------------------------------------------------------

@given(seeds)
def test_ind_lim_is_pointwise_colimit_of_homs(seed):
    rng = random.Random(seed)
    cat = random_category(rng, 4, 10)
    shape = build_shape(rng.choice(["discrete(2)", "parallel_pair", "span", "cospan"]))
    alpha = random_diagram_in(rng, shape, cat)
    if alpha is None:
        return
    p = ind_lim(alpha)
    for z in cat.objects:
        sets = {j: list(cat.hom(z, alpha.ob(j))) for j in shape.objects}
        arrows = [(shape.src(m), shape.dst(m),
                   {g: cat.comp(alpha.mor(m), g) for g in sets[shape.src(m)]})
                  for m in shape.non_identities()]
        assert len(p.at(z)) == len(components_colimit(sets, arrows))


@given(seeds)
def test_pro_lim_is_pointwise_colimit_of_corepresentables(seed):
    rng = random.Random(seed)
    cat = random_category(rng, 4, 10)
    shape = build_shape(rng.choice(["discrete(2)", "parallel_pair", "span", "cospan"]))
    beta = random_diagram_in(rng, shape, cat)
    if beta is None:
        return
    p = pro_lim(beta)
    assert p.variance == COVARIANT
    for z in cat.objects:
        sets = {j: list(cat.hom(beta.ob(j), z)) for j in shape.objects}
        # m: i -> j acts Hom(beta j, z) -> Hom(beta i, z) by precomposition
        arrows = [(shape.dst(m), shape.src(m),
                   {g: cat.comp(g, beta.mor(m)) for g in sets[shape.dst(m)]})
                  for m in shape.non_identities()]
        assert len(p.at(z)) == len(components_colimit(sets, arrows))


@given(seeds)
def test_definition_lim_is_matching_families_of_homs(seed):
    rng = random.Random(seed)
    cat = random_category(rng, 4, 10)
    shape = build_shape(rng.choice(["discrete(2)", "parallel_pair", "cospan"]))
    beta = random_diagram_in(rng, shape, cat)
    if beta is None:
        return
    p = definition_lim(beta).presheaf
    for x in cat.objects:
        sets = {j: list(cat.hom(x, beta.ob(j))) for j in shape.objects}
        arrows = [(shape.src(m), shape.dst(m),
                   {g: cat.comp(beta.mor(m), g) for g in sets[shape.src(m)]})
                  for m in shape.non_identities()]
        assert len(p.at(x)) == len(tuples_limit(sets, arrows))


def test_one_object_formal_limits_are_representables():
    cat = free_category("arrow", ["a", "b"], [("f", "a", "b")])
    d = diagram(build_shape("discrete(1)"), cat, {"I1": "a"})
    assert isomorphic(ind_lim(d), yoneda_h(cat, "a"))
    assert isomorphic(pro_lim(d), yoneda_k(cat, "a"))


def test_formal_coproduct_need_not_be_representable():
    cat = free_category("two", ["a", "b"], [])
    d = diagram(build_shape("discrete(2)"), cat, {"I1": "a", "I2": "b"})
    assert not is_representable(ind_lim(d))
    assert colimit_in_category(d) is None


# -- genuine limits ---------------------------------------------------------------

@given(seeds)
def test_products_in_posets_are_meets(seed):
    rng = random.Random(seed)
    cat = random_poset(rng, 5)
    a, b = rng.choice(cat.objects), rng.choice(cat.objects)
    d = diagram(build_shape("discrete(2)"), cat, {"I1": a, "I2": b})
    found = limit_in_category(d)
    meet = poset_meet(cat, [a, b])
    if meet is None:
        assert found is None
    else:
        assert found is not None and found.apex == meet


def test_pullback_in_a_small_poset():
    cat = poset_category("square", ["bot", "l", "r", "top"],
                         [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")])
    d = diagram(build_shape("cospan"), cat, {"I1": "l", "I2": "r", "I3": "top"})
    found = limit_in_category(d)
    assert found.apex == "bot"
    assert set(found.legs) == {"I1", "I2", "I3"}


def test_representation_universal_element():
    cat = free_category("arrow", ["a", "b"], [("f", "a", "b")])
    rep = representability_search(yoneda_h(cat, "b"))
    assert rep.object == "b"
    assert rep.universal_element() == cat.id("b")
    assert not is_representable(empty_presheaf(cat))


# -- elements and extension -----------------------------------------------------

@given(seeds, variances)
def test_category_of_elements_counts(seed, variance):
    rng = random.Random(seed)
    cat = _small_cat(rng)
    a = random_presheaf(rng, cat, 2, variance)
    el = category_of_elements(a)
    assert len(el.category.objects) == sum(len(a.at(x)) for x in cat.objects)
    assert not el.projection.violations()
    # every base arrow lifts once per element at its acting end
    expected = sum(len(a.at(cat.dst(f) if variance == CONTRAVARIANT else cat.src(f)))
                   for f in cat.morphisms)
    assert len(el.category.morphisms) == expected


def test_elements_of_a_representable_have_a_terminal_object():
    cat = free_category("path", ["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")])
    el = category_of_elements(yoneda_h(cat, "b")).category
    top = "b:" + cat.id("b")
    assert all(len(el.hom(o, top)) == 1 for o in el.objects)


@given(seeds)
def test_yoneda_extension_at_representable_is_evaluation(seed):
    rng = random.Random(seed)
    cat = _small_cat(rng)
    f = random_presheaf(rng, cat, 3, COVARIANT)
    for x in cat.objects:
        assert len(yoneda_extension(f, yoneda_h(cat, x)).apex) == len(f.at(x))
        assert len(dual_extension(f, yoneda_k(cat, x)).apex) == len(f.at(x))


@given(seeds)
def test_dual_extension_counts_transformations(seed):
    rng = random.Random(seed)
    cat = _small_cat(rng)
    f = random_presheaf(rng, cat, 2, COVARIANT)
    b = random_presheaf(rng, cat, 2, COVARIANT)
    assert len(dual_extension(f, b).apex) == _oracle_nat(b, f)


def test_extension_rejects_wrong_variance():
    cat = codiscrete(1)
    with pytest.raises(StructuralError):
        yoneda_extension(point_presheaf(cat, COVARIANT), point_presheaf(cat, COVARIANT))
