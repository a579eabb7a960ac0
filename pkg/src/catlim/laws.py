"""Brute-force checkers for the hom/limit commutation laws, adjunctions,
preservation and reflection of (co)limits, and the Yoneda extension.

Each checker returns a :class:`LawReport`.  The verdict is ``holds``,
``fails`` (always with a concrete counterexample) or ``not_applicable``
(a hypothesis such as representability is not met).  Checkers that compare
two sets build the canonical comparison map and test it for bijectivity,
rather than comparing sizes alone.

:func:`recheck_counterexample` re-derives a failure with its own plain
enumeration loops; it shares no search code with the checkers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .errors import LawError
from .fincat import (
    FinCategory, Functor, full_subcategory, inclusion_functor, poset_join, thin_functor,
)
from .finset import (
    CONTRAVARIANT, COVARIANT, INDUCTIVE, PROJECTIVE, FinFunction, FinSet, SetDiagram, colim,
    encode_family, iso_sets, lim_matching_families, mediating_morphism,
)
from .presheaf import (
    CategoricalLimit, NatTrans, PresheafDiagram, PresheafLimit, SetPresheaf, colimit_in_category,
    definition_lim, enumerate_nat_trans, ind_lim, lift_h, lift_k, limit_in_category,
    presheaf_limit, representability_search, yoneda, yoneda_check, yoneda_extension,
)

HOLDS, FAILS, NOT_APPLICABLE = "holds", "fails", "not_applicable"


@dataclass
class LawReport:
    law: str
    instance: str
    verdict: str
    witness: dict | None = None
    counterexample: dict | None = None
    data: Any = field(default=None, repr=False, compare=False)

    @property
    def ok(self) -> bool:
        return self.verdict != FAILS

    def to_dict(self) -> dict:
        out = {"law": self.law, "instance": self.instance, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _na(law, instance, reason, data=None) -> LawReport:
    return LawReport(law, instance, NOT_APPLICABLE, witness={"reason": reason}, data=data)


def _bijection(law: str, instance: str, domain: Iterable[str], codomain: Iterable[str],
               fn: Callable[[str], str], data=None) -> LawReport:
    """Report whether ``fn`` is a bijection ``domain -> codomain``."""
    domain, codomain = list(domain), list(codomain)
    cod = set(codomain)
    table, seen = {}, {}
    for a in domain:
        b = fn(a)
        if b not in cod:
            return LawReport(law, instance, FAILS, counterexample={
                "kind": "not_in_codomain", "element": a, "image": b}, data=data)
        if b in seen:
            return LawReport(law, instance, FAILS, counterexample={
                "kind": "not_injective", "elements": [seen[b], a], "image": b}, data=data)
        seen[b] = a
        table[a] = b
    missing = [b for b in codomain if b not in seen]
    if missing:
        return LawReport(law, instance, FAILS, counterexample={
            "kind": "not_surjective", "missing": missing[0],
            "lhs_size": len(domain), "rhs_size": len(codomain)}, data=data)
    return LawReport(law, instance, HOLDS, witness={"bijection": table}, data=data)


def _size_mismatch(law, instance, lhs, rhs, data) -> LawReport | None:
    if len(lhs) != len(rhs):
        return LawReport(law, instance, FAILS, counterexample={
            "kind": "size_mismatch", "lhs_size": len(lhs), "rhs_size": len(rhs)}, data=data)
    return None


def describe(d: Functor) -> str:
    nodes = ", ".join(f"{j}->{d.ob(j)}" for j in d.source.objects)
    return f"{d.source.name}[{nodes}] in {d.target.name}"


# -- cones and cocones in a finite category ------------------------------------------

def _commutes(d: Functor, legs: dict, kind: str) -> str | None:
    cat, shape = d.target, d.source
    for m in shape.non_identities():
        s, t = shape.src(m), shape.dst(m)
        if kind == PROJECTIVE:
            if cat.compose.get((d.mor(m), legs[s])) != legs[t]:
                return m
        elif cat.compose.get((legs[t], d.mor(m))) != legs[s]:
            return m
    return None


def _cones(d: Functor, vertex: str, kind: str):
    cat, objs = d.target, d.source.objects
    homs = [cat.hom(vertex, d.ob(j)) if kind == PROJECTIVE else cat.hom(d.ob(j), vertex)
            for j in objs]
    for combo in itertools.product(*homs):
        legs = dict(zip(objs, combo))
        if _commutes(d, legs, kind) is None:
            yield legs


def universal_failure(d: Functor, apex: str, legs: dict, kind: str) -> dict | None:
    """Why ``(apex, legs)`` is not a limit (colimit) cone of ``d``; None if it is."""
    cat = d.target
    bad = _commutes(d, legs, kind)
    if bad is not None:
        return {"kind": "not_a_cone", "morphism": bad, "apex": apex, "legs": dict(legs)}
    objs = d.source.objects
    for w in cat.objects:
        cands = cat.hom(w, apex) if kind == PROJECTIVE else cat.hom(apex, w)
        for cone in _cones(d, w, kind):
            meds = [u for u in cands
                    if all((cat.comp(legs[j], u) if kind == PROJECTIVE else cat.comp(u, legs[j]))
                           == cone[j] for j in objs)]
            if len(meds) != 1:
                return {"kind": "no_mediator" if not meds else "many_mediators", "vertex": w,
                        "cone": cone, "mediators": meds, "apex": apex, "legs": dict(legs)}
    return None


def is_limit_cone(d: Functor, apex: str, legs: dict) -> bool:
    return universal_failure(d, apex, legs, PROJECTIVE) is None


def is_colimit_cocone(d: Functor, apex: str, legs: dict) -> bool:
    return universal_failure(d, apex, legs, INDUCTIVE) is None


def find_limit(d: Functor, kind: str) -> CategoricalLimit | None:
    return limit_in_category(d) if kind == PROJECTIVE else colimit_in_category(d)


# -- hom-sets versus limits in C ---------------------------------------------------------

def _hom_diagram(d: Functor, probe: str, probe_first: bool) -> SetDiagram:
    """``j ↦ Hom(probe, d j)`` (covariant in j) or ``j ↦ Hom(d j, probe)`` (contravariant)."""
    cat, shape = d.target, d.source
    if probe_first:
        sets = {j: FinSet(f"Hom({probe},{d.ob(j)})", cat.hom(probe, d.ob(j))) for j in shape.objects}
        fns = {m: FinFunction(sets[shape.src(m)], sets[shape.dst(m)],
                              {g: cat.comp(d.mor(m), g) for g in sets[shape.src(m)].elements})
               for m in shape.non_identities()}
        return SetDiagram(shape, sets, fns, COVARIANT)
    sets = {j: FinSet(f"Hom({d.ob(j)},{probe})", cat.hom(d.ob(j), probe)) for j in shape.objects}
    fns = {m: FinFunction(sets[shape.dst(m)], sets[shape.src(m)],
                          {g: cat.comp(g, d.mor(m)) for g in sets[shape.dst(m)].elements})
           for m in shape.non_identities()}
    return SetDiagram(shape, sets, fns, CONTRAVARIANT)


def check_hom_lim(d: Functor, probe: str, kind: str,
                  claimed: CategoricalLimit | None = None) -> LawReport:
    """``Hom(colim d, X) ≅ lim Hom(d, X)`` (inductive) or ``Hom(X, lim d) ≅ lim Hom(X, d)``."""
    law = "hom_lim"
    inst = f"{kind} {describe(d)}, probe {probe}"
    found = claimed or find_limit(d, kind)
    data = {"diagram": d, "probe": probe, "kind": kind, "limit": found}
    if found is None:
        return _na(law, inst, "the (co)limit is not representable in the category", data)
    cat, objs = d.target, d.source.objects
    if kind == INDUCTIVE:
        lhs = cat.hom(found.apex, probe)
        rhs = lim_matching_families(_hom_diagram(d, probe, probe_first=False))

        def canon(u):
            return encode_family([(j, cat.comp(u, found.legs[j])) for j in objs])
    else:
        lhs = cat.hom(probe, found.apex)
        rhs = lim_matching_families(_hom_diagram(d, probe, probe_first=True))

        def canon(u):
            return encode_family([(j, cat.comp(found.legs[j], u)) for j in objs])
    rep = _bijection(law, inst, lhs, rhs.apex.elements, canon, data)
    if rep.witness is not None:
        rep.witness = {"apex": found.apex, **rep.witness}
    return rep


def demonstrate_order_matters(d: Functor, probe: str) -> LawReport:
    """Test the swapped statement ``Hom(X, colim d) ≅ colim Hom(X, d)``.

    It is false in general; a ``fails`` verdict documents that the side
    on which the probe sits matters.
    """
    law = "hom_colim_wrong_side"
    inst = f"{describe(d)}, probe {probe}"
    found = colimit_in_category(d)
    if found is None:
        return _na(law, inst, "no colimit in the category")
    lhs = d.target.hom(probe, found.apex)
    rhs = colim(_hom_diagram(d, probe, probe_first=True))
    if len(lhs) != len(rhs.apex):
        return LawReport(law, inst, FAILS, counterexample={
            "kind": "size_mismatch", "lhs_size": len(lhs), "rhs_size": len(rhs.apex),
            "apex": found.apex})
    return LawReport(law, inst, HOLDS, witness={"size": len(lhs)})


def find_order_counterexample(rng, tries: int = 500) -> LawReport | None:
    """Search random posets for an instance where the wrong-side statement fails."""
    from .fincat import build_shape
    from .generators import random_diagram_in, random_poset

    for _ in range(tries):
        cat = random_poset(rng, 6)
        d = random_diagram_in(rng, build_shape(rng.choice(["discrete(2)", "cospan", "span"])), cat)
        if d is None:
            continue
        for x in cat.objects:
            rep = demonstrate_order_matters(d, x)
            if rep.verdict == FAILS:
                return rep
    return None


# -- hom-sets out of / into formal colimits of presheaves ------------------------------------

def nat_code(nt: NatTrans) -> str:
    parts = []
    for x in sorted(nt.components):
        tbl = nt.components[x].table
        parts.append(x + "[" + ",".join(f"{a}>{tbl[a]}" for a in sorted(tbl)) + "]")
    return "|".join(parts)


def _as_presheaf_diagram(diag, variance: str) -> tuple[PresheafDiagram, FinCategory]:
    if isinstance(diag, PresheafDiagram):
        return diag, (diag.base() if diag.objects else None)
    lifted = lift_h(diag) if variance == CONTRAVARIANT else lift_k(diag)
    return lifted, diag.target


def _nat_sets(delta: PresheafDiagram, fn):
    nats = {j: {nat_code(nt): nt for nt in fn(p)} for j, p in delta.objects.items()}
    sets = {j: FinSet(f"Nat[{j}]", tuple(sorted(n))) for j, n in nats.items()}
    return nats, sets


def _colim_out(law: str, inst: str, delta: PresheafDiagram, target: SetPresheaf,
               base: FinCategory, claimed: PresheafLimit | None) -> LawReport:
    """``Nat(colim δ, A) ≅ lim_j Nat(δ_j, A)`` on underlying functors."""
    pl = claimed or presheaf_limit(delta, INDUCTIVE, base=base, variance=target.variance)
    data = {"delta": delta, "target": target, "colimit": pl, "side": "out"}
    lhs = {nat_code(nt): nt for nt in enumerate_nat_trans(pl.presheaf, target)}
    nats, sets = _nat_sets(delta, lambda p: enumerate_nat_trans(p, target))
    shape = delta.shape
    fns = {}
    for m in shape.non_identities():
        nm = delta.morphisms[m]
        # precomposition with δ(m) sends Nat(codomain, A) to Nat(domain, A)
        ja = shape.dst(m) if delta.variance == COVARIANT else shape.src(m)
        jb = shape.src(m) if delta.variance == COVARIANT else shape.dst(m)
        fns[m] = FinFunction(sets[ja], sets[jb],
                             {c: nat_code(nm.then(nats[ja][c])) for c in sets[ja].elements})
    var = CONTRAVARIANT if delta.variance == COVARIANT else COVARIANT
    rhs = lim_matching_families(SetDiagram(shape, sets, fns, var))
    bad = _size_mismatch(law, inst, lhs, rhs.apex, data)
    if bad:
        return bad

    def canon(code):
        theta = lhs[code]
        return encode_family([(j, nat_code(pl.legs[j].then(theta))) for j in shape.objects])

    rep = _bijection(law, inst, sorted(lhs), rhs.apex.elements, canon, data)
    if rep.witness is not None:
        rep.witness = {"size": len(lhs)}
    return rep


def check_indlim_hom(alpha, a: SetPresheaf, claimed: PresheafLimit | None = None) -> LawReport:
    """``Nat("colim" α, A) ≅ lim Nat(α, A)`` in C^ (α given in C or as presheaves)."""
    delta, base = _as_presheaf_diagram(alpha, CONTRAVARIANT)
    inst = f"{describe(alpha) if isinstance(alpha, Functor) else delta.shape.name} against {a.name}"
    return _colim_out("indlim_hom", inst, delta, a, base or a.base, claimed)


def check_prolim_hom(beta, b: SetPresheaf, claimed: PresheafLimit | None = None) -> LawReport:
    """``Hom(B, "lim" β) ≅ lim Hom(B, β)`` in C^v.

    A map ``B -> L`` in C^v is an underlying transformation ``L => B`` and
    ``L`` is the pointwise colimit of the underlying functors, so this is the
    same computation as :func:`check_indlim_hom` run on underlying functors.
    """
    delta, base = _as_presheaf_diagram(beta, COVARIANT)
    inst = f"{describe(beta) if isinstance(beta, Functor) else delta.shape.name} against {b.name}"
    return _colim_out("prolim_hom", inst, delta, b, base or b.base, claimed)


def check_otherside_hom(alpha, probe: str, variance: str = CONTRAVARIANT,
                        claimed: PresheafLimit | None = None, base: FinCategory | None = None
                        ) -> LawReport:
    """``Nat(y(X), colim δ) ≅ colim_j Nat(y(X), δ_j)`` with ``y`` the Yoneda image.

    For ``variance="contravariant"`` this is ``Hom(h X, "colim" α)``; for
    ``"covariant"`` it is the C^v statement about maps ``"lim" β -> k X``.
    """
    law = "otherside_hom"
    delta, b0 = _as_presheaf_diagram(alpha, variance)
    base = base or b0
    inst = f"{variance} {describe(alpha) if isinstance(alpha, Functor) else delta.shape.name}, probe {probe}"
    rep_x = yoneda(base, probe, variance)
    pl = claimed or presheaf_limit(delta, INDUCTIVE, base=base, variance=variance)
    data = {"delta": delta, "probe": rep_x, "colimit": pl, "side": "in"}
    lhs = {nat_code(nt): nt for nt in enumerate_nat_trans(rep_x, pl.presheaf)}
    nats, sets = _nat_sets(delta, lambda p: enumerate_nat_trans(rep_x, p))
    shape = delta.shape
    fns = {}
    for m in shape.non_identities():
        nm = delta.morphisms[m]
        ja = shape.src(m) if delta.variance == COVARIANT else shape.dst(m)
        jb = shape.dst(m) if delta.variance == COVARIANT else shape.src(m)
        fns[m] = FinFunction(sets[ja], sets[jb],
                             {c: nat_code(nats[ja][c].then(nm)) for c in sets[ja].elements})
    rhs = colim(SetDiagram(shape, sets, fns, delta.variance))
    bad = _size_mismatch(law, inst, rhs.apex, lhs, data)
    if bad:
        return bad
    lhs_set = FinSet("Nat(y,colim)", tuple(sorted(lhs)))
    try:
        comparison = mediating_morphism(rhs, lhs_set, {
            j: FinFunction(sets[j], lhs_set, {c: nat_code(nats[j][c].then(pl.legs[j]))
                                              for c in sets[j].elements})
            for j in shape.objects})
    except (LawError, KeyError) as exc:
        return LawReport(law, inst, FAILS, counterexample={"kind": "no_comparison_map",
                                                           "reason": str(exc)}, data=data)
    rep = _bijection(law, inst, rhs.apex.elements, lhs_set.elements, comparison, data)
    if rep.witness is not None:
        rep.witness = {"size": len(lhs)}
    return rep


# -- adjunctions ---------------------------------------------------------------------------

@dataclass
class AdjunctionWitness:
    """``phi[(X, Y)]`` maps ``Hom_D(L X, Y)`` to ``Hom_C(X, R Y)``."""

    left: Functor   # C -> D
    right: Functor  # D -> C
    phi: dict[tuple[str, str], dict[str, str]]
    name: str = "L ⊣ R"


def check_adjunction(w: AdjunctionWitness) -> LawReport:
    law = "adjunction"
    c, d = w.left.source, w.left.target
    inst = f"{w.name} between {c.name} and {d.name}"
    for x in c.objects:
        for y in d.objects:
            dom = d.hom(w.left.ob(x), y)
            cod = c.hom(x, w.right.ob(y))
            table = w.phi.get((x, y), {})
            images = [table.get(u) for u in dom]
            if None in images or len(set(images)) != len(images) or set(images) != set(cod):
                return LawReport(law, inst, FAILS, counterexample={
                    "kind": "not_bijective", "X": x, "Y": y, "table": dict(table)}, data=w)
    # naturality in X: phi(u ∘ L f) = phi(u) ∘ f for f: X' -> X
    for f, mf in c.morphisms.items():
        x2, x = mf.src, mf.dst
        for y in d.objects:
            for u in d.hom(w.left.ob(x), y):
                lhs = w.phi[(x2, y)][d.comp(u, w.left.mor(f))]
                rhs = c.comp(w.phi[(x, y)][u], f)
                if lhs != rhs:
                    return LawReport(law, inst, FAILS, counterexample={
                        "kind": "square", "variable": "X", "morphism": f, "element": u,
                        "X": x, "Y": y, "lhs": lhs, "rhs": rhs}, data=w)
    # naturality in Y: phi(g ∘ u) = R g ∘ phi(u) for g: Y -> Y'
    for g, mg in d.morphisms.items():
        y, y2 = mg.src, mg.dst
        for x in c.objects:
            for u in d.hom(w.left.ob(x), y):
                lhs = w.phi[(x, y2)][d.comp(g, u)]
                rhs = c.comp(w.right.mor(g), w.phi[(x, y)][u])
                if lhs != rhs:
                    return LawReport(law, inst, FAILS, counterexample={
                        "kind": "square", "variable": "Y", "morphism": g, "element": u,
                        "X": x, "Y": y, "lhs": lhs, "rhs": rhs}, data=w)
    return LawReport(law, inst, HOLDS, witness={"pairs": len(w.phi)}, data=w)


def identity_adjunction(cat: FinCategory) -> AdjunctionWitness:
    from .fincat import identity_functor

    ident = identity_functor(cat)
    phi = {(x, y): {u: u for u in cat.hom(x, y)} for x in cat.objects for y in cat.objects}
    return AdjunctionWitness(ident, ident, phi, name="Id ⊣ Id")


def join_adjunction(poset: FinCategory, a: str) -> AdjunctionWitness | None:
    """``(- ∨ a) ⊣ inclusion`` between a poset and its up-set of ``a``.

    Returns None when some join ``x ∨ a`` does not exist.
    """
    up = full_subcategory(poset, [y for y in poset.objects if poset.hom(a, y)], name=f"up({a})")
    joins = {}
    for x in poset.objects:
        j = poset_join(poset, [x, a])
        if j is None:
            return None
        joins[x] = j
    left = thin_functor(poset, up, joins, name=f"-∨{a}")
    right = inclusion_functor(up, poset)
    phi = {}
    for x in poset.objects:
        for y in up.objects:
            dom, cod = up.hom(joins[x], y), poset.hom(x, y)
            phi[(x, y)] = {dom[0]: cod[0]} if dom and cod else {}
    return AdjunctionWitness(left, right, phi, name=f"(-∨{a}) ⊣ incl")


def check_adjoint_preserves_lim(w: AdjunctionWitness, d: Functor, kind: str = PROJECTIVE) -> LawReport:
    """A right adjoint preserves limits; a left adjoint preserves colimits.

    For ``kind="projective"`` ``d`` is a diagram in the codomain of the left
    adjoint and ``R`` is applied; for ``"inductive"`` ``d`` lives in the
    domain of ``L`` and ``L`` is applied.
    """
    law = "adjoint_preserves_lim"
    functor = w.right if kind == PROJECTIVE else w.left
    inst = f"{functor.name} on {kind} {describe(d)}"
    if check_adjunction(w).verdict != HOLDS:
        return _na(law, inst, "witness is not an adjunction")
    found = find_limit(d, kind)
    if found is None:
        return _na(law, inst, "the (co)limit does not exist in the source category")
    return _preserved(law, inst, functor, d, found, kind)


def _preserved(law, inst, functor: Functor, d: Functor, found: CategoricalLimit, kind) -> LawReport:
    image = d.then(functor)
    apex = functor.ob(found.apex)
    legs = {j: functor.mor(f) for j, f in found.legs.items()}
    data = {"diagram": image, "apex": apex, "legs": legs, "kind": kind}
    fail = universal_failure(image, apex, legs, kind)
    if fail is not None:
        return LawReport(law, inst, FAILS, counterexample=fail, data=data)
    other = find_limit(image, kind)
    witness = {"source_apex": found.apex, "image_apex": apex,
               "searched_apex": other.apex if other else None}
    return LawReport(law, inst, HOLDS, witness=witness, data=data)


def check_preservation(functor: Functor, d: Functor, kind: str = INDUCTIVE) -> LawReport:
    law = "preservation"
    inst = f"{functor.name} on {kind} {describe(d)}"
    found = find_limit(d, kind)
    if found is None:
        return _na(law, inst, "the (co)limit does not exist in the source category")
    return _preserved(law, inst, functor, d, found, kind)


def check_reflection(functor: Functor, d: Functor, kind: str = INDUCTIVE) -> LawReport:
    """Every (co)cone whose image is universal must itself be universal."""
    law = "reflection"
    inst = f"{functor.name} on {kind} {describe(d)}"
    image = d.then(functor)
    for x in d.target.objects:
        for legs in _cones(d, x, kind):
            img_legs = {j: functor.mor(f) for j, f in legs.items()}
            if universal_failure(image, functor.ob(x), img_legs, kind) is not None:
                continue
            fail = universal_failure(d, x, legs, kind)
            if fail is not None:
                return LawReport(law, inst, FAILS, counterexample={
                    "kind": "not_reflected", "vertex": x, "legs": legs, "source_failure": fail},
                    data={"diagram": d, "apex": x, "legs": legs, "kind": kind})
    return LawReport(law, inst, HOLDS)


def check_yoneda_preserves_limits(d: Functor) -> LawReport:
    """``h(lim d) ≅ lim h∘d`` through the canonical comparison transformation."""
    law = "yoneda_preserves_limits"
    inst = describe(d)
    found = limit_in_category(d)
    if found is None:
        return _na(law, inst, "no limit in the category")
    cat, objs = d.target, d.source.objects
    target = definition_lim(d).presheaf
    hp = yoneda(cat, found.apex, CONTRAVARIANT)
    comps = {}
    for z in cat.objects:
        table = {u: encode_family([(j, cat.comp(found.legs[j], u)) for j in objs])
                 for u in hp.at(z).elements}
        rep = _bijection(law, inst, hp.at(z).elements, target.at(z).elements, table.__getitem__)
        if rep.verdict == FAILS:
            rep.counterexample["object"] = z
            return rep
        comps[z] = FinFunction(hp.at(z), target.at(z), table)
    bad = NatTrans(hp, target, comps).violations()
    if bad:
        return LawReport(law, inst, FAILS, counterexample={"kind": "not_natural", "detail": bad[0]})
    return LawReport(law, inst, HOLDS, witness={"apex": found.apex})


# -- representable formal colimits and the Yoneda extension ----------------------------------

def _functor_diagram(f: SetPresheaf, d: Functor) -> SetDiagram:
    shape = d.source
    return SetDiagram(shape, {j: f.at(d.ob(j)) for j in shape.objects},
                      {m: f.morphisms[d.mor(m)] for m in shape.morphisms}, COVARIANT)


def check_representable_colim(alpha: Functor, f: SetPresheaf,
                              claimed: CategoricalLimit | None = None) -> LawReport:
    """If ``"colim" α ≅ h(X)`` then ``colim F∘α ≅ F(X)`` for a set-valued ``F``."""
    law = "representable_colim"
    inst = f"{describe(alpha)} under {f.name}"
    cat = alpha.target
    if claimed is None:
        pl = presheaf_limit(lift_h(alpha), INDUCTIVE, base=cat, variance=CONTRAVARIANT)
        rep = representability_search(pl.presheaf)
        if rep is None:
            return _na(law, inst, "the formal colimit is not representable")
        legs = {}
        inverse = {z: {v: k for k, v in rep.iso.components[z].table.items()} for z in cat.objects}
        for j in alpha.source.objects:
            aj = alpha.ob(j)
            cls = pl.legs[j].components[aj](cat.id(aj))
            legs[j] = inverse[aj][cls]
        claimed = CategoricalLimit(INDUCTIVE, rep.object, legs)
    x = claimed.apex
    data = {"diagram": alpha, "functor": f, "limit": claimed}
    res = colim(_functor_diagram(f, alpha))
    fx = f.at(x)
    bad = _size_mismatch(law, inst, res.apex, fx, data)
    if bad:
        bad.counterexample["apex"] = x
        return bad
    try:
        comparison = mediating_morphism(res, fx, {
            j: f.morphisms[claimed.legs[j]] for j in alpha.source.objects})
    except LawError as exc:
        return LawReport(law, inst, FAILS, counterexample={"kind": "no_comparison_map",
                                                           "reason": str(exc)}, data=data)
    out = _bijection(law, inst, res.apex.elements, fx.elements, comparison, data)
    if out.witness is not None:
        out.witness = {"representative": x, "size": len(fx)}
    return out


def check_yoneda_extension(f: SetPresheaf, x: str) -> LawReport:
    """``F̃(h X) ≅ F(X)`` via ``[(Z, g), y] ↦ F(g)(y)``."""
    law = "yoneda_extension"
    cat = f.base
    inst = f"{f.name} at h({x})"
    hx = yoneda(cat, x, CONTRAVARIANT)
    res = yoneda_extension(f, hx)
    fx = f.at(x)
    data = {"functor": f, "object": x}
    bad = _size_mismatch(law, inst, res.apex, fx, data)
    if bad:
        return bad
    maps = {}
    for el_obj in res.legs:
        z, g = el_obj.split(":", 1)
        maps[el_obj] = FinFunction(f.at(z), fx, {y: f.act(g, y) for y in f.at(z).elements})
    comparison = mediating_morphism(res, fx, maps)
    out = _bijection(law, inst, res.apex.elements, fx.elements, comparison, data)
    if out.witness is not None:
        out.witness = {"size": len(fx)}
    return out


def check_extension_commutes(f: SetPresheaf, alpha: Functor) -> LawReport:
    """``F̃("colim" α)`` has the size of ``colim F∘α`` and a bijection between them exists."""
    law = "extension_commutes"
    inst = f"{f.name} on {describe(alpha)}"
    lhs = yoneda_extension(f, ind_lim(alpha)).apex
    rhs = colim(_functor_diagram(f, alpha)).apex
    if iso_sets(lhs, rhs) is None:
        return LawReport(law, inst, FAILS, counterexample={
            "kind": "size_mismatch", "lhs_size": len(lhs), "rhs_size": len(rhs)})
    return LawReport(law, inst, HOLDS, witness={"size": len(lhs)})


def check_yoneda(cat: FinCategory, x: str, a: SetPresheaf) -> LawReport:
    law = "yoneda"
    inst = f"{a.name} at {x} over {cat.name}"
    res = yoneda_check(cat, x, a)
    if res.ok:
        return LawReport(law, inst, HOLDS, witness={"size": res.count})
    return LawReport(law, inst, FAILS, counterexample={
        "kind": "size_mismatch", "lhs_size": res.count, "rhs_size": res.expected},
        data={"category": cat, "object": x, "presheaf": a})


# -- independent re-checking ------------------------------------------------------------------

def _brute_nat(f: SetPresheaf, g: SetPresheaf) -> list[dict[str, dict[str, str]]]:
    """All natural transformations by full enumeration of component tables."""
    objs = f.shape.objects
    per_obj = []
    for x in objs:
        src, tgt = f.objects[x].elements, g.objects[x].elements
        per_obj.append([dict(zip(src, img)) for img in itertools.product(tgt, repeat=len(src))])
    out = []
    for combo in itertools.product(*per_obj):
        comps = dict(zip(objs, combo))
        good = True
        for m, mo in f.shape.morphisms.items():
            s, t = (mo.src, mo.dst) if f.variance == COVARIANT else (mo.dst, mo.src)
            ft, gt = f.morphisms[m].table, g.morphisms[m].table
            if any(comps[t][ft[a]] != gt[comps[s][a]] for a in f.objects[s].elements):
                good = False
                break
        if good:
            out.append(comps)
    return out


def _compose_nat(first: dict, second: dict) -> dict:
    return {x: {a: second[x][b] for a, b in tbl.items()} for x, tbl in first.items()}


def _freeze(comps: dict) -> tuple:
    return tuple((x, tuple(sorted(t.items()))) for x, t in sorted(comps.items()))


def _raw(nt: NatTrans) -> dict:
    return {x: dict(c.table) for x, c in nt.components.items()}


def _brute_lim(sets: dict[str, list], arrows: list) -> set:
    """Compatible families as tuples in sorted key order; ``arrows`` holds (j, j', table)."""
    objs = sorted(sets)
    out = set()
    for combo in itertools.product(*(sets[j] for j in objs)):
        v = dict(zip(objs, combo))
        if all(t[v[s]] == v[d] for s, d, t in arrows):
            out.add(combo)
    return out


def _brute_classes(sets: dict[str, list], arrows: list) -> dict:
    """Map each ``(j, x)`` to a class representative of the generated equivalence."""
    parent = {(j, x): (j, x) for j in sets for x in sets[j]}

    def root(k):
        while parent[k] != k:
            k = parent[k]
        return k

    for s, d, t in arrows:
        for x, y in t.items():
            a, b = root((s, x)), root((d, y))
            if a != b:
                parent[a] = b
    return {k: root(k) for k in parent}


def recheck_counterexample(report: LawReport) -> bool:
    """Confirm a ``fails`` report from scratch; True means the failure is real."""
    if report.verdict != FAILS or report.data is None:
        return False
    cx = report.counterexample or {}
    data = report.data
    if isinstance(data, AdjunctionWitness):
        return _recheck_adjunction(data, cx)
    if report.law == "hom_lim":
        return _recheck_hom_lim(data)
    if report.law in ("indlim_hom", "prolim_hom", "otherside_hom"):
        return _recheck_nat_law(data)
    if report.law in ("preservation", "adjoint_preserves_lim", "reflection"):
        return _recheck_cone(data)
    if report.law == "representable_colim":
        return _recheck_representable(data)
    if report.law == "yoneda":
        a, x, cat = data["presheaf"], data["object"], data["category"]
        return len(_brute_nat(yoneda(cat, x, a.variance), a)) != len(a.objects[x].elements)
    return False


def _recheck_adjunction(w: AdjunctionWitness, cx: dict) -> bool:
    c, d = w.left.source, w.left.target
    if cx.get("kind") == "not_bijective":
        x, y = cx["X"], cx["Y"]
        dom = [m for m, mo in d.morphisms.items() if mo.src == w.left.object_map[x] and mo.dst == y]
        cod = [m for m, mo in c.morphisms.items() if mo.src == x and mo.dst == w.right.object_map[y]]
        table = w.phi.get((x, y), {})
        images = sorted(str(table.get(u)) for u in dom)
        return images != sorted(cod)
    if cx.get("kind") == "square":
        u, x, y, m = cx["element"], cx["X"], cx["Y"], cx["morphism"]
        if cx["variable"] == "X":
            mo = c.morphisms[m]
            lhs = w.phi[(mo.src, y)][d.compose[(u, w.left.morphism_map[m])]]
            rhs = c.compose[(w.phi[(x, y)][u], m)]
        else:
            mo = d.morphisms[m]
            lhs = w.phi[(x, mo.dst)][d.compose[(m, u)]]
            rhs = c.compose[(w.right.morphism_map[m], w.phi[(x, y)][u])]
        return lhs != rhs
    return False


def _recheck_hom_lim(data) -> bool:
    d, probe, kind, found = data["diagram"], data["probe"], data["kind"], data["limit"]
    cat = d.target
    objs = list(d.source.objects)
    mors = cat.morphisms

    def homs(a, b):
        return [m for m, mo in mors.items() if mo.src == a and mo.dst == b]

    if kind == INDUCTIVE:
        lhs = homs(found.apex, probe)
        fams = itertools.product(*(homs(d.object_map[j], probe) for j in objs))
        image = [tuple(cat.compose[(u, found.legs[j])] for j in objs) for u in lhs]

        def compatible(v):
            return all(cat.compose[(v[d.source.dst(m)], d.morphism_map[m])] == v[d.source.src(m)]
                       for m in d.source.morphisms)
    else:
        lhs = homs(probe, found.apex)
        fams = itertools.product(*(homs(probe, d.object_map[j]) for j in objs))
        image = [tuple(cat.compose[(found.legs[j], u)] for j in objs) for u in lhs]

        def compatible(v):
            return all(cat.compose[(d.morphism_map[m], v[d.source.src(m)])] == v[d.source.dst(m)]
                       for m in d.source.morphisms)
    rhs = {tuple(combo) for combo in fams if compatible(dict(zip(objs, combo)))}
    return len(set(image)) != len(image) or set(image) != rhs


def _recheck_nat_law(data) -> bool:
    delta: PresheafDiagram = data["delta"]
    pl: PresheafLimit = data["colimit"]
    shape = delta.shape
    objs = sorted(shape.objects)
    legs = {j: _raw(pl.legs[j]) for j in objs}
    for j in objs:
        # a leg must start at the j-th presheaf of the diagram itself
        if any(set(legs[j][x]) != set(delta.objects[j].objects[x].elements) for x in legs[j]):
            return True
    if data["side"] == "out":
        target = data["target"]
        lhs = _brute_nat(pl.presheaf, target)
        nats = {j: _brute_nat(delta.objects[j], target) for j in objs}
        keys = {j: [_freeze(c) for c in nats[j]] for j in objs}
        arrows = []
        for m in shape.non_identities():
            nm = _raw(delta.morphisms[m])
            ja, jb = (shape.dst(m), shape.src(m)) if delta.variance == COVARIANT else (shape.src(m), shape.dst(m))
            arrows.append((ja, jb, {_freeze(c): _freeze(_compose_nat(nm, c)) for c in nats[ja]}))
        rhs = _brute_lim(keys, arrows)
        images = [tuple(_freeze(_compose_nat(legs[j], th)) for j in objs) for th in lhs]
        return len(set(images)) != len(images) or set(images) != rhs
    probe = data["probe"]
    lhs = {_freeze(c) for c in _brute_nat(probe, pl.presheaf)}
    nats = {j: _brute_nat(probe, delta.objects[j]) for j in objs}
    keys = {j: [_freeze(c) for c in nats[j]] for j in objs}
    arrows = []
    for m in shape.non_identities():
        nm = _raw(delta.morphisms[m])
        ja, jb = (shape.src(m), shape.dst(m)) if delta.variance == COVARIANT else (shape.dst(m), shape.src(m))
        arrows.append((ja, jb, {_freeze(c): _freeze(_compose_nat(c, nm)) for c in nats[ja]}))
    classes = _brute_classes(keys, arrows)
    image_of_class: dict = {}
    for j in objs:
        for c in nats[j]:
            img = _freeze(_compose_nat(c, legs[j]))
            if image_of_class.setdefault(classes[(j, _freeze(c))], img) != img:
                return True
    images = list(image_of_class.values())
    return len(set(images)) != len(images) or set(images) != lhs


def _recheck_cone(data) -> bool:
    d, apex, legs, kind = data["diagram"], data["apex"], data["legs"], data["kind"]
    cat = d.target
    objs = list(d.source.objects)
    comp = cat.compose

    def commutes(v):
        for m, mo in d.source.morphisms.items():
            if kind == PROJECTIVE:
                if comp.get((d.morphism_map[m], v[mo.src])) != v[mo.dst]:
                    return False
            elif comp.get((v[mo.dst], d.morphism_map[m])) != v[mo.src]:
                return False
        return True

    if not commutes(legs):
        return True
    for w in cat.objects:
        def hom(a, b):
            return [m for m, mo in cat.morphisms.items() if mo.src == a and mo.dst == b]

        lists = [hom(w, d.object_map[j]) if kind == PROJECTIVE else hom(d.object_map[j], w)
                 for j in objs]
        for combo in itertools.product(*lists):
            v = dict(zip(objs, combo))
            if not commutes(v):
                continue
            cands = hom(w, apex) if kind == PROJECTIVE else hom(apex, w)
            n = sum(all((comp[(legs[j], u)] if kind == PROJECTIVE else comp[(u, legs[j])]) == v[j]
                        for j in objs) for u in cands)
            if n != 1:
                return True
    return False


def _recheck_representable(data) -> bool:
    alpha, f, claimed = data["diagram"], data["functor"], data["limit"]
    shape = alpha.source
    sets = {j: list(f.objects[alpha.object_map[j]].elements) for j in shape.objects}
    arrows = [(shape.src(m), shape.dst(m), dict(f.morphisms[alpha.morphism_map[m]].table))
              for m in shape.morphisms]
    if len(set(_brute_classes(sets, arrows).values())) != len(f.objects[claimed.apex].elements):
        return True
    images = {}
    for j in shape.objects:
        leg = f.morphisms[claimed.legs[j]].table
        for y in sets[j]:
            images[(j, y)] = leg[y]
    # the induced map must be constant on glued pairs and hit everything exactly once per class
    for s, d, t in arrows:
        if any(images[(s, y)] != images[(d, t[y])] for y in sets[s]):
            return True
    return set(images.values()) != set(f.objects[claimed.apex].elements)

