"""Law-suite manifests: which law to run on which instances.

A manifest is a JSON list of entries ``{"law": id, "instance": source}``.
The source is either ``{"inline": {...}}``, a single hand-written instance,
or ``{"generated": {"seed": s, "count": n, ...}}``, a seeded batch.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import CapacityError, DocumentError
from .fincat import FinCategory, Functor, build_shape, diagram
from .finset import (
    CONTRAVARIANT, COVARIANT, INDUCTIVE, PROJECTIVE, FinFunction, default_probes,
    lim_as_nat_trans, lim_matching_families, limit, verify_universal_property,
)
from .generators import (
    enumerate_presheaves, random_category, random_diagram_in, random_lattice, random_poset,
    random_presheaf, random_set_diagram,
)
from .laws import (
    FAILS, HOLDS, NOT_APPLICABLE, LawReport, check_adjoint_preserves_lim, check_hom_lim,
    check_indlim_hom, check_otherside_hom, check_prolim_hom, check_representable_colim,
    check_yoneda, check_yoneda_extension, join_adjunction,
)
from .presheaf import CategoricalLimit, SetPresheaf

DIAGRAM_SHAPES = ("discrete(0)", "discrete(1)", "discrete(2)", "discrete(3)", "parallel_pair", "cospan")
CATEGORY_SHAPES = ("discrete(1)", "discrete(2)", "parallel_pair", "cospan", "span")


@dataclass
class EntryResult:
    index: int
    law: str
    source: str
    reports: list[LawReport] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        out = {HOLDS: 0, FAILS: 0, NOT_APPLICABLE: 0}
        for r in self.reports:
            out[r.verdict] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    def to_dict(self, max_failures: int = 5) -> dict:
        fails = [r.to_dict() for r in self.reports if r.verdict == FAILS][:max_failures]
        return {"index": self.index, "law": self.law, "source": self.source, "counts": self.counts(),
                "failures": fails}


# -- small builders shared by inline instances ---------------------------------------------------

def _cat(inst: dict) -> FinCategory:
    from .documents import category_from_doc

    if "category" not in inst:
        raise DocumentError("instance lacks field 'category'")
    return category_from_doc(inst["category"])


def _diagram_in(inst: dict, cat: FinCategory, key: str = "diagram") -> Functor:
    desc = inst.get(key)
    if not isinstance(desc, dict) or "shape" not in desc or "nodes" not in desc:
        raise DocumentError(f"instance field {key!r} must give shape and nodes")
    d = diagram(build_shape(desc["shape"]), cat, desc["nodes"], desc.get("edges", {}), name=desc["shape"])
    d.check()
    return d


def _presheaf(inst: dict, key: str, cat: FinCategory, variance: str) -> SetPresheaf:
    from .documents import presheaf_from_doc

    if key not in inst:
        raise DocumentError(f"instance lacks field {key!r}")
    p = presheaf_from_doc(dict(inst[key], variance=variance), cat, key.upper())
    p.check()
    return p


def _claimed(inst: dict, kind: str) -> CategoricalLimit | None:
    c = inst.get("claimed")
    if c is None:
        return None
    return CategoricalLimit(kind, c["apex"], dict(c["legs"]))


def _kind(inst: dict) -> str:
    kind = inst.get("kind", PROJECTIVE)
    if kind not in (PROJECTIVE, INDUCTIVE):
        raise DocumentError(f"kind must be projective or inductive, got {kind!r}")
    return kind


# -- per-law inline runners ---------------------------------------------------------------------

def _inline_yoneda(inst):
    cat = _cat(inst)
    a = _presheaf(inst, "presheaf", cat, inst.get("variance", CONTRAVARIANT))
    objs = [inst["object"]] if "object" in inst else list(cat.objects)
    return [check_yoneda(cat, x, a) for x in objs]


def _inline_hom_lim(inst):
    cat = _cat(inst)
    d = _diagram_in(inst, cat)
    kind = _kind(inst)
    probes = [inst["probe"]] if "probe" in inst else list(cat.objects)
    return [check_hom_lim(d, x, kind, _claimed(inst, kind)) for x in probes]


def _inline_indlim_hom(inst):
    cat = _cat(inst)
    return [check_indlim_hom(_diagram_in(inst, cat), _presheaf(inst, "presheaf", cat, CONTRAVARIANT))]


def _inline_prolim_hom(inst):
    cat = _cat(inst)
    return [check_prolim_hom(_diagram_in(inst, cat), _presheaf(inst, "presheaf", cat, COVARIANT))]


def _inline_otherside_hom(inst):
    cat = _cat(inst)
    d = _diagram_in(inst, cat)
    variance = inst.get("variance", CONTRAVARIANT)
    probes = [inst["probe"]] if "probe" in inst else list(cat.objects)
    return [check_otherside_hom(d, x, variance) for x in probes]


def _inline_adjoint(inst):
    cat = _cat(inst)
    w = join_adjunction(cat, inst["element"])
    if w is None:
        return [LawReport("adjoint_preserves_lim", f"join with {inst['element']}", NOT_APPLICABLE,
                          witness={"reason": "some join does not exist"})]
    kind = _kind(inst)
    d = _diagram_in(inst, w.left.target if kind == PROJECTIVE else cat)
    return [check_adjoint_preserves_lim(w, d, kind)]


def _inline_representable(inst):
    cat = _cat(inst)
    d = _diagram_in(inst, cat)
    f = _presheaf(inst, "functor", cat, COVARIANT)
    return [check_representable_colim(d, f, _claimed(inst, INDUCTIVE))]


def _inline_yoneda_extension(inst):
    cat = _cat(inst)
    f = _presheaf(inst, "functor", cat, COVARIANT)
    objs = [inst["object"]] if "object" in inst else list(cat.objects)
    return [check_yoneda_extension(f, x) for x in objs]


def _inline_universal(inst):
    from .documents import diagram_from_doc

    d = diagram_from_doc(inst["diagram"])
    kind = _kind(inst)
    res = limit(d, kind)
    mut = inst.get("mutate_leg")
    if mut is not None:
        res = mutate_leg(res, mut["leg"], mut["element"], mut["to"])
    return [_universal_report(res, d, f"{kind} of inline diagram")]


def _inline_dual(inst):
    from .documents import diagram_from_doc

    return [_dual_report(diagram_from_doc(inst["diagram"]), "inline diagram")]


# -- seeded batches ----------------------------------------------------------------------------

def _order_category(rng: random.Random, max_objects: int) -> FinCategory:
    if rng.random() < 0.5:
        return random_lattice(rng, 3 if max_objects >= 8 else 2)
    return random_poset(rng, max_objects)


def _gen_yoneda(rng, p):
    per_cat = p.get("presheaf_limit", 1500)
    max_size = p.get("max_size", 3)
    done = 0
    while done < p.get("count", 100):
        cat = random_category(rng, p.get("max_objects", 5), p.get("max_morphisms", 12))
        try:
            presheaves = list(enumerate_presheaves(cat, max_size, CONTRAVARIANT, limit=per_cat))
        except CapacityError:
            continue
        done += 1
        for a in presheaves:
            for x in cat.objects:
                yield check_yoneda(cat, x, a)


def _dual_report(d, inst: str) -> LawReport:
    lhs = lim_matching_families(d)
    rhs = lim_as_nat_trans(d)
    a, b = set(lhs.apex.elements), set(rhs.apex.elements)
    if a == b:
        return LawReport("dual_definition", inst, HOLDS, witness={"size": len(a)})
    diff = sorted(a ^ b)
    return LawReport("dual_definition", inst, FAILS, counterexample={
        "kind": "element_mismatch", "element": diff[0], "lhs_size": len(a), "rhs_size": len(b)})


def _gen_dual(rng, p):
    for i in range(p.get("count", 500)):
        shape = rng.choice(DIAGRAM_SHAPES)
        variance = rng.choice([COVARIANT, CONTRAVARIANT])
        yield _dual_report(random_set_diagram(rng, shape, p.get("max_size", 3), variance),
                           f"#{i} {variance} {shape}")


def _universal_report(res, d, inst: str) -> LawReport:
    chk = verify_universal_property(res, d, default_probes(2))
    if chk.holds:
        return LawReport("universal_property", inst, HOLDS, witness={"apex_size": len(res.apex)})
    return LawReport("universal_property", inst, FAILS, counterexample=chk.counterexample)


def mutate_leg(res, leg: str, element: str, to: str):
    """Copy of ``res`` with one entry of one leg redirected."""
    from dataclasses import replace as _replace

    fn = res.legs[leg]
    table = dict(fn.table)
    table[element] = to
    legs = dict(res.legs)
    legs[leg] = FinFunction(fn.source, fn.target, table)
    return _replace(res, legs=legs)


def _gen_universal(rng, p):
    for i in range(p.get("count", 100)):
        shape = rng.choice(DIAGRAM_SHAPES)
        d = random_set_diagram(rng, shape, p.get("max_size", 2), rng.choice([COVARIANT, CONTRAVARIANT]))
        for kind in (PROJECTIVE, INDUCTIVE):
            yield _universal_report(limit(d, kind), d, f"#{i} {kind} {shape}")


def _random_diagram(rng, cat, shapes=CATEGORY_SHAPES):
    while True:
        shape = build_shape(rng.choice(shapes))
        d = random_diagram_in(rng, shape, cat)
        if d is not None:
            d.name = shape.name
            return d


def _gen_hom_lim(rng, p):
    for _ in range(p.get("count", 40)):
        cat = _order_category(rng, p.get("max_objects", 6))
        d = _random_diagram(rng, cat)
        for kind in (PROJECTIVE, INDUCTIVE):
            for x in cat.objects:
                yield check_hom_lim(d, x, kind)


def _gen_indlim(rng, p):
    for _ in range(p.get("count", 40)):
        cat = _order_category(rng, p.get("max_objects", 4))
        yield check_indlim_hom(_random_diagram(rng, cat), random_presheaf(rng, cat, p.get("max_size", 2)))


def _gen_prolim(rng, p):
    for _ in range(p.get("count", 40)):
        cat = _order_category(rng, p.get("max_objects", 4))
        yield check_prolim_hom(_random_diagram(rng, cat),
                               random_presheaf(rng, cat, p.get("max_size", 2), COVARIANT))


def _gen_otherside(rng, p):
    for _ in range(p.get("count", 40)):
        cat = _order_category(rng, p.get("max_objects", 4))
        d = _random_diagram(rng, cat)
        variance = rng.choice([CONTRAVARIANT, COVARIANT])
        for x in cat.objects:
            yield check_otherside_hom(d, x, variance)


def _gen_adjoint(rng, p):
    done = 0
    while done < p.get("count", 40):
        cat = random_lattice(rng, 3)
        w = join_adjunction(cat, rng.choice(cat.objects))
        if w is None:
            continue
        done += 1
        for kind in (PROJECTIVE, INDUCTIVE):
            where = w.left.target if kind == PROJECTIVE else cat
            yield check_adjoint_preserves_lim(w, _random_diagram(rng, where), kind)


def _gen_representable(rng, p):
    for _ in range(p.get("count", 40)):
        cat = _order_category(rng, p.get("max_objects", 6))
        f = random_presheaf(rng, cat, p.get("max_size", 2), COVARIANT)
        yield check_representable_colim(_random_diagram(rng, cat), f)


def _gen_yoneda_extension(rng, p):
    for _ in range(p.get("count", 30)):
        cat = random_category(rng, p.get("max_objects", 4), p.get("max_morphisms", 10))
        f = random_presheaf(rng, cat, p.get("max_size", 3), COVARIANT)
        for x in cat.objects:
            yield check_yoneda_extension(f, x)


LAWS: dict[str, tuple[Callable, Callable]] = {
    "yoneda": (_inline_yoneda, _gen_yoneda),
    "dual_definition": (_inline_dual, _gen_dual),
    "universal_property": (_inline_universal, _gen_universal),
    "hom_lim": (_inline_hom_lim, _gen_hom_lim),
    "indlim_hom": (_inline_indlim_hom, _gen_indlim),
    "prolim_hom": (_inline_prolim_hom, _gen_prolim),
    "otherside_hom": (_inline_otherside_hom, _gen_otherside),
    "adjoint_preserves_lim": (_inline_adjoint, _gen_adjoint),
    "representable_colim": (_inline_representable, _gen_representable),
    "yoneda_extension": (_inline_yoneda_extension, _gen_yoneda_extension),
}


def iter_reports(entry: dict) -> Iterator[LawReport]:
    if not isinstance(entry, dict) or "law" not in entry or "instance" not in entry:
        raise DocumentError("manifest entries need 'law' and 'instance'")
    law = entry["law"]
    if law not in LAWS:
        raise DocumentError(f"unknown law {law!r}; known: {', '.join(sorted(LAWS))}")
    inline, generated = LAWS[law]
    src = entry["instance"]
    if isinstance(src, dict) and "inline" in src:
        try:
            yield from inline(src["inline"])
        except KeyError as exc:
            raise DocumentError(f"{law}: inline instance lacks {exc}") from None
    elif isinstance(src, dict) and "generated" in src:
        params = dict(src["generated"])
        yield from generated(random.Random(params.get("seed", 0)), params)
    else:
        raise DocumentError(f"{law}: instance must be inline or generated")


def run_manifest(entries: list) -> list[EntryResult]:
    if not isinstance(entries, list):
        raise DocumentError("a manifest is a list of entries")
    out = []
    for i, entry in enumerate(entries):
        src = "inline" if "inline" in entry.get("instance", {}) else "generated"
        out.append(EntryResult(i, entry.get("law", "?"), src, list(iter_reports(entry))))
    return out
