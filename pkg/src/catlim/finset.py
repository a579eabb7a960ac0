"""Finite sets, functions between them, and (co)limits of finite-set diagrams.

Limits are computed as filtered cartesian products: an element of the apex
is a matching family, encoded canonically as ``"(I1:x, I2:y)"`` in shape
object order.  Colimits are disjoint unions glued with union-find; a class
is named ``"[I1:x]"`` after its smallest member.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .config import DEFAULT_CAPS, Caps
from .errors import CapacityError, LawError, StructuralError
from .fincat import FinCategory, build_shape, opposite

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"
PROJECTIVE = "projective"
INDUCTIVE = "inductive"


@dataclass(frozen=True)
class FinSet:
    id: str
    elements: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise StructuralError(f"set {self.id!r} has repeated elements")

    @cached_property
    def members(self) -> frozenset[str]:
        return frozenset(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.members


def finset(id: str, elements: Iterable) -> FinSet:
    """Set with elements stringified and sorted."""
    return FinSet(id, tuple(sorted({str(e) for e in elements})))


POINT = FinSet("pt", ("pt",))


@dataclass(frozen=True)
class FinFunction:
    source: FinSet
    target: FinSet
    table: Mapping[str, str]

    def __post_init__(self):
        table = self.table
        if len(table) != len(self.source) or any(x not in table for x in self.source.elements):
            missing = [x for x in self.source.elements if x not in table]
            raise StructuralError(
                f"function {self.source.id} -> {self.target.id} undefined on {missing[:3]}")
        tgt = self.target.members
        for x, y in table.items():
            if y not in tgt:
                raise StructuralError(f"{x} -> {y} lands outside {self.target.id}")

    def __call__(self, x: str) -> str:
        return self.table[x]

    def then(self, g: "FinFunction") -> "FinFunction":
        """``g ∘ self``."""
        return FinFunction(self.source, g.target, {x: g.table[y] for x, y in self.table.items()})

    def same_graph(self, other: "FinFunction") -> bool:
        return dict(self.table) == dict(other.table)


def identity_function(s: FinSet) -> FinFunction:
    return FinFunction(s, s, {x: x for x in s.elements})


def constant_function(s: FinSet, t: FinSet, y: str) -> FinFunction:
    return FinFunction(s, t, {x: y for x in s.elements})


# -- diagrams ----------------------------------------------------------------

@dataclass
class SetDiagram:
    """Functor from ``shape`` (covariant) or ``shape^op`` (contravariant) to finite sets.

    For a contravariant diagram the function for ``m: i -> j`` goes from the
    set at ``j`` to the set at ``i``.  Identity functions may be omitted.
    """

    shape: FinCategory
    objects: dict[str, FinSet]
    morphisms: dict[str, FinFunction] = field(default_factory=dict)
    variance: str = COVARIANT

    def __post_init__(self):
        if self.variance not in (COVARIANT, CONTRAVARIANT):
            raise StructuralError(f"unknown variance {self.variance!r}")
        self.objects = dict(self.objects)
        self.morphisms = dict(self.morphisms)
        for x in self.shape.objects:
            i = self.shape.identities[x]
            if i not in self.morphisms and x in self.objects:
                self.morphisms[i] = identity_function(self.objects[x])

    def arrow(self, m: str) -> tuple[str, str]:
        """(source object, target object) of the set function assigned to ``m``."""
        s, d = self.shape.src(m), self.shape.dst(m)
        return (s, d) if self.variance == COVARIANT else (d, s)

    def violations(self) -> list[str]:
        out = []
        for x in self.shape.objects:
            if x not in self.objects:
                out.append(f"no set for shape object {x}")
        if out:
            return out
        for m in self.shape.morphisms:
            fn = self.morphisms.get(m)
            if fn is None:
                out.append(f"no function for {m}")
                continue
            s, t = self.arrow(m)
            if fn.source.elements != self.objects[s].elements or \
                    fn.target.elements != self.objects[t].elements:
                out.append(f"function for {m} has wrong endpoints")
        if out:
            return out
        for x in self.shape.objects:
            if any(k != v for k, v in self.morphisms[self.shape.id(x)].table.items()):
                out.append(f"identity of {x} not sent to an identity")
        for (g, f), h in self.shape.compose.items():
            fg, ff, fh = self.morphisms[g], self.morphisms[f], self.morphisms[h]
            composite = ff.then(fg) if self.variance == COVARIANT else fg.then(ff)
            if not composite.same_graph(fh):
                out.append(f"composition {g}∘{f} not preserved")
        return out

    def check(self) -> "SetDiagram":
        bad = self.violations()
        if bad:
            raise LawError("diagram violates functor laws: " + "; ".join(bad[:5]))
        return self

    def covariant(self) -> "SetDiagram":
        """The same diagram seen as covariant on the (possibly opposite) shape."""
        if self.variance == COVARIANT:
            return self
        return SetDiagram(opposite(self.shape), self.objects, self.morphisms, COVARIANT)


@dataclass
class LimitResult:
    """Apex of a (co)limit with its legs.

    ``legs[j]`` projects apex -> D(j) for a projective limit and injects
    D(j) -> apex for an inductive one.
    """

    kind: str
    apex: FinSet
    legs: dict[str, FinFunction]
    diagram: SetDiagram | None = None

    def __len__(self):
        return len(self.apex)


def encode_family(pairs: Sequence[tuple[str, str]]) -> str:
    return "(" + ", ".join(f"{j}:{x}" for j, x in pairs) + ")"


def encode_member(j: str, x: str) -> str:
    return f"{j}:{x}"


# -- limits ------------------------------------------------------------------

def lim_matching_families(diagram: SetDiagram, apex_id: str = "lim") -> LimitResult:
    """Projective limit as the set of all matching families.

    The cartesian product of the diagram's sets is walked coordinate by
    coordinate; a partial family is dropped as soon as one diagram arrow
    between two filled coordinates disagrees.
    """
    diagram.check()
    cov = diagram.covariant()
    objs = cov.shape.objects
    return _limit_from_families(diagram, objs, list(_families(cov)), apex_id)


def _families(cov: SetDiagram):
    shape = cov.shape
    arrows = [(shape.src(m), shape.dst(m), cov.morphisms[m].table) for m in shape.non_identities()]
    order = _fill_order(shape.objects, arrows)
    pos = {j: i for i, j in enumerate(order)}
    checks: dict[str, list] = {j: [] for j in order}
    for s, d, table in arrows:
        checks[order[max(pos[s], pos[d])]].append((s, d, table))
    n = len(order)
    elems = [cov.objects[j].elements for j in order]
    idx = [0] * n
    val: dict[str, str] = {}
    k = 0
    while k >= 0:
        if k == n:
            yield tuple(val[j] for j in shape.objects)
            k -= 1
            continue
        j = order[k]
        found = False
        while idx[k] < len(elems[k]):
            val[j] = elems[k][idx[k]]
            idx[k] += 1
            if all(t[val[s]] == val[d] for s, d, t in checks[j]):
                found = True
                break
        if found:
            k += 1
        else:
            idx[k] = 0
            val.pop(j, None)
            k -= 1


def _fill_order(objects, arrows) -> list[str]:
    """Greedy order: next is the object most connected to those already placed."""
    nbrs: dict[str, set] = {j: set() for j in objects}
    for s, d, _ in arrows:
        if s != d:
            nbrs[s].add(d)
            nbrs[d].add(s)
    score = {j: 0 for j in objects}
    rest = list(objects)
    placed: list[str] = []
    while rest:
        best = rest[0]
        for j in rest:
            if score[j] > score[best]:
                best = j
        placed.append(best)
        rest.remove(best)
        for j in nbrs[best]:
            score[j] += 1
    return placed


def _limit_from_families(diagram, objs, families, apex_id) -> LimitResult:
    codes = [encode_family(list(zip(objs, combo))) for combo in families]
    order = sorted(range(len(codes)), key=codes.__getitem__)
    apex = FinSet(apex_id, tuple(codes[i] for i in order))
    legs = {}
    for pos, j in enumerate(objs):
        legs[j] = FinFunction(apex, diagram.objects[j],
                              {codes[i]: families[i][pos] for i in order})
    return LimitResult(PROJECTIVE, apex, legs, diagram)


def lim_as_nat_trans(diagram: SetDiagram, apex_id: str = "lim") -> LimitResult:
    """Projective limit as the natural transformations from the point functor.

    Enumerated with the generic natural-transformation search over the shape;
    shares no filtering code with :func:`lim_matching_families`.
    """
    from .presheaf import SetPresheaf, iter_nat_trans, point_presheaf

    diagram.check()
    target = SetPresheaf(diagram.shape, diagram.variance, diagram.objects, diagram.morphisms)
    pt = point_presheaf(diagram.shape, diagram.variance)
    objs = diagram.shape.objects
    families = [tuple(comp[j]["pt"] for j in objs) for comp in iter_nat_trans(pt, target)]
    return _limit_from_families(diagram, objs, families, apex_id)


class UnionFind:
    """Disjoint sets keyed by hashable items; the representative is the minimum."""

    def __init__(self, items: Iterable = ()):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            lo, hi = (rx, ry) if rx < ry else (ry, rx)
            self.parent[hi] = lo

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


def colim(diagram: SetDiagram, apex_id: str = "colim") -> LimitResult:
    """Inductive limit: disjoint union modulo the generated equivalence."""
    diagram.check()
    cov = diagram.covariant()
    shape = cov.shape
    members = [encode_member(j, x) for j in shape.objects for x in cov.objects[j].elements]
    uf = UnionFind(members)
    for m in shape.non_identities():
        s, d = shape.src(m), shape.dst(m)
        for x, y in cov.morphisms[m].table.items():
            uf.union(encode_member(s, x), encode_member(d, y))
    names = {rep: f"[{rep}]" for rep in uf.classes()}
    apex = FinSet(apex_id, tuple(sorted(names.values())))
    legs = {j: FinFunction(cov.objects[j], apex,
                           {x: names[uf.find(encode_member(j, x))] for x in cov.objects[j].elements})
            for j in shape.objects}
    return LimitResult(INDUCTIVE, apex, legs, diagram)


def limit(diagram: SetDiagram, kind: str, apex_id: str | None = None) -> LimitResult:
    if kind == PROJECTIVE:
        return lim_matching_families(diagram, apex_id or "lim")
    if kind == INDUCTIVE:
        return colim(diagram, apex_id or "colim")
    raise ValueError(f"unknown limit kind {kind!r}")


# -- mediating morphisms -----------------------------------------------------

def mediating_morphism(result: LimitResult, probe: FinSet,
                       maps: Mapping[str, FinFunction]) -> FinFunction:
    """The unique morphism between ``probe`` and the apex through the given (co)cone.

    For a limit ``maps[j]: probe -> D(j)``; for a colimit ``maps[j]: D(j) -> probe``.
    Raises LawError if the maps do not form a (co)cone.
    """
    diagram = result.diagram
    if result.kind == PROJECTIVE:
        by_legs = {tuple(result.legs[j](e) for j in diagram.shape.objects): e
                   for e in result.apex.elements}
        table = {}
        for w in probe.elements:
            key = tuple(maps[j](w) for j in diagram.shape.objects)
            if key not in by_legs:
                raise LawError(f"maps do not form a cone at {w}")
            table[w] = by_legs[key]
        return FinFunction(probe, result.apex, table)
    table: dict[str, str] = {}
    for j in diagram.shape.objects:
        for x in diagram.objects[j].elements:
            c, y = result.legs[j](x), maps[j](x)
            if table.setdefault(c, y) != y:
                raise LawError(f"maps do not form a cocone at class {c}")
    if len(table) != len(result.apex):
        raise LawError("colimit legs are not jointly surjective")
    return FinFunction(result.apex, probe, table)


# -- specialised constructions -------------------------------------------------

def _two(shape_text: str, x: FinSet, y: FinSet, fs=()) -> SetDiagram:
    shape = build_shape(shape_text)
    return SetDiagram(shape, {"I1": x, "I2": y}, dict(fs))


def product(x: FinSet, y: FinSet) -> LimitResult:
    """X × Y with pairs encoded directly."""
    apex = FinSet("product", tuple(sorted(f"<{a},{b}>" for a in x.elements for b in y.elements)))
    legs = {"I1": FinFunction(apex, x, {f"<{a},{b}>": a for a in x.elements for b in y.elements}),
            "I2": FinFunction(apex, y, {f"<{a},{b}>": b for a in x.elements for b in y.elements})}
    return LimitResult(PROJECTIVE, apex, legs, _two("discrete(2)", x, y))


def pullback(f: FinFunction, g: FinFunction) -> LimitResult:
    """X ×_Z Y over the cospan X -f-> Z <-g- Y."""
    if f.target.elements != g.target.elements:
        raise StructuralError("pullback needs a common codomain")
    x, y, z = f.source, g.source, f.target
    pairs = [(a, b) for a in x.elements for b in y.elements if f(a) == g(b)]
    code = {p: f"<{p[0]},{p[1]}>" for p in pairs}
    apex = FinSet("pullback", tuple(sorted(code.values())))
    legs = {"I1": FinFunction(apex, x, {code[p]: p[0] for p in pairs}),
            "I2": FinFunction(apex, y, {code[p]: p[1] for p in pairs}),
            "I3": FinFunction(apex, z, {code[p]: f(p[0]) for p in pairs})}
    d = SetDiagram(build_shape("cospan"), {"I1": x, "I2": y, "I3": z}, {"m1": f, "m2": g})
    return LimitResult(PROJECTIVE, apex, legs, d)


def equalizer(f: FinFunction, g: FinFunction) -> LimitResult:
    """Subset of X where f and g agree, encoded by the X elements themselves."""
    _parallel(f, g)
    keep = tuple(a for a in f.source.elements if f(a) == g(a))
    apex = FinSet("equalizer", keep)
    legs = {"I1": FinFunction(apex, f.source, {a: a for a in keep}),
            "I2": FinFunction(apex, f.target, {a: f(a) for a in keep})}
    d = _two("parallel_pair", f.source, f.target, {"m1": f, "m2": g})
    return LimitResult(PROJECTIVE, apex, legs, d)


def coproduct(x: FinSet, y: FinSet) -> LimitResult:
    """X + Y with tagged elements."""
    apex = FinSet("coproduct", tuple(sorted([f"inl:{a}" for a in x.elements]
                                            + [f"inr:{b}" for b in y.elements])))
    legs = {"I1": FinFunction(x, apex, {a: f"inl:{a}" for a in x.elements}),
            "I2": FinFunction(y, apex, {b: f"inr:{b}" for b in y.elements})}
    return LimitResult(INDUCTIVE, apex, legs, _two("discrete(2)", x, y))


def coequalizer(f: FinFunction, g: FinFunction) -> LimitResult:
    """Y / ~ for the relation generated by f(x) ~ g(x)."""
    _parallel(f, g)
    y = f.target
    uf = UnionFind(y.elements)
    for a in f.source.elements:
        uf.union(f(a), g(a))
    names = {rep: "{" + ",".join(sorted(cls)) + "}" for rep, cls in uf.classes().items()}
    apex = FinSet("coequalizer", tuple(sorted(names.values())))
    to_cls = {b: names[uf.find(b)] for b in y.elements}
    legs = {"I1": FinFunction(f.source, apex, {a: to_cls[f(a)] for a in f.source.elements}),
            "I2": FinFunction(y, apex, to_cls)}
    d = _two("parallel_pair", f.source, y, {"m1": f, "m2": g})
    return LimitResult(INDUCTIVE, apex, legs, d)


def _parallel(f: FinFunction, g: FinFunction):
    if f.source.elements != g.source.elements or f.target.elements != g.target.elements:
        raise StructuralError("f and g must be parallel")


# -- search primitives -------------------------------------------------------

def enumerate_functions(x: FinSet, y: FinSet, caps: Caps | None = None) -> list[FinFunction]:
    """All functions X -> Y in lexicographic order of their value tuples."""
    caps = caps or DEFAULT_CAPS
    count = len(y) ** len(x)
    if count > caps.max_functions:
        raise CapacityError(f"|Y|^|X| = {count} exceeds cap {caps.max_functions}")
    return [FinFunction(x, y, dict(zip(x.elements, values)))
            for values in itertools.product(y.elements, repeat=len(x))]


def iso_sets(x: FinSet, y: FinSet) -> FinFunction | None:
    """A bijection X -> Y (order-preserving on ids) when the sizes agree."""
    if len(x) != len(y):
        return None
    return FinFunction(x, y, dict(zip(x.elements, y.elements)))


def result_isomorphism(r1: LimitResult, r2: LimitResult) -> FinFunction | None:
    """The bijection between two apexes that commutes with all legs, if any."""
    if r1.kind != r2.kind or set(r1.legs) != set(r2.legs) or len(r1.apex) != len(r2.apex):
        return None
    objs = sorted(r1.legs)
    if r1.kind == PROJECTIVE:
        key2 = {tuple(r2.legs[j](e) for j in objs): e for e in r2.apex.elements}
        table = {}
        for e in r1.apex.elements:
            k = tuple(r1.legs[j](e) for j in objs)
            if k not in key2:
                return None
            table[e] = key2[k]
    else:
        table = {}
        for j in objs:
            for x in r1.legs[j].source.elements:
                c1, c2 = r1.legs[j](x), r2.legs[j](x)
                if table.setdefault(c1, c2) != c2:
                    return None
    if len(table) != len(r1.apex) or len(set(table.values())) != len(r2.apex):
        return None
    return FinFunction(r1.apex, r2.apex, table)


# -- universal property --------------------------------------------------------

@dataclass
class UniversalPropertyCheck:
    holds: bool
    counterexample: dict | None = None

    def __bool__(self):
        return self.holds


def verify_universal_property(result: LimitResult, diagram: SetDiagram,
                              probes: Iterable[FinSet],
                              caps: Caps | None = None) -> UniversalPropertyCheck:
    """Brute-force check that ``result`` is a limit (colimit) of ``diagram``.

    Every cone (cocone) with each probe as apex is enumerated from scratch and
    must factor through the computed apex in exactly one way.
    """
    cov = diagram.covariant()
    shape = cov.shape
    objs = shape.objects
    arrows = [(m, shape.src(m), shape.dst(m)) for m in shape.non_identities()]
    projective = result.kind == PROJECTIVE

    # the legs themselves must be a (co)cone
    for m, s, d in arrows:
        fm = cov.morphisms[m]
        if projective:
            for e in result.apex.elements:
                if fm(result.legs[s](e)) != result.legs[d](e):
                    return UniversalPropertyCheck(False, {"reason": "legs not a cone",
                                                          "morphism": m, "element": e})
        else:
            for x in cov.objects[s].elements:
                if result.legs[d](fm(x)) != result.legs[s](x):
                    return UniversalPropertyCheck(False, {"reason": "legs not a cocone",
                                                          "morphism": m, "element": x})

    for w in probes:
        if projective:
            per_obj = [enumerate_functions(w, cov.objects[j], caps) for j in objs]
        else:
            per_obj = [enumerate_functions(cov.objects[j], w, caps) for j in objs]
        mediators = (enumerate_functions(w, result.apex, caps) if projective
                     else enumerate_functions(result.apex, w, caps))
        for combo in itertools.product(*per_obj):
            cone = dict(zip(objs, combo))
            ok = True
            for m, s, d in arrows:
                fm = cov.morphisms[m]
                if projective:
                    ok = all(fm(cone[s](p)) == cone[d](p) for p in w.elements)
                else:
                    ok = all(cone[d](fm(x)) == cone[s](x) for x in cov.objects[s].elements)
                if not ok:
                    break
            if not ok:
                continue
            count = 0
            for u in mediators:
                if projective:
                    good = all(result.legs[j](u(p)) == cone[j](p) for j in objs for p in w.elements)
                else:
                    good = all(u(result.legs[j](x)) == cone[j](x)
                               for j in objs for x in cov.objects[j].elements)
                count += good
                if count > 1:
                    break
            if count != 1:
                return UniversalPropertyCheck(False, {
                    "reason": "no mediator" if count == 0 else "mediator not unique",
                    "probe": w.id,
                    "cone": {j: dict(cone[j].table) for j in objs},
                })
    return UniversalPropertyCheck(True)


def default_probes(max_size: int = 2) -> list[FinSet]:
    return [FinSet(f"W{n}", tuple(f"w{i}" for i in range(n))) for n in range(max_size + 1)]
