"""Set-valued functors on a finite category, natural transformations, and
the Yoneda machinery built on them.

Variance conventions
--------------------
A ``contravariant`` presheaf ``A`` (a member of C^) assigns to ``f: X -> Y``
a function ``A(Y) -> A(X)``.  A ``covariant`` one (a member of the dual
category C^v = Fun(C, Set)^op) is stored as an ordinary functor
``C -> Set``, so ``B(f): B(X) -> B(Y)``.

Natural transformations are always stored as *underlying* transformations
of functors into Set.  For covariant presheaves this means a morphism
``B -> B'`` of C^v is held as a transformation ``B' => B``.  The same flip
turns limits in C^v into pointwise colimits of the underlying functors; the
functions below that work in C^v say which one they compute.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .config import DEFAULT_CAPS, DERIVED_CAPS, Caps, search_budget
from .errors import BudgetExhausted, CapacityError, LawError, StructuralError, UnsupportedTargetError
from .fincat import FinCategory, Functor, Morphism
from .finset import (
    CONTRAVARIANT, COVARIANT, INDUCTIVE, PROJECTIVE, FinFunction, FinSet, LimitResult,
    SetDiagram, colim, identity_function, lim_matching_families, mediating_morphism,
)


class SetPresheaf(SetDiagram):
    """A functor from ``base`` (or ``base^op``) into finite sets."""

    def __init__(self, base: FinCategory, variance: str, values: Mapping[str, FinSet],
                 actions: Mapping[str, FinFunction] | None = None, name: str = "P"):
        super().__init__(base, dict(values), dict(actions or {}), variance)
        self.name = name

    @property
    def base(self) -> FinCategory:
        return self.shape

    @property
    def values(self) -> dict[str, FinSet]:
        return self.objects

    @property
    def actions(self) -> dict[str, FinFunction]:
        return self.morphisms

    def at(self, x: str) -> FinSet:
        return self.objects[x]

    def act(self, f: str, a: str) -> str:
        return self.morphisms[f].table[a]

    def size_profile(self) -> tuple[int, ...]:
        return tuple(len(self.objects[x]) for x in self.shape.objects)

    def __repr__(self):
        return f"SetPresheaf({self.name!r}, {self.variance}, sizes={self.size_profile()})"


def _require_same_base(f: SetPresheaf, g: SetPresheaf):
    if f.base != g.base:
        raise StructuralError("presheaves live over different categories")
    if f.variance != g.variance:
        raise StructuralError("presheaves have different variance")


@dataclass
class NatTrans:
    """Components ``components[X]: source(X) -> target(X)``."""

    source: SetPresheaf
    target: SetPresheaf
    components: dict[str, FinFunction]

    def __call__(self, x: str, a: str) -> str:
        return self.components[x].table[a]

    def violations(self) -> list[str]:
        src, tgt = self.source, self.target
        out = []
        for x in src.base.objects:
            c = self.components.get(x)
            if c is None:
                out.append(f"missing component at {x}")
        if out:
            return out
        for m in src.base.non_identities():
            s, t = src.arrow(m)
            fm, gm = src.morphisms[m], tgt.morphisms[m]
            for a in src.objects[s].elements:
                if self(t, fm(a)) != gm(self(s, a)):
                    out.append(f"square for {m} fails at {a}")
                    break
        return out

    def is_natural(self) -> bool:
        return not self.violations()

    def is_iso(self) -> bool:
        return all(len(set(c.table.values())) == len(c.target) == len(c.source)
                   for c in self.components.values())

    def then(self, other: "NatTrans") -> "NatTrans":
        """``other ∘ self``."""
        return NatTrans(self.source, other.target,
                        {x: c.then(other.components[x]) for x, c in self.components.items()})

    def key(self) -> tuple:
        """Hashable canonical form."""
        return tuple((x, tuple(sorted(c.table.items()))) for x, c in sorted(self.components.items()))


def identity_nat(p: SetPresheaf) -> NatTrans:
    return NatTrans(p, p, {x: identity_function(p.objects[x]) for x in p.base.objects})


# -- Yoneda images -------------------------------------------------------------

def yoneda_h(cat: FinCategory, x: str) -> SetPresheaf:
    """``Hom(-, x)``, contravariant; actions precompose."""
    if x not in cat.objects:
        raise StructuralError(f"unknown object {x!r}")
    values = {z: FinSet(f"Hom({z},{x})", cat.hom(z, x)) for z in cat.objects}
    actions = {}
    for f, m in cat.morphisms.items():
        # f: Z -> Z' acts Hom(Z', x) -> Hom(Z, x) by g |-> g∘f
        actions[f] = FinFunction(values[m.dst], values[m.src],
                                 {g: cat.comp(g, f) for g in values[m.dst].elements})
    return SetPresheaf(cat, CONTRAVARIANT, values, actions, name=f"h({x})")


def yoneda_k(cat: FinCategory, x: str) -> SetPresheaf:
    """``Hom(x, -)``, covariant; actions postcompose."""
    if x not in cat.objects:
        raise StructuralError(f"unknown object {x!r}")
    values = {z: FinSet(f"Hom({x},{z})", cat.hom(x, z)) for z in cat.objects}
    actions = {}
    for f, m in cat.morphisms.items():
        actions[f] = FinFunction(values[m.src], values[m.dst],
                                 {g: cat.comp(f, g) for g in values[m.src].elements})
    return SetPresheaf(cat, COVARIANT, values, actions, name=f"k({x})")


def yoneda(cat: FinCategory, x: str, variance: str) -> SetPresheaf:
    return yoneda_h(cat, x) if variance == CONTRAVARIANT else yoneda_k(cat, x)


def yoneda_h_mor(cat: FinCategory, f: str) -> NatTrans:
    """``h(f): h(X) -> h(Y)`` for ``f: X -> Y`` (postcomposition)."""
    hx, hy = yoneda_h(cat, cat.src(f)), yoneda_h(cat, cat.dst(f))
    return NatTrans(hx, hy, {z: FinFunction(hx.at(z), hy.at(z), {g: cat.comp(f, g) for g in hx.at(z)})
                             for z in cat.objects})


def yoneda_k_mor(cat: FinCategory, f: str) -> NatTrans:
    """Underlying transformation ``k(Y) => k(X)`` of ``k(f)`` for ``f: X -> Y``."""
    kx, ky = yoneda_k(cat, cat.src(f)), yoneda_k(cat, cat.dst(f))
    return NatTrans(ky, kx, {z: FinFunction(ky.at(z), kx.at(z), {g: cat.comp(g, f) for g in ky.at(z)})
                             for z in cat.objects})


def point_presheaf(base: FinCategory, variance: str = CONTRAVARIANT) -> SetPresheaf:
    pt = FinSet("pt", ("pt",))
    return SetPresheaf(base, variance, {x: pt for x in base.objects},
                       {f: identity_function(pt) for f in base.morphisms}, name="pt")


def empty_presheaf(base: FinCategory, variance: str = CONTRAVARIANT) -> SetPresheaf:
    e = FinSet("empty", ())
    return SetPresheaf(base, variance, {x: e for x in base.objects},
                       {f: identity_function(e) for f in base.morphisms}, name="0")


# -- natural transformation search -------------------------------------------------

class _NatSearch:
    """Element-level backtracking for natural transformations ``F => G``.

    Each variable is a pair ``(X, a)`` with ``a`` in ``F(X)``; its value is
    ``θ_X(a)``.  Naturality gives functional constraints: fixing ``θ_s(a)``
    forces ``θ_t(F(m)(a)) = G(m)(θ_s(a))``, which are propagated eagerly.
    """

    def __init__(self, f: SetPresheaf, g: SetPresheaf, injective: bool, budget: int):
        _require_same_base(f, g)
        self.f, self.g = f, g
        self.injective = injective
        self.budget = budget
        self.nodes = 0
        base = f.base
        self.vars = [(x, a) for x in base.objects for a in f.objects[x].elements]
        self.forward: dict[tuple, list] = {v: [] for v in self.vars}
        for m in base.non_identities():
            s, t = f.arrow(m)
            fm, gm = f.morphisms[m].table, g.morphisms[m].table
            for a in f.objects[s].elements:
                self.forward[(s, a)].append(((t, fm[a]), gm))
        self.order = self._order()
        self.val: dict[tuple, str] = {}
        self.used: dict[str, set] = {x: set() for x in base.objects}

    def _order(self):
        # variables whose value forces many others go first
        reach = {}
        for v in self.vars:
            seen = {v}
            todo = [v]
            while todo:
                u = todo.pop()
                for w, _ in self.forward[u]:
                    if w not in seen:
                        seen.add(w)
                        todo.append(w)
            reach[v] = len(seen)
        return sorted(self.vars, key=lambda v: (-reach[v], v))

    def _assign(self, var, y, trail) -> bool:
        stack = [(var, y)]
        while stack:
            v, y = stack.pop()
            cur = self.val.get(v)
            if cur is not None:
                if cur != y:
                    return False
                continue
            if self.injective:
                if y in self.used[v[0]]:
                    return False
                self.used[v[0]].add(y)
            self.val[v] = y
            trail.append(v)
            for w, table in self.forward[v]:
                stack.append((w, table[y]))
        return True

    def _undo(self, trail):
        for v in trail:
            y = self.val.pop(v)
            if self.injective:
                self.used[v[0]].discard(y)
        trail.clear()

    def _next(self, start):
        for i in range(start, len(self.order)):
            if self.order[i] not in self.val:
                return i
        return None

    def _snapshot(self) -> dict[str, dict[str, str]]:
        out = {x: {} for x in self.f.base.objects}
        for (x, a), y in self.val.items():
            out[x][a] = y
        return out

    def solutions(self) -> Iterator[dict[str, dict[str, str]]]:
        if self.injective and any(len(self.f.objects[x]) != len(self.g.objects[x])
                                  for x in self.f.base.objects):
            return
        first = self._next(0)
        if first is None:
            yield self._snapshot()
            return
        frames = [[first, 0, []]]
        while frames:
            fr = frames[-1]
            self._undo(fr[2])
            pos, i = fr[0], fr[1]
            var = self.order[pos]
            choices = self.g.objects[var[0]].elements
            if i == len(choices):
                frames.pop()
                continue
            fr[1] = i + 1
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExhausted(
                    f"natural transformation search exceeded {self.budget} nodes")
            if not self._assign(var, choices[i], fr[2]):
                continue
            nxt = self._next(pos + 1)
            if nxt is None:
                yield self._snapshot()
            else:
                frames.append([nxt, 0, []])


def iter_nat_trans(f: SetPresheaf, g: SetPresheaf, *, injective: bool = False,
                   caps: Caps | None = None) -> Iterator[dict[str, dict[str, str]]]:
    """Component tables of every natural transformation ``f => g``."""
    return _NatSearch(f, g, injective, search_budget(caps)).solutions()


def _wrap(f: SetPresheaf, g: SetPresheaf, comps: dict[str, dict[str, str]]) -> NatTrans:
    return NatTrans(f, g, {x: FinFunction(f.objects[x], g.objects[x], comps[x]) for x in f.base.objects})


def enumerate_nat_trans(f: SetPresheaf, g: SetPresheaf, caps: Caps | None = None) -> list[NatTrans]:
    """All natural transformations ``f => g`` in deterministic search order."""
    caps = caps or DEFAULT_CAPS
    out = []
    for comps in iter_nat_trans(f, g, caps=caps):
        out.append(_wrap(f, g, comps))
        if len(out) > caps.max_functions:
            raise CapacityError("too many natural transformations to list")
    return out


def count_nat_trans(f: SetPresheaf, g: SetPresheaf, caps: Caps | None = None) -> int:
    return sum(1 for _ in iter_nat_trans(f, g, caps=caps))


def find_natural_iso(f: SetPresheaf, g: SetPresheaf, caps: Caps | None = None) -> NatTrans | None:
    """A natural isomorphism ``f => g``, or None when provably there is none."""
    _require_same_base(f, g)
    if f.size_profile() != g.size_profile():
        return None
    for comps in iter_nat_trans(f, g, injective=True, caps=caps):
        return _wrap(f, g, comps)
    return None


def isomorphic(f: SetPresheaf, g: SetPresheaf, caps: Caps | None = None) -> bool:
    return find_natural_iso(f, g, caps) is not None


# -- Yoneda lemma ------------------------------------------------------------------

@dataclass
class YonedaCheck:
    ok: bool
    bijection: dict = field(default_factory=dict)  # NatTrans.key() -> element of A(X)
    count: int = 0
    expected: int = 0

    def __bool__(self):
        return self.ok


def yoneda_check(cat: FinCategory, x: str, a: SetPresheaf, caps: Caps | None = None) -> YonedaCheck:
    """Check ``Nat(h(x), A) ≅ A(x)`` through ``θ ↦ θ_x(id_x)``.

    For a covariant ``A`` the twin ``Nat(k(x), A) ≅ A(x)`` is checked; this is
    the statement about maps ``A -> k(x)`` in the dual category.
    """
    rep = yoneda(cat, x, a.variance)
    ident = cat.id(x)
    bij = {}
    for comps in iter_nat_trans(rep, a, caps=caps):
        nt = _wrap(rep, a, comps)
        bij[nt.key()] = comps[x][ident]
    images = list(bij.values())
    ok = len(set(images)) == len(images) and set(images) == set(a.at(x).elements)
    return YonedaCheck(ok, bij, len(images), len(a.at(x)))


# -- diagrams of presheaves and their pointwise (co)limits ---------------------------

@dataclass
class PresheafDiagram:
    """Shape-indexed family of presheaves with transformations between them.

    With ``variance == "covariant"`` a shape arrow ``m: i -> j`` carries a
    transformation ``P_i => P_j``; with ``"contravariant"`` one ``P_j => P_i``.
    """

    shape: FinCategory
    objects: dict[str, SetPresheaf]
    morphisms: dict[str, NatTrans]
    variance: str = COVARIANT

    def base(self) -> FinCategory:
        first = next(iter(self.objects.values()), None)
        if first is None:
            raise StructuralError("empty presheaf diagram has no base; pass one explicitly")
        return first.base

    def at(self, z: str) -> SetDiagram:
        """The set diagram obtained by evaluating every presheaf at ``z``."""
        objs = {j: p.at(z) for j, p in self.objects.items()}
        mors = {m: nt.components[z] for m, nt in self.morphisms.items()}
        return SetDiagram(self.shape, objs, mors, self.variance)


@dataclass
class PresheafLimit:
    kind: str
    presheaf: SetPresheaf
    legs: dict[str, NatTrans]
    pointwise: dict[str, LimitResult]


def presheaf_limit(delta: PresheafDiagram, kind: str, *, base: FinCategory | None = None,
                   variance: str | None = None, name: str | None = None) -> PresheafLimit:
    """Pointwise (co)limit of a diagram of presheaves.

    Actions of the result are recovered from the universal property at each
    object (mediating morphisms), so a non-unique or missing mediator is a
    loud error rather than a silent wrong answer.
    """
    base = base or delta.base()
    pv = variance or next(iter(delta.objects.values())).variance
    for p in delta.objects.values():
        if p.base != base or p.variance != pv:
            raise StructuralError("presheaves in a diagram must share base and variance")
    compute = lim_matching_families if kind == PROJECTIVE else colim
    pointwise = {z: compute(delta.at(z), apex_id=f"{kind[:3]}@{z}") for z in base.objects}
    values = {z: r.apex for z, r in pointwise.items()}
    actions = {}
    for f, mo in base.morphisms.items():
        a, b = (mo.src, mo.dst) if pv == COVARIANT else (mo.dst, mo.src)
        ra, rb = pointwise[a], pointwise[b]
        if kind == PROJECTIVE:
            maps = {j: ra.legs[j].then(p.morphisms[f]) for j, p in delta.objects.items()}
            actions[f] = mediating_morphism(rb, ra.apex, maps)
        else:
            maps = {j: p.morphisms[f].then(rb.legs[j]) for j, p in delta.objects.items()}
            actions[f] = mediating_morphism(ra, rb.apex, maps)
    result = SetPresheaf(base, pv, values, actions, name=name or f"{kind[:3]}")
    legs = {}
    for j, p in delta.objects.items():
        comps = {z: pointwise[z].legs[j] for z in base.objects}
        legs[j] = NatTrans(result, p, comps) if kind == PROJECTIVE else NatTrans(p, result, comps)
    return PresheafLimit(kind, result, legs, pointwise)


def presheaf_lim(delta: PresheafDiagram, **kw) -> SetPresheaf:
    return presheaf_limit(delta, PROJECTIVE, **kw).presheaf


def presheaf_colim(delta: PresheafDiagram, **kw) -> SetPresheaf:
    return presheaf_limit(delta, INDUCTIVE, **kw).presheaf


# -- lifting C-valued diagrams -------------------------------------------------------

def lift_h(d: Functor) -> PresheafDiagram:
    """Compose a diagram ``J -> C`` with ``h``; the result is covariant in J."""
    cat = d.target
    objs = {j: yoneda_h(cat, d.ob(j)) for j in d.source.objects}
    mors = {}
    for m in d.source.morphisms:
        nt = yoneda_h_mor(cat, d.mor(m))
        mors[m] = NatTrans(objs[d.source.src(m)], objs[d.source.dst(m)], nt.components)
    return PresheafDiagram(d.source, objs, mors, COVARIANT)


def lift_k(d: Functor) -> PresheafDiagram:
    """Compose a diagram ``J -> C`` with ``k``.

    ``k`` reverses arrows at the level of functors into Set, so the diagram
    of underlying functors is contravariant in J.
    """
    cat = d.target
    objs = {j: yoneda_k(cat, d.ob(j)) for j in d.source.objects}
    mors = {}
    for m in d.source.morphisms:
        nt = yoneda_k_mor(cat, d.mor(m))
        mors[m] = NatTrans(objs[d.source.dst(m)], objs[d.source.src(m)], nt.components)
    return PresheafDiagram(d.source, objs, mors, CONTRAVARIANT)


def ind_lim(alpha: Functor) -> SetPresheaf:
    """Formal inductive limit of ``alpha: J -> C`` inside C^: the pointwise colimit of ``h∘alpha``."""
    return presheaf_limit(lift_h(alpha), INDUCTIVE, base=alpha.target,
                          variance=CONTRAVARIANT, name="ind_lim").presheaf


def pro_lim(beta: Functor) -> SetPresheaf:
    """Formal projective limit of ``beta: J -> C`` inside C^v.

    Limits in C^v = Fun(C, Set)^op are colimits of the underlying functors,
    so this is the pointwise colimit of ``Hom(beta(j), -)`` over J.
    """
    return presheaf_limit(lift_k(beta), INDUCTIVE, base=beta.target,
                          variance=COVARIANT, name="pro_lim").presheaf


def definition_lim(beta: Functor) -> PresheafLimit:
    """``X ↦ lim_j Hom(X, beta(j))``: the presheaf a genuine limit must represent."""
    return presheaf_limit(lift_h(beta), PROJECTIVE, base=beta.target,
                          variance=CONTRAVARIANT, name="lim Hom(-,beta)")


def definition_colim(alpha: Functor) -> PresheafLimit:
    """``X ↦ lim_j Hom(alpha(j), X)``: the covariant functor a genuine colimit must represent."""
    return presheaf_limit(lift_k(alpha), PROJECTIVE, base=alpha.target,
                          variance=COVARIANT, name="lim Hom(alpha,-)")


# -- representability ----------------------------------------------------------------

@dataclass
class Representation:
    object: str
    iso: NatTrans  # h(object) => A, or k(object) => A for covariant A

    def universal_element(self) -> str:
        cat = self.iso.source.base
        return self.iso(self.object, cat.id(self.object))


def representability_search(a: SetPresheaf, caps: Caps | None = None) -> Representation | None:
    """First object (in id order) whose Yoneda image is naturally isomorphic to ``a``."""
    cat = a.base
    for x in cat.objects:
        rep = yoneda(cat, x, a.variance)
        if rep.size_profile() != a.size_profile():
            continue
        iso = find_natural_iso(rep, a, caps)
        if iso is not None:
            return Representation(x, iso)
    return None


@dataclass
class CategoricalLimit:
    """A (co)limit found inside a finite category, with its legs."""

    kind: str
    apex: str
    legs: dict[str, str]  # shape object -> morphism id


def limit_in_category(beta: Functor, caps: Caps | None = None) -> CategoricalLimit | None:
    """The limit of ``beta`` in its target category, if it exists."""
    lim = definition_lim(beta)
    rep = representability_search(lim.presheaf, caps)
    if rep is None:
        return None
    e = rep.universal_element()
    return CategoricalLimit(PROJECTIVE, rep.object,
                            {j: leg.components[rep.object](e) for j, leg in lim.legs.items()})


def colimit_in_category(alpha: Functor, caps: Caps | None = None) -> CategoricalLimit | None:
    """The colimit of ``alpha`` in its target category, if it exists."""
    lim = definition_colim(alpha)
    rep = representability_search(lim.presheaf, caps)
    if rep is None:
        return None
    e = rep.universal_element()
    return CategoricalLimit(INDUCTIVE, rep.object,
                            {j: leg.components[rep.object](e) for j, leg in lim.legs.items()})


# -- category of elements and Yoneda extension ------------------------------------------

def element_id(x: str, a: str) -> str:
    return f"{x}:{a}"


@dataclass
class ElementsCategory:
    category: FinCategory
    projection: Functor
    element: dict[str, tuple[str, str]]  # object id -> (base object, element)


def category_of_elements(a: SetPresheaf, caps: Caps | None = None) -> ElementsCategory:
    """Objects ``(X, a)``; arrows induced by base arrows compatible with the action.

    For a contravariant presheaf an arrow ``(X,a) -> (Y,b)`` is ``f: X -> Y``
    with ``A(f)(b) = a`` and is named ``f@b``.  For a covariant one it is ``f``
    with ``A(f)(a) = b`` and is named ``f@a``.
    """
    caps = caps or DERIVED_CAPS
    base = a.base
    contra = a.variance == CONTRAVARIANT
    elem = {element_id(x, e): (x, e) for x in base.objects for e in a.at(x).elements}
    if len(elem) > caps.max_objects:
        raise CapacityError(f"category of elements has {len(elem)} objects (cap {caps.max_objects})")
    mors = []
    info = {}  # morphism id -> (base morphism, labelling element)
    for f, m in base.morphisms.items():
        if contra:
            for b in a.at(m.dst).elements:
                mid = f"{f}@{b}"
                mors.append(Morphism(mid, element_id(m.src, a.act(f, b)), element_id(m.dst, b)))
                info[mid] = (f, b)
        else:
            for e in a.at(m.src).elements:
                mid = f"{f}@{e}"
                mors.append(Morphism(mid, element_id(m.src, e), element_id(m.dst, a.act(f, e))))
                info[mid] = (f, e)
    if len(mors) > caps.max_morphisms:
        raise CapacityError(f"category of elements has {len(mors)} morphisms (cap {caps.max_morphisms})")
    ids = {o: f"{base.id(x)}@{e}" for o, (x, e) in elem.items()}
    by_src: dict[str, list[Morphism]] = {}
    for mo in mors:
        by_src.setdefault(mo.src, []).append(mo)
    compose = {}
    for mf in mors:
        for mg in by_src.get(mf.dst, ()):
            f, lf = info[mf.id]
            g, lg = info[mg.id]
            gf = base.comp(g, f)
            # the composite is labelled by the outer element for contravariant
            # presheaves and by the inner one for covariant presheaves
            compose[(mg.id, mf.id)] = f"{gf}@{lg if contra else lf}"
    cat = FinCategory(f"el({a.name})", list(elem), mors, ids, compose, caps=caps)
    proj = Functor(cat, base, {o: x for o, (x, _) in elem.items()},
                   {mid: f for mid, (f, _) in info.items()}, name="π")
    return ElementsCategory(cat, proj, elem)


def pullback_along(f: SetPresheaf, functor: Functor) -> SetPresheaf:
    """``F∘functor`` for a covariant set-valued ``F`` on the functor's target."""
    src = functor.source
    values = {x: f.at(functor.ob(x)) for x in src.objects}
    actions = {m: f.morphisms[functor.mor(m)] for m in src.morphisms}
    return SetPresheaf(src, COVARIANT, values, actions, name=f"{f.name}∘{functor.name}")


def yoneda_extension(f, a: SetPresheaf, caps: Caps | None = None):
    """Extend ``f`` along ``h`` and evaluate it at the presheaf ``a``.

    ``f`` is either a covariant :class:`SetPresheaf` (a functor into finite
    sets, which has every colimit) or a :class:`Functor` into a finite
    category, in which case the needed colimit must exist there.
    Returns a :class:`LimitResult` for set-valued ``f`` and the apex object
    id otherwise.
    """
    if a.variance != CONTRAVARIANT:
        raise StructuralError("the Yoneda extension is taken at a contravariant presheaf")
    el = category_of_elements(a)
    if isinstance(f, SetPresheaf):
        if f.variance != COVARIANT or f.base != a.base:
            raise StructuralError("extension needs a covariant functor on the same base")
        d = pullback_along(f, el.projection)
        return colim(d, apex_id=f"ext({f.name})")
    if isinstance(f, Functor):
        composite = el.projection.then(f)
        found = colimit_in_category(composite, caps)
        if found is None:
            raise UnsupportedTargetError(
                f"{f.target.name!r} has no colimit for the category of elements of {a.name}")
        return found.apex
    raise TypeError("yoneda_extension expects a SetPresheaf or a Functor")


def dual_extension(f: SetPresheaf, b: SetPresheaf) -> LimitResult:
    """``lim`` over the elements of a covariant ``b`` of ``f∘π``; this is ``Nat(b, f)``."""
    if b.variance != COVARIANT or f.variance != COVARIANT:
        raise StructuralError("dual extension needs covariant presheaves")
    el = category_of_elements(b)
    return lim_matching_families(pullback_along(f, el.projection), apex_id=f"coext({f.name})")


def functor_from_tables(cat: FinCategory, values: Mapping[str, FinSet],
                        actions: Mapping[str, Mapping[str, str]], name: str = "F") -> SetPresheaf:
    """Covariant set-valued functor from plain tables; checks the functor laws."""
    acts = {}
    for f, mo in cat.morphisms.items():
        table = actions.get(f)
        if table is None:
            if f in cat.identity_ids:
                table = {x: x for x in values[mo.src].elements}
            else:
                raise StructuralError(f"functor {name} has no action for {f}")
        acts[f] = FinFunction(values[mo.src], values[mo.dst], dict(table))
    p = SetPresheaf(cat, COVARIANT, values, acts, name=name)
    p.check()
    return p


def is_representable(a: SetPresheaf, caps: Caps | None = None) -> bool:
    return representability_search(a, caps) is not None


__all__ = [
    "SetPresheaf", "NatTrans", "yoneda_h", "yoneda_k", "yoneda", "yoneda_h_mor", "yoneda_k_mor",
    "point_presheaf", "empty_presheaf", "iter_nat_trans", "enumerate_nat_trans", "count_nat_trans",
    "find_natural_iso", "isomorphic", "yoneda_check", "YonedaCheck", "PresheafDiagram",
    "PresheafLimit", "presheaf_limit", "presheaf_lim", "presheaf_colim", "lift_h", "lift_k",
    "ind_lim", "pro_lim", "definition_lim", "definition_colim", "representability_search",
    "Representation", "CategoricalLimit", "limit_in_category", "colimit_in_category",
    "category_of_elements", "ElementsCategory", "yoneda_extension", "dual_extension",
    "pullback_along", "functor_from_tables", "is_representable", "identity_nat", "LawError",
]
