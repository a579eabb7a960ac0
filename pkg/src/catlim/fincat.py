"""Finite categories stored as fully materialised composition tables.

Objects and morphisms are identified by strings.  Every enumeration in the
package walks ids in sorted order, so all derived results are deterministic.

Composition is keyed as ``compose[(g, f)] == g∘f`` (apply ``f`` first).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .config import DEFAULT_CAPS, Caps
from .errors import CapacityError, LawError, StructuralError


@dataclass(frozen=True)
class Morphism:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Violation:
    kind: str  # identity | closure | totality | associativity | spurious
    morphisms: tuple[str, ...]
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


class FinCategory:
    """A finite category.

    Equality is structural: two categories with the same objects, morphisms,
    identities and composition table are equal regardless of ``name``.
    """

    def __init__(
        self,
        name: str,
        objects: Iterable[str],
        morphisms: Iterable[Morphism | tuple[str, str, str]],
        identities: Mapping[str, str],
        compose: Mapping[tuple[str, str], str],
        *,
        caps: Caps | None = None,
        infer_identity_laws: bool = False,
    ):
        caps = caps or DEFAULT_CAPS
        self.name = name
        self.objects = tuple(sorted(set(objects)))
        mors = [m if isinstance(m, Morphism) else Morphism(*m) for m in morphisms]
        if len(self.objects) > caps.max_objects:
            raise CapacityError(
                f"category {name!r} has {len(self.objects)} objects (cap {caps.max_objects})")
        if len(mors) > caps.max_morphisms:
            raise CapacityError(
                f"category {name!r} has {len(mors)} morphisms (cap {caps.max_morphisms})")
        self.morphisms = {m.id: m for m in sorted(mors, key=lambda m: m.id)}
        if len(self.morphisms) != len(mors):
            raise StructuralError(f"duplicate morphism ids in {name!r}")
        self.identities = dict(sorted(identities.items()))
        table = dict(compose)
        if infer_identity_laws:
            for f, m in self.morphisms.items():
                i_src = self.identities.get(m.src)
                i_dst = self.identities.get(m.dst)
                if i_dst is not None:
                    table.setdefault((i_dst, f), f)
                if i_src is not None:
                    table.setdefault((f, i_src), f)
        self.compose = dict(sorted(table.items()))

    # -- basic queries -----------------------------------------------------

    def src(self, f: str) -> str:
        return self.morphisms[f].src

    def dst(self, f: str) -> str:
        return self.morphisms[f].dst

    def id(self, x: str) -> str:
        return self.identities[x]

    def comp(self, g: str, f: str) -> str:
        """``g∘f``."""
        try:
            return self.compose[(g, f)]
        except KeyError:
            raise LawError(f"{g}∘{f} is not defined in {self.name!r}") from None

    @cached_property
    def _homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        homs: dict[tuple[str, str], list[str]] = {}
        for m in self.morphisms.values():
            homs.setdefault((m.src, m.dst), []).append(m.id)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._homs.get((x, y), ())

    @cached_property
    def identity_ids(self) -> frozenset[str]:
        return frozenset(self.identities.values())

    def non_identities(self) -> list[str]:
        return [f for f in self.morphisms if f not in self.identity_ids]

    def is_thin(self) -> bool:
        return all(len(v) <= 1 for v in self._homs.values())

    def composable_pairs(self):
        for g, mg in self.morphisms.items():
            for f, mf in self.morphisms.items():
                if mf.dst == mg.src:
                    yield g, f

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (self.objects == other.objects and self.morphisms == other.morphisms
                and self.identities == other.identities and self.compose == other.compose)

    def __hash__(self):
        return hash((self.objects, tuple(self.morphisms)))

    def __repr__(self):
        return (f"FinCategory({self.name!r}, {len(self.objects)} objects, "
                f"{len(self.morphisms)} morphisms)")


# -- validation ------------------------------------------------------------

def check_structure(cat: FinCategory) -> None:
    """Raise StructuralError on dangling ids; law problems are not examined."""
    obs = set(cat.objects)
    for m in cat.morphisms.values():
        if m.src not in obs or m.dst not in obs:
            raise StructuralError(f"morphism {m.id} has unknown endpoint ({m.src} -> {m.dst})")
    for x, i in cat.identities.items():
        if x not in obs:
            raise StructuralError(f"identity declared for unknown object {x}")
        if i not in cat.morphisms:
            raise StructuralError(f"identity of {x} names unknown morphism {i}")
    missing = obs - set(cat.identities)
    if missing:
        raise StructuralError(f"objects without identity: {sorted(missing)}")
    for (g, f), h in cat.compose.items():
        for k in (g, f, h):
            if k not in cat.morphisms:
                raise StructuralError(f"composition entry ({g}, {f}) -> {h} names unknown {k}")


def validate_category(cat: FinCategory) -> list[Violation]:
    """All law violations of ``cat``; empty iff it is a category."""
    check_structure(cat)
    out: list[Violation] = []
    for x, i in cat.identities.items():
        if cat.src(i) != x or cat.dst(i) != x:
            out.append(Violation("identity", (i,), f"id of {x} is {cat.src(i)} -> {cat.dst(i)}"))
    for (g, f) in cat.compose:
        if cat.dst(f) != cat.src(g):
            out.append(Violation("spurious", (g, f), f"{g}∘{f} tabulated but not composable"))
    for g, f in cat.composable_pairs():
        h = cat.compose.get((g, f))
        if h is None:
            out.append(Violation("totality", (g, f), f"{g}∘{f} missing"))
            continue
        if cat.src(h) != cat.src(f) or cat.dst(h) != cat.dst(g):
            out.append(Violation(
                "closure", (g, f, h),
                f"{g}∘{f} = {h} has type {cat.src(h)} -> {cat.dst(h)}, "
                f"expected {cat.src(f)} -> {cat.dst(g)}"))
    if any(v.kind == "totality" for v in out):
        return out
    for f, m in cat.morphisms.items():
        i_src, i_dst = cat.identities[m.src], cat.identities[m.dst]
        if cat.compose[(i_dst, f)] != f:
            out.append(Violation("identity", (i_dst, f), f"{i_dst}∘{f} != {f}"))
        if cat.compose[(f, i_src)] != f:
            out.append(Violation("identity", (f, i_src), f"{f}∘{i_src} != {f}"))
    for h, g, f in _composable_triples(cat):
        left = cat.compose.get((cat.compose[(h, g)], f))
        right = cat.compose.get((h, cat.compose[(g, f)]))
        if left is None or right is None or left != right:
            out.append(Violation(
                "associativity", (h, g, f), f"({h}∘{g})∘{f} = {left} but {h}∘({g}∘{f}) = {right}"))
    return out


def _composable_triples(cat: FinCategory):
    by_src: dict[str, list[str]] = {}
    for m in cat.morphisms.values():
        by_src.setdefault(m.src, []).append(m.id)
    for f, mf in cat.morphisms.items():
        for g in by_src.get(mf.dst, ()):
            for h in by_src.get(cat.dst(g), ()):
                yield h, g, f


def require_valid(cat: FinCategory) -> FinCategory:
    bad = validate_category(cat)
    if bad:
        raise LawError(f"{cat.name!r} is not a category: " + "; ".join(map(str, bad[:5])))
    return cat


# -- constructions ---------------------------------------------------------

def opposite(cat: FinCategory) -> FinCategory:
    """Same objects and ids, arrows reversed, ``g ∘op f = f ∘ g``."""
    name = cat.name[:-3] if cat.name.endswith("^op") else cat.name + "^op"
    return FinCategory(
        name,
        cat.objects,
        [Morphism(m.id, m.dst, m.src) for m in cat.morphisms.values()],
        cat.identities,
        {(f, g): h for (g, f), h in cat.compose.items()},
        caps=Caps(max_objects=max(len(cat.objects), 1), max_morphisms=max(len(cat.morphisms), 1)),
    )


def category(name: str, objects, arrows, compose=(), *, caps: Caps | None = None) -> FinCategory:
    """Build a category from non-identity arrows ``(id, src, dst)``.

    Identities ``id_X`` are added and their composites inferred;
    ``compose`` lists the remaining ``(g, f, g∘f)`` triples.
    """
    objects = list(objects)
    ids = {x: f"id_{x}" for x in objects}
    mors = [Morphism(i, x, x) for x, i in ids.items()] + [Morphism(*a) for a in arrows]
    table = {(g, f): h for g, f, h in compose}
    return FinCategory(name, objects, mors, ids, table, caps=caps, infer_identity_laws=True)


def free_category(name: str, objects, edges, *, caps: Caps | None = None) -> FinCategory:
    """Free category on a finite acyclic graph: morphisms are paths.

    A path ``e1`` then ``e2`` then ``e3`` gets id ``e3.e2.e1`` (read as
    composition).  Cyclic graphs have infinitely many paths and hit the cap.
    """
    caps = caps or DEFAULT_CAPS
    objects = sorted(set(objects))
    out: dict[str, list[tuple[str, str]]] = {x: [] for x in objects}
    for e, s, d in edges:
        out[s].append((e, d))
    paths: list[tuple[tuple[str, ...], str, str]] = []  # (edge ids in order, src, dst)
    frontier = [((e,), s, d) for e, s, d in edges]
    while frontier:
        paths.extend(frontier)
        if len(paths) + len(objects) > caps.max_morphisms:
            raise CapacityError(f"free category {name!r} exceeds {caps.max_morphisms} morphisms")
        frontier = [(p + (e,), s, d2) for p, s, d in frontier for e, d2 in out[d]]
    pid = {p: ".".join(reversed(p)) for p, _, _ in paths}
    ids = {x: f"id_{x}" for x in objects}
    mors = [Morphism(i, x, x) for x, i in ids.items()]
    mors += [Morphism(pid[p], s, d) for p, s, d in paths]
    table: dict[tuple[str, str], str] = {}
    for pf, sf, df in paths:
        for pg, sg, dg in paths:
            if sg == df:
                table[(pid[pg], pid[pf])] = pid[pf + pg]
    return FinCategory(name, objects, mors, ids, table, caps=caps, infer_identity_laws=True)


def poset_category(name: str, elements, relations, *, caps: Caps | None = None) -> FinCategory:
    """Thin category of the preorder generated by ``a <= b`` pairs."""
    elements = sorted(set(elements))
    le = {(a, a) for a in elements} | {(a, b) for a, b in relations}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(le), repeat=2):
            if b == c and (a, d) not in le:
                le.add((a, d))
                changed = True

    def mid(a, b):
        return f"id_{a}" if a == b else f"{a}<={b}"

    mors = [Morphism(mid(a, b), a, b) for a, b in sorted(le)]
    table = {(mid(b, c), mid(a, b)): mid(a, c)
             for (a, b) in le for (b2, c) in le if b == b2}
    return FinCategory(name, elements, mors, {a: mid(a, a) for a in elements}, table, caps=caps)


def leq(cat: FinCategory, a: str, b: str) -> bool:
    return bool(cat.hom(a, b))


# -- shapes ------------------------------------------------------------------

@dataclass(frozen=True)
class ShapeKind:
    """Tag for an index category: discrete(n), parallel_pair, cospan, span or custom."""

    tag: str
    n: int = 0
    category: FinCategory | None = field(default=None, compare=False)

    _PATTERN = re.compile(r"^discrete\((\d+)\)$")

    @classmethod
    def parse(cls, text: str) -> "ShapeKind":
        text = text.strip()
        m = cls._PATTERN.match(text)
        if m:
            return cls("discrete", int(m.group(1)))
        if text == "point":
            return cls("discrete", 1)
        if text in ("parallel_pair", "cospan", "span"):
            return cls(text)
        raise StructuralError(f"unknown shape kind {text!r}")

    def __str__(self):
        if self.tag == "discrete":
            return f"discrete({self.n})"
        if self.tag == "custom":
            return self.category.name if self.category is not None else "custom"
        return self.tag


def _obj(i: int) -> str:
    return f"I{i}"


def build_shape(kind: ShapeKind | str) -> FinCategory:
    """Canonical index category with ids I1, I2, ... and m1, m2, ..."""
    if isinstance(kind, str):
        kind = ShapeKind.parse(kind)
    if kind.tag == "custom":
        if kind.category is None:
            raise StructuralError("custom shape without a category")
        return kind.category
    if kind.tag == "discrete":
        if kind.n < 0:
            raise ValueError("discrete(n) needs n >= 0")
        return category(f"discrete({kind.n})", [_obj(i) for i in range(1, kind.n + 1)], [])
    if kind.tag == "parallel_pair":
        return category("parallel_pair", ["I1", "I2"], [("m1", "I1", "I2"), ("m2", "I1", "I2")])
    if kind.tag == "cospan":
        return category("cospan", ["I1", "I2", "I3"], [("m1", "I1", "I3"), ("m2", "I2", "I3")])
    if kind.tag == "span":
        return category("span", ["I1", "I2", "I3"], [("m1", "I3", "I1"), ("m2", "I3", "I2")])
    raise StructuralError(f"unknown shape tag {kind.tag!r}")


def shape_kind_of(cat: FinCategory) -> ShapeKind:
    """Recognise a canonical shape, falling back to ``custom``."""
    for text in ("parallel_pair", "cospan", "span"):
        if cat == build_shape(text):
            return ShapeKind(text)
    if not cat.non_identities() and cat.objects == tuple(
            sorted(_obj(i) for i in range(1, len(cat.objects) + 1))):
        return ShapeKind("discrete", len(cat.objects))
    return ShapeKind("custom", category=cat)


# -- isomorphisms ------------------------------------------------------------

def is_isomorphism(cat: FinCategory, f: str) -> str | None:
    """The inverse of ``f`` if it has one."""
    if f not in cat.morphisms:
        raise StructuralError(f"unknown morphism {f!r}")
    x, y = cat.src(f), cat.dst(f)
    for g in cat.hom(y, x):
        if cat.comp(f, g) == cat.id(y) and cat.comp(g, f) == cat.id(x):
            return g
    return None


def isomorphic_objects(cat: FinCategory, x: str, y: str) -> bool:
    return any(is_isomorphism(cat, f) is not None for f in cat.hom(x, y))


# -- functors ----------------------------------------------------------------

@dataclass
class Functor:
    """A functor between finite categories given by object and morphism maps.

    Identity morphisms may be left out of ``morphism_map``; they are sent to
    the identity of the image object.
    """

    source: FinCategory
    target: FinCategory
    object_map: dict[str, str]
    morphism_map: dict[str, str]
    name: str = "F"

    def __post_init__(self):
        self.object_map = dict(self.object_map)
        self.morphism_map = dict(self.morphism_map)
        for x in self.source.objects:
            i = self.source.identities.get(x)
            if i is not None and i not in self.morphism_map and x in self.object_map:
                tx = self.object_map[x]
                if tx in self.target.identities:
                    self.morphism_map[i] = self.target.identities[tx]

    def ob(self, x: str) -> str:
        return self.object_map[x]

    def mor(self, f: str) -> str:
        return self.morphism_map[f]

    def violations(self) -> list[str]:
        s, t = self.source, self.target
        out = []
        for x in s.objects:
            if x not in self.object_map:
                out.append(f"object {x} unmapped")
            elif self.object_map[x] not in t.objects:
                out.append(f"object {x} maps to unknown {self.object_map[x]}")
        if out:
            return out
        for f, m in s.morphisms.items():
            g = self.morphism_map.get(f)
            if g is None or g not in t.morphisms:
                out.append(f"morphism {f} unmapped or maps to unknown {g}")
                continue
            if t.src(g) != self.ob(m.src) or t.dst(g) != self.ob(m.dst):
                out.append(f"{f} maps to {g} with wrong endpoints")
        if out:
            return out
        for x in s.objects:
            if self.mor(s.id(x)) != t.id(self.ob(x)):
                out.append(f"identity of {x} not preserved")
        for (g, f), h in s.compose.items():
            if t.compose.get((self.mor(g), self.mor(f))) != self.mor(h):
                out.append(f"F({g}∘{f}) != F({g})∘F({f})")
        return out

    def check(self) -> "Functor":
        bad = self.violations()
        if bad:
            raise LawError(f"functor {self.name} invalid: " + "; ".join(bad[:5]))
        return self

    def then(self, other: "Functor") -> "Functor":
        """``other ∘ self``."""
        return Functor(
            self.source, other.target,
            {x: other.ob(y) for x, y in self.object_map.items()},
            {f: other.mor(g) for f, g in self.morphism_map.items()},
            name=f"{other.name}∘{self.name}")


def identity_functor(cat: FinCategory) -> Functor:
    return Functor(cat, cat, {x: x for x in cat.objects}, {f: f for f in cat.morphisms}, name="Id")


def diagram(shape: FinCategory, target: FinCategory, nodes: Mapping[str, str],
            edges: Mapping[str, str] | None = None, name: str = "D") -> Functor:
    """Diagram of shape ``shape`` in ``target``.

    Edges between nodes of a thin target may be omitted; they are filled in.
    """
    edges = dict(edges or {})
    for f in shape.non_identities():
        if f not in edges:
            cands = target.hom(nodes[shape.src(f)], nodes[shape.dst(f)])
            if len(cands) == 1:
                edges[f] = cands[0]
    return Functor(shape, target, dict(nodes), edges, name=name)


def full_subcategory(cat: FinCategory, objects: Iterable[str], name: str | None = None) -> FinCategory:
    keep = set(objects)
    mors = [m for m in cat.morphisms.values() if m.src in keep and m.dst in keep]
    ids = {m.id for m in mors}
    return FinCategory(
        name or f"{cat.name}|sub", sorted(keep), mors,
        {x: i for x, i in cat.identities.items() if x in keep},
        {(g, f): h for (g, f), h in cat.compose.items() if g in ids and f in ids})


def inclusion_functor(sub: FinCategory, cat: FinCategory) -> Functor:
    return Functor(sub, cat, {x: x for x in sub.objects}, {f: f for f in sub.morphisms}, name="incl")


def upper_bounds(cat: FinCategory, xs: Iterable[str]) -> list[str]:
    xs = list(xs)
    return [z for z in cat.objects if all(cat.hom(x, z) for x in xs)]


def lower_bounds(cat: FinCategory, xs: Iterable[str]) -> list[str]:
    xs = list(xs)
    return [z for z in cat.objects if all(cat.hom(z, x) for x in xs)]


def poset_join(cat: FinCategory, xs: Iterable[str]) -> str | None:
    """Least upper bound in a thin category (first in id order if several are equivalent)."""
    ub = upper_bounds(cat, xs)
    least = [z for z in ub if all(cat.hom(z, w) for w in ub)]
    return least[0] if least else None


def poset_meet(cat: FinCategory, xs: Iterable[str]) -> str | None:
    lb = lower_bounds(cat, xs)
    greatest = [z for z in lb if all(cat.hom(w, z) for w in lb)]
    return greatest[0] if greatest else None


def thin_functor(source: FinCategory, target: FinCategory, object_map: Mapping[str, str],
                 name: str = "F") -> Functor:
    """Monotone map between thin categories; morphisms follow from objects."""
    mors = {}
    for f, m in source.morphisms.items():
        cands = target.hom(object_map[m.src], object_map[m.dst])
        if len(cands) != 1:
            raise LawError(f"{name} is not monotone at {f}")
        mors[f] = cands[0]
    return Functor(source, target, dict(object_map), mors, name=name)
