"""Seeded random finite structures for property tests and law suites.

Every generator takes a :class:`random.Random` so callers control the seed.
"""
from __future__ import annotations

import itertools
import random
from typing import Iterator

from .config import Caps
from .errors import CapacityError
from .fincat import FinCategory, Morphism, build_shape, category, free_category, poset_category
from .finset import CONTRAVARIANT, COVARIANT, FinFunction, FinSet, SetDiagram
from .presheaf import SetPresheaf


# -- categories -------------------------------------------------------------------

def random_dag_category(rng: random.Random, max_objects: int = 5, max_morphisms: int = 12,
                        name: str = "dag") -> FinCategory:
    """Free category on a random acyclic graph, resampled until within the morphism bound."""
    caps = Caps(max_objects=max_objects, max_morphisms=max_morphisms)
    while True:
        n = rng.randint(1, max_objects)
        objs = [f"O{i}" for i in range(n)]
        edges = []
        for i, j in itertools.combinations(range(n), 2):
            for _ in range(2):
                if rng.random() < 0.3:
                    edges.append((f"e{len(edges)}", objs[i], objs[j]))
        try:
            return free_category(name, objs, edges, caps=caps)
        except CapacityError:
            continue


def random_poset(rng: random.Random, max_objects: int = 6, density: float = 0.4,
                 name: str = "poset") -> FinCategory:
    n = rng.randint(1, max_objects)
    objs = [f"p{i}" for i in range(n)]
    rel = [(objs[i], objs[j]) for i, j in itertools.combinations(range(n), 2) if rng.random() < density]
    return poset_category(name, objs, rel)


def random_lattice(rng: random.Random, max_atoms: int = 3, name: str = "lattice") -> FinCategory:
    """A random down-closed family of subsets of a small set, ordered by inclusion.

    Such a family is closed under intersection, so it always has meets, and
    joins exist exactly where some common upper bound is least.
    """
    n = rng.randint(1, max_atoms)
    universe = list(range(n))
    subsets = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(universe, r)]
    keep = {s for s in subsets if rng.random() < 0.7} | {frozenset()}
    closed = set()
    for s in keep:
        for r in range(len(s) + 1):
            closed.update(frozenset(c) for c in itertools.combinations(sorted(s), r))

    def label(s):
        return "s" + ("".join(map(str, sorted(s))) or "_")

    elems = sorted(closed, key=lambda s: (len(s), sorted(s)))
    rel = [(label(a), label(b)) for a in elems for b in elems if a < b]
    return poset_category(name, [label(s) for s in elems], rel)


def codiscrete(n: int, name: str = "codiscrete") -> FinCategory:
    """Exactly one arrow between any two objects: a connected groupoid."""
    objs = [f"g{i}" for i in range(n)]
    return poset_category(name, objs, [(a, b) for a in objs for b in objs])


def cyclic_monoid(n: int, name: str | None = None) -> FinCategory:
    """One object whose endomorphisms form Z/n."""
    ids = ["id_*"] + [f"r{i}" for i in range(1, n)]
    mors = [Morphism(m, "*", "*") for m in ids]
    table = {}
    for i, j in itertools.product(range(n), repeat=2):
        table[(ids[i], ids[j])] = ids[(i + j) % n]
    return FinCategory(name or f"Z{n}", ["*"], mors, {"*": "id_*"}, table)


def idempotent_monoid(name: str = "idem") -> FinCategory:
    """One object, one non-identity idempotent ``e``."""
    return category(name, ["*"], [("e", "*", "*")], [("e", "e", "e")])


def disjoint_union(a: FinCategory, b: FinCategory, name: str = "sum") -> FinCategory:
    def tag(prefix, cat):
        return ([f"{prefix}.{x}" for x in cat.objects],
                [Morphism(f"{prefix}.{m.id}", f"{prefix}.{m.src}", f"{prefix}.{m.dst}")
                 for m in cat.morphisms.values()],
                {f"{prefix}.{x}": f"{prefix}.{i}" for x, i in cat.identities.items()},
                {(f"{prefix}.{g}", f"{prefix}.{f}"): f"{prefix}.{h}" for (g, f), h in cat.compose.items()})

    oa, ma, ia, ca = tag("a", a)
    ob, mb, ib, cb = tag("b", b)
    return FinCategory(name, oa + ob, ma + mb, {**ia, **ib}, {**ca, **cb})


def random_category(rng: random.Random, max_objects: int = 5, max_morphisms: int = 12) -> FinCategory:
    """A random category of one of several families, within the given bounds."""
    while True:
        kind = rng.choice(["dag", "dag", "poset", "codiscrete", "monoid", "union"])
        if kind == "dag":
            cat = random_dag_category(rng, max_objects, max_morphisms)
        elif kind == "poset":
            cat = random_poset(rng, max_objects)
        elif kind == "codiscrete":
            cat = codiscrete(rng.randint(1, 3))
        elif kind == "monoid":
            cat = rng.choice([cyclic_monoid(2), cyclic_monoid(3), idempotent_monoid()])
        else:
            left = rng.choice([cyclic_monoid(2), idempotent_monoid(), codiscrete(2)])
            right = random_dag_category(rng, 2, 4)
            cat = disjoint_union(left, right)
        if len(cat.objects) <= max_objects and len(cat.morphisms) <= max_morphisms:
            return cat


# -- presheaves ------------------------------------------------------------------

def _elements(x: str, n: int) -> FinSet:
    return FinSet(f"{x}#", tuple(f"{x.lower()}{i}" for i in range(n)))


def enumerate_presheaves(cat: FinCategory, max_size: int = 3, variance: str = CONTRAVARIANT,
                         limit: int | None = None) -> Iterator[SetPresheaf]:
    """Every presheaf on ``cat`` with all values of size at most ``max_size``.

    Element names are fixed per size, so isomorphic presheaves appear once per
    labelling.  With ``limit`` set, a CapacityError is raised as soon as more
    than ``limit`` presheaves have been produced.
    """
    objs = cat.objects
    nonid = cat.non_identities()
    produced = 0
    for sizes in itertools.product(range(max_size + 1), repeat=len(objs)):
        values = {x: _elements(x, s) for x, s in zip(objs, sizes)}
        for actions in _action_tables(cat, values, nonid, variance):
            produced += 1
            if limit is not None and produced > limit:
                raise CapacityError(f"more than {limit} presheaves on {cat.name!r}")
            yield SetPresheaf(cat, variance, values, actions, name=f"A{produced}")


def count_presheaves(cat: FinCategory, max_size: int = 3, variance: str = CONTRAVARIANT,
                     limit: int | None = None) -> int:
    return sum(1 for _ in enumerate_presheaves(cat, max_size, variance, limit))


def _action_tables(cat, values, nonid, variance):
    def ends(m):
        s, d = cat.src(m), cat.dst(m)
        return (d, s) if variance == CONTRAVARIANT else (s, d)

    fixed = {i: {a: a for a in values[cat.src(i)].elements} for i in cat.identity_ids}
    pos = {m: k for k, m in enumerate(nonid)}
    triples: dict[int, list] = {k: [] for k in range(len(nonid))}
    for (g, f), h in cat.compose.items():
        involved = [pos[m] for m in (g, f, h) if m in pos]
        if involved:
            triples[max(involved)].append((g, f, h))
    tables: dict[str, dict] = dict(fixed)

    def ok(k):
        for g, f, h in triples[k]:
            tg, tf, th = tables[g], tables[f], tables[h]
            # contravariant: A(g∘f) = A(f)∘A(g); covariant: A(g∘f) = A(g)∘A(f)
            if variance == CONTRAVARIANT:
                if any(tf[tg[a]] != b for a, b in th.items()):
                    return False
            elif any(tg[tf[a]] != b for a, b in th.items()):
                return False
        return True

    def rec(k):
        if k == len(nonid):
            yield {m: FinFunction(values[ends(m)[0]], values[ends(m)[1]], dict(tables[m]))
                   for m in cat.morphisms}
            return
        m = nonid[k]
        s, t = ends(m)
        src, tgt = values[s].elements, values[t].elements
        for image in itertools.product(tgt, repeat=len(src)):
            tables[m] = dict(zip(src, image))
            if ok(k):
                yield from rec(k + 1)
        tables.pop(m, None)

    yield from rec(0)


def random_presheaf(rng: random.Random, cat: FinCategory, max_size: int = 3,
                    variance: str = CONTRAVARIANT, tries: int = 200, min_size: int = 0) -> SetPresheaf:
    """A random presheaf: random sizes, random tables on the generating arrows.

    Composite actions are derived from the generators.  Draws that break a
    relation of the category are retried; after ``tries`` failures the empty
    presheaf is returned.
    """
    for _ in range(tries):
        values = {x: _elements(x, rng.randint(min_size, max_size)) for x in cat.objects}
        actions = _sample_actions(rng, cat, values, variance)
        if actions is not None:
            return SetPresheaf(cat, variance, values, actions, name="R")
    return SetPresheaf(cat, variance, {x: _elements(x, 0) for x in cat.objects},
                       {m: FinFunction(_elements(cat.src(m), 0), _elements(cat.src(m), 0), {})
                        for m in cat.morphisms}, name="R0")


def _sample_actions(rng, cat, values, variance):
    """Random tables for arrows not yet determined, closing under composition in between."""
    from .presheaf import SetPresheaf as _P

    def ends(m):
        s, d = cat.src(m), cat.dst(m)
        return (d, s) if variance == CONTRAVARIANT else (s, d)

    tables = {cat.id(x): {e: e for e in values[x].elements} for x in cat.objects}
    while True:
        changed = True
        while changed:
            changed = False
            for (g, f), h in cat.compose.items():
                if h in tables or g not in tables or f not in tables:
                    continue
                tg, tf = tables[g], tables[f]
                # contravariant: A(g∘f) = A(f)∘A(g); covariant: A(g∘f) = A(g)∘A(f)
                tables[h] = ({e: tf[tg[e]] for e in tg} if variance == CONTRAVARIANT
                             else {e: tg[tf[e]] for e in tf})
                changed = True
        free = [m for m in cat.non_identities() if m not in tables]
        if not free:
            break
        a, b = ends(free[0])
        if values[a].elements and not values[b].elements:
            return None
        tables[free[0]] = {e: rng.choice(values[b].elements) for e in values[a].elements}
    acts = {m: FinFunction(values[ends(m)[0]], values[ends(m)[1]], tables[m]) for m in cat.morphisms}
    return acts if not _P(cat, variance, values, acts).violations() else None


def random_representable_sum(rng: random.Random, cat: FinCategory, parts: int = 2) -> SetPresheaf:
    """Coproduct of a few representables: always a valid presheaf."""
    from .fincat import diagram
    from .presheaf import ind_lim

    shape = build_shape(f"discrete({parts})")
    nodes = {j: rng.choice(cat.objects) for j in shape.objects}
    return ind_lim(diagram(shape, cat, nodes))


# -- set diagrams ------------------------------------------------------------------

def random_finset(rng: random.Random, name: str, max_size: int = 3, min_size: int = 0) -> FinSet:
    n = rng.randint(min_size, max_size)
    return FinSet(name, tuple(f"{name.lower()}{i}" for i in range(n)))


def random_function(rng: random.Random, x: FinSet, y: FinSet) -> FinFunction:
    return FinFunction(x, y, {a: rng.choice(y.elements) for a in x.elements})


def random_set_diagram(rng: random.Random, shape: FinCategory | str, max_size: int = 3,
                       variance: str = COVARIANT) -> SetDiagram:
    """Random sets and functions on a shape whose only composites involve identities."""
    if isinstance(shape, str):
        shape = build_shape(shape)
    if any(g not in shape.identity_ids and f not in shape.identity_ids for g, f in shape.compose):
        raise ValueError("random_set_diagram needs a shape without non-trivial composites")
    while True:
        sets = {j: random_finset(rng, j, max_size) for j in shape.objects}
        fns = {}
        for m in shape.non_identities():
            s, d = shape.src(m), shape.dst(m)
            a, b = (s, d) if variance == COVARIANT else (d, s)
            if sets[a].elements and not sets[b].elements:
                break
            fns[m] = random_function(rng, sets[a], sets[b])
        else:
            return SetDiagram(shape, sets, fns, variance)


def random_diagram_in(rng: random.Random, shape: FinCategory, target: FinCategory, tries: int = 500):
    """A random functor ``shape -> target`` for shapes without non-trivial composites."""
    from .fincat import Functor

    for _ in range(tries):
        nodes = {j: rng.choice(target.objects) for j in shape.objects}
        edges = {}
        for m in shape.non_identities():
            cands = target.hom(nodes[shape.src(m)], nodes[shape.dst(m)])
            if not cands:
                break
            edges[m] = rng.choice(cands)
        else:
            f = Functor(shape, target, nodes, edges)
            if not f.violations():
                return f
    return None
