"""Builders for the shipped knowledge bases and for seeded random KBs.

The shipped JSON files under ``catlim/data`` are produced by these builders;
a test rebuilds them and compares.  Overrides are isomorphic copies of the
realized expressions with shuffled element names, so a consistent KB never
passes merely because two tables are literally equal.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .concept import IND, PRO, ConceptEntry, ConceptKB, LimitExpression, deconcept, realize
from .fincat import FinCategory, build_shape, free_category
from .finset import COVARIANT, FinFunction, FinSet
from .generators import random_dag_category, random_diagram_in, random_presheaf
from .presheaf import SetPresheaf, is_representable


def relabeled_copy(p: SetPresheaf, rng: random.Random, name: str | None = None) -> SetPresheaf:
    """An isomorphic presheaf whose elements are renamed by a random bijection."""
    values, renames = {}, {}
    for x in p.base.objects:
        elems = list(p.at(x).elements)
        labels = [f"{x}~{i}" for i in range(len(elems))]
        rng.shuffle(labels)
        renames[x] = dict(zip(elems, labels))
        values[x] = FinSet(f"{name or p.name}({x})", tuple(sorted(labels)))
    actions = {}
    for m, fn in p.actions.items():
        s, t = p.arrow(m)
        actions[m] = FinFunction(values[s], values[t],
                                 {renames[s][a]: renames[t][b] for a, b in fn.table.items()})
    return SetPresheaf(p.base, p.variance, values, actions, name=name or p.name)


def _task_functors(cat: FinCategory, seed: int, count: int = 4, max_size: int = 3) -> dict[str, SetPresheaf]:
    rng = random.Random(seed)
    out = {}
    for i in range(count):
        f = random_presheaf(rng, cat, max_size, COVARIANT, min_size=1)
        f.name = f"F{i + 1}"
        out[f.name] = f
    return out


def consistent_kb(name: str, cat: FinCategory, entries: dict[str, list[LimitExpression]],
                  seed: int = 0, untrusted: tuple[str, ...] = (), functors: int = 4) -> ConceptKB:
    """A KB whose overrides are relabeled realizations of each first expression."""
    concepts = {c: ConceptEntry(c, tuple(exprs), c not in untrusted) for c, exprs in entries.items()}
    for c in untrusted:
        concepts.setdefault(c, ConceptEntry(c, (), False))
    bare = ConceptKB(cat, concepts, {}, (), {}, name)
    rng = random.Random(seed)
    overrides: dict[str, dict[str, SetPresheaf]] = {}
    for c, exprs in sorted(entries.items()):
        for expr in exprs:
            by_var = overrides.setdefault(c, {})
            if expr.variance not in by_var:
                by_var[expr.variance] = relabeled_copy(realize(bare, expr), rng, name=c)
    return ConceptKB(cat, concepts, overrides, tuple(cat.objects), _task_functors(cat, seed, functors),
                     name)


# -- the dynamic-programming knowledge base ---------------------------------------------------

DP_OBJECTS = [
    "boundary_case", "dp_1d", "dp_2d", "dp_graph", "dynamic_programming", "for_loop",
    "memo_table", "optimal_state", "problem", "recurrence", "solution", "state_array_1d",
    "state_array_2d", "sub_problem_recursion", "termination",
]

DP_RELATIONS = [
    ("reduces_to", "sub_problem_recursion", "problem"),
    ("memoizes", "sub_problem_recursion", "problem"),
    ("encodes", "optimal_state", "problem"),
    ("indexes", "state_array_1d", "problem"),
    ("solved_by", "problem", "solution"),
    ("halts_at", "for_loop", "termination"),
    ("triggers", "boundary_case", "termination"),
    ("bounds", "state_array_2d", "termination"),
    ("ensures", "termination", "solution"),
    ("fills_1d", "dp_1d", "state_array_1d"),
    ("fills_2d", "dp_2d", "state_array_2d"),
    ("walks", "dp_graph", "problem"),
    ("caches", "memo_table", "problem"),
    ("unfolds_to", "recurrence", "termination"),
]


def dp_category() -> FinCategory:
    return free_category("dp_semantics", DP_OBJECTS, DP_RELATIONS)


def dp_entries() -> dict[str, list[LimitExpression]]:
    mk = LimitExpression.make
    return {
        "dynamic_programming": [
            mk(PRO, "cospan", {"I1": "sub_problem_recursion", "I2": "optimal_state", "I3": "problem"},
               {"m1": "reduces_to", "m2": "encodes"}),
            mk(IND, "discrete(3)", {"I1": "dp_1d", "I2": "dp_2d", "I3": "dp_graph"}),
        ],
        "sub_problem_recursion": [
            mk(PRO, "cospan", {"I1": "for_loop", "I2": "boundary_case", "I3": "termination"},
               {"m1": "halts_at", "m2": "triggers"}),
        ],
        "optimal_state": [
            mk(IND, "discrete(2)", {"I1": "state_array_1d", "I2": "state_array_2d"}),
        ],
    }


def dp_kb(seed: int = 0) -> ConceptKB:
    return consistent_kb("dynamic_programming", dp_category(), dp_entries(), seed)


# -- small illustrative KBs -------------------------------------------------------------------

def loops_kb(seed: int = 0) -> ConceptKB:
    """Two loop concepts defined by cospans of the same shape."""
    objs = ["body", "counter", "condition", "for_loop", "loop_exit", "state", "while_loop"]
    rels = [("advances", "counter", "loop_exit"), ("tests", "condition", "loop_exit"),
            ("mutates", "body", "state"), ("checks", "condition", "state"),
            ("for_exits", "for_loop", "loop_exit"), ("while_exits", "while_loop", "loop_exit")]
    cat = free_category("loops", objs, rels)
    mk = LimitExpression.make
    entries = {
        "for_loop": [mk(PRO, "cospan", {"I1": "counter", "I2": "condition", "I3": "loop_exit"},
                        {"m1": "advances", "m2": "tests"})],
        "while_loop": [mk(PRO, "cospan", {"I1": "body", "I2": "condition", "I3": "state"},
                          {"m1": "mutates", "m2": "checks"})],
    }
    return consistent_kb("loops", cat, entries, seed)


def wall_clock_kb(seed: int = 0) -> ConceptKB:
    """A wall clock: a clock and a wall-mounted thing over a shared fixture point."""
    objs = ["clock", "hanging_thing", "mount_point", "time", "wall", "wall_clock"]
    rels = [("hangs_by", "clock", "mount_point"), ("hangs_on", "hanging_thing", "mount_point"),
            ("lean_on", "hanging_thing", "mount_point"), ("fixed_to", "mount_point", "wall"),
            ("shows", "clock", "time")]
    cat = free_category("household", objs, rels)
    entries = {"wall_clock": [LimitExpression.make(
        PRO, "cospan", {"I1": "clock", "I2": "hanging_thing", "I3": "mount_point"},
        {"m1": "hangs_by", "m2": "hangs_on"})]}
    return consistent_kb("wall_clock", cat, entries, seed)


def cyclic_kb() -> ConceptKB:
    """``loop_a`` mentions ``loop_b`` which mentions ``loop_a`` again."""
    cat = free_category("cyclic", ["base", "loop_a", "loop_b"], [])
    mk = LimitExpression.make
    concepts = {
        "loop_a": ConceptEntry("loop_a", (mk(IND, "discrete(2)", {"I1": "loop_b", "I2": "base"}),)),
        "loop_b": ConceptEntry("loop_b", (mk(IND, "discrete(1)", {"I1": "loop_a"}),)),
    }
    return ConceptKB(cat, concepts, {}, ("base",), {}, "cyclic")


# -- corruptions ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Corruption:
    kb: ConceptKB
    node: str
    edit: str


def _edits(kb: ConceptKB, concept: str, expr: LimitExpression):
    cat = kb.semantic_category
    shape = expr.shape_category()
    nodes, edges = expr.node_map(), kb.diagram_of(expr).morphism_map
    arrows = shape.non_identities()
    yield LimitExpression(PRO if expr.op == IND else IND, expr.shape, expr.nodes, expr.edges), \
        f"{concept}: operator {expr.op} flipped"
    for j in shape.objects:
        for x in cat.objects:
            if x == nodes[j]:
                continue
            new_nodes = dict(nodes, **{j: x})
            new_edges = {m: edges[m] for m in arrows}
            ok = True
            for m in arrows:
                if j in (shape.src(m), shape.dst(m)):
                    cands = cat.hom(new_nodes[shape.src(m)], new_nodes[shape.dst(m)])
                    if not cands:
                        ok = False
                        break
                    new_edges[m] = cands[0]
            if ok:
                yield LimitExpression.make(expr.op, expr.shape, new_nodes, new_edges), \
                    f"{concept}: node {j} {nodes[j]} -> {x}"
    for m in arrows:
        for g in cat.hom(nodes[shape.src(m)], nodes[shape.dst(m)]):
            if g != edges[m]:
                yield LimitExpression.make(expr.op, expr.shape, nodes, dict(edges, **{m: g})), \
                    f"{concept}: edge {m} {edges[m]} -> {g}"


def corruption_pool(kb: ConceptKB, concept: str) -> list[Corruption]:
    """Every single edit of one extracted expression in the decomposition of ``concept``.

    An edit flips the operator, swaps one node for another object (re-pointing
    the incident edges at the first available relation) or swaps one edge.
    """
    pool = []
    for node in deconcept(kb, concept).non_leaf_nodes():
        expr = node.expression
        rest = list(kb.entry(node.concept).expressions[1:])
        for new, label in _edits(kb, node.concept, expr):
            pool.append(Corruption(kb.with_expressions(node.concept, [new] + rest), node.concept, label))
    return pool


def seeded_corruptions(kb: ConceptKB, concept: str, count: int = 50, seed: int = 0) -> list[Corruption]:
    pool = corruption_pool(kb, concept)
    if len(pool) < count:
        raise ValueError(f"only {len(pool)} single edits available, {count} requested")
    return random.Random(seed).sample(pool, count)


# -- random KBs ---------------------------------------------------------------------------------

SMALL_SHAPES = ("discrete(1)", "discrete(2)", "parallel_pair", "cospan", "span")


def random_expression(rng: random.Random, cat: FinCategory, exclude: str | None = None,
                      shapes=SMALL_SHAPES) -> LimitExpression | None:
    others = [x for x in cat.objects if x != exclude]
    if not others:
        return None
    for _ in range(50):
        text = rng.choice(shapes)
        shape = build_shape(text)
        d = random_diagram_in(rng, shape, cat, tries=50)
        if d is None or exclude in d.object_map.values():
            continue
        return LimitExpression.make(rng.choice([IND, PRO]), text, d.object_map,
                                    {m: d.mor(m) for m in shape.non_identities()})
    return None


def random_kb(seed: int, max_objects: int = 5, max_morphisms: int = 10,
              corrupt_rate: float = 0.4) -> ConceptKB:
    """A random DAG semantic category with a few concepts, some inconsistent.

    A consistent concept's override is a relabeled copy of its expression's
    realization; an inconsistent one gets the realization of some other
    random expression (or of a random presheaf) instead.
    """
    rng = random.Random(seed)
    cat = random_dag_category(rng, max_objects, max_morphisms, name=f"rand{seed}")
    while len(cat.objects) < 3:
        cat = random_dag_category(rng, max_objects, max_morphisms, name=f"rand{seed}")
    concepts, overrides = {}, {}
    bare = ConceptKB(cat, {}, {}, (), {}, "bare")
    for c in rng.sample(cat.objects, rng.randint(1, min(3, len(cat.objects)))):
        expr = random_expression(rng, cat, exclude=c)
        if expr is None:
            continue
        concepts[c] = ConceptEntry(c, (expr,))
        truth = realize(bare, expr)
        if rng.random() < corrupt_rate:
            other = random_expression(rng, cat, exclude=c)
            if other is not None and other.variance == expr.variance:
                truth = realize(bare, other)
            else:
                truth = random_presheaf(rng, cat, 2, expr.variance)
        overrides[c] = {expr.variance: relabeled_copy(truth, rng, name=c)}
    return ConceptKB(cat, concepts, overrides, tuple(cat.objects), _task_functors(cat, seed), f"rand{seed}")


@dataclass(frozen=True)
class PlantedInstance:
    kb: ConceptKB
    concept: str
    planted: LimitExpression


def planted_instance(seed: int, k: int = 4) -> PlantedInstance:
    """A KB whose concept ``target`` is secretly a random expression over the others.

    Planted expressions use no identity edges and never realize to a
    representable, so recovering one is not the trivial point-shape answer.
    """
    rng = random.Random(seed)
    while True:
        cat = random_dag_category(rng, 4, 8, name=f"plant{seed}")
        if len(cat.objects) < 2:
            continue
        objs = ["target"] + list(cat.objects)
        rels = [(m, cat.src(m), cat.dst(m)) for m in cat.non_identities() if "." not in m]
        full = free_category(f"plant{seed}", objs, rels)
        expr = random_expression(rng, full, exclude="target")
        if expr is None or len(expr.nodes) > k:
            continue
        if any(f in full.identity_ids for f in expr.edge_map().values()):
            continue
        bare = ConceptKB(full, {}, {}, (), {}, "bare")
        realized = realize(bare, expr)
        if is_representable(realized):
            continue
        truth = relabeled_copy(realized, rng, name="target")
        kb = ConceptKB(full, {"target": ConceptEntry("target", ())}, {"target": {expr.variance: truth}},
                       tuple(full.objects), _task_functors(full, seed), f"plant{seed}")
        return PlantedInstance(kb, "target", expr)


__all__ = [
    "default_manifest", "figure_documents", "shipped_documents", "write_shipped",
    "Corruption", "PlantedInstance", "consistent_kb", "corruption_pool", "cyclic_kb", "dp_category",
    "dp_entries", "dp_kb", "loops_kb", "planted_instance", "random_expression", "random_kb",
    "relabeled_copy", "seeded_corruptions", "wall_clock_kb",
]


# -- shipped documents -------------------------------------------------------------------------

def figure_documents() -> dict[str, dict]:
    """Set diagrams for the product, product over a point, equalizer, coproduct and coequalizer."""
    x = ["x1", "x2", "x3"]
    y = ["y1", "y2"]
    return {
        "fig_product.json": {"shape": "discrete(2)", "variance": "covariant",
                             "objects": {"I1": x, "I2": y}, "morphisms": {}},
        "fig_product_over_point.json": {
            "shape": "cospan", "variance": "covariant",
            "objects": {"I1": x, "I2": y, "I3": ["*"]},
            "morphisms": {"m1": {e: "*" for e in x}, "m2": {e: "*" for e in y}}},
        "fig_equalizer.json": {
            "shape": "parallel_pair", "variance": "covariant",
            "objects": {"I1": ["1", "2", "3", "4"], "I2": ["a", "b", "c"]},
            "morphisms": {"m1": {"1": "a", "2": "b", "3": "b", "4": "c"},
                          "m2": {"1": "b", "2": "b", "3": "b", "4": "b"}}},
        "fig_coproduct.json": {"shape": "discrete(2)", "variance": "covariant",
                               "objects": {"I1": x, "I2": ["u1", "u2"]}, "morphisms": {}},
        "fig_coequalizer.json": {
            "shape": "parallel_pair", "variance": "covariant",
            "objects": {"I1": ["r1", "r2"], "I2": ["1", "2", "3", "4", "5"]},
            "morphisms": {"m1": {"r1": "1", "r2": "2"}, "m2": {"r1": "2", "r2": "3"}}},
    }


def default_manifest() -> list[dict]:
    """Every law on a modest seeded batch, plus a few hand-written instances."""
    from .documents import category_to_doc

    diamond = category_to_doc(free_category("V", ["a", "b", "c"], [("f", "a", "c"), ("g", "b", "c")]))
    gen = [
        ("yoneda", {"seed": 0, "count": 6, "max_size": 2}),
        ("dual_definition", {"seed": 0, "count": 60}),
        ("universal_property", {"seed": 0, "count": 20}),
        ("hom_lim", {"seed": 0, "count": 15}),
        ("indlim_hom", {"seed": 0, "count": 15}),
        ("prolim_hom", {"seed": 0, "count": 15}),
        ("otherside_hom", {"seed": 0, "count": 15}),
        ("adjoint_preserves_lim", {"seed": 0, "count": 10}),
        ("representable_colim", {"seed": 0, "count": 15}),
        ("yoneda_extension", {"seed": 0, "count": 10}),
    ]
    out = [{"law": law, "instance": {"generated": params}} for law, params in gen]
    out.append({"law": "hom_lim", "instance": {"inline": {
        "category": diamond, "diagram": {"shape": "cospan", "nodes": {"I1": "a", "I2": "b", "I3": "c"},
                                         "edges": {"m1": "f", "m2": "g"}},
        "kind": "inductive"}}})
    out.append({"law": "indlim_hom", "instance": {"inline": {
        "category": diamond, "diagram": {"shape": "discrete(2)", "nodes": {"I1": "a", "I2": "b"}},
        "presheaf": {"values": {"a": ["p", "q"], "b": ["r"], "c": ["s"]},
                     "actions": {"f": {"s": "p"}, "g": {"s": "r"}}}}}})
    out.append({"law": "universal_property", "instance": {"inline": {
        "diagram": figure_documents()["fig_equalizer.json"], "kind": "projective"}}})
    return out


def shipped_documents() -> dict[str, object]:
    """File name -> document for everything under ``catlim/data``."""
    from .documents import expression_to_doc, kb_to_doc

    docs: dict[str, object] = {
        "dp_kb.json": kb_to_doc(dp_kb()),
        "loops_kb.json": kb_to_doc(loops_kb()),
        "wall_clock_kb.json": kb_to_doc(wall_clock_kb()),
        "cyclic_kb.json": kb_to_doc(cyclic_kb()),
        "laws_default.json": default_manifest(),
    }
    broken = seeded_corruptions(dp_kb(), "dynamic_programming", 1, seed=7)[0]
    docs["dp_kb_corrupted.json"] = kb_to_doc(broken.kb)
    docs["dp_repair_target.json"] = expression_to_doc(dp_kb().entry(broken.node).expressions[0])
    docs.update(figure_documents())
    return docs


def write_shipped(directory) -> list[str]:
    from pathlib import Path

    from .documents import dump_json

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, doc in sorted(shipped_documents().items()):
        (directory / name).write_text(dump_json(doc), encoding="utf-8")
        written.append(name)
    return written


if __name__ == "__main__":
    import sys

    target = sys.argv[1] if len(sys.argv) > 1 else str(__import__("pathlib").Path(__file__).parent / "data")
    for n in write_shipped(target):
        print(n)
