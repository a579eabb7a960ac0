"""Concepts as presheaves over a semantic category, and the algorithms that
decompose, verify and learn them.

A knowledge base names the objects of a finite *semantic category*.  A
concept may carry limit expressions: an inductive expression (learning from
examples) is a diagram ``alpha: J -> C`` read as the formal colimit of
``h∘alpha`` in C^; a projective expression (learning from a definition) is a
diagram ``beta: J -> C`` read as the formal limit of ``k∘beta`` in C^v.
Both kinds store a covariant assignment ``J -> C``; for a projective
expression ``J`` plays the role of the opposite of the indexing category,
so a pullback-style definition is written as a cospan ``X -> Z <- Y``.

No trained model is involved.  Its two roles are filled by concrete
stand-ins: a table-backed limit extractor, and a discrete learner that
enumerates expressions and keeps the first one no sampled task can tell
apart from the concept.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Iterator, Mapping

from .config import Caps
from .errors import CapacityError, ResolutionError, StructuralError
from .fincat import FinCategory, Functor, ShapeKind, build_shape, shape_kind_of
from .finset import (
    CONTRAVARIANT, COVARIANT, INDUCTIVE, PROJECTIVE, FinFunction, FinSet, SetDiagram, colim,
    lim_matching_families,
)
from .presheaf import (
    SetPresheaf, dual_extension, enumerate_nat_trans, find_natural_iso, ind_lim, pro_lim, yoneda,
    yoneda_extension,
)

IND, PRO = "ind", "pro"
OPERATORS = {IND: INDUCTIVE, PRO: PROJECTIVE}
VARIANCE = {IND: CONTRAVARIANT, PRO: COVARIANT}
LIFT = {IND: "h", PRO: "k"}


# -- expressions ---------------------------------------------------------------------

@dataclass(frozen=True)
class LimitExpression:
    op: str
    shape: str
    nodes: tuple[tuple[str, str], ...]
    edges: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.op not in OPERATORS:
            raise StructuralError(f"operator must be 'ind' or 'pro', got {self.op!r}")
        object.__setattr__(self, "shape", str(ShapeKind.parse(self.shape)))
        object.__setattr__(self, "nodes", tuple(sorted(dict(self.nodes).items())))
        object.__setattr__(self, "edges", tuple(sorted(dict(self.edges).items())))

    @classmethod
    def make(cls, op: str, shape: str, nodes: Mapping[str, str],
             edges: Mapping[str, str] | None = None) -> "LimitExpression":
        return cls(op, shape, tuple(nodes.items()), tuple((edges or {}).items()))

    @property
    def operator(self) -> str:
        return OPERATORS[self.op]

    @property
    def variance(self) -> str:
        return VARIANCE[self.op]

    def node_map(self) -> dict[str, str]:
        return dict(self.nodes)

    def edge_map(self) -> dict[str, str]:
        return dict(self.edges)

    def shape_category(self) -> FinCategory:
        return build_shape(self.shape)

    def concepts(self) -> list[str]:
        return [c for _, c in self.nodes]

    def to_dict(self) -> dict:
        return {"op": self.op, "shape": self.shape, "nodes": dict(self.nodes),
                "edges": dict(self.edges)}

    def __str__(self):
        nodes = ", ".join(f"{j}={c}" for j, c in self.nodes)
        edges = ", ".join(f"{m}={f}" for m, f in self.edges)
        return f"{self.op} {self.shape} {{{nodes}}}" + (f" {{{edges}}}" if edges else "")


@dataclass(frozen=True)
class ConceptEntry:
    name: str
    expressions: tuple[LimitExpression, ...] = ()
    trusted_leaf: bool = True


@dataclass(frozen=True)
class HomTask:
    """``Hom(A, X)`` for side ``domain`` or ``Hom(X, A)`` for side ``codomain``."""

    side: str
    probe: str

    def __str__(self):
        return f"Hom(A,{self.probe})" if self.side == "domain" else f"Hom({self.probe},A)"


@dataclass(frozen=True)
class FunctorTask:
    functor: str

    def __str__(self):
        return f"{self.functor}(A)"


Task = HomTask | FunctorTask


@dataclass
class ConceptKB:
    semantic_category: FinCategory
    concepts: dict[str, ConceptEntry] = field(default_factory=dict)
    presheaf_overrides: dict[str, dict[str, SetPresheaf]] = field(default_factory=dict)
    probes: tuple[str, ...] = ()
    functors: dict[str, SetPresheaf] = field(default_factory=dict)
    name: str = "kb"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        cat = self.semantic_category
        obs = set(cat.objects)
        for name, entry in self.concepts.items():
            if name not in obs:
                raise ResolutionError(f"concept {name!r} is not an object of the semantic category")
            for expr in entry.expressions:
                self.diagram_of(expr)
        for name, by_var in self.presheaf_overrides.items():
            if name not in obs:
                raise ResolutionError(f"override for unknown concept {name!r}")
            for var, p in by_var.items():
                if p.base != cat or p.variance != var:
                    raise StructuralError(f"override for {name!r} has the wrong base or variance")
                p.check()
        for x in self.probes:
            if x not in obs:
                raise ResolutionError(f"probe {x!r} is not an object")
        for fname, f in self.functors.items():
            if f.base != cat or f.variance != COVARIANT:
                raise StructuralError(f"task functor {fname!r} must be covariant on the semantic category")
            f.check()

    def entry(self, name: str) -> ConceptEntry:
        if name in self.concepts:
            return self.concepts[name]
        if name in self.semantic_category.objects:
            return ConceptEntry(name)
        raise ResolutionError(f"unknown concept {name!r}")

    def diagram_of(self, expr: LimitExpression) -> Functor:
        cat = self.semantic_category
        shape = expr.shape_category()
        nodes = expr.node_map()
        if set(nodes) != set(shape.objects):
            raise StructuralError(f"expression {expr} must assign every shape object")
        for j, c in nodes.items():
            if c not in cat.objects:
                raise ResolutionError(f"expression node {j} names unknown concept {c!r}")
        edges = expr.edge_map()
        for m in shape.non_identities():
            if m not in edges:
                cands = cat.hom(nodes[shape.src(m)], nodes[shape.dst(m)])
                if len(cands) != 1:
                    raise StructuralError(f"edge {m} of {expr} is missing or ambiguous")
                edges[m] = cands[0]
            elif edges[m] not in cat.morphisms:
                raise ResolutionError(f"edge {m} names unknown relation {edges[m]!r}")
        d = Functor(shape, cat, nodes, edges, name=expr.shape)
        d.check()
        return d

    def tasks(self) -> list[Task]:
        out: list[Task] = []
        for x in self.probes:
            out.append(HomTask("domain", x))
            out.append(HomTask("codomain", x))
        out.extend(FunctorTask(f) for f in sorted(self.functors))
        return out

    def with_expressions(self, name: str, expressions: Iterable[LimitExpression]) -> "ConceptKB":
        """A new KB in which ``name`` carries ``expressions``."""
        entry = self.entry(name)
        concepts = dict(self.concepts)
        concepts[name] = replace(entry, expressions=tuple(expressions))
        return ConceptKB(self.semantic_category, concepts, self.presheaf_overrides,
                         self.probes, self.functors, self.name)


# -- presheaves of concepts and expressions ---------------------------------------------------

def concept_presheaf(kb: ConceptKB, name: str, variance: str = CONTRAVARIANT) -> SetPresheaf:
    """The override for ``name`` in this variance, or its Yoneda image."""
    kb.entry(name)
    override = kb.presheaf_overrides.get(name, {}).get(variance)
    if override is not None:
        return override
    return yoneda(kb.semantic_category, name, variance)


def realize(kb: ConceptKB, expr: LimitExpression) -> SetPresheaf:
    """Inductive expressions become ``ind_lim`` in C^; projective ones ``pro_lim`` in C^v."""
    d = kb.diagram_of(expr)
    return ind_lim(d) if expr.op == IND else pro_lim(d)


# -- extractors -------------------------------------------------------------------------------

Extractor = Callable[[ConceptKB, str], "LimitExpression | None"]


def first_extractor(kb: ConceptKB, name: str) -> LimitExpression | None:
    """The first listed expression, or None."""
    exprs = kb.entry(name).expressions
    return exprs[0] if exprs else None


def extract_limit(kb: ConceptKB, name: str, extractor: Extractor | None = None) -> LimitExpression | None:
    return (extractor or first_extractor)(kb, name)


class RandomExtractor:
    """Picks one of a concept's expressions at random, reproducibly per (seed, concept)."""

    def __init__(self, seed: int = 0):
        self.seed = seed

    def __call__(self, kb: ConceptKB, name: str) -> LimitExpression | None:
        exprs = kb.entry(name).expressions
        if not exprs:
            return None
        return random.Random(f"{self.seed}/{name}").choice(exprs)


# -- decomposition --------------------------------------------------------------------------

BASIC, CYCLE_REF, EXTRACTOR_NULL = "basic", "cycle_ref", "extractor_null"


@dataclass
class TreeNode:
    concept: str
    lift: str  # "h" (lives in C^) or "k" (lives in C^v)
    expression: LimitExpression | None = None
    leaf_kind: str | None = None
    children: list[tuple[str, "TreeNode"]] = field(default_factory=list)
    trusted: bool = True

    @property
    def is_leaf(self) -> bool:
        return self.expression is None

    def to_dict(self) -> dict:
        out: dict = {"concept": self.concept, "lift": self.lift}
        if self.is_leaf:
            out["leaf_kind"] = self.leaf_kind
            out["trusted"] = self.trusted
        else:
            out["expression"] = self.expression.to_dict()
            out["children"] = [{"via": j, "node": c.to_dict()} for j, c in self.children]
        return out


@dataclass
class DecompositionTree:
    root: TreeNode

    def nodes(self) -> Iterator[TreeNode]:
        stack = [self.root]
        while stack:
            n = stack.pop()
            yield n
            stack.extend(c for _, c in reversed(n.children))

    def non_leaf_nodes(self) -> list[TreeNode]:
        return [n for n in self.nodes() if not n.is_leaf]

    def to_dict(self) -> dict:
        return self.root.to_dict()

    def to_text(self) -> str:
        return tree_text(self.to_dict())

    def to_dot(self) -> str:
        ids: dict[int, str] = {}
        order = list(self.nodes())
        for i, n in enumerate(order):
            ids[id(n)] = f"n{i}"
        node_lines, edge_lines = [], []
        for n in order:
            if n.is_leaf:
                label = f"{n.concept}\\n{n.leaf_kind}"
                shape = "ellipse"
            else:
                label = f"{n.concept}\\n{n.expression.op} {n.expression.shape}"
                shape = "box"
            node_lines.append(f'  "{ids[id(n)]}" [label="{_dot_escape(label)}", shape={shape}];')
            kids = dict(n.children)
            for j, c in n.children:
                edge_lines.append(f'  "{ids[id(n)]}" -> "{ids[id(c)]}" [label="{_dot_escape(j)}"];')
            if not n.is_leaf:
                shape_cat = n.expression.shape_category()
                rel = n.expression.edge_map()
                for m in shape_cat.non_identities():
                    s, t = kids[shape_cat.src(m)], kids[shape_cat.dst(m)]
                    label = _dot_escape(f"{m}: {rel[m]}" if m in rel else m)
                    edge_lines.append(f'  "{ids[id(s)]}" -> "{ids[id(t)]}" '
                                      f'[label="{label}", style=dashed];')
        name = _dot_escape(f"D_{self.root.concept}")
        return "\n".join([f'digraph "{name}" {{', "  rankdir=TB;"] + node_lines
                         + sorted(edge_lines) + ["}"]) + "\n"


def _expr_text(doc: dict) -> str:
    nodes = ", ".join(f"{j}={c}" for j, c in sorted(doc["nodes"].items()))
    edges = ", ".join(f"{m}={f}" for m, f in sorted(doc["edges"].items()))
    return f"{doc['op']} {doc['shape']} {{{nodes}}}" + (f" {{{edges}}}" if edges else "")


def tree_text(doc: dict) -> str:
    """Indented text form of a tree given by :meth:`DecompositionTree.to_dict`."""
    lines: list[str] = []

    def walk(node: dict, prefix: str, label: str):
        head = f"{prefix}{label}{node['concept']} [{node['lift']}]"
        if "expression" not in node:
            flag = "" if node["trusted"] else ", untrusted"
            lines.append(f"{head} ({node['leaf_kind']}{flag})")
            return
        lines.append(f"{head} = {_expr_text(node['expression'])}")
        for child in node["children"]:
            walk(child["node"], prefix + "    ", f"{child['via']}: ")

    walk(doc, "", "")
    return "\n".join(lines) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace('"', '\\"')


def deconcept(kb: ConceptKB, concept: str, extractor: Extractor | None = None,
              max_depth: int = 32) -> DecompositionTree:
    """Recursively decompose ``concept`` into its extracted limit expressions.

    A child whose own expression is inductive is lifted with ``h`` into C^,
    one whose expression is projective with ``k`` into C^v; leaves take the
    side of their parent's operator.  One extraction per node is made and
    reused.  A concept that repeats one of its ancestors becomes a
    ``cycle_ref`` leaf.
    """
    extractor = extractor or first_extractor
    kb.entry(concept)

    def build(name: str, lift: str | None, path: tuple[str, ...]) -> TreeNode:
        if len(path) > max_depth:
            raise CapacityError("decomposition deeper than "
                                f"{max_depth}: {'/'.join(path)}")
        entry = kb.entry(name)
        if name in path[:-1]:
            return TreeNode(name, lift or "h", None, CYCLE_REF, trusted=True)
        expr = extractor(kb, name)
        if expr is None:
            kind = EXTRACTOR_NULL if name in kb.presheaf_overrides else BASIC
            return TreeNode(name, lift or "h", None, kind, trusted=entry.trusted_leaf)
        node = TreeNode(name, lift or LIFT[expr.op], expr)
        for j, child in expr.nodes:
            child_expr = extractor(kb, child) if child not in path else None
            child_lift = LIFT[child_expr.op] if child_expr is not None else LIFT[expr.op]
            node.children.append((j, build(child, child_lift, path + (child,))))
        return node

    return DecompositionTree(build(concept, None, (concept,)))


# -- tasks -------------------------------------------------------------------------------------

def similarity_d(a: FinSet, b: FinSet, graded: bool = False) -> float:
    """0 for isomorphic finite sets, 1 otherwise; ``graded`` gives a size ratio."""
    if graded:
        if len(a) == len(b):
            return 0.0
        return 1.0 - min(len(a), len(b)) / max(len(a), len(b))
    return 0.0 if len(a) == len(b) else 1.0


def _nat_set(name: str, nats) -> FinSet:
    from .laws import nat_code

    return FinSet(name, tuple(sorted(nat_code(n) for n in nats)))


def task_on_presheaf(kb: ConceptKB, task: Task, p: SetPresheaf) -> FinSet:
    cat = kb.semantic_category
    if isinstance(task, HomTask):
        if task.probe not in cat.objects:
            raise ResolutionError(f"unknown probe {task.probe!r}")
        rep = yoneda(cat, task.probe, p.variance)
        into_p = (task.side == "codomain") == (p.variance == CONTRAVARIANT)
        nats = enumerate_nat_trans(rep, p) if into_p else enumerate_nat_trans(p, rep)
        return _nat_set(str(task), nats)
    f = kb.functors.get(task.functor)
    if f is None:
        raise ResolutionError(f"unknown task functor {task.functor!r}")
    if p.variance == CONTRAVARIANT:
        return yoneda_extension(f, p).apex
    return dual_extension(f, p).apex


def task_on_expression(kb: ConceptKB, task: Task, expr: LimitExpression) -> FinSet:
    """Apply ``task`` to every constituent and combine with the matching (co)limit."""
    from .laws import _hom_diagram

    d = kb.diagram_of(expr)
    if isinstance(task, HomTask):
        if task.probe not in kb.semantic_category.objects:
            raise ResolutionError(f"unknown probe {task.probe!r}")
        probe_first = task.side == "codomain"
        sd = _hom_diagram(d, task.probe, probe_first)
        # the concept on the domain side turns colimits into limits and back
        use_lim = (expr.op == IND) != probe_first
    else:
        f = kb.functors.get(task.functor)
        if f is None:
            raise ResolutionError(f"unknown task functor {task.functor!r}")
        shape = d.source
        sd = SetDiagram(shape, {j: f.at(d.ob(j)) for j in shape.objects},
                        {m: f.morphisms[d.mor(m)] for m in shape.morphisms}, COVARIANT)
        use_lim = expr.op == PRO
    return (lim_matching_families(sd) if use_lim else colim(sd)).apex


def apply_task(kb: ConceptKB, task: Task, target, variance: str = CONTRAVARIANT) -> FinSet:
    """``T(target)`` for a concept name (in ``variance``) or a limit expression."""
    if isinstance(target, LimitExpression):
        return task_on_expression(kb, task, target)
    return task_on_presheaf(kb, task, concept_presheaf(kb, target, variance))


class TaskSampler:
    """Seeded draws without replacement; the universe is reshuffled when used up."""

    def __init__(self, tasks: list[Task], seed: int = 0):
        self.tasks = list(tasks)
        self.rng = random.Random(seed)
        self.pool: list[Task] = []

    def draw(self, m: int) -> list[Task]:
        out = []
        if not self.tasks:
            return out
        while len(out) < m:
            if not self.pool:
                self.pool = list(self.tasks)
                self.rng.shuffle(self.pool)
            out.append(self.pool.pop())
        return out


class _Evaluator:
    """Caches task values on concepts so repeated checks stay cheap."""

    def __init__(self, kb: ConceptKB):
        self.kb = kb
        self.cache: dict = {}

    def concept(self, task: Task, name: str, variance: str) -> FinSet:
        key = (task, name, variance)
        if key not in self.cache:
            self.cache[key] = apply_task(self.kb, task, name, variance)
        return self.cache[key]

    def loss(self, task: Task, name: str, expr: LimitExpression, graded: bool = False) -> float:
        return similarity_d(self.concept(task, name, expr.variance),
                            task_on_expression(self.kb, task, expr), graded)


# -- verification -----------------------------------------------------------------------------

@dataclass
class VerifyOutcome:
    passed: bool
    node: str | None = None
    task: str | None = None
    loss: float | None = None
    reason: str = ""
    checked: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "node": self.node, "task": self.task, "loss": self.loss,
                "reason": self.reason, "checked": self.checked}


def _untrusted_leaf(tree: DecompositionTree) -> TreeNode | None:
    for n in tree.nodes():
        if n.is_leaf and not n.trusted:
            return n
    return None


def verify_with_tasks(kb: ConceptKB, concept: str, extractor: Extractor | None = None,
                      seed: int = 0, m: int = 50, eps: float = 0.5,
                      sampler: Callable[[list, int], TaskSampler] | None = None) -> VerifyOutcome:
    """Task-based check of every non-leaf node of the decomposition.

    Each node gets ``m`` tasks from a freshly seeded sampler and fails on the
    first loss of at least ``eps``.
    """
    if m < 1 or not 0 < eps <= 1:
        raise ValueError("need m >= 1 and 0 < eps <= 1")
    tree = deconcept(kb, concept, extractor)
    bad = _untrusted_leaf(tree)
    if bad is not None:
        return VerifyOutcome(False, bad.concept, reason="untrusted leaf")
    ev = _Evaluator(kb)
    make = sampler or TaskSampler
    checked = []
    for node in tree.non_leaf_nodes():
        checked.append(node.concept)
        for task in make(kb.tasks(), seed).draw(m):
            loss = ev.loss(task, node.concept, node.expression)
            if loss >= eps:
                return VerifyOutcome(False, node.concept, str(task), loss, "task loss", checked)
    return VerifyOutcome(True, checked=checked)


def limit_verifier(kb: ConceptKB, expr: LimitExpression, concept: str,
                   caps: Caps | None = None) -> int:
    """1 iff the realized expression is naturally isomorphic to the concept."""
    return int(find_natural_iso(realize(kb, expr), concept_presheaf(kb, concept, expr.variance),
                                caps) is not None)


def verify_with_verifier(kb: ConceptKB, concept: str, extractor: Extractor | None = None,
                         verifier: Callable[[ConceptKB, LimitExpression, str], int] = limit_verifier
                         ) -> VerifyOutcome:
    tree = deconcept(kb, concept, extractor)
    bad = _untrusted_leaf(tree)
    if bad is not None:
        return VerifyOutcome(False, bad.concept, reason="untrusted leaf")
    checked = []
    for node in tree.non_leaf_nodes():
        checked.append(node.concept)
        if verifier(kb, node.expression, node.concept) == 0:
            return VerifyOutcome(False, node.concept, reason="not isomorphic to its expression",
                                 checked=checked)
    return VerifyOutcome(True, checked=checked)


def precisely_understands(kb: ConceptKB, concept: str, extractor: Extractor | None = None) -> bool:
    return verify_with_verifier(kb, concept, extractor).passed


def task_sweep(kb: ConceptKB, concept: str, extractor: Extractor | None = None) -> dict[str, dict[str, float]]:
    """Loss of every registered task at every non-leaf node."""
    ev = _Evaluator(kb)
    out = {}
    for node in deconcept(kb, concept, extractor).non_leaf_nodes():
        out[node.concept] = {str(t): ev.loss(t, node.concept, node.expression) for t in kb.tasks()}
    return out


# -- learning ---------------------------------------------------------------------------------

DEFAULT_SHAPES = ("discrete", "parallel_pair", "cospan", "span")


def hypothesis_space(kb: ConceptKB, concept: str, k: int = 4,
                     shapes: Iterable[str] = DEFAULT_SHAPES) -> Iterator[LimitExpression]:
    """All expressions over the KB's relations, deterministically ordered.

    Discrete shapes list each multiset of constituents once.  The concept
    itself is never a constituent of its own candidate expressions.
    """
    cat = kb.semantic_category
    others = [x for x in cat.objects if x != concept]
    for op in (IND, PRO):
        for tag in shapes:
            texts = [f"discrete({n})" for n in range(1, k + 1)] if tag == "discrete" else [tag]
            for text in texts:
                shape = build_shape(text)
                if len(shape.objects) > k:
                    continue
                objs = shape.objects
                if tag == "discrete":
                    assignments = itertools.combinations_with_replacement(others, len(objs))
                else:
                    assignments = itertools.product(others, repeat=len(objs))
                arrows = shape.non_identities()
                for combo in assignments:
                    nodes = dict(zip(objs, combo))
                    homs = [cat.hom(nodes[shape.src(m)], nodes[shape.dst(m)]) for m in arrows]
                    for choice in itertools.product(*homs):
                        yield LimitExpression.make(op, text, nodes, dict(zip(arrows, choice)))


@dataclass
class LearnResult:
    expression: LimitExpression | None
    kb: ConceptKB
    tried: int = 0
    best_loss: float | None = None
    best_expression: LimitExpression | None = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.expression is not None


def learn_concept(kb: ConceptKB, concept: str, k: int = 4, seed: int = 0, m: int = 50,
                  shapes: Iterable[str] = DEFAULT_SHAPES,
                  supervised: LimitExpression | None = None,
                  max_candidates: int | None = None) -> LearnResult:
    """Find an expression with zero loss on ``m`` sampled tasks.

    With ``supervised`` the given expression is installed as the concept's
    first expression once :func:`limit_verifier` confirms it; the original
    KB is left unchanged and a new one is returned.
    """
    if supervised is not None:
        if limit_verifier(kb, supervised, concept) != 1:
            return LearnResult(None, kb, 1, 1.0, supervised, "supervised target failed the verifier")
        rest = [e for e in kb.entry(concept).expressions[1:]]
        return LearnResult(supervised, kb.with_expressions(concept, [supervised] + rest), 1, 0.0,
                           supervised, "installed")
    tasks = TaskSampler(kb.tasks(), seed).draw(m)
    ev = _Evaluator(kb)
    best, best_loss, tried = None, None, 0
    for expr in hypothesis_space(kb, concept, k, shapes):
        tried += 1
        if max_candidates is not None and tried > max_candidates:
            break
        total = 0.0
        for t in tasks:
            total += ev.loss(t, concept, expr)
            if best_loss is not None and total >= best_loss:
                break
        if best_loss is None or total < best_loss:
            best, best_loss = expr, total
        if total == 0:
            rest = list(kb.entry(concept).expressions)
            return LearnResult(expr, kb.with_expressions(concept, [expr] + rest), tried, 0.0, expr,
                               "zero loss")
    return LearnResult(None, kb, tried, best_loss, best, "hypothesis space exhausted")


# -- analogies --------------------------------------------------------------------------------

@dataclass
class AnalogyResult:
    score: float
    full: bool
    object_map: dict[str, str]
    morphism_map: dict[str, str]
    node_correspondence: dict[str, str]
    same_operator: bool

    def to_dict(self) -> dict:
        return {"score": self.score, "full_shape_isomorphism": self.full,
                "object_map": self.object_map, "morphism_map": self.morphism_map,
                "node_correspondence": self.node_correspondence,
                "same_operator": self.same_operator}


def _edge_matching(s1: FinCategory, s2: FinCategory, omap: dict[str, str]) -> dict[str, str]:
    """Greedy injective matching of non-identity arrows along an object map."""
    used: set[str] = set()
    out = {}
    for m in s1.non_identities():
        a, b = omap.get(s1.src(m)), omap.get(s1.dst(m))
        if a is None or b is None:
            continue
        for m2 in s2.hom(a, b):
            if m2 not in used and m2 not in s2.identity_ids:
                used.add(m2)
                out[m] = m2
                break
    return out


def diagram_analogy(d1: LimitExpression, d2: LimitExpression) -> AnalogyResult:
    """Best correspondence between the shapes of two expressions.

    A full score of 1 means the shapes are isomorphic and the correspondence
    carries every constituent of ``d1`` to one of ``d2``.  Otherwise the
    score is the fraction of objects plus non-identity arrows matched by the
    best partial injective map.
    """
    s1, s2 = d1.shape_category(), d2.shape_category()
    if len(s1.objects) > 8 or len(s2.objects) > 8:
        raise CapacityError("analogy search is limited to shapes with at most 8 objects")
    n1 = len(s1.objects) + len(s1.non_identities())
    n2 = len(s2.objects) + len(s2.non_identities())
    total = max(n1, n2, 1)
    best = (-1, {}, {})
    targets = list(s2.objects) + [None] * len(s1.objects)
    seen = set()
    for perm in itertools.permutations(targets, len(s1.objects)):
        if perm in seen:
            continue
        seen.add(perm)
        omap = {a: b for a, b in zip(s1.objects, perm) if b is not None}
        emap = _edge_matching(s1, s2, omap)
        score = len(omap) + len(emap)
        if score > best[0]:
            best = (score, omap, emap)
    score, omap, emap = best
    full = (n1 == n2 and score == n1 and _is_shape_iso(s1, s2, omap, emap))
    nodes1, nodes2 = d1.node_map(), d2.node_map()
    corr = {nodes1[j]: nodes2[omap[j]] for j in s1.objects if j in omap}
    return AnalogyResult(round(score / total, 6), full, omap, emap, corr, d1.op == d2.op)


def _is_shape_iso(s1: FinCategory, s2: FinCategory, omap, emap) -> bool:
    if len(set(omap.values())) != len(s2.objects) or len(emap) != len(s2.non_identities()):
        return False
    full = dict(emap)
    for x in s1.objects:
        full[s1.id(x)] = s2.id(omap[x])
    return all(s2.compose.get((full[g], full[f])) == full[h] for (g, f), h in s1.compose.items())


def shape_of(expr: LimitExpression) -> ShapeKind:
    return shape_kind_of(expr.shape_category())
