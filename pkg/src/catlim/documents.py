"""JSON documents for categories, set diagrams, presheaves, expressions,
knowledge bases and law manifests.

Every loader raises :class:`DocumentError` for missing fields or bad JSON
and :class:`StructuralError` for dangling ids; law violations are left for
the validators to report.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .concept import ConceptEntry, ConceptKB, LimitExpression, realize
from .config import Caps
from .errors import DocumentError, StructuralError
from .fincat import FinCategory, Morphism, ShapeKind, build_shape, check_structure
from .finset import CONTRAVARIANT, COVARIANT, FinFunction, FinSet, SetDiagram
from .presheaf import SetPresheaf


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def dump_json(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _need(doc: Any, key: str, what: str) -> Any:
    if not isinstance(doc, dict):
        raise DocumentError(f"{what} document must be an object")
    if key not in doc:
        raise DocumentError(f"{what} document lacks field {key!r}")
    return doc[key]


# -- categories ----------------------------------------------------------------------

def category_from_doc(doc: dict, caps: Caps | None = None) -> FinCategory:
    name = doc.get("name", "C") if isinstance(doc, dict) else "C"
    objects = _need(doc, "objects", "category")
    try:
        mors = [Morphism(m["id"], m["src"], m["dst"]) for m in _need(doc, "morphisms", "category")]
        identities = dict(doc.get("identities", {}))
        compose = {(g, f): h for g, f, h in doc.get("compose", [])}
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"category {name!r}: malformed entry ({exc})") from None
    ids = {m.id for m in mors}
    for x in objects:
        if x not in identities:
            i = f"id_{x}"
            identities[x] = i
            if i not in ids:
                mors.append(Morphism(i, x, x))
                ids.add(i)
    cat = FinCategory(name, objects, mors, identities, compose, caps=caps, infer_identity_laws=True)
    check_structure(cat)
    return cat


def category_to_doc(cat: FinCategory) -> dict:
    idset = set(cat.identities.values())
    return {
        "name": cat.name,
        "objects": list(cat.objects),
        "morphisms": [{"id": m.id, "src": m.src, "dst": m.dst} for m in cat.morphisms.values()],
        "identities": dict(cat.identities),
        "compose": [[g, f, h] for (g, f), h in cat.compose.items() if g not in idset and f not in idset],
    }


# -- sets, functions, diagrams ------------------------------------------------------------

def finset_from_doc(doc: Any, default_id: str) -> FinSet:
    if isinstance(doc, list):
        return FinSet(default_id, tuple(str(e) for e in doc))
    elems = _need(doc, "elements", "set")
    return FinSet(doc.get("id", default_id), tuple(str(e) for e in elems))


def finset_to_doc(s: FinSet) -> list[str]:
    return list(s.elements)


def _tables(fam: SetDiagram, tables: dict, what: str) -> dict[str, FinFunction]:
    out = {}
    for m, table in tables.items():
        if m not in fam.shape.morphisms:
            raise StructuralError(f"{what}: unknown morphism {m!r}")
        s, t = fam.arrow(m)
        if not isinstance(table, dict):
            raise DocumentError(f"{what}: table for {m!r} must be an object")
        out[m] = FinFunction(fam.objects[s], fam.objects[t], {str(a): str(b) for a, b in table.items()})
    return out


def shape_from_doc(doc: Any) -> FinCategory:
    if isinstance(doc, str):
        return build_shape(doc)
    return category_from_doc(doc)


def diagram_from_doc(doc: dict) -> SetDiagram:
    shape = shape_from_doc(_need(doc, "shape", "diagram"))
    variance = doc.get("variance", COVARIANT)
    objects = {j: finset_from_doc(v, j) for j, v in _need(doc, "objects", "diagram").items()}
    for j in objects:
        if j not in shape.objects:
            raise StructuralError(f"diagram: unknown shape object {j!r}")
    d = SetDiagram(shape, objects, {}, variance)
    d.morphisms.update(_tables(d, doc.get("morphisms", {}), "diagram"))
    return d


def diagram_to_doc(d: SetDiagram, shape_text: str | None = None) -> dict:
    idset = set(d.shape.identities.values())
    return {
        "shape": shape_text or category_to_doc(d.shape),
        "variance": d.variance,
        "objects": {j: finset_to_doc(s) for j, s in d.objects.items()},
        "morphisms": {m: dict(f.table) for m, f in d.morphisms.items() if m not in idset},
    }


def presheaf_from_doc(doc: dict, base: FinCategory | None = None, name: str = "P") -> SetPresheaf:
    if "base" in doc:
        base = category_from_doc(doc["base"])
    if base is None:
        raise DocumentError("presheaf document lacks field 'base'")
    variance = doc.get("variance", CONTRAVARIANT)
    values = {x: finset_from_doc(v, f"{name}({x})") for x, v in _need(doc, "values", "presheaf").items()}
    for x in values:
        if x not in base.objects:
            raise StructuralError(f"presheaf {name}: unknown object {x!r}")
    missing = set(base.objects) - set(values)
    if missing:
        raise StructuralError(f"presheaf {name}: no value for {sorted(missing)}")
    p = SetPresheaf(base, variance, values, {}, name=doc.get("name", name))
    p.morphisms.update(_tables(p, doc.get("actions", {}), f"presheaf {name}"))
    for m in base.morphisms:
        if m not in p.morphisms:
            raise StructuralError(f"presheaf {name}: no action for {m!r}")
    return p


def presheaf_to_doc(p: SetPresheaf, with_base: bool = False) -> dict:
    idset = set(p.base.identities.values())
    doc = {
        "name": p.name,
        "variance": p.variance,
        "values": {x: finset_to_doc(s) for x, s in p.values.items()},
        "actions": {m: dict(f.table) for m, f in p.actions.items() if m not in idset},
    }
    if with_base:
        doc["base"] = category_to_doc(p.base)
    return doc


# -- expressions and knowledge bases ---------------------------------------------------------------

def expression_from_doc(doc: dict) -> LimitExpression:
    op = _need(doc, "op", "expression")
    shape = _need(doc, "shape", "expression")
    if not isinstance(shape, str):
        raise DocumentError("expression shape must be a shape name such as 'cospan'")
    ShapeKind.parse(shape)
    return LimitExpression.make(op, shape, dict(_need(doc, "nodes", "expression")),
                                dict(doc.get("edges", {})))


def expression_to_doc(expr: LimitExpression) -> dict:
    return expr.to_dict()


def kb_from_doc(doc: dict, caps: Caps | None = None) -> ConceptKB:
    cat = category_from_doc(_need(doc, "semantic_category", "knowledge base"), caps)
    concepts = {}
    for name, entry in doc.get("concepts", {}).items():
        exprs = tuple(expression_from_doc(e) for e in entry.get("expressions", []))
        concepts[name] = ConceptEntry(name, exprs, bool(entry.get("trusted_leaf", True)))
    universe = doc.get("task_universe", {})
    functors = {}
    for i, fdoc in enumerate(universe.get("functors", [])):
        fname = fdoc.get("name", f"F{i + 1}")
        f = presheaf_from_doc(dict(fdoc, variance=COVARIANT), cat, fname)
        functors[fname] = f
    kb = ConceptKB(cat, concepts, {}, tuple(universe.get("probes", [])), functors, doc.get("name", "kb"))
    overrides: dict[str, dict[str, SetPresheaf]] = {}
    for name, by_var in doc.get("presheaf_overrides", {}).items():
        for key, sub in by_var.items():
            if key == "limit":
                p = realize(kb, expression_from_doc(sub))
                p.name = name
            elif key in (COVARIANT, CONTRAVARIANT):
                p = presheaf_from_doc(dict(sub, variance=key), cat, name)
            else:
                raise DocumentError(f"override for {name!r}: unknown key {key!r}")
            overrides.setdefault(name, {})[p.variance] = p
    return ConceptKB(cat, concepts, overrides, kb.probes, functors, kb.name)


def kb_to_doc(kb: ConceptKB) -> dict:
    return {
        "name": kb.name,
        "semantic_category": category_to_doc(kb.semantic_category),
        "concepts": {name: {"expressions": [expression_to_doc(e) for e in entry.expressions],
                            "trusted_leaf": entry.trusted_leaf}
                     for name, entry in sorted(kb.concepts.items())},
        "presheaf_overrides": {name: {var: {k: v for k, v in presheaf_to_doc(p).items() if k != "variance"}
                                      for var, p in sorted(by_var.items())}
                               for name, by_var in sorted(kb.presheaf_overrides.items())},
        "task_universe": {
            "probes": list(kb.probes),
            "functors": [{k: v for k, v in presheaf_to_doc(f).items() if k != "variance"}
                         for _, f in sorted(kb.functors.items())],
        },
    }


def load_kb(path: str | Path, caps: Caps | None = None) -> ConceptKB:
    return kb_from_doc(load_json(path), caps)


# -- document kinds ---------------------------------------------------------------------------

def document_kind(doc: Any) -> str:
    """Classify a parsed document: category, diagram, presheaf, kb, expression or manifest."""
    if isinstance(doc, list):
        return "manifest"
    if not isinstance(doc, dict):
        raise DocumentError("a document must be a JSON object or list")
    if "semantic_category" in doc:
        return "kb"
    if "base" in doc and "values" in doc:
        return "presheaf"
    if "op" in doc and "nodes" in doc:
        return "expression"
    if "shape" in doc:
        return "diagram"
    if "objects" in doc and "morphisms" in doc:
        return "category"
    if "laws" in doc:
        return "manifest"
    raise DocumentError("unrecognised document kind")
