"""``catlim`` command line.

Every command builds a JSON-ready result first; ``--format structured``
prints it as sorted JSON and ``--format text`` renders it for reading.

Exit status: 0 success or all laws hold, 1 a verification or law failure,
2 unreadable or malformed input, 3 a size cap or search budget was hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable

from . import concept as cc
from .documents import (
    category_from_doc, diagram_from_doc, document_kind, expression_from_doc, kb_from_doc,
    load_json, presheaf_from_doc,
)
from .errors import (
    CapacityError, DocumentError, LawError, ResolutionError, StructuralError, UnsupportedTargetError,
)
from .fincat import validate_category
from .finset import INDUCTIVE, PROJECTIVE, limit

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3
DATA_DIR = Path(__file__).resolve().parent / "data"
DEFAULT_MANIFEST = DATA_DIR / "laws_default.json"


class Outcome:
    def __init__(self, status: int, payload: dict, text: str | Callable[[dict], str]):
        self.status = status
        self.payload = payload
        self.text = text

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            return json.dumps(self.payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        text = self.text(self.payload) if callable(self.text) else self.text
        return text if text.endswith("\n") else text + "\n"


# -- validate ------------------------------------------------------------------------------------

def _validate_doc(doc) -> list[str]:
    kind = document_kind(doc)
    if kind == "category":
        return [str(v) for v in validate_category(category_from_doc(doc))]
    if kind == "presheaf":
        p = presheaf_from_doc(doc)
        return [f"base: {v}" for v in validate_category(p.base)] or list(p.violations())
    if kind == "diagram":
        d = diagram_from_doc(doc)
        return [f"shape: {v}" for v in validate_category(d.shape)] or list(d.violations())
    if kind == "kb":
        cat = category_from_doc(doc["semantic_category"])
        bad = [f"semantic category: {v}" for v in validate_category(cat)]
        if bad:
            return bad
        try:
            kb_from_doc(doc)
        except LawError as exc:
            return [str(exc)]
        return []
    if kind == "expression":
        expression_from_doc(doc)
        return []
    from .lawsuite import LAWS

    entries = doc if isinstance(doc, list) else doc.get("laws", [])
    return [f"entry {i}: unknown law {e.get('law')!r}" for i, e in enumerate(entries)
            if not isinstance(e, dict) or e.get("law") not in LAWS]


def cmd_validate(args) -> Outcome:
    files, status = [], EXIT_OK
    for path in args.paths:
        doc = load_json(path)
        kind = document_kind(doc)
        violations = _validate_doc(doc)
        files.append({"path": path, "kind": kind, "valid": not violations, "violations": violations})
        if violations:
            status = EXIT_FAIL

    def text(p):
        lines = []
        for f in p["files"]:
            lines.append(f"{f['path']}: {f['kind']} {'ok' if f['valid'] else 'INVALID'}")
            lines.extend(f"  {v}" for v in f["violations"])
        return "\n".join(lines)

    return Outcome(status, {"files": files}, text)


# -- limit / colimit -------------------------------------------------------------------------------

def _limit_cmd(args, kind: str) -> Outcome:
    d = diagram_from_doc(load_json(args.diagram))
    bad = d.violations()
    if bad:
        return Outcome(EXIT_FAIL, {"violations": list(bad)},
                       "diagram violates the functor laws:\n" + "\n".join(f"  {v}" for v in bad))
    res = limit(d, kind)
    payload = {
        "kind": kind,
        "apex": {"id": res.apex.id, "size": len(res.apex), "elements": list(res.apex.elements)},
        "legs": {j: dict(f.table) for j, f in sorted(res.legs.items())},
    }

    def text(p):
        lines = [f"{p['kind']} limit: {p['apex']['id']} with {p['apex']['size']} element(s)"]
        lines.extend(f"  {e}" for e in p["apex"]["elements"])
        for j, table in p["legs"].items():
            lines.append(f"leg {j}:")
            lines.extend(f"  {a} -> {b}" for a, b in sorted(table.items()))
        return "\n".join(lines)

    return Outcome(EXIT_OK, payload, text)


def cmd_limit(args) -> Outcome:
    return _limit_cmd(args, PROJECTIVE)


def cmd_colimit(args) -> Outcome:
    return _limit_cmd(args, INDUCTIVE)


# -- laws -----------------------------------------------------------------------------------------

def cmd_laws(args) -> Outcome:
    from .lawsuite import run_manifest

    results = run_manifest(load_json(args.manifest or DEFAULT_MANIFEST))
    entries = [r.to_dict() for r in results]
    status = EXIT_OK if all(r.ok for r in results) else EXIT_FAIL
    totals = {"holds": 0, "fails": 0, "not_applicable": 0}
    for e in entries:
        for k, v in e["counts"].items():
            totals[k] += v

    def text(p):
        lines = []
        for e in p["entries"]:
            c = e["counts"]
            verdict = "FAILS" if c["fails"] else "holds"
            lines.append(f"[{e['index']}] {e['law']} ({e['source']}): {verdict}  "
                         f"holds={c['holds']} fails={c['fails']} n/a={c['not_applicable']}")
            for f in e["failures"]:
                lines.append(f"    counterexample at {f['instance']}: "
                             + json.dumps(f.get("counterexample"), sort_keys=True))
        t = p["totals"]
        lines.append(f"total: holds={t['holds']} fails={t['fails']} n/a={t['not_applicable']}")
        return "\n".join(lines)

    return Outcome(status, {"entries": entries, "totals": totals}, text)


# -- knowledge-base commands --------------------------------------------------------------------------

def cmd_deconcept(args) -> Outcome:
    kb = kb_from_doc(load_json(args.kb))
    tree = cc.deconcept(kb, args.concept)
    if args.dot:
        dot = tree.to_dot()
        return Outcome(EXIT_OK, {"dot": dot}, dot)
    return Outcome(EXIT_OK, tree.to_dict(), cc.tree_text)


def cmd_verify(args) -> Outcome:
    kb = kb_from_doc(load_json(args.kb))
    if args.mode == "tasks":
        res = cc.verify_with_tasks(kb, args.concept, seed=args.seed, m=args.m, eps=args.eps)
    else:
        res = cc.verify_with_verifier(kb, args.concept)
    payload = dict(res.to_dict(), mode=args.mode, concept=args.concept)

    def text(p):
        checked = ", ".join(p["checked"]) or "none"
        if p["passed"]:
            return f"pass: {p['concept']} ({p['mode']}); nodes checked: {checked}"
        where = f" on task {p['task']} with loss {p['loss']}" if p["task"] else ""
        return f"FAIL at node {p['node']}{where}: {p['reason']}"

    return Outcome(EXIT_OK if res.passed else EXIT_FAIL, payload, text)


def cmd_learn(args) -> Outcome:
    kb = kb_from_doc(load_json(args.kb))
    target = expression_from_doc(load_json(args.supervised)) if args.supervised else None
    res = cc.learn_concept(kb, args.concept, k=args.k, seed=args.seed, m=args.m, supervised=target)
    verified = None
    if res.ok:
        verified = cc.limit_verifier(res.kb, res.expression, args.concept)
    payload = {
        "concept": args.concept, "found": res.ok, "reason": res.reason, "tried": res.tried,
        "expression": res.expression.to_dict() if res.expression else None,
        "best_loss": res.best_loss,
        "best_expression": res.best_expression.to_dict() if res.best_expression else None,
        "limit_verifier": verified,
    }

    def text(p):
        if p["found"]:
            return (f"learned {args.concept} = {res.expression} after {p['tried']} candidate(s) "
                    f"({p['reason']}); limit_verifier = {p['limit_verifier']}")
        best = f"; best loss {p['best_loss']} for {res.best_expression}" if res.best_expression else ""
        return f"no expression found for {args.concept} ({p['reason']}, {p['tried']} tried){best}"

    return Outcome(EXIT_OK if res.ok else EXIT_FAIL, payload, text)


def cmd_analogy(args) -> Outcome:
    kb = kb_from_doc(load_json(args.kb))
    exprs = []
    for c in (args.concept1, args.concept2):
        e = cc.extract_limit(kb, c)
        if e is None:
            raise ResolutionError(f"concept {c!r} has no limit expression to compare")
        exprs.append(e)
    res = cc.diagram_analogy(*exprs)
    payload = dict(res.to_dict(), concepts=[args.concept1, args.concept2],
                   expressions=[e.to_dict() for e in exprs])

    def text(p):
        kind = "full shape isomorphism" if p["full_shape_isomorphism"] else "partial correspondence"
        lines = [f"{p['concepts'][0]} ~ {p['concepts'][1]}: score {p['score']} ({kind})"]
        lines.extend(f"  {a} -> {b}" for a, b in sorted(p["object_map"].items()))
        lines.extend(f"  {a} -> {b}" for a, b in sorted(p["morphism_map"].items()))
        lines.extend(f"  {a} ~ {b}" for a, b in sorted(p["node_correspondence"].items()))
        if not p["same_operator"]:
            lines.append("  note: the operators differ (ind vs pro)")
        return "\n".join(lines)

    return Outcome(EXIT_OK, payload, text)


# -- argument parsing -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "structured"], default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="catlim", description="finite limits, presheaves and concept KBs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check documents for structural and law errors")
    p.add_argument("paths", nargs="+")
    p.set_defaults(func=cmd_validate)

    for name, fn in (("limit", cmd_limit), ("colimit", cmd_colimit)):
        p = sub.add_parser(name, parents=[common], help=f"compute the {name} of a set diagram")
        p.add_argument("diagram")
        p.set_defaults(func=fn)

    p = sub.add_parser("laws", parents=[common], help="run a law-suite manifest")
    p.add_argument("manifest", nargs="?", default=None)
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("deconcept", parents=[common], help="print the decomposition tree of a concept")
    p.add_argument("kb")
    p.add_argument("concept")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_deconcept)

    p = sub.add_parser("verify", parents=[common], help="check every node of a decomposition")
    p.add_argument("kb")
    p.add_argument("concept")
    p.add_argument("--mode", choices=["tasks", "verifier"], default="verifier")
    p.add_argument("--m", type=int, default=50)
    p.add_argument("--eps", type=float, default=0.5)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("learn", parents=[common], help="search for an expression of a concept")
    p.add_argument("kb")
    p.add_argument("concept")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--m", type=int, default=50)
    p.add_argument("--supervised", metavar="EXPR_PATH")
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("analogy", parents=[common], help="compare the diagrams of two concepts")
    p.add_argument("kb")
    p.add_argument("concept1")
    p.add_argument("concept2")
    p.set_defaults(func=cmd_analogy)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "m", 1) < 1 or not 0 < getattr(args, "eps", 0.5) <= 1:
            raise DocumentError("need --m >= 1 and 0 < --eps <= 1")
        out = args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (DocumentError, StructuralError, ResolutionError, LawError, UnsupportedTargetError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(out.render(args.format))
    return out.status


if __name__ == "__main__":
    sys.exit(main())
