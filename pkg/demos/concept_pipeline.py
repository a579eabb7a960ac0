"""Decompose, verify, corrupt, repair and learn concepts in the bundled knowledge bases."""
from catlim.concept import deconcept, diagram_analogy, learn_concept, verify_with_tasks, verify_with_verifier
from catlim.fixtures import dp_kb, loops_kb, planted_instance, seeded_corruptions

kb = dp_kb()
print(deconcept(kb, "dynamic_programming").to_text(), end="")
print("verifier:", verify_with_verifier(kb, "dynamic_programming").passed)
print("tasks:", verify_with_tasks(kb, "dynamic_programming", seed=0).passed)

bad = seeded_corruptions(kb, "dynamic_programming", 1, seed=4)[0]
out = verify_with_verifier(bad.kb, "dynamic_programming")
print(f"corrupted {bad.node!r}: passed={out.passed}, blamed node={out.node!r}")
fixed = learn_concept(bad.kb, bad.node, supervised=kb.entry(bad.node).expressions[0])
print("after supervised repair:", verify_with_verifier(fixed.kb, "dynamic_programming").passed)

inst = planted_instance(0)
res = learn_concept(inst.kb, inst.concept, k=4, seed=0)
print("planted concept learned:", res.ok, res.expression.to_dict() if res.expression else None)

loops = loops_kb()
an = diagram_analogy(loops.entry("for_loop").expressions[0], loops.entry("while_loop").expressions[0])
print("for/while analogy:", an.to_dict())
