import random

from catlim.concept import limit_verifier, precisely_understands
from catlim.documents import dump_json, load_json
from catlim.fixtures import (
    dp_kb, planted_instance, random_kb, relabeled_copy, seeded_corruptions, shipped_documents,
)
from catlim.presheaf import is_representable, isomorphic


def test_shipped_data_matches_builders(data_dir):
    docs = shipped_documents()
    on_disk = sorted(p.name for p in data_dir.glob("*.json"))
    assert on_disk == sorted(docs)
    for name, doc in docs.items():
        assert (data_dir / name).read_text(encoding="utf-8") == dump_json(doc), name


def test_corrupted_fixture_fails_and_target_repairs(data_dir):
    from catlim.concept import learn_concept
    from catlim.documents import expression_from_doc, load_kb

    kb = load_kb(data_dir / "dp_kb_corrupted.json")
    assert not precisely_understands(kb, "dynamic_programming")
    target = expression_from_doc(load_json(data_dir / "dp_repair_target.json"))
    res = learn_concept(kb, "sub_problem_recursion", supervised=target)
    assert res.ok and precisely_understands(res.kb, "dynamic_programming")


def test_builders_are_deterministic():
    assert dump_json(shipped_documents()["dp_kb.json"]) == dump_json(shipped_documents()["dp_kb.json"])
    a = [c.edit for c in seeded_corruptions(dp_kb(), "dynamic_programming", 50, seed=3)]
    b = [c.edit for c in seeded_corruptions(dp_kb(), "dynamic_programming", 50, seed=3)]
    assert a == b and len(set(a)) == 50


def test_relabeled_copy_renames_every_element():
    from catlim.concept import realize

    kb = dp_kb()
    p = realize(kb, kb.entry("dynamic_programming").expressions[0])
    q = relabeled_copy(p, random.Random(9), name="copy")
    assert isomorphic(p, q)
    for x in p.base.objects:
        assert not set(p.at(x).elements) & set(q.at(x).elements)


def test_planted_instances_are_nontrivial():
    for seed in range(10):
        inst = planted_instance(seed)
        truth = inst.kb.presheaf_overrides[inst.concept][inst.planted.variance]
        assert not is_representable(truth)
        assert limit_verifier(inst.kb, inst.planted, inst.concept) == 1


def test_random_kbs_mix_passing_and_failing():
    verdicts = [precisely_understands(kb, c) for kb in map(random_kb, range(30)) for c in kb.concepts]
    assert True in verdicts and False in verdicts
