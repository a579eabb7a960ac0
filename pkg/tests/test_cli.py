import json

import pytest

from catlim.cli import EXIT_CAPACITY, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from catlim.concept import ConceptKB
from catlim.documents import dump_json, kb_to_doc
from catlim.finset import CONTRAVARIANT
from catlim.fixtures import consistent_kb, planted_instance
from catlim.fincat import free_category
from catlim.presheaf import empty_presheaf


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(dump_json(doc), encoding="utf-8")
    return path


# -- golden outputs ---------------------------------------------------------------

@pytest.mark.parametrize("flags, golden", [
    ((), "dp_tree.txt"),
    (("--dot",), "dp_tree.dot"),
    (("--format", "structured"), "dp_tree.json"),
])
def test_deconcept_matches_golden(capsys, data_dir, golden_dir, flags, golden):
    code, out, _ = run(capsys, "deconcept", data_dir / "dp_kb.json", "dynamic_programming", "--seed", "0", *flags)
    assert code == EXIT_OK
    assert out == (golden_dir / golden).read_text(encoding="utf-8")


@pytest.mark.parametrize("cmd, fig", [
    ("limit", "product"), ("limit", "product_over_point"), ("limit", "equalizer"),
    ("colimit", "coproduct"), ("colimit", "coequalizer"),
])
def test_limit_commands_match_golden(capsys, data_dir, golden_dir, cmd, fig):
    code, out, _ = run(capsys, cmd, data_dir / f"fig_{fig}.json", "--format", "structured")
    assert code == EXIT_OK
    assert out == (golden_dir / f"{cmd}_fig_{fig}.json").read_text(encoding="utf-8")


def test_equalizer_text_lists_the_preimage(capsys, data_dir):
    code, out, _ = run(capsys, "limit", data_dir / "fig_equalizer.json")
    assert code == EXIT_OK
    assert "with 2 element(s)" in out and "-> 2" in out and "-> 3" in out


def test_empty_diagram_gives_point_and_empty(capsys, tmp_path):
    path = write(tmp_path, "empty.json", {"shape": "discrete(0)", "objects": {}, "morphisms": {}})
    _, out, _ = run(capsys, "limit", path, "--format", "structured")
    assert json.loads(out)["apex"]["size"] == 1
    _, out, _ = run(capsys, "colimit", path, "--format", "structured")
    assert json.loads(out)["apex"]["size"] == 0


# -- validate ---------------------------------------------------------------------

def test_validate_exit_codes(capsys, data_dir, tmp_path):
    assert run(capsys, "validate", data_dir / "dp_kb.json", data_dir / "fig_product.json")[0] == EXIT_OK
    broken = write(tmp_path, "broken.json", {
        "objects": ["a", "b", "c"],
        "morphisms": [{"id": "f", "src": "a", "dst": "b"}, {"id": "g", "src": "b", "dst": "c"}]})
    code, out, _ = run(capsys, "validate", broken)
    assert code == EXIT_FAIL and "INVALID" in out
    assert run(capsys, "validate", tmp_path / "missing.json")[0] == EXIT_INPUT


def test_capacity_exit_code(capsys, tmp_path):
    big = write(tmp_path, "big.json", {"objects": [f"o{i}" for i in range(40)], "morphisms": []})
    code, _, err = run(capsys, "validate", big)
    assert code == EXIT_CAPACITY and "capacity" in err


# -- laws -------------------------------------------------------------------------

def test_default_laws_hold(capsys):
    code, out, _ = run(capsys, "laws", "--format", "structured")
    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["totals"]["fails"] == 0 and payload["totals"]["holds"] > 0


def test_mutated_manifest_fails_with_witness(capsys, data_dir, tmp_path):
    diag = json.loads((data_dir / "fig_product.json").read_text())
    manifest = write(tmp_path, "m.json", [{"law": "universal_property", "instance": {"inline": {
        "diagram": diag, "kind": "projective",
        "mutate_leg": {"leg": "I1", "element": "(I1:x1, I2:y1)", "to": "x2"}}}}])
    code, out, _ = run(capsys, "laws", manifest)
    assert code == EXIT_FAIL
    assert "counterexample" in out


def test_empty_manifest(capsys, tmp_path):
    code, out, _ = run(capsys, "laws", write(tmp_path, "e.json", []), "--format", "structured")
    assert code == EXIT_OK and json.loads(out)["entries"] == []


# -- concept commands -------------------------------------------------------------

def test_deconcept_basic_and_cyclic(capsys, data_dir):
    _, out, _ = run(capsys, "deconcept", data_dir / "dp_kb.json", "for_loop")
    assert out == "for_loop [h] (basic)\n"
    _, out, _ = run(capsys, "deconcept", data_dir / "cyclic_kb.json", "loop_a")
    assert "(cycle_ref)" in out


def test_verify_modes(capsys, data_dir):
    for mode in ("verifier", "tasks"):
        assert run(capsys, "verify", data_dir / "dp_kb.json", "dynamic_programming", "--mode", mode)[0] == EXIT_OK
        code, out, _ = run(capsys, "verify", data_dir / "dp_kb_corrupted.json", "dynamic_programming",
                           "--mode", mode, "--format", "structured")
        assert code == EXIT_FAIL
        assert json.loads(out)["node"] == "sub_problem_recursion"
    code, out, _ = run(capsys, "verify", data_dir / "dp_kb_corrupted.json", "dynamic_programming",
                       "--mode", "tasks")
    assert "on task" in out
    assert run(capsys, "verify", data_dir / "dp_kb.json", "for_loop")[0] == EXIT_OK


def test_verify_rejects_bad_eps(capsys, data_dir):
    assert run(capsys, "verify", data_dir / "dp_kb.json", "for_loop", "--eps", "0")[0] == EXIT_INPUT


def test_learn_plant_and_supervised_repair(capsys, data_dir, tmp_path):
    inst = planted_instance(0)
    kb_path = write(tmp_path, "plant.json", kb_to_doc(inst.kb))
    code, out, _ = run(capsys, "learn", kb_path, "target", "--format", "structured")
    assert code == EXIT_OK and json.loads(out)["limit_verifier"] == 1
    code, out, _ = run(capsys, "learn", data_dir / "dp_kb_corrupted.json", "sub_problem_recursion",
                       "--supervised", data_dir / "dp_repair_target.json")
    assert code == EXIT_OK and "installed" in out


def test_learn_exhausted_space(capsys, tmp_path):
    cat = free_category("e", ["a", "b"], [("f", "a", "b")])
    base = consistent_kb("e", cat, {})
    kb = ConceptKB(cat, {}, {"b": {CONTRAVARIANT: empty_presheaf(cat)}}, base.probes, base.functors, "e")
    code, out, _ = run(capsys, "learn", write(tmp_path, "e.json", kb_to_doc(kb)), "b", "--k", "2")
    assert code == EXIT_FAIL and "exhausted" in out


def test_analogy(capsys, data_dir):
    code, out, _ = run(capsys, "analogy", data_dir / "loops_kb.json", "for_loop", "while_loop")
    assert code == EXIT_OK and "score 1.0 (full shape isomorphism)" in out
    _, out, _ = run(capsys, "analogy", data_dir / "dp_kb.json", "dynamic_programming", "dynamic_programming")
    assert "score 1.0" in out
    _, out, _ = run(capsys, "analogy", data_dir / "dp_kb.json", "dynamic_programming", "optimal_state",
                    "--format", "structured")
    assert json.loads(out)["score"] < 1
    assert run(capsys, "analogy", data_dir / "dp_kb.json", "for_loop", "optimal_state")[0] == EXIT_INPUT


def test_unknown_concept_is_input_error(capsys, data_dir):
    assert run(capsys, "deconcept", data_dir / "dp_kb.json", "nope")[0] == EXIT_INPUT
