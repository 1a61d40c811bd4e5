import _sepkit as sk


def test_sequence_codes_roundtrip():
    assert sk.seq_encode([]) == "0"
    xs = ["3", "1", "41"]
    assert sk.seq_decode(sk.seq_encode(xs)) == xs


def test_registry_lists_the_reductions():
    reductions = sk.list_reductions()
    for rid in [
        "range_le_c1", "c1_le_range", "sup_le_c1", "range_le_sup", "c1_le_sup",
        "sep_le_c1", "sep_le_path2", "path2_le_sep", "pathB_le_path2",
        "path2_le_pathB", "sep_compose", "sep_le_hb", "hb_le_sep",
    ]:
        assert rid in reductions
    assert "sep" in sk.list_problems()


def test_planted_instances_verify_and_roundtrip():
    inst = sk.generate("sep", 7)
    assert inst.problem == "sep"
    assert sk.verify_planted(inst, 128) == "accept"
    back = sk.parse_instance(inst.to_text())
    assert back.to_text() == inst.to_text()
    assert back.digest() == inst.digest()


def test_reductions_run_against_planted_oracles():
    for rid, problem, depth in [
        ("sep_le_path2", "sep", 64),
        ("path2_le_sep", "path2", 32),
        ("sep_le_hb", "sep", 32),
    ]:
        inst = sk.generate(problem, 3)
        assert sk.run_reduction(rid, inst, depth) == "accept"


def test_instance_names_are_streams():
    inst = sk.generate("path2", 1)
    prefix = inst.name.prefix(8)
    assert len(prefix) == 8
    assert all(bit in ("0", "1") for bit in prefix)
