import json

from supercolor import GenConfig, dump_json
from supercolor.cli import batch_verify, caps_from_env, instance_digest, run


def run_cli(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out else None
    return code, payload


def test_check_ok(capsys, example_path):
    code, payload = run_cli(capsys, "check", str(example_path))
    assert code == 0
    assert payload["ok"] is True
    assert payload["results"]["g1"]["supermodular"]["ok"] is True


def test_check_flags_violations(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(
        '{"elements": ["a"], "g1": [{"set": ["a"], "value": 2}], "g2": []}'
    )
    code, payload = run_cli(capsys, "check", str(bad))
    assert code == 1
    assert payload["results"]["g1"]["capacity"]["ok"] is False


def test_analyze_worked_example(capsys, example_path):
    code, payload = run_cli(capsys, "analyze", str(example_path), "--side", "1")
    assert code == 0
    assert len(payload["effective_family"]) == 6
    assert sorted(map(tuple, payload["partition"])) == [
        tuple("abcdef"),
        tuple("ghij"),
    ]
    assert payload["d"] == dict(
        {u: 4 for u in "abcdef"}, **{u: 3 for u in "ghij"}
    )


def test_malformed_json_is_exit_2(capsys, tmp_path):
    p = tmp_path / "junk.json"
    p.write_text("{nope")
    code, _ = run_cli(capsys, "check", str(p))
    assert code == 2


def test_missing_file_is_exit_2(capsys):
    code, _ = run_cli(capsys, "check", "/no/such/file.json")
    assert code == 2


def test_reduce_emits_replayable_instance(capsys, example_path, tmp_path):
    code, payload = run_cli(capsys, "reduce", str(example_path), "--k", "f,j")
    assert code == 0
    assert payload["elements"] == list("abcdeghi")
    values = {tuple(e["set"]): e["value"] for e in payload["g1"]}
    assert values[tuple("abcd")] == 3 and values[tuple("gh")] == 2
    assert payload["attainers"]["g1"]["c,d,e"] == list("cdef")
    # output parses back as an instance file
    inst = tmp_path / "reduced.json"
    inst.write_text(dump_json(payload))
    code2, payload2 = run_cli(capsys, "analyze", str(inst))
    assert code2 == 0
    assert sorted(map(tuple, payload2["partition"])) == [
        ("a", "b", "c", "d"),
        ("e",),
        ("g", "h"),
        ("i",),
    ]


def test_transversal(capsys, example_path):
    code, payload = run_cli(capsys, "transversal", str(example_path))
    assert code == 0
    assert payload["case"] == "b"
    assert payload["k"]


def test_pi_keylemma(capsys, example_path):
    code, payload = run_cli(capsys, "pi", str(example_path))
    assert code == 0
    assert payload["ok"] is True
    assert payload["conditions"]["i_ok"] and payload["conditions"]["ii_ok"]
    assert payload["trace"]


def test_pi_schrijver(capsys, example_path):
    code, payload = run_cli(capsys, "pi", str(example_path), "--method", "schrijver")
    assert code == 0
    assert payload["delta"] == 4
    assert payload["trace"] == []


def test_color_with_k(capsys, example_path):
    code, payload = run_cli(capsys, "color", str(example_path), "--k", "4")
    assert code == 0 and payload["found"]
    code, payload = run_cli(capsys, "color", str(example_path), "--k", "3")
    assert code == 1 and not payload["found"]


def test_color_with_lists(capsys, tmp_path):
    inst = tmp_path / "inst.json"
    inst.write_text(
        '{"elements": ["a", "b"], "g1": [{"set": ["a", "b"], "value": 2}], "g2": []}'
    )
    lists = tmp_path / "lists.json"
    lists.write_text('{"a": ["red"], "b": ["red", "blue"]}')
    code, payload = run_cli(capsys, "color", str(inst), "--lists", str(lists))
    assert code == 0
    assert payload["coloring"] == {"a": "red", "b": "blue"}
    lists.write_text('{"a": ["red"], "b": ["red"]}')
    code, payload = run_cli(capsys, "color", str(inst), "--lists", str(lists))
    assert code == 1 and payload["coloring"] is None


def test_color_requires_exactly_one_mode(capsys, example_path):
    code, _ = run_cli(capsys, "color", str(example_path))
    assert code == 2


def test_verify(capsys, example_path):
    code, payload = run_cli(capsys, "verify", str(example_path), "--trials", "10", "--seed", "1")
    assert code == 0 and payload["ok"]
    assert payload["sigma"] == 6


def test_encode_bipartite(capsys, tmp_path):
    graph = tmp_path / "graph.json"
    graph.write_text('{"S": ["s"], "T": ["t1", "t2"], "edges": [["s", "t1"], ["s", "t2"]]}')
    code, payload = run_cli(capsys, "encode-bipartite", str(graph))
    assert code == 0
    assert payload["elements"] == ["s~t1~0", "s~t2~0"]
    assert {tuple(e["set"]): e["value"] for e in payload["g1"]} == {
        ("s~t1~0", "s~t2~0"): 2
    }


def test_gen_deterministic_stdout(capsys, tmp_path):
    args = ("gen", "--strategy", "closure", "--n", "6", "--seed", "42")
    run(list(args))
    first = capsys.readouterr().out
    run(list(args))
    second = capsys.readouterr().out
    assert first == second and first
    out = tmp_path / "inst.json"
    code = run([*args, "-o", str(out)])
    capsys.readouterr()
    assert code == 0
    assert out.read_text() == first


def test_caps_env_round_trip(capsys, example_path, monkeypatch):
    monkeypatch.setenv("SUPERCOLOR_CAPS", "k_search=4")
    code, _ = run_cli(capsys, "color", str(example_path), "--k", "4")
    assert code == 3  # ten elements exceed the lowered cap
    monkeypatch.setenv("SUPERCOLOR_CAPS", "k_search=10,list_budget=10000000")
    code, payload = run_cli(capsys, "color", str(example_path), "--k", "4")
    assert code == 0 and payload["found"]


def test_caps_env_rejects_garbage(monkeypatch, capsys, example_path):
    monkeypatch.setenv("SUPERCOLOR_CAPS", "bogus=1")
    code, _ = run_cli(capsys, "color", str(example_path), "--k", "4")
    assert code == 2


def test_caps_parsing_defaults():
    caps = caps_from_env({})
    assert caps.k_search_elements == 10 and caps.list_budget == 10_000_000


def test_instance_digest_stable(example_instance):
    g1, g2 = example_instance
    assert instance_digest(g1, g2) == instance_digest(g1, g2)
    assert instance_digest(g1, g2) != instance_digest(g2, g1)


def test_batch_verify_clean_run(tmp_path):
    configs = [
        GenConfig(seed=s, n_elements=5, strategy=strategy)
        for s, strategy in enumerate(("closure", "laminar", "rank_complement", "bipartite"))
    ]
    out = tmp_path / "summary.json"
    report = batch_verify(configs, list_trials=2, seed=123, out=out)
    assert report.results["instances"] == 4
    assert report.results["failures"] == []
    assert report.results["checks"]["pi_conditions"] == {"pass": 4, "fail": 0}
    written = json.loads(out.read_text())
    assert written["results"]["checks"]["min_k_equals_delta"]["pass"] == 4
    assert "timing" not in written


def test_batch_verify_empty():
    report = batch_verify([])
    assert report.results["instances"] == 0
    assert report.results["failures"] == []


def test_batch_verify_deterministic():
    configs = [GenConfig(seed=9, n_elements=5, strategy="closure")]
    a = batch_verify(configs, list_trials=2, seed=1)
    b = batch_verify(configs, list_trials=2, seed=1)
    assert dump_json(a.to_payload()) == dump_json(b.to_payload())
