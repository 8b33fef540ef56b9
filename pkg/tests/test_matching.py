import random

import pytest

from supercolor import (
    BipartiteGraph,
    InputError,
    SetFn,
    bunch_partition,
    closed_matching,
    common_transversal,
    is_partial_transversal,
    neighbors,
)


def graph(s, t, pairs):
    return BipartiteGraph(tuple(s), tuple(t), tuple((a, b, f"{a}{b}") for a, b in pairs))


def test_neighbors():
    g = graph(["s1"], ["t1", "t2"], [("s1", "t1"), ("s1", "t2")])
    assert neighbors(g, []) == set()
    assert neighbors(g, ["s1"]) == {"t1", "t2"}
    with pytest.raises(InputError):
        neighbors(g, ["nope"])


def test_closed_matching_shared_sink():
    g = graph(["s1", "s2"], ["t1"], [("s1", "t1"), ("s2", "t1")])
    m = closed_matching(g)
    assert [(e.s, e.t) for e in m.edges] == [("s1", "t1")]


def test_closed_matching_perfect_pairs():
    g = graph(["s1", "s2"], ["t1", "t2"], [("s1", "t1"), ("s2", "t2")])
    m = closed_matching(g)
    assert [(e.s, e.t) for e in m.edges] == [("s1", "t1")]


def test_closed_matching_complete_two_by_two():
    g = graph(
        ["s1", "s2"],
        ["t1", "t2"],
        [("s1", "t1"), ("s1", "t2"), ("s2", "t1"), ("s2", "t2")],
    )
    m = closed_matching(g)
    assert m.s_covered == {"s1", "s2"}
    assert m.t_covered == {"t1", "t2"}


def test_closed_matching_preconditions():
    with pytest.raises(InputError, match=r"\|S\| >= \|T\|"):
        closed_matching(graph(["s1"], ["t1", "t2"], [("s1", "t1")]))
    with pytest.raises(InputError, match="isolated"):
        closed_matching(graph(["s1", "s2"], ["t1"], [("s1", "t1")]))


def check_closed(g: BipartiteGraph, m) -> None:
    assert m.edges, "matching must be nonempty"
    v = m.s_covered
    gamma = neighbors(g, v)
    assert gamma == m.t_covered
    assert len(gamma) == len(v)
    # strict Hall surplus below the tight set
    members = sorted(v)
    for size in range(1, len(members)):
        for sub in _subsets(members, size):
            assert len(neighbors(g, sub)) > size
    for e in g.edges:
        if e.s in v:
            assert e.t in m.t_covered


def _subsets(items, size):
    import itertools

    return itertools.combinations(items, size)


def test_closed_matching_random_graphs():
    rng = random.Random(97)
    for _ in range(200):
        nt = rng.randint(1, 4)
        ns = rng.randint(nt, 6)
        s = [f"s{i}" for i in range(ns)]
        t = [f"t{i}" for i in range(nt)]
        pairs = [(v, rng.choice(t)) for v in s]
        pairs += [(rng.choice(s), rng.choice(t)) for _ in range(rng.randint(0, 6))]
        g = graph(s, t, pairs)
        check_closed(g, closed_matching(g))


def two_partition_functions(ground, sets1, sets2):
    g1 = SetFn.from_names(ground, [(names, 2) for names in sets1])
    g2 = SetFn.from_names(ground, [(names, 2) for names in sets2])
    return g1, g2


def test_common_transversal_tight_singleton(abc_ground):
    # partitions {{a,b},{c}} and {{a},{b,c}}
    g1, g2 = two_partition_functions(abc_ground, [["a", "b"]], [["b", "c"]])
    result = common_transversal(g1, g2)
    assert result.k.names == ("c",)
    assert result.case_tag == "a"


def test_common_transversal_all_singletons(abc_ground):
    empty = SetFn(abc_ground, ())
    result = common_transversal(empty, empty)
    assert len(result.k) == 1
    assert result.case_tag == "a"


def test_common_transversal_worked_example(example_instance):
    g1, g2 = example_instance
    result = common_transversal(g1, g2)
    assert result.case_tag == "b"
    p1, p2 = bunch_partition(g1), bunch_partition(g2)
    assert result.k
    assert is_partial_transversal(p1, result.k)
    assert is_partial_transversal(p2, result.k)
    # condition (b): a hit part on side 2 forces a hit part on side 1
    for name in g1.ground.names:
        if p2.part_of(name).mask & result.k.mask:
            assert p1.part_of(name).mask & result.k.mask


def test_common_transversal_condition_holds_randomly():
    from supercolor import gen_instance, mixed_configs

    for cfg in mixed_configs(seed=23, count=60, n_max=7):
        g1, g2 = gen_instance(cfg)
        result = common_transversal(g1, g2)
        p1, p2 = bunch_partition(g1), bunch_partition(g2)
        assert result.k
        assert is_partial_transversal(p1, result.k)
        assert is_partial_transversal(p2, result.k)
        lead, follow = (p1, p2) if result.case_tag == "a" else (p2, p1)
        for name in g1.ground.names:
            if lead.part_of(name).mask & result.k.mask:
                assert follow.part_of(name).mask & result.k.mask
