import random

import pytest

from supercolor import (
    GroundSet,
    InputError,
    Partition,
    SetFn,
    bunch_partition,
    check_capacity,
    check_supermodular,
    cover_witness,
    d_function,
    effective_family,
    gen_instance,
    is_partial_transversal,
    mixed_configs,
    reduce,
    sample_partial_transversal,
)
from conftest import names_of_sets


def test_effective_family_worked_example(example_g):
    assert names_of_sets(effective_family(example_g)) == {
        tuple("abcd"),
        tuple("cdef"),
        tuple("abcdef"),
        tuple("cd"),
        tuple("ghij"),
        tuple("gh"),
    }


def test_effective_family_threshold(abc_ground):
    g = SetFn.from_names(abc_ground, [(["a", "b"], 1)])
    assert effective_family(g) == ()


def test_effective_family_rejects_invalid(abc_ground):
    g = SetFn.from_names(abc_ground, [(["a", "b"], 1), (["b", "c"], 1)])
    with pytest.raises(InputError):
        effective_family(g)


def test_partition_worked_example(example_g):
    p = bunch_partition(example_g)
    assert names_of_sets(p.parts) == {tuple("abcdef"), tuple("ghij")}
    assert p.part_of("c").names == tuple("abcdef")


def test_partition_empty_family_is_singletons(abc_ground):
    p = bunch_partition(SetFn(abc_ground, ()))
    assert names_of_sets(p.parts) == {("a",), ("b",), ("c",)}


def test_d_function_worked_example(example_g):
    d = d_function(example_g)
    assert all(d[u] == 4 for u in "abcdef")
    assert all(d[u] == 3 for u in "ghij")


def test_d_function_empty(abc_ground):
    assert d_function(SetFn(abc_ground, ())) == {"a": 1, "b": 1, "c": 1}


def test_partial_transversal(example_g):
    p = bunch_partition(example_g)
    ground = example_g.ground
    assert is_partial_transversal(p, ground.subset(["f", "j"]))
    assert not is_partial_transversal(p, ground.subset(["a", "b"]))
    assert is_partial_transversal(p, ground.empty())


def test_reduce_worked_example(example_g):
    k = example_g.ground.subset(["f", "j"])
    result = reduce(example_g, k)
    red = result.reduced
    assert red.ground.names == tuple("abcdeghi")
    values = {x.names: v for x, v in red.items()}
    assert values == {
        tuple("abcd"): 3,
        tuple("cde"): 2,
        tuple("abcde"): 3,
        tuple("cd"): 2,
        tuple("ghi"): 2,
        tuple("gh"): 2,
    }
    assert names_of_sets(effective_family(red)) == {tuple("abcd"), tuple("cd"), tuple("gh")}
    assert names_of_sets(bunch_partition(red).parts) == {
        tuple("abcd"),
        ("e",),
        tuple("gh"),
        ("i",),
    }
    d = d_function(red)
    assert all(d[u] == 3 for u in "abcd")
    assert all(d[u] == 2 for u in "gh")
    assert d["e"] == 1 and d["i"] == 1


def test_reduce_attainer_contract(example_g):
    k = example_g.ground.subset(["f", "j"])
    result = reduce(example_g, k)
    for x, z in result.attainers.items():
        assert tuple(n for n in z.names if n not in ("f", "j")) == x.names
        hat = example_g.value(z) - (1 if z.mask & k.mask else 0)
        assert hat == result.reduced.value(x)
        # no other preimage beats the recorded one
        for w, v in example_g.items():
            if tuple(n for n in w.names if n not in ("f", "j")) == x.names:
                assert v - (1 if w.mask & k.mask else 0) <= hat


def test_reduce_by_nothing_is_identity(example_g):
    red = reduce(example_g, example_g.ground.empty()).reduced
    assert red == example_g


def test_reduce_set_inside_removal():
    g = GroundSet(("a", "b"))
    fn = SetFn.from_names(g, [(["a"], 1)])
    red = reduce(fn, g.subset(["a"])).reduced
    assert red.ground.names == ("b",)
    assert [(x.names, v) for x, v in red.items()] == [((), 0)]


def test_reduce_by_everything():
    g = GroundSet(("a", "b"))
    fn = SetFn.from_names(g, [(["a", "b"], 2)])
    red = reduce(fn, g.universe()).reduced
    assert red.ground.names == ()
    assert [(x.names, v) for x, v in red.items()] == [((), 1)]


def test_cover_witness_effective_set(example_g):
    x = example_g.ground.subset(["a", "b", "c", "d"])
    witness, part = cover_witness(example_g, x)
    assert witness == x
    assert part.names == tuple("abcdef")


def test_cover_witness_non_effective(abc_ground):
    g = SetFn.from_names(abc_ground, [(["a", "b"], 2), (["a", "b", "c"], 2)])
    witness, part = cover_witness(g, abc_ground.subset(["a", "b", "c"]))
    assert witness.names == ("a", "b")
    assert witness <= part
    assert g.value(witness) >= 2


def test_cover_witness_minimal_set_is_itself(abc_ground):
    g = SetFn.from_names(abc_ground, [(["a", "b"], 2)])
    x = abc_ground.subset(["a", "b"])
    assert cover_witness(g, x)[0] == x


def test_cover_witness_requires_value_two(abc_ground):
    g = SetFn.from_names(abc_ground, [(["a", "b"], 1)])
    with pytest.raises(InputError):
        cover_witness(g, abc_ground.subset(["a", "b"]))


def test_partition_validation(abc_ground):
    with pytest.raises(InputError):
        Partition(abc_ground, (abc_ground.subset(["a"]),))  # does not cover
    with pytest.raises(InputError):
        Partition(
            abc_ground,
            (abc_ground.subset(["a", "b"]), abc_ground.subset(["b", "c"])),
        )


def test_reduction_invariants_random():
    rng = random.Random(20240)
    for cfg in mixed_configs(seed=501, count=40, n_max=7):
        for g in gen_instance(cfg):
            p = bunch_partition(g)
            k = sample_partial_transversal(p, rng)
            red = reduce(g, k).reduced
            assert check_supermodular(red).ok
            assert check_capacity(red).ok
            d0, d1 = d_function(g), d_function(red)
            for u in red.ground.names:
                if p.part_of(u).mask & k.mask:
                    assert d1[u] < d0[u]
                else:
                    assert d1[u] == d0[u]
