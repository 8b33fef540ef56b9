"""Effective set families, bunch partitions, per-element bounds, and the
reduction of a set function by a removal set.

The effective family keeps the sets that actually constrain a coloring: value
at least 2 and no proper subset of equal or larger value.  Its maximal members,
padded with singletons, always partition the universe; that partition drives
both the per-element list-length bound and the recursive constructions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .core import (
    ElemSet,
    GroundSet,
    InputError,
    SetFn,
    require_valid,
)


@dataclass(frozen=True)
class Partition:
    """Pairwise-disjoint nonempty parts covering the whole ground set."""

    ground: GroundSet
    parts: tuple[ElemSet, ...]

    def __post_init__(self) -> None:
        union = 0
        for p in self.parts:
            if p.ground != self.ground:
                raise InputError("part lives on a different ground set")
            if p.mask == 0:
                raise InputError("partition parts must be nonempty")
            if union & p.mask:
                raise InputError("partition parts overlap")
            union |= p.mask
        if union != self.ground.full_mask:
            raise InputError("partition parts do not cover the ground set")
        index = {}
        for i, p in enumerate(self.parts):
            for name in p.names:
                index[name] = i
        object.__setattr__(self, "_part_index", index)

    def index_of(self, name: str) -> int:
        self.ground.index(name)  # raises on unknown names
        return self._part_index[name]  # type: ignore[attr-defined]

    def part_of(self, name: str) -> ElemSet:
        return self.parts[self.index_of(name)]

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True, eq=False)
class ReductionResult:
    """The reduced function plus, for each reduced set, the set attaining its value."""

    reduced: SetFn
    attainers: Mapping[ElemSet, ElemSet]


@lru_cache(maxsize=None)
def effective_family(g: SetFn) -> tuple[ElemSet, ...]:
    """Sets with value >= 2 and no proper subset of equal or larger value."""
    require_valid(g)
    entries = g.entries
    out = []
    for m, v in entries:
        if v < 2:
            continue
        if any(m2 != m and m2 & ~m == 0 and v2 >= v for m2, v2 in entries):
            continue
        out.append(ElemSet(g.ground, m))
    return tuple(out)


@lru_cache(maxsize=None)
def bunch_partition(g: SetFn) -> Partition:
    """Maximal effective sets plus singletons of uncovered elements.

    The result is always a genuine partition for a valid input; an overlap
    here would mean an upstream validity bug, so it surfaces as a hard error.
    """
    eff = effective_family(g)
    eff_masks = [x.mask for x in eff]
    maximal = [
        m for m in eff_masks
        if not any(m2 != m and m & ~m2 == 0 for m2 in eff_masks)
    ]
    covered = 0
    for m in eff_masks:
        covered |= m
    parts = list(maximal)
    for i in range(g.ground.size):
        if not (covered >> i) & 1:
            parts.append(1 << i)
    parts.sort()
    try:
        return Partition(g.ground, tuple(ElemSet(g.ground, m) for m in parts))
    except InputError as e:
        raise RuntimeError(f"bunch partition is not a partition (internal bug): {e}") from e


@lru_cache(maxsize=None)
def _d_items(g: SetFn) -> tuple[tuple[str, int], ...]:
    eff = [(x.mask, g.value(x)) for x in effective_family(g)]
    out = []
    for i, name in enumerate(g.ground.names):
        bit = 1 << i
        best = 1
        for m, v in eff:
            if m & bit and v > best:
                best = v
        out.append((name, best))
    return tuple(out)


def d_function(g: SetFn) -> dict[str, int]:
    """Per-element bound: max of 1 and the largest effective value covering it."""
    return dict(_d_items(g))


def is_partial_transversal(p: Partition, k: ElemSet) -> bool:
    """True iff every part meets k in at most one element."""
    return all((part.mask & k.mask).bit_count() <= 1 for part in p.parts)


def reduce(g: SetFn, k: ElemSet) -> ReductionResult:
    """Reduce g by the removal set k.

    Each set drops its k-elements; sets that met k lose one unit of value, and
    sets projecting to the same residual are merged by taking the maximum.
    The result lives on the ground set without k and is again a valid
    intersecting-supermodular function, for every k.
    """
    require_valid(g)
    if k.ground != g.ground:
        raise InputError("removal set lives on a different ground set")
    kmask = k.mask
    ground = g.ground
    keep = [i for i in range(ground.size) if not (kmask >> i) & 1]
    new_ground = GroundSet(tuple(ground.names[i] for i in keep))
    new_bit = {old: 1 << pos for pos, old in enumerate(keep)}

    def remap(mask: int) -> int:
        out = 0
        while mask:
            low = mask & -mask
            out |= new_bit[low.bit_length() - 1]
            mask ^= low
        return out

    best: dict[int, tuple[int, int]] = {}
    for m, v in g.entries:
        hat = v - 1 if m & kmask else v
        proj = m & ~kmask
        cur = best.get(proj)
        if cur is None or hat > cur[0] or (hat == cur[0] and m < cur[1]):
            best[proj] = (hat, m)

    reduced = SetFn(new_ground, tuple((remap(p), hv[0]) for p, hv in best.items()))
    try:
        require_valid(reduced)
    except InputError as e:
        raise RuntimeError(f"reduction lost validity (internal bug): {e}") from e
    attainers = {
        ElemSet(new_ground, remap(p)): ElemSet(ground, hv[1]) for p, hv in best.items()
    }
    return ReductionResult(reduced, attainers)


def cover_witness(g: SetFn, x: ElemSet) -> tuple[ElemSet, ElemSet]:
    """For x in the family with g(x) >= 2, return (x', part) with x' an
    effective subset of x∩part and g(x') >= g(x).

    When x itself is effective, x' = x.  Otherwise x' is an inclusion-minimal
    maximizer of g among family sets inside x, ties broken by smallest
    set-as-integer.
    """
    require_valid(g)
    if x not in g:
        raise InputError(f"set {x!r} not in the family")
    if g.value(x) < 2:
        raise InputError(f"cover witness needs g(x) >= 2, got {g.value(x)}")
    inside = [(m, v) for m, v in g.entries if m & ~x.mask == 0]
    top = max(v for _, v in inside)
    maximizers = [m for m, v in inside if v == top]
    minimal = [
        m for m in maximizers
        if not any(m2 != m and m2 & ~m == 0 for m2 in maximizers)
    ]
    witness = ElemSet(g.ground, min(minimal))
    part = bunch_partition(g).part_of(witness.names[0])
    if not witness <= part:
        raise RuntimeError("cover witness escaped its part (internal bug)")
    return witness, part
