"""Brute-force ground truth: k-colorings, list colorings, the minimum color
count, and randomized whole-theorem verification at desk scale.

The search assigns elements in ground order and cuts a branch as soon as some
constrained set can no longer reach its required number of distinct colors,
even if every remaining element contributed a fresh one.  The bound is exact
on fully assigned sets, so a completed assignment needs no final recheck; the
pruning never discards a satisfiable branch, hence the first assignment found
is the canonically smallest one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from .core import (
    InputError,
    Report,
    ResourceLimitError,
    SetFn,
    Violation,
    delta,
    require_capacity,
)
from .bunch import d_function


@dataclass(frozen=True)
class SearchCaps:
    k_search_elements: int = 10
    list_budget: int = 10_000_000


DEFAULT_CAPS = SearchCaps()

Coloring = dict[str, Hashable]


def _constraints(g1: SetFn, g2: SetFn) -> list[tuple[int, int]] | None:
    """Collect (mask, bound) pairs that can actually fail; None means UNSAT."""
    out = []
    for g in (g1, g2):
        for mask, bound in g.entries:
            if bound <= 0:
                continue
            if mask == 0 or bound > mask.bit_count():
                return None  # no assignment can produce bound distinct colors
            if bound >= 2:
                out.append((mask, bound))
    return out


def _search(names: Sequence[str], domains: Sequence[Sequence], constraints) -> Coloring | None:
    n = len(names)
    if constraints is None:
        return None
    per_elem: list[list[int]] = [[] for _ in range(n)]
    remaining = []
    bounds = []
    for ci, (mask, bound) in enumerate(constraints):
        remaining.append(mask.bit_count())
        bounds.append(bound)
        rest = mask
        while rest:
            low = rest & -rest
            per_elem[low.bit_length() - 1].append(ci)
            rest ^= low
    counts: list[dict] = [{} for _ in constraints]
    distinct = [0] * len(constraints)
    assignment: list = [None] * n

    def place(i: int, color) -> bool:
        ok = True
        for ci in per_elem[i]:
            remaining[ci] -= 1
            c = counts[ci].get(color, 0) + 1
            counts[ci][color] = c
            if c == 1:
                distinct[ci] += 1
            if distinct[ci] + remaining[ci] < bounds[ci]:
                ok = False
        return ok

    def unplace(i: int, color) -> None:
        for ci in per_elem[i]:
            remaining[ci] += 1
            c = counts[ci][color] - 1
            if c:
                counts[ci][color] = c
            else:
                del counts[ci][color]
                distinct[ci] -= 1

    def dfs(i: int) -> bool:
        if i == n:
            return True
        for color in domains[i]:
            feasible = place(i, color)
            if feasible:
                assignment[i] = color
                if dfs(i + 1):
                    return True
            unplace(i, color)
        return False

    if dfs(0):
        return {name: assignment[i] for i, name in enumerate(names)}
    return None


def find_k_coloring(
    g1: SetFn, g2: SetFn, k: int, caps: SearchCaps = DEFAULT_CAPS
) -> Coloring | None:
    """First assignment U -> {1..k} (in canonical order) dominating both
    functions, or None after exhausting the search space."""
    if g1.ground != g2.ground:
        raise InputError("functions live on different ground sets")
    if k < 1:
        raise InputError(f"need k >= 1, got {k}")
    n = g1.ground.size
    if n > caps.k_search_elements:
        raise ResourceLimitError(
            f"k-coloring search capped at {caps.k_search_elements} elements, got {n}"
        )
    colors = tuple(range(1, k + 1))
    return _search(g1.ground.names, [colors] * n, _constraints(g1, g2))


def min_k(g1: SetFn, g2: SetFn, caps: SearchCaps = DEFAULT_CAPS) -> int:
    """Smallest k admitting a dominating k-coloring, by increasing search."""
    require_capacity(g1)
    require_capacity(g2)
    n = g1.ground.size
    for k in range(1, max(1, n) + 1):
        if find_k_coloring(g1, g2, k, caps) is not None:
            return k
    # an injective coloring with n colors dominates any capacity-valid pair
    raise RuntimeError("no coloring up to |U| colors (internal bug)")


def find_list_coloring(
    g1: SetFn,
    g2: SetFn,
    lists: Mapping[str, Sequence],
    caps: SearchCaps = DEFAULT_CAPS,
) -> Coloring | None:
    """Dominating coloring drawing each element's color from its own list,
    or None when the exhaustive search proves there is none."""
    if g1.ground != g2.ground:
        raise InputError("functions live on different ground sets")
    domains = []
    budget = 1
    for name in g1.ground.names:
        if name not in lists:
            raise InputError(f"no color list for element {name!r}")
        pool = lists[name]
        if not pool:
            raise InputError(f"empty color list for element {name!r}")
        dom = sorted(set(pool), key=lambda c: (type(c).__name__, c))
        domains.append(tuple(dom))
        budget *= len(dom)
        if budget > caps.list_budget:
            raise ResourceLimitError(
                f"list search budget {caps.list_budget} exceeded"
            )
    return _search(g1.ground.names, domains, _constraints(g1, g2))


def random_lists(
    g1: SetFn, g2: SetFn, sigma_size: int, rng: random.Random
) -> dict[str, tuple[int, ...]]:
    """Per-element lists of the tight length max{d1(u), d2(u)}, drawn without
    replacement from the pool {1..sigma_size}."""
    d1 = d_function(g1)
    d2 = d_function(g2)
    lists = {}
    for name in g1.ground.names:
        need = max(d1[name], d2[name])
        if sigma_size < need:
            raise InputError(
                f"color pool of {sigma_size} too small for list length {need}"
            )
        lists[name] = tuple(sorted(rng.sample(range(1, sigma_size + 1), need)))
    return lists


def verify_main_theorem(
    g1: SetFn,
    g2: SetFn,
    trials: int,
    sigma_size: int | None = None,
    seed: int = 0,
    caps: SearchCaps = DEFAULT_CAPS,
) -> Report:
    """Run repeated random tight-list instances and demand a coloring each
    time.  A failure witnesses an implementation bug and is reported with the
    lists that triggered it."""
    require_capacity(g1)
    require_capacity(g2)
    if trials < 0:
        raise InputError("trials must be nonnegative")
    if sigma_size is None:
        sigma_size = delta(g1, g2) + 2
    rng = random.Random(seed)
    violations = []
    for trial in range(trials):
        lists = random_lists(g1, g2, sigma_size, rng)
        if find_list_coloring(g1, g2, lists, caps) is None:
            subjects = tuple(
                (name, *map(str, lists[name])) for name in g1.ground.names
            )
            violations.append(Violation("list_coloring_missing", subjects, (trial,)))
    return Report(tuple(violations))
