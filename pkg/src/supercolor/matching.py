"""Bipartite graphs with tagged parallel edges, closed matchings, and common
partial transversals of two bunch partitions.

A closed matching is a nonempty matching M such that every edge leaving a
matched S-vertex ends at a matched T-vertex.  It always exists when
|S| >= |T| and S has no isolated vertex: take an inclusion-minimal nonempty
V ⊆ S with |Γ(V)| <= |V| (then |Γ(V)| = |V| and Hall's condition holds
strictly below V) and match V onto Γ(V).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, NamedTuple

from .core import ElemSet, InputError, ResourceLimitError, SetFn
from .bunch import bunch_partition

SUBSET_SCAN_LIMIT = 24


class Edge(NamedTuple):
    s: Hashable
    t: Hashable
    tag: Hashable


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    s_vertices: tuple
    t_vertices: tuple
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "s_vertices", tuple(self.s_vertices))
        object.__setattr__(self, "t_vertices", tuple(self.t_vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        if len(set(self.s_vertices)) != len(self.s_vertices):
            raise InputError("duplicate S-vertex ids")
        if len(set(self.t_vertices)) != len(self.t_vertices):
            raise InputError("duplicate T-vertex ids")
        s_index = {v: i for i, v in enumerate(self.s_vertices)}
        t_index = {v: i for i, v in enumerate(self.t_vertices)}
        for e in self.edges:
            if e.s not in s_index:
                raise InputError(f"edge references unknown S-vertex {e.s!r}")
            if e.t not in t_index:
                raise InputError(f"edge references unknown T-vertex {e.t!r}")
        object.__setattr__(self, "_s_index", s_index)
        object.__setattr__(self, "_t_index", t_index)

    def s_index(self, v) -> int:
        return self._s_index[v]  # type: ignore[attr-defined]

    def t_index(self, v) -> int:
        return self._t_index[v]  # type: ignore[attr-defined]


@dataclass(frozen=True, eq=False)
class Matching:
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        s_seen = set()
        t_seen = set()
        for e in self.edges:
            if e.s in s_seen or e.t in t_seen:
                raise InputError("matching edges share an endpoint")
            s_seen.add(e.s)
            t_seen.add(e.t)

    @property
    def s_covered(self) -> frozenset:
        return frozenset(e.s for e in self.edges)

    @property
    def t_covered(self) -> frozenset:
        return frozenset(e.t for e in self.edges)


def neighbors(g: BipartiteGraph, v: Iterable) -> set:
    """T-side neighborhood of a subset of S."""
    wanted = set(v)
    unknown = wanted - set(g.s_vertices)
    if unknown:
        raise InputError(f"not S-vertices: {sorted(map(repr, unknown))}")
    return {e.t for e in g.edges if e.s in wanted}


def _gosper_next(v: int) -> int:
    # next integer with the same popcount
    c = v & -v
    r = v + c
    return (((r ^ v) >> 2) // c) | r


def closed_matching(g: BipartiteGraph) -> Matching:
    """Nonempty matching whose matched S-side has all its edges inside the
    matched T-side.

    The minimal tight set V is found by scanning subsets of S ordered by
    (size, set-as-integer); the first hit is inclusion-minimal, satisfies
    |Γ(V)| = |V|, and admits a perfect matching onto Γ(V) by Hall.
    """
    ns, nt = len(g.s_vertices), len(g.t_vertices)
    if ns < nt:
        raise InputError(f"closed matching needs |S| >= |T|, got {ns} < {nt}")
    if ns == 0:
        raise InputError("closed matching needs a nonempty S side")
    if ns > SUBSET_SCAN_LIMIT:
        raise ResourceLimitError(f"subset scan over |S| = {ns} > {SUBSET_SCAN_LIMIT}")

    adj_mask = [0] * ns
    for e in g.edges:
        adj_mask[g.s_index(e.s)] |= 1 << g.t_index(e.t)
    for i, m in enumerate(adj_mask):
        if m == 0:
            raise InputError(f"isolated S-vertex {g.s_vertices[i]!r}")

    tight = None
    for size in range(1, ns + 1):
        v = (1 << size) - 1
        while v < (1 << ns):
            gamma = 0
            rest = v
            while rest:
                low = rest & -rest
                gamma |= adj_mask[low.bit_length() - 1]
                rest ^= low
            if gamma.bit_count() <= size:
                tight = (v, gamma)
                break
            v = _gosper_next(v)
        if tight:
            break
    if tight is None:  # impossible: V = S is tight because |Γ(S)| <= |T| <= |S|
        raise RuntimeError("no tight subset found (internal bug)")
    vmask, gamma = tight
    if gamma.bit_count() != vmask.bit_count():
        raise RuntimeError("minimal tight set is not tight (internal bug)")

    # perfect matching of V onto Γ(V) by augmenting paths, canonical order
    match_t: dict[int, int] = {}

    def augment(si: int, seen: set[int]) -> bool:
        rest = adj_mask[si] & gamma
        while rest:
            low = rest & -rest
            ti = low.bit_length() - 1
            rest ^= low
            if ti in seen:
                continue
            seen.add(ti)
            if ti not in match_t or augment(match_t[ti], seen):
                match_t[ti] = si
                return True
        return False

    v_indices = [i for i in range(ns) if (vmask >> i) & 1]
    for si in v_indices:
        if not augment(si, set()):
            raise RuntimeError("Hall condition failed on the tight set (internal bug)")

    # realize matched vertex pairs with the first concrete edge between them
    edge_for: dict[tuple[int, int], Edge] = {}
    for e in g.edges:
        key = (g.s_index(e.s), g.t_index(e.t))
        edge_for.setdefault(key, e)
    picked = sorted(((si, ti) for ti, si in match_t.items()))
    m = Matching(tuple(edge_for[pair] for pair in picked))

    covered_s = m.s_covered
    covered_t = m.t_covered
    for e in g.edges:
        if e.s in covered_s and e.t not in covered_t:
            raise RuntimeError("matching is not closed (internal bug)")
    return m


@dataclass(frozen=True, eq=False)
class TransversalResult:
    k: ElemSet
    case_tag: str  # "a": matched side 1 implies matched side 2; "b": converse


def common_transversal(g1: SetFn, g2: SetFn) -> TransversalResult:
    """Nonempty common partial transversal of both bunch partitions.

    Builds the part-versus-part bipartite graph with one edge per element and
    extracts a closed matching on the larger side; the matched edges name the
    transversal elements.
    """
    if g1.ground != g2.ground:
        raise InputError("functions live on different ground sets")
    if g1.ground.size == 0:
        raise InputError("common transversal needs a nonempty ground set")
    p1 = bunch_partition(g1)
    p2 = bunch_partition(g2)
    edges = []
    for name in g1.ground.names:
        edges.append((p1.index_of(name), p2.index_of(name), name))

    if len(p1) >= len(p2):
        graph = BipartiteGraph(tuple(range(len(p1))), tuple(range(len(p2))), tuple(edges))
        case = "a"
    else:
        graph = BipartiteGraph(
            tuple(range(len(p2))),
            tuple(range(len(p1))),
            tuple(Edge(j, i, name) for i, j, name in edges),
        )
        case = "b"
    m = closed_matching(graph)
    k = g1.ground.subset(e.tag for e in m.edges)

    if __debug__:
        lead, follow = (p1, p2) if case == "a" else (p2, p1)
        hit_lead = {part for part in lead if part.mask & k.mask}
        hit_follow = {part for part in follow if part.mask & k.mask}
        for name in g1.ground.names:
            if lead.part_of(name) in hit_lead and follow.part_of(name) not in hit_follow:
                raise RuntimeError("transversal case condition failed (internal bug)")
    return TransversalResult(k, case)
