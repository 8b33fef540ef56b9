"""Ground sets, bitmask subsets, and integer-valued set functions.

Subsets of a named universe are stored as bitmasks over element indices, so
union, intersection, difference, inclusion and cardinality are single word
operations.  A SetFn maps an explicit family of subsets to integers; the
structural checks (intersecting-closure, supermodularity, capacity) run
against it and report witnesses instead of raising.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

MAX_ELEMENTS = 64


class InputError(ValueError):
    """Bad caller input: malformed files, mismatched grounds, failed preconditions."""


class ResourceLimitError(RuntimeError):
    """A configured search cap would be exceeded."""


class GenerationError(RuntimeError):
    """Instance generation exhausted its resampling budget."""


@dataclass(frozen=True)
class GroundSet:
    """Ordered universe of distinct element names; element i <-> bit i.

    An empty ground set is permitted programmatically (it arises when a
    function is reduced by its whole universe); instance files must name at
    least one element.
    """

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) > MAX_ELEMENTS:
            raise InputError(
                f"ground set capped at {MAX_ELEMENTS} elements, got {len(self.names)}"
            )
        index: dict[str, int] = {}
        for i, name in enumerate(self.names):
            if not isinstance(name, str) or not name:
                raise InputError(f"element names must be nonempty strings, got {name!r}")
            if name in index:
                raise InputError(f"duplicate element name {name!r}")
            index[name] = i
        object.__setattr__(self, "_index", index)

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]  # type: ignore[attr-defined]
        except KeyError:
            raise InputError(f"unknown element {name!r}") from None

    def subset(self, names: Iterable[str]) -> "ElemSet":
        mask = 0
        for name in names:
            bit = 1 << self.index(name)
            if mask & bit:
                raise InputError(f"element {name!r} listed twice in one set")
            mask |= bit
        return ElemSet(self, mask)

    def from_mask(self, mask: int) -> "ElemSet":
        return ElemSet(self, mask)

    def empty(self) -> "ElemSet":
        return ElemSet(self, 0)

    def universe(self) -> "ElemSet":
        return ElemSet(self, self.full_mask)

    def names_of(self, mask: int) -> tuple[str, ...]:
        return tuple(n for i, n in enumerate(self.names) if (mask >> i) & 1)


@dataclass(frozen=True)
class ElemSet:
    """A subset of a ground set, stored as a bitmask."""

    ground: GroundSet
    mask: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask <= self.ground.full_mask:
            raise InputError(
                f"mask {self.mask:#x} outside ground set of {self.ground.size} elements"
            )

    def _check_ground(self, other: "ElemSet") -> None:
        if self.ground != other.ground:
            raise InputError("operands live on different ground sets")

    def __or__(self, other: "ElemSet") -> "ElemSet":
        self._check_ground(other)
        return ElemSet(self.ground, self.mask | other.mask)

    def __and__(self, other: "ElemSet") -> "ElemSet":
        self._check_ground(other)
        return ElemSet(self.ground, self.mask & other.mask)

    def __sub__(self, other: "ElemSet") -> "ElemSet":
        self._check_ground(other)
        return ElemSet(self.ground, self.mask & ~other.mask)

    def __le__(self, other: "ElemSet") -> bool:
        self._check_ground(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "ElemSet") -> bool:
        return self <= other and self.mask != other.mask

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, name: str) -> bool:
        return bool((self.mask >> self.ground.index(name)) & 1)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    @property
    def names(self) -> tuple[str, ...]:
        return self.ground.names_of(self.mask)

    def __repr__(self) -> str:
        return "{" + ",".join(self.names) + "}"


@dataclass(frozen=True)
class SetFn:
    """An integer-valued function on an explicit family of distinct subsets.

    Entries are stored canonically, sorted by set-as-integer, which fixes the
    iteration order everywhere downstream.  Values may be non-positive.
    """

    ground: GroundSet
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        canon = tuple(sorted(self.entries))
        seen: set[int] = set()
        for mask, value in canon:
            if not 0 <= mask <= self.ground.full_mask:
                raise InputError(f"set mask {mask:#x} outside the ground set")
            if not isinstance(value, int) or isinstance(value, bool):
                raise InputError(f"set values must be integers, got {value!r}")
            if mask in seen:
                raise InputError(
                    f"duplicate set {{{','.join(self.ground.names_of(mask))}}} in one function"
                )
            seen.add(mask)
        object.__setattr__(self, "entries", canon)
        object.__setattr__(self, "_values", dict(canon))

    @classmethod
    def from_sets(cls, ground: GroundSet, pairs: Iterable[tuple[ElemSet, int]]) -> "SetFn":
        return cls(ground, tuple((x.mask, v) for x, v in pairs))

    @classmethod
    def from_names(
        cls, ground: GroundSet, pairs: Iterable[tuple[Iterable[str], int]]
    ) -> "SetFn":
        return cls(ground, tuple((ground.subset(ns).mask, v) for ns, v in pairs))

    def sets(self) -> tuple[ElemSet, ...]:
        return tuple(ElemSet(self.ground, m) for m, _ in self.entries)

    def items(self) -> Iterator[tuple[ElemSet, int]]:
        for mask, value in self.entries:
            yield ElemSet(self.ground, mask), value

    def value(self, x: ElemSet) -> int:
        if x.ground != self.ground:
            raise InputError("set lives on a different ground set")
        try:
            return self._values[x.mask]  # type: ignore[attr-defined]
        except KeyError:
            raise InputError(f"set {x!r} not in the family") from None

    def value_of_mask(self, mask: int) -> int:
        return self._values[mask]  # type: ignore[attr-defined]

    def __contains__(self, x: ElemSet) -> bool:
        return x.ground == self.ground and x.mask in self._values  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Violation:
    """One failed check: the kind, the sets/elements involved, and the numbers."""

    kind: str
    subjects: tuple[tuple[str, ...], ...]
    values: tuple[int, ...] = ()


@dataclass(frozen=True)
class Report:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"kind": v.kind, "subjects": [list(s) for s in v.subjects], "values": list(v.values)}
                for v in self.violations
            ],
        }


def is_intersecting(x: ElemSet, y: ElemSet) -> bool:
    """True iff X∩Y, X\\Y and Y\\X are all nonempty."""
    if x.ground != y.ground:
        raise InputError("operands live on different ground sets")
    return bool(x.mask & y.mask) and bool(x.mask & ~y.mask) and bool(y.mask & ~x.mask)


def _masks_intersecting(a: int, b: int) -> bool:
    return bool(a & b) and bool(a & ~b) and bool(b & ~a)


@lru_cache(maxsize=None)
def check_intersecting_family(g: SetFn) -> Report:
    """Check closure under union/intersection of every intersecting pair."""
    masks = [m for m, _ in g.entries]
    present = set(masks)
    violations: list[Violation] = []
    for i, a in enumerate(masks):
        for b in masks[i + 1 :]:
            if not _masks_intersecting(a, b):
                continue
            missing = [m for m in (a | b, a & b) if m not in present]
            for m in missing:
                kind = "missing_union" if m == a | b else "missing_intersection"
                violations.append(
                    Violation(
                        kind,
                        (g.ground.names_of(a), g.ground.names_of(b), g.ground.names_of(m)),
                    )
                )
    return Report(tuple(violations))


@lru_cache(maxsize=None)
def check_supermodular(g: SetFn) -> Report:
    """Check g(X)+g(Y) <= g(X∪Y)+g(X∩Y) on every intersecting pair.

    Requires the family to be intersecting-closed; otherwise the inequality
    is not even well defined and an InputError names a missing set.
    """
    family = check_intersecting_family(g)
    if not family.ok:
        v = family.violations[0]
        raise InputError(
            f"family is not intersecting-closed: {{{','.join(v.subjects[2])}}} is missing"
        )
    masks = [m for m, _ in g.entries]
    violations: list[Violation] = []
    for i, a in enumerate(masks):
        va = g.value_of_mask(a)
        for b in masks[i + 1 :]:
            if not _masks_intersecting(a, b):
                continue
            vb = g.value_of_mask(b)
            lhs = va + vb
            rhs = g.value_of_mask(a | b) + g.value_of_mask(a & b)
            if lhs > rhs:
                violations.append(
                    Violation(
                        "supermodular",
                        (g.ground.names_of(a), g.ground.names_of(b)),
                        (lhs, rhs),
                    )
                )
    return Report(tuple(violations))


def check_capacity(g: SetFn) -> Report:
    """Check |X| >= g(X) for every entry."""
    violations = tuple(
        Violation("capacity", (g.ground.names_of(m),), (m.bit_count(), v))
        for m, v in g.entries
        if m.bit_count() < v
    )
    return Report(violations)


def require_valid(g: SetFn) -> None:
    """Raise InputError unless g is an intersecting-supermodular function."""
    report = check_supermodular(g)  # raises if the family is not closed
    if not report.ok:
        v = report.violations[0]
        raise InputError(
            "function is not supermodular: "
            f"{{{','.join(v.subjects[0])}}}, {{{','.join(v.subjects[1])}}} "
            f"give {v.values[0]} > {v.values[1]}"
        )


def require_capacity(g: SetFn) -> None:
    report = check_capacity(g)
    if not report.ok:
        v = report.violations[0]
        raise InputError(
            f"capacity violated: |{{{','.join(v.subjects[0])}}}| = {v.values[0]} < {v.values[1]}"
        )


def delta(g1: SetFn, g2: SetFn) -> int:
    """max{1, max of all stored values}; the color count of the classic bound."""
    if g1.ground != g2.ground:
        raise InputError("functions live on different ground sets")
    best = 1
    for g in (g1, g2):
        for _, v in g.entries:
            if v > best:
                best = v
    return best


# ---------------------------------------------------------------------------
# Instance files: {"elements": [...], "g1": [{"set": [...], "value": n}], "g2": [...]}

def parse_instance(text: str) -> tuple[SetFn, SetFn]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise InputError("instance file must be a JSON object")
    elements = doc.get("elements")
    if not isinstance(elements, list) or not elements:
        raise InputError('"elements" must be a nonempty list of names')
    ground = GroundSet(tuple(elements))
    out = []
    for key in ("g1", "g2"):
        raw = doc.get(key)
        if not isinstance(raw, list):
            raise InputError(f'"{key}" must be a list of entries')
        pairs = []
        for entry in raw:
            if not isinstance(entry, dict) or "set" not in entry or "value" not in entry:
                raise InputError(f'each {key} entry needs "set" and "value"')
            if not isinstance(entry["set"], list):
                raise InputError(f'"set" must be a list of element names in {key}')
            pairs.append((ground.subset(entry["set"]).mask, entry["value"]))
        out.append(SetFn(ground, tuple(pairs)))
    return out[0], out[1]


def load_instance(path) -> tuple[SetFn, SetFn]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    return parse_instance(text)


def instance_payload(g1: SetFn, g2: SetFn) -> dict:
    """JSON-ready canonical form: elements in ground order, entries sorted."""
    if g1.ground != g2.ground:
        raise InputError("functions live on different ground sets")
    return {
        "elements": list(g1.ground.names),
        "g1": [{"set": list(g1.ground.names_of(m)), "value": v} for m, v in g1.entries],
        "g2": [{"set": list(g2.ground.names_of(m)), "value": v} for m, v in g2.entries],
    }


def dump_json(obj) -> str:
    """Canonical JSON used for all emitted reports and files."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
