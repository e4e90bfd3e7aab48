"""Uniform families of vertex sets and the operators used on them.

A ``VertexSet`` is a bitmask over a graph's vertex indices. A ``SetFamily``
holds distinct sets of one cardinality in canonical order: members compare
by their ascending index tuples.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import Union

from ._bits import iter_bits, to_mask
from .graphs import Graph, Pendant


class FamilyError(ValueError):
    """Invalid family operation."""


class InvalidShift(FamilyError):
    pass


@dataclass(frozen=True)
class VertexSet:
    bits: int
    cardinality: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.bits < 0:
            raise FamilyError("vertex sets are nonnegative bitmasks")
        object.__setattr__(self, "cardinality", self.bits.bit_count())

    @classmethod
    def of(cls, indices: Iterable[int]) -> VertexSet:
        return cls(to_mask(indices))

    def indices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.cardinality

    def __contains__(self, v: int) -> bool:
        return bool((self.bits >> v) & 1)

    def __or__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.bits | other.bits)

    def __and__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.bits & other.bits)

    def __sub__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.bits & ~other.bits)

    def isdisjoint(self, other: VertexSet) -> bool:
        return not self.bits & other.bits

    def issubset(self, other: VertexSet) -> bool:
        return not self.bits & ~other.bits

    def __repr__(self) -> str:
        return f"VertexSet({set(self.indices()) or '{}'})"


def canonical_key(bits: int) -> tuple[int, ...]:
    return tuple(iter_bits(bits))


@dataclass(frozen=True)
class SetFamily:
    universe_size: int
    r: int
    members: tuple[VertexSet, ...]
    _index: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        bits = [m.bits for m in self.members]
        for m in self.members:
            if m.cardinality != self.r:
                raise FamilyError(f"member {m.indices()} does not have cardinality {self.r}")
            if m.bits >> self.universe_size:
                raise FamilyError(f"member {m.indices()} lies outside the universe")
        keys = [canonical_key(b) for b in bits]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise FamilyError("members must be distinct and canonically ordered")
        object.__setattr__(self, "_index", frozenset(bits))

    @classmethod
    def from_masks(cls, universe_size: int, r: int, masks: Iterable[int]) -> SetFamily:
        """Build a family from raw masks, sorting and removing duplicates."""
        uniq = sorted(set(masks), key=canonical_key)
        return cls(universe_size, r, tuple(VertexSet(b) for b in uniq))

    @classmethod
    def from_sets(cls, universe_size: int, r: int, sets: Iterable[Iterable[int]]) -> SetFamily:
        return cls.from_masks(universe_size, r, (to_mask(s) for s in sets))

    def masks(self) -> list[int]:
        return [m.bits for m in self.members]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[VertexSet]:
        return iter(self.members)

    def __contains__(self, item: VertexSet | int) -> bool:
        bits = item.bits if isinstance(item, VertexSet) else item
        return bits in self._index

    def with_members(self, masks: Iterable[int], r: int | None = None) -> SetFamily:
        """Same universe, new members (of cardinality ``r`` if given)."""
        return SetFamily.from_masks(self.universe_size, self.r if r is None else r, masks)

    def without(self, *sets: VertexSet) -> SetFamily:
        drop = {s.bits for s in sets}
        return self.with_members(b for b in self.masks() if b not in drop)

    def union(self, *sets: VertexSet) -> SetFamily:
        return self.with_members([*self.masks(), *(s.bits for s in sets)])

    def to_json(self) -> dict:
        return {
            "universe": self.universe_size,
            "r": self.r,
            "members": [list(m.indices()) for m in self.members],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> SetFamily:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            universe, r, members = data["universe"], data["r"], data["members"]
        except (KeyError, TypeError) as exc:
            raise FamilyError(f"malformed family JSON: {exc}") from None
        return cls.from_sets(universe, r, members)


@dataclass(frozen=True)
class BasePartition:
    a0: SetFamily
    a1: SetFamily
    a1_reduced: SetFamily
    a1_reduced_raw_count: int


# -- enumeration -------------------------------------------------------------


def iter_independent(g: Graph, r: int) -> Iterator[int]:
    """Yield independent ``r``-set masks of ``g`` in canonical order."""
    n = g.vertex_count
    adj = g.adjacency
    if r == 0:
        yield 0
        return

    def extend(chosen: int, allowed: int, need: int) -> Iterator[int]:
        # ``allowed`` holds only vertices above the last chosen one
        if need == 0:
            yield chosen
            return
        while allowed and allowed.bit_count() >= need:
            low = allowed & -allowed
            v = low.bit_length() - 1
            allowed ^= low
            yield from extend(chosen | low, allowed & ~adj[v], need - 1)

    yield from extend(0, (1 << n) - 1, r)


def enumerate_independent(g: Graph, r: int) -> SetFamily:
    if not 0 <= r <= g.vertex_count:
        raise FamilyError(f"r={r} outside 0..{g.vertex_count}")
    # DFS over ascending vertex choices already produces canonical order
    return SetFamily(g.vertex_count, r, tuple(VertexSet(b) for b in iter_independent(g, r)))


def star(g: Graph, r: int, v: int) -> SetFamily:
    if not 0 <= v < g.vertex_count:
        raise FamilyError(f"vertex {v} outside the graph")
    return star_of(enumerate_independent(g, r), v)


def star_of(f: SetFamily, v: int) -> SetFamily:
    bit = 1 << v
    return SetFamily(f.universe_size, f.r, tuple(m for m in f.members if m.bits & bit))


def is_intersecting(f: SetFamily) -> tuple[bool, tuple[VertexSet, VertexSet] | None]:
    """Return ``(True, None)`` or ``(False, disjoint_pair)``."""
    members = f.members
    if f.r == 0:
        return (len(members) <= 1, None)
    # index members by vertex; a member is disjoint from everything outside
    # the union of the buckets of its vertices
    containing: dict[int, int] = {}
    for k, m in enumerate(members):
        for v in iter_bits(m.bits):
            containing[v] = containing.get(v, 0) | (1 << k)
    full = (1 << len(members)) - 1
    for k, m in enumerate(members):
        meets = 0
        for v in iter_bits(m.bits):
            meets |= containing[v]
        missed = full & ~meets
        if missed:
            j = (missed & -missed).bit_length() - 1
            a, b = sorted((k, j))
            return False, (members[a], members[b])
    return True, None


def shadow(f: SetFamily, s: int) -> SetFamily:
    """All ``s``-subsets of members. The 0-shadow of a nonempty family is ``{∅}``."""
    if not 0 <= s <= f.r:
        raise FamilyError(f"shadow level {s} outside 0..{f.r}")
    out: set[int] = set()
    for m in f.members:
        for combo in combinations(m.indices(), s):
            out.add(to_mask(combo))
    return SetFamily.from_masks(f.universe_size, s, out)


def min_pairwise_intersection(f: SetFamily) -> int:
    if len(f) < 2:
        raise FamilyError("minimum pairwise intersection needs at least two members")
    masks = f.masks()
    return min((a & b).bit_count() for a, b in combinations(masks, 2))


# -- shifting ----------------------------------------------------------------


def _shift(f: SetFamily, source: int, target: int) -> SetFamily:
    src, dst = 1 << source, 1 << target
    present = f._index
    out = []
    for b in f.masks():
        if b & src:
            image = (b & ~src) | dst
            if image not in present:
                out.append(image)
                continue
        out.append(b)
    # images are injective and absent from f, so no member is lost
    return f.with_members(out)


def shift_base_pendant(f: SetFamily, g: Graph, i: int) -> SetFamily:
    """Apply ``S_i``: move ``v_i`` to its unique pendant ``p_i`` where the image is new."""
    if not 1 <= i <= g.base_count:
        raise InvalidShift(f"no base vertex v{i}")
    if g.clique_sizes[i - 1] != 1:
        raise InvalidShift(f"S_{i} needs exactly one pendant at v{i}, found {g.clique_sizes[i - 1]}")
    return _shift(f, g.base_vertex(i), g.pendant_vertex(i, 1))


def shift_local(f: SetFamily, u: int, w: int, g: Graph) -> SetFamily:
    """Replace ``u`` by its clique sibling ``w`` in every member where the image is new."""
    ru, rw = g.roles[u], g.roles[w]
    if u == w or not (isinstance(ru, Pendant) and isinstance(rw, Pendant) and ru.i == rw.i):
        raise InvalidShift(f"vertices {u} and {w} are not distinct members of one pendant clique")
    return _shift(f, u, w)


@dataclass(frozen=True)
class BaseShift:
    """Descriptor for ``S_i`` (1-based base index)."""

    i: int


@dataclass(frozen=True)
class LocalShift:
    """Descriptor for the within-clique shift ``u -> w``."""

    u: int
    w: int


ShiftDescriptor = Union[BaseShift, LocalShift]


def apply_shift(f: SetFamily, shift: ShiftDescriptor, g: Graph) -> SetFamily:
    if isinstance(shift, BaseShift):
        return shift_base_pendant(f, g, shift.i)
    return shift_local(f, shift.u, shift.w, g)


def stabilize(
    f: SetFamily, shifts: Sequence[ShiftDescriptor], g: Graph
) -> tuple[SetFamily, int]:
    """Apply ``shifts`` in order, pass after pass, until a pass changes nothing.

    Returns the fixed point and the number of passes, the final unchanged
    pass included.
    """
    passes = 0
    while True:
        passes += 1
        before = f
        for sh in shifts:
            f = apply_shift(f, sh, g)
        if f == before:
            return f, passes


def base_pendant_shifts(g: Graph) -> list[BaseShift]:
    """``S_1..S_n`` over every base vertex carrying a single pendant."""
    return [BaseShift(i + 1) for i, size in enumerate(g.clique_sizes) if size == 1]


# -- proof helpers -----------------------------------------------------------


def partition_by_base(f: SetFamily, g: Graph) -> BasePartition:
    """Split into members avoiding the base and members with one base vertex.

    ``a1_reduced`` deletes the base vertex and collapses duplicates; the raw
    count before collapsing is kept alongside.
    """
    base = g.base_mask
    a0, a1, reduced = [], [], []
    for b in f.masks():
        k = (b & base).bit_count()
        if k == 0:
            a0.append(b)
        elif k == 1:
            a1.append(b)
            reduced.append(b & ~base)
        else:
            raise FamilyError(
                f"member {canonical_key(b)} has {k} base vertices; the base is not complete"
            )
    n = f.universe_size
    return BasePartition(
        a0=SetFamily.from_masks(n, f.r, a0),
        a1=SetFamily.from_masks(n, f.r, a1),
        a1_reduced=SetFamily.from_masks(n, max(f.r - 1, 0), reduced),
        a1_reduced_raw_count=len(reduced),
    )


def complement_in(f: SetFamily, ground: VertexSet) -> SetFamily:
    for m in f.members:
        if not m.issubset(ground):
            raise FamilyError(f"member {m.indices()} is not inside the ground set")
    return f.with_members((ground.bits & ~b for b in f.masks()), ground.cardinality - f.r)


def split_by_vertex(f: SetFamily, v: int) -> tuple[SetFamily, SetFamily]:
    """(members containing ``v``, members avoiding ``v``)."""
    bit = 1 << v
    has = [b for b in f.masks() if b & bit]
    lacks = [b for b in f.masks() if not b & bit]
    return f.with_members(has), f.with_members(lacks)


def delete_vertex(f: SetFamily, v: int) -> SetFamily:
    """Remove ``v`` from every member; all members must contain it."""
    bit = 1 << v
    if any(not b & bit for b in f.masks()):
        raise FamilyError(f"not every member contains vertex {v}")
    return f.with_members((b & ~bit for b in f.masks()), f.r - 1)
