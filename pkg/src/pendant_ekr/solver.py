"""Maximum intersecting subfamilies of ``I^(r)(G)``.

Members of the family become vertices of a disjointness graph (an edge joins
two disjoint members). Intersecting subfamilies are exactly the independent
sets of that graph, so the largest one is found by exact MIS search.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import _mis
from ._bits import iter_bits
from .families import SetFamily, enumerate_independent
from .graphs import Graph

DEFAULT_MEMBER_CAP = 20000


class ResourceLimitError(RuntimeError):
    """The family is too large for the configured cap."""

    def __init__(
        self,
        message: str,
        member_count: int,
        lower_bound: int | None = None,
        witness: SetFamily | None = None,
    ):
        super().__init__(message)
        self.member_count = member_count
        self.lower_bound = lower_bound
        self.witness = witness


@dataclass(frozen=True)
class DisjointnessGraph:
    member_count: int
    adjacency: tuple[int, ...]
    source_family: SetFamily

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, a in enumerate(self.adjacency) for j in iter_bits(a) if i < j]


@dataclass
class SolverStats:
    size: int
    nodes: int = 0
    millis: float = 0.0
    bound_hits: int = 0
    certified: bool = True
    mode: str = "canonical"

    def to_json(self) -> str:
        return json.dumps(
            {
                "size": self.size,
                "nodes": self.nodes,
                "millis": round(self.millis, 3),
                "certified": self.certified,
                "mode": self.mode,
            }
        )


@dataclass
class MaxFamilyResult:
    size: int
    witness: SetFamily
    stats: SolverStats
    certified: bool = True
    member_count: int = 0


@dataclass
class AllMaximumResult:
    size: int
    families: list[SetFamily] = field(default_factory=list)
    cap_hit: bool = False
    certified: bool = True


def build_disjointness_graph(f: SetFamily) -> DisjointnessGraph:
    masks = f.masks()
    containing: dict[int, int] = {}
    for k, b in enumerate(masks):
        for v in iter_bits(b):
            containing[v] = containing.get(v, 0) | (1 << k)
    full = (1 << len(masks)) - 1
    adj = []
    for b in masks:
        meets = 0
        for v in iter_bits(b):
            meets |= containing[v]
        adj.append(full & ~meets)
    return DisjointnessGraph(len(masks), tuple(adj), f)


def greedy_lower_bound(d: DisjointnessGraph) -> int:
    return _mis.greedy_mis(list(d.adjacency), (1 << d.member_count) - 1).bit_count()


def _check_cap(f: SetFamily, cap: int) -> None:
    if len(f) > cap:
        d = build_disjointness_graph(f)
        chosen = _mis.greedy_mis(list(d.adjacency), (1 << d.member_count) - 1)
        masks = f.masks()
        witness = f.with_members(masks[k] for k in iter_bits(chosen))
        raise ResourceLimitError(
            f"{len(f)} members exceeds the cap of {cap}; greedy lower bound {len(witness)}",
            member_count=len(f),
            lower_bound=len(witness),
            witness=witness,
        )


def _solve_component(args: tuple[list[int], int, int | None]) -> _mis.MisOutcome:
    adj, comp, limit = args
    return _mis._search_component(adj, comp, limit)


def max_intersecting_family(
    f: SetFamily,
    *,
    cap: int = DEFAULT_MEMBER_CAP,
    mode: str = "canonical",
    node_limit: int | None = None,
    workers: int | None = None,
) -> MaxFamilyResult:
    """Largest intersecting subfamily of an arbitrary family ``f``."""
    if mode not in ("canonical", "parallel"):
        raise ValueError(f"unknown mode {mode!r}")
    _check_cap(f, cap)
    start = time.perf_counter()
    d = build_disjointness_graph(f)
    adj = list(d.adjacency)
    if mode == "canonical":
        outcome = _mis.maximum_independent_set(adj, node_limit=node_limit)
    else:
        outcome = _parallel_mis(adj, node_limit, workers)
    millis = (time.perf_counter() - start) * 1000
    masks = f.masks()
    witness = f.with_members(masks[k] for k in iter_bits(outcome.chosen))
    stats = SolverStats(
        size=outcome.size,
        nodes=outcome.nodes,
        millis=millis,
        bound_hits=outcome.bound_hits,
        certified=outcome.complete,
        mode=mode,
    )
    return MaxFamilyResult(outcome.size, witness, stats, outcome.complete, len(f))


def _parallel_mis(adj: list[int], node_limit: int | None, workers: int | None) -> _mis.MisOutcome:
    cand, chosen, size = _mis._reduce(adj, (1 << len(adj)) - 1, 0, 0, True)
    comps = _mis.components(adj, cand)
    total = _mis.MisOutcome(size=size, chosen=chosen)
    if not comps:
        return total
    # every component gets the full node budget; only the canonical mode
    # promises a node count that matches run to run
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_solve_component, [(adj, c, node_limit) for c in comps]))
    for part in parts:
        total.size += part.size
        total.chosen |= part.chosen
        total.nodes += part.nodes
        total.bound_hits += part.bound_hits
        total.complete &= part.complete
    return total


def max_intersecting(
    g: Graph,
    r: int,
    *,
    cap: int = DEFAULT_MEMBER_CAP,
    mode: str = "canonical",
    node_limit: int | None = None,
) -> MaxFamilyResult:
    if r < 1:
        raise ValueError("r must be at least 1")
    return max_intersecting_family(
        enumerate_independent(g, r), cap=cap, mode=mode, node_limit=node_limit
    )


def all_maximum_intersecting_family(
    f: SetFamily,
    cap: int,
    *,
    member_cap: int = DEFAULT_MEMBER_CAP,
    node_limit: int | None = None,
) -> AllMaximumResult:
    """Every maximum intersecting subfamily of ``f``, up to ``cap`` of them.

    After each solution is found, it is blocked and the search restarts.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    best = max_intersecting_family(f, cap=member_cap, node_limit=node_limit)
    out = AllMaximumResult(size=best.size, certified=best.certified)
    if not best.certified:
        return out
    adj = list(build_disjointness_graph(f).adjacency)
    masks = f.masks()
    blocked: set[int] = set()
    while True:
        found, stats = _mis.find_independent_set_of_size(adj, best.size, blocked, node_limit=node_limit)
        if not stats.complete:
            out.certified = False
            break
        if found is None:
            break
        if len(out.families) == cap:
            out.cap_hit = True
            break
        blocked.add(found)
        out.families.append(f.with_members(masks[k] for k in iter_bits(found)))
    out.families.sort(key=lambda fam: [m.indices() for m in fam.members])
    return out


def all_maximum_intersecting(
    g: Graph, r: int, cap: int, *, member_cap: int = DEFAULT_MEMBER_CAP
) -> AllMaximumResult:
    return all_maximum_intersecting_family(enumerate_independent(g, r), cap, member_cap=member_cap)
