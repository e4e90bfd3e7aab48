"""Exact maximum independent set search over bitset adjacency lists.

Shared by ``graphs.independence_number`` and the extremal solver. Vertices are
the indices ``0..len(adj)-1``; ``adj[v]`` is the neighbour mask of ``v`` and
must not contain ``v`` itself.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from ._bits import iter_bits


@dataclass
class MisOutcome:
    size: int
    chosen: int
    nodes: int = 0
    bound_hits: int = 0
    complete: bool = True


def greedy_mis(adj: list[int], cand: int) -> int:
    """Minimum-degree greedy maximal independent set inside ``cand``.

    Ties go to the lowest index, so the result is deterministic.
    """
    deg = {v: (adj[v] & cand).bit_count() for v in iter_bits(cand)}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    chosen = 0
    while heap:
        d, v = heapq.heappop(heap)
        if not (cand >> v) & 1 or deg[v] != d:
            continue
        chosen |= 1 << v
        removed = (adj[v] & cand) | (1 << v)
        cand &= ~removed
        touched: dict[int, int] = {}
        for u in iter_bits(removed):
            for w in iter_bits(adj[u] & cand):
                touched[w] = touched.get(w, 0) + 1
        for w, k in touched.items():
            deg[w] -= k
            heapq.heappush(heap, (deg[w], w))
    return chosen


def clique_cover_bound(adj: list[int], cand: int) -> int:
    """Number of cliques in a greedy clique cover of ``cand``.

    Every independent set meets each clique at most once, so this is an upper
    bound on the independence number of the induced subgraph.
    """
    count = 0
    left = cand
    while left:
        low = left & -left
        v = low.bit_length() - 1
        left ^= low
        common = adj[v] & left
        while common:
            ulow = common & -common
            u = ulow.bit_length() - 1
            left ^= ulow
            common &= adj[u] & ~ulow
        count += 1
    return count


def components(adj: list[int], cand: int) -> list[int]:
    """Connected components of the subgraph induced by ``cand``, as masks."""
    out = []
    left = cand
    while left:
        low = left & -left
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= left & ~comp
            comp |= nxt
            frontier = nxt
        left &= ~comp
        out.append(comp)
    return out


def _reduce(adj: list[int], cand: int, chosen: int, size: int, degree_one: bool):
    changed = True
    while changed:
        changed = False
        scan = cand
        while scan:
            low = scan & -scan
            scan ^= low
            if not cand & low:
                continue
            nb = adj[low.bit_length() - 1] & cand
            if nb == 0:
                cand ^= low
                chosen |= low
                size += 1
            elif degree_one and nb & (nb - 1) == 0:
                cand &= ~(low | nb)
                chosen |= low
                size += 1
                changed = True
    return cand, chosen, size


def _branch_vertex(adj: list[int], cand: int) -> int:
    best_v, best_d = -1, -1
    for v in iter_bits(cand):
        d = (adj[v] & cand).bit_count()
        if d > best_d:
            best_v, best_d = v, d
    return best_v


def maximum_independent_set(
    adj: list[int],
    cand: int | None = None,
    *,
    node_limit: int | None = None,
) -> MisOutcome:
    """Branch and bound for a maximum independent set of ``cand``.

    Isolated and degree-one vertices are taken by reduction; the bound is a
    greedy clique cover. Components are solved one at a time. When
    ``node_limit`` is exhausted the best set found so far is returned with
    ``complete=False``.
    """
    if cand is None:
        cand = (1 << len(adj)) - 1
    total = MisOutcome(size=0, chosen=0)
    budget = node_limit
    cand, chosen, size = _reduce(adj, cand, 0, 0, True)
    total.chosen, total.size = chosen, size
    for comp in components(adj, cand):
        part = _search_component(adj, comp, budget)
        total.size += part.size
        total.chosen |= part.chosen
        total.nodes += part.nodes
        total.bound_hits += part.bound_hits
        total.complete &= part.complete
        if budget is not None:
            budget = max(budget - part.nodes, 0)
    return total


def _search_component(adj: list[int], cand: int, node_limit: int | None) -> MisOutcome:
    best = greedy_mis(adj, cand)
    best_size = best.bit_count()
    out = MisOutcome(size=best_size, chosen=best)
    stack = [(cand, 0, 0)]
    while stack:
        if node_limit is not None and out.nodes >= node_limit:
            out.complete = False
            break
        cand, chosen, size = stack.pop()
        out.nodes += 1
        cand, chosen, size = _reduce(adj, cand, chosen, size, True)
        if not cand:
            if size > best_size:
                best_size, best = size, chosen
            continue
        if size + clique_cover_bound(adj, cand) <= best_size:
            out.bound_hits += 1
            continue
        v = _branch_vertex(adj, cand)
        bit = 1 << v
        stack.append((cand & ~bit, chosen, size))
        stack.append((cand & ~(bit | adj[v]), chosen | bit, size + 1))
    out.size, out.chosen = best_size, best
    return out


def find_independent_set_of_size(
    adj: list[int],
    target: int,
    blocked: set[int] | frozenset[int] = frozenset(),
    *,
    node_limit: int | None = None,
) -> tuple[int | None, MisOutcome]:
    """Search for an independent set of exactly ``target`` vertices not in ``blocked``.

    Only the isolated-vertex reduction is used here: the degree-one rule keeps
    some optimum but can discard others, which would break enumeration.
    Returns ``(mask or None, stats)``.
    """
    stats = MisOutcome(size=target, chosen=0)
    stack = [((1 << len(adj)) - 1, 0, 0)]
    while stack:
        if node_limit is not None and stats.nodes >= node_limit:
            stats.complete = False
            return None, stats
        cand, chosen, size = stack.pop()
        stats.nodes += 1
        cand, chosen, size = _reduce(adj, cand, chosen, size, False)
        if size > target:
            raise ValueError("target is below the independence number")
        if not cand:
            if size == target and chosen not in blocked:
                stats.chosen = chosen
                return chosen, stats
            continue
        if size + clique_cover_bound(adj, cand) < target:
            stats.bound_hits += 1
            continue
        v = _branch_vertex(adj, cand)
        bit = 1 << v
        stack.append((cand & ~bit, chosen, size))
        stack.append((cand & ~(bit | adj[v]), chosen | bit, size + 1))
    return None, stats
