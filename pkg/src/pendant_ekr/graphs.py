"""Graph construction with a canonical vertex indexing.

Base vertices take indices ``0..n-1``. The clique attached to base vertex
``v_i`` (1-based ``i``) occupies the contiguous block starting at
``n + s_1 + ... + s_{i-1}``, with clique position ``t`` at offset ``t - 1``.
In ``G*`` the pendant ``p_i`` therefore has index ``n + i - 1``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import Union

from ._bits import iter_bits
from ._mis import maximum_independent_set

MAX_VERTICES = 512


class GraphError(ValueError):
    """Invalid graph parameters."""


@dataclass(frozen=True)
class Base:
    i: int


@dataclass(frozen=True)
class Pendant:
    i: int
    t: int


VertexRole = Union[Base, Pendant]


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[int, ...]
    roles: tuple[VertexRole, ...]
    name: str = ""
    _clique_sizes: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.vertex_count > MAX_VERTICES:
            raise GraphError(f"{self.vertex_count} vertices exceeds the cap of {MAX_VERTICES}")
        if len(self.adjacency) != self.vertex_count or len(self.roles) != self.vertex_count:
            raise GraphError("adjacency and roles must have one entry per vertex")
        full = (1 << self.vertex_count) - 1
        for v, nb in enumerate(self.adjacency):
            if nb & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside the universe")
            if (nb >> v) & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in iter_bits(nb):
                if not (self.adjacency[u] >> v) & 1:
                    raise GraphError(f"asymmetric edge {v}-{u}")
        n_base = sum(isinstance(role, Base) for role in self.roles)
        sizes = [0] * n_base
        for role in self.roles:
            if isinstance(role, Pendant):
                if not 1 <= role.i <= n_base:
                    raise GraphError(f"pendant role refers to missing base {role.i}")
                sizes[role.i - 1] += 1
        object.__setattr__(self, "_clique_sizes", tuple(sizes))

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        roles: Sequence[VertexRole] | None = None,
        name: str = "",
    ) -> Graph:
        if vertex_count > MAX_VERTICES:
            raise GraphError(f"{vertex_count} vertices exceeds the cap of {MAX_VERTICES}")
        adj = [0] * vertex_count
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge ({u},{v}) out of range for {vertex_count} vertices")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        if roles is None:
            roles = [Base(i + 1) for i in range(vertex_count)]
        return cls(vertex_count, tuple(adj), tuple(roles), name)

    # -- queries ---------------------------------------------------------

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in iter_bits(self.adjacency[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(nb.bit_count() for nb in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adjacency[u] >> v) & 1)

    def is_independent(self, mask: int) -> bool:
        return all(not (self.adjacency[v] & mask) for v in iter_bits(mask))

    @property
    def base_count(self) -> int:
        return len(self._clique_sizes)

    @property
    def clique_sizes(self) -> tuple[int, ...]:
        """Pendant-clique size at each base vertex (0 when none is attached)."""
        return self._clique_sizes

    @property
    def base_mask(self) -> int:
        return sum(1 << v for v, role in enumerate(self.roles) if isinstance(role, Base))

    def base_vertex(self, i: int) -> int:
        """Index of base vertex ``v_i`` (1-based ``i``)."""
        for v, role in enumerate(self.roles):
            if role == Base(i):
                return v
        raise GraphError(f"no base vertex {i}")

    def pendant_vertex(self, i: int, t: int = 1) -> int:
        """Index of clique member ``t`` attached to ``v_i`` (both 1-based)."""
        for v, role in enumerate(self.roles):
            if role == Pendant(i, t):
                return v
        raise GraphError(f"no pendant vertex ({i},{t})")

    def clique_mask(self, i: int) -> int:
        return sum(
            1 << v for v, role in enumerate(self.roles) if isinstance(role, Pendant) and role.i == i
        )

    def label(self, v: int) -> str:
        role = self.roles[v]
        if isinstance(role, Base):
            return f"v{role.i}"
        if self._clique_sizes[role.i - 1] == 1:
            return f"p{role.i}"
        return f"v{role.i}_{role.t}"

    def __str__(self) -> str:
        return self.name or f"graph({self.vertex_count})"


# -- base graphs -----------------------------------------------------------


def make_complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("the empty graph is not supported; n must be >= 1")
    return Graph.from_edges(n, combinations(range(n), 2), name=f"K{n}")


def make_path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)), name=f"P{n}")


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)), name=f"C{n}")


def make_disjoint_cliques(n: int, m: int) -> Graph:
    if n < 1 or m < 1:
        raise GraphError("disjoint cliques need n >= 1 and m >= 1")
    edges = [(c * m + a, c * m + b) for c in range(n) for a, b in combinations(range(m), 2)]
    return Graph.from_edges(n * m, edges, name=f"{n}K{m}")


def distances_from(g: Graph, source: int) -> list[int | None]:
    dist: list[int | None] = [None] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in iter_bits(g.adjacency[v]):
            if dist[u] is None:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def make_power(g: Graph, k: int) -> Graph:
    """Join every pair of vertices at distance at most ``k`` in ``g``."""
    if k < 1:
        raise GraphError("power needs k >= 1")
    adj = [0] * g.vertex_count
    for v in range(g.vertex_count):
        for u, d in enumerate(distances_from(g, v)):
            if d is not None and 0 < d <= k:
                adj[v] |= 1 << u
    return Graph(g.vertex_count, tuple(adj), g.roles, f"{g}^{k}")


def attach_pendants(g: Graph, s: Sequence[int]) -> Graph:
    """Attach a clique ``K_{s_i}`` to base vertex ``v_i`` for every ``i``."""
    if any(x < 1 for x in s):
        raise GraphError("clique sizes must be positive")
    return _attach(g, s)


def _attach(g: Graph, s: Sequence[int]) -> Graph:
    n = g.vertex_count
    if len(s) != n:
        raise GraphError(f"clique-size sequence has length {len(s)}, graph has {n} vertices")
    total = n + sum(s)
    if total > MAX_VERTICES:
        raise GraphError(f"{total} vertices exceeds the cap of {MAX_VERTICES}")
    edges = list(g.edges())
    roles: list[VertexRole] = [Base(i + 1) for i in range(n)]
    start = n
    for i, size in enumerate(s):
        block = range(start, start + size)
        edges.extend((i, w) for w in block)
        edges.extend(combinations(block, 2))
        roles.extend(Pendant(i + 1, t + 1) for t in range(size))
        start += size
    if all(x == 1 for x in s):
        name = f"{g}*"
    elif len(set(s)) == 1:
        name = f"{g}^{s[0]}"
    else:
        name = f"{g}^({','.join(map(str, s))})"
    return Graph.from_edges(total, edges, roles, name)


# -- pendant specifications ------------------------------------------------


@dataclass(frozen=True)
class Complete:
    n: int

    def build(self) -> Graph:
        return make_complete(self.n)


@dataclass(frozen=True)
class Path:
    n: int

    def build(self) -> Graph:
        return make_path(self.n)


@dataclass(frozen=True)
class Cycle:
    n: int

    def build(self) -> Graph:
        return make_cycle(self.n)


@dataclass(frozen=True)
class DisjointCliques:
    n: int
    m: int

    def build(self) -> Graph:
        return make_disjoint_cliques(self.n, self.m)


@dataclass(frozen=True)
class Power:
    base: BaseKind
    k: int

    def build(self) -> Graph:
        return make_power(self.base.build(), self.k)


@dataclass(frozen=True)
class Explicit:
    n: int
    edges: tuple[tuple[int, int], ...]

    def build(self) -> Graph:
        return Graph.from_edges(self.n, self.edges, name=f"G{self.n}")


BaseKind = Union[Complete, Path, Cycle, DisjointCliques, Power, Explicit]


@dataclass(frozen=True)
class PendantSpec:
    """A base graph plus clique sizes; a zero entry leaves ``v_i`` bare."""

    base: BaseKind
    s: tuple[int, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.s):
            raise GraphError("clique sizes must be nonnegative")

    def build(self) -> Graph:
        return _attach(self.base.build(), self.s)


def pendant_complete(n: int) -> Graph:
    return attach_pendants(make_complete(n), [1] * n)


def pendant_path(n: int) -> Graph:
    return attach_pendants(make_path(n), [1] * n)


def pendant_cycle(n: int) -> Graph:
    return attach_pendants(make_cycle(n), [1] * n)


def pendant_uniform(n: int, m: int) -> Graph:
    return attach_pendants(make_complete(n), [m] * n)


def pendant_general(s: Sequence[int]) -> Graph:
    return attach_pendants(make_complete(len(s)), list(s))


def independence_number(g: Graph) -> int:
    return maximum_independent_set(list(g.adjacency)).size


# -- DIMACS ----------------------------------------------------------------


def to_dimacs(g: Graph) -> str:
    lines = [f"c {g}", f"p edge {g.vertex_count} {g.edge_count}"]
    for v, role in enumerate(g.roles):
        if isinstance(role, Base):
            lines.append(f"c role {v + 1} base {role.i}")
        else:
            lines.append(f"c role {v + 1} pendant {role.i} {role.t}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_dimacs(text: str, name: str = "") -> Graph:
    n = None
    edges = []
    roles: dict[int, VertexRole] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = line.split()
        if not tok:
            continue
        if tok[0] == "c":
            if len(tok) >= 4 and tok[1] == "role":
                v = int(tok[2]) - 1
                if tok[3] == "base":
                    roles[v] = Base(int(tok[4]))
                elif tok[3] == "pendant":
                    roles[v] = Pendant(int(tok[4]), int(tok[5]))
                else:
                    raise GraphError(f"line {lineno}: unknown role {tok[3]!r}")
            elif not name and len(tok) == 2:
                name = tok[1]
        elif tok[0] == "p":
            if len(tok) != 4 or tok[1] != "edge":
                raise GraphError(f"line {lineno}: expected 'p edge <V> <E>'")
            n = int(tok[2])
        elif tok[0] == "e":
            edges.append((int(tok[1]) - 1, int(tok[2]) - 1))
        else:
            raise GraphError(f"line {lineno}: unrecognised line {line!r}")
    if n is None:
        raise GraphError("missing problem line")
    role_list = None
    if roles:
        if set(roles) != set(range(n)):
            raise GraphError("role annotations must cover every vertex or none")
        role_list = [roles[v] for v in range(n)]
    return Graph.from_edges(n, edges, role_list, name)
