"""Star-size formulas, classical bounds, explicit constructions, EKR verdicts.

Pendant-path conventions: in ``P_n*`` the path vertex ``x_i`` has index
``i - 1`` and its pendant ``p_i`` has index ``n + i - 1``.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Optional

from .families import (
    FamilyError,
    SetFamily,
    VertexSet,
    complement_in,
    delete_vertex,
    enumerate_independent,
    is_intersecting,
    min_pairwise_intersection,
    shadow,
    split_by_vertex,
    star_of,
)
from .graphs import Graph, pendant_general, pendant_path
from .solver import (
    DEFAULT_MEMBER_CAP,
    ResourceLimitError,
    all_maximum_intersecting_family,
    max_intersecting_family,
)


class PreconditionError(ValueError):
    """Arguments fall outside the range where a formula or bound is stated."""


EKR = "EKR"
STRICTLY_EKR = "StrictlyEKR"
NOT_EKR = "NotEKR"


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


# -- closed forms ---------------------------------------------------------------


def star_size_pendant_complete(n: int, r: int) -> int:
    """Size of an ``r``-star at a pendant of ``K_n*``: ``r * C(n-1, r-1)``."""
    if not 1 <= r <= n:
        raise PreconditionError(f"need 1 <= r <= n, got n={n}, r={r}")
    return r * comb(n - 1, r - 1)


def star_size_uniform(n: int, m: int, r: int) -> int:
    """Size of an ``r``-star at a clique vertex of ``K_n^m``.

    Uses ``m^(r-1) C(n-1,r-1) + (n-1) m^(r-2) C(n-2,r-2)``, which equals
    ``m^(r-2) (m+r-1) C(n-1,r-1)`` for ``r >= 2`` and never needs ``m^-1``.
    """
    if n < 1 or m < 1 or not 1 <= r <= n:
        raise PreconditionError(f"need n, m >= 1 and 1 <= r <= n, got n={n}, m={m}, r={r}")
    first = m ** (r - 1) * binom(n - 1, r - 1)
    if r == 1:
        return first
    return first + (n - 1) * m ** (r - 2) * binom(n - 2, r - 2)


def star_size_general(s: Sequence[int], r: int) -> int:
    """Size of an ``r``-star of ``K_n^s`` centred in a smallest pendant clique.

    Peels one vertex off the largest other clique at a time: stars avoiding
    it live in the graph with that clique shrunk by one, stars containing it
    reduce to ``(r-1)``-stars of the graph with that whole coordinate gone.
    A clique shrunk to nothing leaves a bare base vertex behind.
    """
    if not s or any(x < 1 for x in s):
        raise PreconditionError("clique sizes must be positive")
    if r < 1:
        raise PreconditionError("r must be at least 1")
    if r > len(s):
        return 0
    ordered = sorted(s)
    # the centre's own clique never matters: it blocks v_1 and its siblings
    return _star_general(tuple(ordered[1:]), 0, r)


@lru_cache(maxsize=None)
def _star_general(others: tuple[int, ...], bare: int, r: int) -> int:
    if r == 1:
        return 1
    if r - 1 > len(others) + bare:
        return 0
    if not others:
        # only bare base vertices remain and they form a clique
        return bare if r == 2 else 0
    if bare == 0 and len(set(others)) == 1:
        return star_size_uniform(len(others) + 1, others[0], r)
    *rest, largest = others
    if largest == 1:
        shrunk, new_bare = tuple(rest), bare + 1
    else:
        shrunk, new_bare = tuple(sorted([*rest, largest - 1])), bare
    return _star_general(shrunk, new_bare, r) + _star_general(tuple(rest), bare, r - 1)


def ekr_bound_classical(n: int, r: int) -> int:
    if r < 1 or n < 2 * r:
        raise PreconditionError(f"classical bound is stated for n >= 2r, got n={n}, r={r}")
    return comb(n - 1, r - 1)


def bollobas_leader_bound(n: int, m: int, r: int) -> int:
    """Bound ``m^(r-1) C(n-1, r-1)`` on intersecting families of independent ``r``-sets of ``nK_m``."""
    if m < 2 or not 1 <= r <= n:
        raise PreconditionError(f"need m >= 2 and 1 <= r <= n, got n={n}, m={m}, r={r}")
    return m ** (r - 1) * comb(n - 1, r - 1)


def pendant_complete_bound_terms(n: int, r: int) -> tuple[int, int]:
    """The two pieces of the ``K_n*`` bound: ``C(n-1,r-1)`` and ``(n-r+1) C(n-1,r-2)``.

    They sum to ``r C(n-1,r-1)``.
    """
    return binom(n - 1, r - 1), (n - r + 1) * binom(n - 1, r - 2)


# -- Katona -------------------------------------------------------------------


@dataclass(frozen=True)
class KatonaReport:
    applicable: bool
    a: int
    b: int
    family_size: int
    shadow_size: Optional[int] = None
    holds: Optional[bool] = None
    reason: str = ""


def katona_check(f: SetFamily, b: int) -> KatonaReport:
    """Compare ``|f|`` with its ``(a-b)``-shadow for a ``b``-intersecting ``a``-uniform ``f``.

    A violated precondition yields ``applicable=False``, never ``holds=False``.
    """
    a = f.r
    if not 0 <= b <= a:
        return KatonaReport(False, a, b, len(f), reason=f"need 0 <= b <= a, got a={a}, b={b}")
    if len(f) >= 2:
        worst = min_pairwise_intersection(f)
        if worst < b:
            return KatonaReport(False, a, b, len(f), reason=f"two members meet in only {worst}")
    size = len(shadow(f, a - b))
    return KatonaReport(True, a, b, len(f), size, len(f) <= size)


@dataclass(frozen=True)
class PendantSplit:
    """Families built from the reduced ``(r-1)``-family in the ``K_n*`` argument.

    ``with_p1`` and ``without_p1`` split by a fixed pendant ``p1``;
    ``with_p1_reduced`` drops ``p1``; ``without_p1_complement`` complements
    inside the remaining pendants ``P'``.
    """

    p1: int
    ground: VertexSet
    with_p1: SetFamily
    without_p1: SetFamily
    with_p1_reduced: SetFamily
    without_p1_complement: SetFamily


def pendant_split(reduced: SetFamily, g: Graph, i: int = 1) -> PendantSplit:
    """Split an all-pendant family of ``K_n*`` around ``p_i``."""
    p1 = g.pendant_vertex(i, 1)
    pendants = VertexSet(sum(g.clique_mask(j + 1) for j in range(g.base_count)))
    if any(not m.issubset(pendants) for m in reduced):
        raise FamilyError("reduced family must consist of pendant vertices only")
    ground = pendants - VertexSet(1 << p1)
    has, lacks = split_by_vertex(reduced, p1)
    return PendantSplit(
        p1=p1,
        ground=ground,
        with_p1=has,
        without_p1=lacks,
        with_p1_reduced=delete_vertex(has, p1),
        without_p1_complement=complement_in(lacks, ground),
    )


# -- stars and verdicts --------------------------------------------------------


def star_sizes(f: SetFamily) -> list[int]:
    counts = [0] * f.universe_size
    for m in f.members:
        for v in m:
            counts[v] += 1
    return counts


def largest_star_centers(g: Graph, r: int) -> tuple[int, list[int]]:
    if r < 1:
        raise PreconditionError("r must be at least 1")
    return _largest_star(enumerate_independent(g, r))


def _largest_star(f: SetFamily) -> tuple[int, list[int]]:
    counts = star_sizes(f)
    best = max(counts, default=0)
    return best, [v for v, c in enumerate(counts) if c == best]


def is_star(f: SetFamily) -> bool:
    """True when all members share a vertex (the empty family counts)."""
    if not f.members:
        return True
    common = ~0
    for m in f.masks():
        common &= m
    return bool(common)


@dataclass
class EkrVerdict:
    graph_name: str
    r: int
    max_size: int
    best_star_size: int
    best_star_centers: list[int]
    classification: str
    witness: Optional[SetFamily] = None
    certified: bool = True
    max_exact: bool = True
    member_count: int = 0
    strict_finding: Optional[str] = None
    maximum_families: Optional[int] = None
    range_flag: Optional[str] = None
    nodes: int = 0
    millis: float = 0.0

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "graph": self.graph_name,
            "r": self.r,
            "max": self.max_size,
            "best_star": self.best_star_size,
            "centers": self.best_star_centers,
            "class": self.classification,
        }
        if self.witness is not None:
            out["witness"] = [list(m.indices()) for m in self.witness]
        out.update(
            certified=self.certified,
            max_exact=self.max_exact,
            range_flag=self.range_flag,
            strict=self.strict_finding,
            members=self.member_count,
            nodes=self.nodes,
            millis=round(self.millis, 3) if timing else None,
        )
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing))


def verify_ekr(
    g: Graph,
    r: int,
    strict_check: bool = False,
    *,
    cap: int = DEFAULT_MEMBER_CAP,
    mode: str = "canonical",
    node_limit: int | None = None,
    strict_cap: int = 1000,
    range_flag: str | None = None,
) -> EkrVerdict:
    """Classify ``g`` at ``r`` by comparing the largest intersecting family with the best star.

    A family larger than every star settles ``NotEKR`` even when the search
    was cut short; then ``certified`` is true but ``max_exact`` may be false.
    """
    if r < 1:
        raise PreconditionError("r must be at least 1")
    f = enumerate_independent(g, r)
    best_star, centers = _largest_star(f)
    verdict = EkrVerdict(
        graph_name=str(g),
        r=r,
        max_size=0,
        best_star_size=best_star,
        best_star_centers=centers,
        classification=EKR,
        member_count=len(f),
        range_flag=range_flag,
    )
    try:
        result = max_intersecting_family(f, cap=cap, mode=mode, node_limit=node_limit)
    except ResourceLimitError as exc:
        verdict.max_size = exc.lower_bound or 0
        verdict.max_exact = False
        if exc.witness is not None and len(exc.witness) > best_star:
            verdict.classification = NOT_EKR
            verdict.witness = exc.witness
        else:
            verdict.certified = False
        return verdict

    verdict.max_size = result.size
    verdict.max_exact = result.certified
    verdict.nodes = result.stats.nodes
    verdict.millis = result.stats.millis
    if result.size > best_star:
        verdict.classification = NOT_EKR
        verdict.witness = result.witness
        return verdict
    if not result.certified:
        verdict.certified = False
        return verdict
    if strict_check:
        every = all_maximum_intersecting_family(f, strict_cap, member_cap=cap, node_limit=node_limit)
        verdict.maximum_families = len(every.families)
        if not every.certified:
            verdict.strict_finding = "uncertified"
        elif every.cap_hit:
            verdict.strict_finding = "cap-hit"
        elif all(is_star(fam) for fam in every.families):
            verdict.strict_finding = "all-stars"
            verdict.classification = STRICTLY_EKR
        else:
            verdict.strict_finding = "non-star-extremal"
    return verdict


# -- pendant-path constructions -----------------------------------------------------


def x(n: int, i: int) -> int:
    """Index of path vertex ``x_i`` in ``P_n*``."""
    return i - 1


def p(n: int, i: int) -> int:
    """Index of pendant ``p_i`` in ``P_n*``."""
    return n + i - 1


def witness_Tk(n: int, k: int) -> VertexSet:
    """``{p_(k+1), ..., p_n}``."""
    if k < 0 or k >= n:
        raise PreconditionError(f"need 0 <= k < n, got n={n}, k={k}")
    return VertexSet.of(p(n, i) for i in range(k + 1, n + 1))


def witness_Tprime(n: int) -> VertexSet:
    """``{p_1, p_3, p_4, ..., p_n}``."""
    if n < 3:
        raise PreconditionError(f"T' needs n >= 3, got {n}")
    return VertexSet.of(p(n, i) for i in range(1, n + 1) if i != 2)


def witness_A(n: int) -> VertexSet:
    """Odd path vertices with even pendants."""
    if n < 1:
        raise PreconditionError("n must be positive")
    return VertexSet.of(x(n, i) if i % 2 else p(n, i) for i in range(1, n + 1))


def witness_Ac(n: int) -> VertexSet:
    """The pairwise complement of ``witness_A``: even path vertices, odd pendants."""
    if n < 1:
        raise PreconditionError("n must be positive")
    return VertexSet.of(p(n, i) if i % 2 else x(n, i) for i in range(1, n + 1))


def witness_C(n: int) -> VertexSet:
    """``{x_2, x_4}`` with every other pendant."""
    if n < 4:
        raise PreconditionError(f"C needs n >= 4, got {n}")
    return VertexSet.of(x(n, i) if i in (2, 4) else p(n, i) for i in range(1, n + 1))


def pairwise_complement(n: int, t: VertexSet) -> VertexSet:
    """Swap ``x_i`` and ``p_i`` in a transversal of the pairs ``{x_i, p_i}``."""
    out = []
    for i in range(1, n + 1):
        has_x, has_p = x(n, i) in t, p(n, i) in t
        if has_x == has_p:
            raise FamilyError(f"set does not pick exactly one of x_{i}, p_{i}")
        out.append(p(n, i) if has_x else x(n, i))
    return VertexSet.of(out)


def family_not_nEKR(n: int) -> SetFamily:
    """All independent ``n``-sets of ``P_n*`` except ``A^c``."""
    if n < 1:
        raise PreconditionError("n must be positive")
    return enumerate_independent(pendant_path(n), n).without(witness_Ac(n))


def theorem_range(construction: str, n: int, k: int = 0) -> bool:
    """Whether ``(n, k)`` lies where the pendant-path non-EKR result is proven."""
    if construction == "Tk":
        return k >= 2 and n >= 3 * k + 2
    if construction == "Tprime":
        return n >= 6
    if construction in ("A", "Ac", "C", "F"):
        return n >= 4
    raise ValueError(f"unknown construction {construction!r}")


@dataclass
class CounterexampleReport:
    n: int
    k: int
    r: int
    construction: str
    star_center: int
    star_size: int
    best_star_size: int
    family_size: int
    intersecting: bool
    in_range: bool
    exceeds_best_star: bool
    family: SetFamily = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "r": self.r,
            "construction": self.construction,
            "star_center": self.star_center,
            "star_size": self.star_size,
            "best_star": self.best_star_size,
            "family_size": self.family_size,
            "intersecting": self.intersecting,
            "in_range": self.in_range,
            "exceeds_best_star": self.exceeds_best_star,
        }


def counterexample(n: int, k: int) -> CounterexampleReport:
    """Build the non-EKR construction for ``r = n - k`` on ``P_n*``.

    ``k >= 2`` adds ``T_k`` to the ``p_2``-star, ``k = 1`` adds ``T'``, and
    ``k = 0`` takes every independent ``n``-set except ``A^c``.
    """
    if n < 2 or not 0 <= k < n:
        raise PreconditionError(f"need n >= 2 and 0 <= k < n, got n={n}, k={k}")
    r = n - k
    full = enumerate_independent(pendant_path(n), r)
    center = p(n, 2)
    l2 = star_of(full, center)
    best, _ = _largest_star(full)
    if k >= 2:
        name, family, in_range = "Tk", l2.union(witness_Tk(n, k)), theorem_range("Tk", n, k)
    elif k == 1:
        name, family, in_range = "Tprime", l2.union(witness_Tprime(n)), theorem_range("Tprime", n)
    else:
        name, family, in_range = "F", family_not_nEKR(n), theorem_range("F", n)
    ok, _ = is_intersecting(family)
    return CounterexampleReport(
        n=n,
        k=k,
        r=r,
        construction=name,
        star_center=center,
        star_size=len(l2),
        best_star_size=best,
        family_size=len(family),
        intersecting=ok,
        in_range=in_range,
        exceeds_best_star=ok and len(family) > best,
        family=family,
    )


def ekr_range_flag(family: str, n: int, r: int) -> str | None:
    """Whether ``(n, r)`` is covered by a proven statement for the named family."""
    if family in ("pendant-complete", "pendant-uniform", "pendant-general"):
        return "in-range" if n >= 2 * r else "out-of-range"
    if family == "pendant-path":
        k = n - r
        proven = (k == 0 and n >= 4) or (k == 1 and n >= 6) or (k >= 2 and n >= 3 * k + 2)
        return "in-range" if proven else "out-of-range"
    return None


# -- star-size table ---------------------------------------------------------------


@dataclass(frozen=True)
class StarRow:
    graph: str
    r: int
    center: int
    formula: int
    enumerated: int

    @property
    def agrees(self) -> bool:
        return self.formula == self.enumerated


def star_formula(s: Sequence[int], r: int) -> int:
    if all(v == 1 for v in s):
        return star_size_pendant_complete(len(s), r)
    if len(set(s)) == 1:
        return star_size_uniform(len(s), s[0], r)
    return star_size_general(s, r)


def star_size_row(s: Sequence[int], r: int) -> StarRow:
    """Formula against enumeration for a star of ``K_n^s`` at a smallest-clique vertex."""
    ordered = sorted(s)
    g = pendant_general(ordered)
    center = g.pendant_vertex(1, 1)
    enumerated = len(star_of(enumerate_independent(g, r), center))
    return StarRow(str(g), r, center, star_formula(ordered, r), enumerated)


def star_size_table(s: Sequence[int], r_values: Sequence[int]) -> list[StarRow]:
    return [star_size_row(s, r) for r in r_values]
