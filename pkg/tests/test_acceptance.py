"""Acceptance criteria, one test per criterion.

Each test records a one-line detail; the terminal summary prints a
PASS/FAIL line per criterion.
"""

import random
import time
from itertools import combinations
from math import comb

from oracles import (
    all_shadow,
    exhaustive_max_intersecting,
    max_intersecting_by_extension,
    no_two_consecutive,
)
from pendant_ekr.families import (
    SetFamily,
    base_pendant_shifts,
    enumerate_independent,
    is_intersecting,
    shadow,
    stabilize,
)
from pendant_ekr.graphs import (
    make_disjoint_cliques,
    pendant_complete,
    pendant_general,
    pendant_path,
    pendant_uniform,
)
from pendant_ekr.solver import build_disjointness_graph, max_intersecting, max_intersecting_family
from pendant_ekr.theorems import (
    EKR,
    NOT_EKR,
    STRICTLY_EKR,
    counterexample,
    family_not_nEKR,
    katona_check,
    largest_star_centers,
    star_size_general,
    star_size_uniform,
    verify_ekr,
    witness_A,
    witness_Ac,
)


def P(n, i):
    return n + i - 1


def ascending(n, total, lo=1):
    if n == 0:
        yield ()
        return
    for first in range(lo, total + 1):
        if first * n > total:
            break
        for rest in ascending(n - 1, total - first, first):
            yield (first, *rest)


def test_criterion_01_pendant_complete(criterion):
    start = time.perf_counter()
    cases = strict_cases = r1_ties = 0
    for n in range(2, 9):
        g = pendant_complete(n)
        pendants = [g.pendant_vertex(i) for i in range(1, n + 1)]
        for r in range(1, n // 2 + 1):
            strict = n > 2 * r and n <= 6
            v = verify_ekr(g, r, strict)
            assert v.certified and v.max_exact, (n, r)
            assert v.max_size == r * comb(n - 1, r - 1), (n, r)
            if strict:
                assert v.classification == STRICTLY_EKR, (n, r, v.strict_finding)
                if r == 1:
                    # every 1-star is one singleton, so all 2n vertices tie
                    assert v.best_star_centers == list(range(2 * n)), (n, r)
                    r1_ties += 1
                else:
                    assert v.best_star_centers == pendants, (n, r)
                strict_cases += 1
            else:
                assert v.classification in (EKR, STRICTLY_EKR), (n, r)
            cases += 1
    elapsed = time.perf_counter() - start
    criterion["detail"] = (
        f"{cases} (n,r) exact, {strict_cases} strict; at r=1 all vertices tie as centers "
        f"({r1_ties} cases), {elapsed:.1f}s"
    )
    assert elapsed < 60


def test_criterion_02_disjoint_and_uniform_cliques(criterion):
    start = time.perf_counter()
    m = 2
    cases = 0
    for n in range(2, 7):
        for r in range(1, n // 2 + 1):
            a = max_intersecting(make_disjoint_cliques(n, m), r)
            assert a.certified and a.size == m ** (r - 1) * comb(n - 1, r - 1), (n, r)
            b = max_intersecting(pendant_uniform(n, m), r)
            assert b.certified and b.size == star_size_uniform(n, m, r), (n, r)
            if r >= 2:
                assert b.size == m ** (r - 2) * (m + r - 1) * comb(n - 1, r - 1)
            cases += 2
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"{cases} instances exact, {elapsed:.1f}s"
    assert elapsed < 120


def test_criterion_03_general_pendant(criterion):
    start = time.perf_counter()
    cases = 0
    for n in (3, 4, 5):
        for s in ascending(n, 10):
            g = pendant_general(s)
            smallest = [g.pendant_vertex(i + 1, t) for i, x in enumerate(s) if x == s[0] for t in range(1, x + 1)]
            for r in range(1, n // 2 + 1):
                res = max_intersecting(g, r)
                assert res.certified and res.size == star_size_general(s, r), (s, r)
                size, centers = largest_star_centers(g, r)
                assert size == res.size, (s, r)
                assert set(centers) & set(smallest), (s, r)
                cases += 1
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"{cases} (s,r) exact, {elapsed:.1f}s"
    assert elapsed < 300


def test_criterion_04_tk_augmentation(criterion):
    start = time.perf_counter()
    parts = []
    for k, n in [(2, 8), (2, 9), (3, 11)]:
        rep = counterexample(n, k)
        assert rep.construction == "Tk" and rep.in_range
        assert rep.intersecting
        assert rep.family_size == rep.star_size + 1
        assert rep.star_size == rep.best_star_size
        assert rep.exceeds_best_star  # so the class at (n, n-k) is NotEKR
        parts.append(f"n={n},k={k}:{rep.star_size}->{rep.family_size}")
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"{' '.join(parts)}, {elapsed:.1f}s"
    assert elapsed < 60


def test_criterion_05_tprime_augmentation(criterion):
    start = time.perf_counter()
    parts = []
    for n in (6, 7):
        rep = counterexample(n, 1)
        assert rep.construction == "Tprime" and rep.in_range
        assert rep.intersecting and rep.family_size == rep.star_size + 1
        parts.append(f"n={n}:{rep.star_size}->{rep.family_size}")
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"{' '.join(parts)}, {elapsed:.1f}s"
    assert elapsed < 10


def test_criterion_06_top_level_pendant_path(criterion):
    start = time.perf_counter()
    expected = {4: 8, 5: 13, 6: 21}
    for n, count in expected.items():
        g = pendant_path(n)
        full = enumerate_independent(g, n)
        assert len(full) == count == no_two_consecutive(n)
        f = family_not_nEKR(n)
        assert is_intersecting(f)[0] and len(f) == count - 1
        stars = [sum(1 for m in full if v in m) for v in range(g.vertex_count)]
        assert max(stars) <= count - 2
        d = build_disjointness_graph(full)
        edges = d.edges()
        assert len(edges) == 1
        i, j = edges[0]
        assert {full.members[i], full.members[j]} == {witness_A(n), witness_Ac(n)}
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"counts {list(expected.values())}, {elapsed:.1f}s"
    assert elapsed < 10


def _b_intersecting_families(universe, a, b, max_members):
    """All b-intersecting a-uniform families containing {0..a-1}.

    Every nonempty family is isomorphic to one containing that set.
    """
    pool = [frozenset(c) for c in combinations(range(universe), a)]
    first = frozenset(range(a))
    pool.remove(first)

    def grow(chosen, start):
        yield chosen
        if len(chosen) == max_members:
            return
        for j in range(start, len(pool)):
            s = pool[j]
            if all(len(s & t) >= b for t in chosen):
                yield from grow(chosen + [s], j + 1)

    yield from grow([first], 0)


def test_criterion_07_katona(criterion):
    start = time.perf_counter()
    checked = violations = 0
    universe = 7  # smaller universes embed in this one with the same shadows
    for a in range(1, 5):
        for b in range(1, a + 1):
            for fam in _b_intersecting_families(universe, a, b, 5):
                f = SetFamily.from_sets(universe, a, fam)
                rep = katona_check(f, b)
                assert rep.applicable
                assert rep.shadow_size == len(all_shadow(fam, a - b))
                violations += not rep.holds
                checked += 1
    rng = random.Random(0)
    random_checked = 0
    while random_checked < 1000:
        universe = rng.randint(8, 12)
        a = rng.randint(3, 6)
        b = rng.randint(1, a)
        chosen = []
        for _ in range(rng.randint(2, 40)):
            s = frozenset(rng.sample(range(universe), a))
            if s not in chosen and all(len(s & t) >= b for t in chosen):
                chosen.append(s)
        f = SetFamily.from_sets(universe, a, chosen)
        rep = katona_check(f, b)
        assert rep.applicable
        assert rep.shadow_size == len(all_shadow(chosen, a - b))
        violations += not rep.holds
        random_checked += 1
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"{checked} exhaustive + {random_checked} random, {violations} violations, {elapsed:.1f}s"
    assert violations == 0
    assert elapsed < 60


def test_criterion_08_shift_stabilization(criterion):
    start = time.perf_counter()
    rng = random.Random(0)
    worst_ratio = 0.0
    for _ in range(500):
        n = rng.randint(2, 6)
        r = rng.randint(1, n)
        g = pendant_complete(n)
        masks = enumerate_independent(g, r).masks()
        rng.shuffle(masks)
        picked = []
        target = rng.randint(1, len(masks))
        for b in masks:
            if all(b & c for c in picked):
                picked.append(b)
                if len(picked) == target:
                    break
        f = SetFamily.from_masks(g.vertex_count, r, picked)
        out, passes = stabilize(f, base_pendant_shifts(g), g)
        assert len(out) == len(f)
        assert is_intersecting(out)[0]
        assert passes <= n * len(f)
        worst_ratio = max(worst_ratio, passes / (n * len(f)))
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"500 families, max passes/(n|f|) = {worst_ratio:.2f}, {elapsed:.1f}s"
    assert elapsed < 60


def test_criterion_09_solver_oracle(criterion):
    start = time.perf_counter()
    rng = random.Random(0)
    small_checked = 0
    for trial in range(200):
        universe = rng.randint(3, 9)
        r = rng.randint(1, min(4, universe))
        pool = list(combinations(range(universe), r))
        members = rng.sample(pool, min(len(pool), rng.randint(1, 20)))
        f = SetFamily.from_sets(universe, r, members)
        got = max_intersecting_family(f)
        assert got.certified
        assert is_intersecting(got.witness)[0] and len(got.witness) == got.size
        expected = max_intersecting_by_extension(members)
        if len(members) <= 12:
            assert exhaustive_max_intersecting(members) == expected
            small_checked += 1
        assert got.size == expected, (trial, members)
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"200 families agree ({small_checked} also by plain subset scan), {elapsed:.1f}s"
    assert elapsed < 60


def test_criterion_10_pendant_path_star_centers(criterion):
    start = time.perf_counter()
    ties = []
    checked = 0
    for n in range(4, 9):
        g = pendant_path(n)
        expected = {P(n, 2), P(n, n - 1)}
        for r in range(1, n + 1):
            full = enumerate_independent(g, r)
            if len(full) > 20000:
                continue
            _, centers = largest_star_centers(g, r)
            assert expected <= set(centers), (n, r, centers)
            if set(centers) != expected:
                ties.append(f"n={n},r={r}:{len(centers)}")
            checked += 1
    elapsed = time.perf_counter() - start
    tie_text = " ".join(ties) if ties else "none"
    criterion["detail"] = f"{checked} (n,r); {{p2,p(n-1)}} always maximal; extra ties at {tie_text}; {elapsed:.1f}s"
    assert elapsed < 120
