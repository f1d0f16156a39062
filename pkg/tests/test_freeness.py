import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kneser.constructions import family_sm1, family_sm_t3, lemma22_family
from kneser.core import Family, SetMask, canonical_key, all_sets_of_size_at_least, complement, monotone_families
from kneser.freeness import (
    KneserIndex,
    PatternGraph,
    Witness,
    audit_good,
    complete_graph,
    complete_multipartite,
    disjoint_tuple,
    find_copy,
    good_family,
    kneser_adjacent,
)
from kneser.partitions import PartitionType, rho_vector


def S(n, *elements):
    return SetMask.of(elements, n)


def copy_exists_brute(family, pattern):
    """Try every injective assignment of members to pattern vertices."""
    members = list(family.members)
    for images in itertools.permutations(members, pattern.vertex_count):
        if all(not images[u] & images[v] for u, v in pattern.edges):
            return True
    return False


def disjoint_tuple_brute(family, s, budget):
    for combo in itertools.combinations(family.members, s):
        if sum(m.bit_count() for m in combo) > budget:
            continue
        if all(not a & b for a, b in itertools.combinations(combo, 2)):
            return True
    return False


def set_partitions(elements):
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


SMALL_PATTERNS = [
    complete_graph(2),
    complete_graph(3),
    complete_multipartite(2, 2),
    PatternGraph.from_edges([(0, 1), (1, 2)]),
    PatternGraph.from_edges([(0, 1)], vertex_count=3),
    PatternGraph(3, frozenset({(0, 1), (0, 2)}), parts=((0,), (1, 2))),
    PatternGraph(5, frozenset({(u, v) for u in (0, 1) for v in (2, 3, 4)} | {(2, 3), (2, 4), (3, 4)}),
                 parts=((0, 1), (2,), (3,), (4,))),
    complete_multipartite(2, 3),
    PatternGraph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
    PatternGraph.cycle(4),
]


def test_kneser_adjacent_examples():
    assert kneser_adjacent(S(3, 1), S(3, 2))
    assert not kneser_adjacent(S(3, 1, 2), S(3, 2, 3))
    assert kneser_adjacent(S(3), S(3, 1))
    assert not kneser_adjacent(S(3), S(3))
    with pytest.raises(ValueError):
        kneser_adjacent(S(3, 1), S(4, 2))


@pytest.mark.parametrize("s, t, v, e", [(3, 1, 3, 3), (2, 2, 4, 4), (3, 2, 6, 12), (4, 3, 12, 54)])
def test_complete_multipartite_counts(s, t, v, e):
    p = complete_multipartite(s, t)
    assert (p.vertex_count, len(p.edges)) == (v, e)
    assert p.multipartite_shape == (s, t)


def test_pattern_validation():
    with pytest.raises(ValueError):
        PatternGraph.from_edges([(0, 0)])
    with pytest.raises(ValueError):
        PatternGraph(2, frozenset({(0, 2)}))
    with pytest.raises(ValueError):
        PatternGraph(2, frozenset(), parts=((0,), (1,)))
    assert len(PatternGraph.from_edges([(1, 0), (0, 1)]).edges) == 1


def test_search_order_is_degree_descending():
    star_plus = PatternGraph.from_edges([(3, 0), (3, 1), (3, 2), (0, 1)])
    order = star_plus.search_order()
    degrees = [len(star_plus.neighbors()[v]) for v in order]
    assert order[0] == 3
    assert degrees == sorted(degrees, reverse=True)


def test_find_copy_examples():
    w = find_copy(Family.of(3, [[1], [2], [3]]), complete_graph(3))
    assert w is not None
    assert sorted(x.elements() for x in w.images) == [(1,), (2,), (3,)]

    assert find_copy(all_sets_of_size_at_least(6, 2), complete_multipartite(3, 2)) is None

    w = find_copy(Family.of(2, [[1], [2], [1, 2]]), complete_graph(2))
    assert [x.elements() for x in w.images] == [(1,), (2,)]


def test_find_copy_is_deterministic():
    f = all_sets_of_size_at_least(6, 1)
    p = complete_multipartite(3, 2)
    assert find_copy(f, p) == find_copy(Family(6, reversed(f.sorted())), p)


@settings(max_examples=300, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1), max_size=9))
    ),
    st.sampled_from(SMALL_PATTERNS),
)
def test_find_copy_matches_brute_force(case, pattern):
    n, members = case
    f = Family(n, members)
    w = find_copy(f, pattern)
    assert (w is not None) == copy_exists_brute(f, pattern)
    if w is not None:
        assert w.is_valid(f)


def test_symmetry_pairs():
    assert complete_multipartite(2, 2).symmetry_pairs() == [(0, 1), (2, 3), (0, 2)]
    assert complete_multipartite(2, 2).symmetry_pairs(fixed=0) == [(2, 3)]
    assert complete_multipartite(3, 1).symmetry_pairs(fixed=1) == [(0, 2)]
    assert PatternGraph.cycle(4).symmetry_pairs() == [(0, 1), (0, 2), (0, 3)]
    assert PatternGraph.cycle(4).symmetry_pairs(fixed=2) == []
    path = PatternGraph.from_edges([(0, 1), (1, 2)])
    assert path.symmetry_pairs() == [(0, 2)]


@pytest.mark.parametrize(
    "pattern, orbits",
    [
        (PatternGraph.cycle(5), [(0, 1, 2, 3, 4)]),
        (PatternGraph.from_edges([(0, 1), (1, 2)]), [(0, 2), (1,)]),
        (PatternGraph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]), [(0, 2), (1, 3)]),
        (PatternGraph.from_edges([(0, 1)], vertex_count=3), [(0, 1), (2,)]),
        (complete_multipartite(3, 2), [(0, 1, 2, 3, 4, 5)]),
    ],
)
def test_orbits(pattern, orbits):
    assert pattern.orbits() == orbits


@settings(max_examples=200, deadline=None)
@given(
    st.integers(2, 4).flatmap(
        lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1), min_size=1, max_size=9))
    ),
    st.sampled_from(SMALL_PATTERNS),
    st.data(),
)
def test_pinned_search_matches_brute_force(case, pattern, data):
    n, members = case
    order = sorted(members, key=canonical_key)
    index = KneserIndex(order)
    allowed = (1 << len(order)) - 1
    v = data.draw(st.integers(0, pattern.vertex_count - 1))
    pos = data.draw(st.integers(0, len(order) - 1))
    hit = index.search(pattern, allowed, fixed=(v, pos))
    expected = any(
        images[v] == order[pos] and all(not images[a] & images[b] for a, b in pattern.edges)
        for images in itertools.permutations(order, pattern.vertex_count)
    )
    assert (hit is not None) == expected
    if hit is not None:
        assert hit[v] == pos and len(set(hit)) == pattern.vertex_count


def test_witness_json_round_trip():
    f = all_sets_of_size_at_least(5, 1)
    for p in (complete_multipartite(2, 2), PatternGraph.cycle(5)):
        w = find_copy(f, p)
        d = json.loads(w.to_json())
        assert set(d) == {"pattern", "images"}
        assert Witness.from_dict(d, 5) == w


def test_invalid_witness_detected():
    p = complete_graph(2)
    assert not Witness(p, (S(3, 1), S(3, 1, 2))).is_valid()
    assert not Witness(p, (S(3, 1), S(3, 1))).is_valid()
    assert not Witness(p, (S(3, 1), S(3, 2))).is_valid(Family.of(3, [[1]]))


def test_disjoint_tuple_examples():
    f = all_sets_of_size_at_least(6, 2)
    assert disjoint_tuple(f, 3, 3) is None
    found = disjoint_tuple(f, 3, 6)
    assert found is not None and sum(len(x) for x in found) <= 6
    assert all(not a.bits & b.bits for a, b in itertools.combinations(found, 2))
    assert disjoint_tuple(Family.cube(4), 3, 1) is None
    assert [x.elements() for x in disjoint_tuple(Family.cube(4), 3, 2)] == [(), (1,), (2,)]


@settings(max_examples=300, deadline=None)
@given(
    st.integers(1, 5).flatmap(
        lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1), max_size=14))
    ),
    st.integers(1, 4),
    st.integers(0, 6),
)
def test_disjoint_tuple_matches_brute_force(case, s, budget):
    n, members = case
    f = Family(n, members)
    assert (disjoint_tuple(f, s, budget) is not None) == disjoint_tuple_brute(f, s, budget)


@pytest.mark.parametrize("s", [2, 3])
def test_clique_search_agrees_with_disjoint_tuple_on_monotone_families(s):
    for n in range(1, 6):
        for f in monotone_families(n):
            assert (find_copy(f, complete_graph(s)) is not None) == (disjoint_tuple(f, s, n) is not None)


def test_clique_search_agrees_with_disjoint_tuple_on_random_families():
    rng = random.Random(0)
    for _ in range(300):
        n = rng.randint(1, 8)
        f = Family(n, rng.sample(range(1 << n), rng.randint(0, min(40, 1 << n))))
        s = rng.randint(2, 4)
        assert (find_copy(f, complete_graph(s)) is not None) == (disjoint_tuple(f, s, n) is not None)


def test_obs31_equivalence_for_s2_on_small_cubes():
    # s = 3 over [4] and [5] is an acceptance criterion; s = 2 is covered here
    p = complete_multipartite(2, 2)
    for n in range(2, 6):
        for f in monotone_families(n):
            assert (find_copy(f, p) is not None) == (disjoint_tuple(f, 2, n - 2) is not None)


def test_good_family_examples():
    f = all_sets_of_size_at_least(3, 2)
    at_most_two = Family(3, [m for m in range(8) if m.bit_count() <= 2])
    assert good_family(f, 2) == at_most_two
    assert good_family(f, 3) == at_most_two
    assert good_family(Family(4), 2) == Family.cube(4)
    assert good_family(Family(4), 5) == Family.cube(4)
    with pytest.raises(ValueError):
        good_family(f, 1)


def test_good_family_contains_complement_of_upward_family():
    for f in monotone_families(4):
        for t in (2, 3, 4):
            assert complement(f) <= good_family(f, t)


def test_audit_good_examples():
    for f, s, t in [
        (all_sets_of_size_at_least(6, 2), 3, 2),
        (Family(6), 3, 2),
        (lemma22_family(3, 2), 3, 2),
    ]:
        rep = audit_good(f, s, t)
        assert rep.upward_closed and rep.family_is_free
        assert rep.downward_closed and rep.E_is_Ks_free and rep.counting_holds
    rep = audit_good(all_sets_of_size_at_least(6, 2), 3, 2)
    assert rep.good_family == Family(6, [m for m in range(64) if m.bit_count() <= 2])
    d = rep.to_dict()
    assert all({"i", "lhs", "rhs", "holds"} <= set(c) for c in d["counting"])
    assert json.loads(json.dumps(d)) == d


def test_audit_good_surfaces_full_cube_degenerate_case():
    # 2^[4] has no K_{3x2} (three distinct disjoint sets need total >= 2 > 4 - 3),
    # but its only good set is the empty set, so the non-good sets hold the
    # triangle {1},{2},{3}: the shadow sets {} of the three singletons coincide.
    f = Family.cube(4)
    rep = audit_good(f, 3, 2)
    assert rep.family_is_free and rep.upward_closed
    assert rep.good_family == Family(4, [0])
    assert rep.downward_closed and rep.counting_holds
    assert not rep.E_is_Ks_free
    assert [x.elements() for x in rep.Ks_witness] == [(1,), (2,), (3,)]


CONSTRUCTED = [
    (lemma22_family(3, 2), 3, 2),
    (family_sm1(3, 2), 3, 2),
    (family_sm1(3, 2), 3, 3),
    (family_sm_t3(3, 2), 3, 3),
    (family_sm1(3, 3), 3, 2),
    (lemma22_family(4, 2), 4, 2),
]


@pytest.mark.parametrize("f, s, t", CONSTRUCTED)
def test_every_set_partition_has_enough_good_parts(f, s, t):
    n = f.n
    good = good_family(f, t).members
    for partition in set_partitions(list(range(n))):
        p = len(partition)
        if p < s:
            continue
        parts = [sum(1 << e for e in part) for part in partition]
        assert sum(part in good for part in parts) >= p - s + 1


@pytest.mark.parametrize("f, s, t", CONSTRUCTED[:4])
def test_non_good_sets_never_fill_s_parts(f, s, t):
    rest = complement(good_family(f, t))
    assert disjoint_tuple(rest, s, f.n) is None
    for sizes in [(2, 2, 2), (1, 2, 3), (1, 1, 1, 3)]:
        if sum(sizes) != f.n:
            continue
        rho = rho_vector(rest, PartitionType(sizes))
        assert all(rho[r] == 0 for r in range(s, len(sizes) + 1))
