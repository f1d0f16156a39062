"""The ten acceptance criteria, each with its runtime budget."""

import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from kneser.coefficients import alpha, beta, beta_via_sum, table1
from kneser.constructions import family_sm1, family_sm_t3, kleitman_b, layer_size_formula, lemma22_family
from kneser.core import all_sets_of_size_at_least, binom_partial_sum, geometric_bound, monotone_families
from kneser.freeness import PatternGraph, audit_good, complete_graph, complete_multipartite, disjoint_tuple, find_copy
from kneser.partitions import audit_kleitman
from kneser.sampling import good_audit_population, kleitman_audit_population
from kneser.solver import Homomorphism, blow_up, emb, fractional_chromatic, shrink_injective, solve_vex
from reference import PRINTED_TABLE


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


@pytest.mark.criterion(1, "alpha/beta table: exact fractions and six-place values")
def test_criterion_01_coefficient_table():
    with budget(1):
        exact = {
            3: (Fraction(5, 9), Fraction(11, 18)),
            4: (Fraction(37, 64), Fraction(91, 144)),
            5: (Fraction(369, 625), Fraction(25493, 40000)),
        }
        for s, (a, b) in exact.items():
            assert (alpha(s), beta(s)) == (a, b)
        rows = table1(20)
        assert {r.s: (r.alpha_decimal, r.beta_decimal) for r in rows} == PRINTED_TABLE


@pytest.mark.criterion(2, "beta double sum equals closed form, 3 <= s <= 40")
def test_criterion_02_beta_identity():
    with budget(1):
        for s in range(3, 41):
            assert beta_via_sum(s) == beta(s), s


@pytest.mark.criterion(3, "vex(5, K_3) = 26 and vex(6, K_3) = 52")
@pytest.mark.parametrize("n, size", [(5, 26), (6, 52)])
def test_criterion_03_kleitman_values(n, size):
    with budget(600):
        res = solve_vex(n, complete_graph(3), timeout=600)
    assert res.optimal and res.max_size == size
    assert find_copy(res.extremal, complete_graph(3)) is None


@pytest.mark.criterion(4, "K_{3x2} search agrees with the disjoint-triple criterion on [4] and [5]")
def test_criterion_04_disjoint_tuple_equivalence():
    pattern = complete_multipartite(3, 2)
    with budget(300):
        for n, expected in [(4, 168), (5, 7581)]:
            seen = mismatches = 0
            for f in monotone_families(n):
                seen += 1
                by_search = find_copy(f, pattern) is not None
                by_sizes = disjoint_tuple(f, 3, n - 3) is not None
                mismatches += by_search != by_sizes
            assert (seen, mismatches) == (expected, 0)


@pytest.mark.criterion(5, "construction sizes and freeness certificates")
def test_criterion_05_constructions():
    with budget(120):
        for s, m in [(3, 2), (3, 3), (4, 2)]:
            f = lemma22_family(s, m)
            n = s * m
            assert find_copy(f, complete_multipartite(s, 2)) is None
            assert len(f) == binom_partial_sum(n, m, n) + sum(layer_size_formula(s, m, i) for i in range(1, s))
        t3 = family_sm_t3(3, 2)
        assert find_copy(t3, complete_multipartite(3, 3)) is None
        assert find_copy(t3, complete_multipartite(3, 2)) is not None
        assert find_copy(family_sm1(3, 2), complete_multipartite(3, 2)) is None


@pytest.mark.criterion(6, "good-set audits on constructions and 1000 random families")
def test_criterion_06_good_set_audits():
    with budget(300):
        for f, s, t in [(lemma22_family(3, 2), 3, 2), (family_sm1(3, 2), 3, 2), (family_sm_t3(3, 2), 3, 3)]:
            rep = audit_good(f, s, t)
            assert rep.upward_closed and rep.family_is_free and rep.all_hold, (s, t)
        count = 0
        for n, s, t, f in good_audit_population(1000, seed=0):
            assert n <= 6
            rep = audit_good(f, s, t)
            assert rep.upward_closed and rep.family_is_free
            assert rep.all_hold, (n, s, t, sorted(f.members))
            count += 1
        assert count == 1000


@pytest.mark.criterion(7, "Kleitman equipartition relations on constructions and 1000 random families")
def test_criterion_07_kleitman_audits():
    with budget(600):
        fixed = [kleitman_b(3, 2), all_sets_of_size_at_least(6, 3)]
        count = 0
        for f in [*fixed, *kleitman_audit_population(1000, seed=0)]:
            rep = audit_kleitman(f, 3, 2)
            assert rep.preconditions_ok
            assert [c.relation for c in rep.checks[:2]] == ["==", "=="]
            assert rep.all_hold, sorted(f.members)
            count += 1
        assert count == 1002


@pytest.mark.criterion(8, "emb and fractional chromatic number suite")
def test_criterion_08_embedding_and_chi_f():
    with budget(300):
        pairs = []
        for s in (3, 4):
            for n in range(s, 13):
                e = emb(n, complete_graph(s))
                assert e == n // s, (s, n)
                pairs.append((complete_graph(s), n, e))
        e = emb(9, complete_multipartite(3, 2))
        assert e == 2
        pairs.append((complete_multipartite(3, 2), 9, e))
        c5 = PatternGraph.cycle(5)
        pairs += [(c5, n, emb(n, c5)) for n in range(5, 13)]

        for s in range(1, 7):
            fc = fractional_chromatic(complete_graph(s))
            assert fc.value == s and fc.certified
        fc = fractional_chromatic(c5)
        assert fc.value == Fraction(5, 2) and fc.certified
        assert sum(w for _, w in fc.coloring) == Fraction(5, 2) == sum(fc.clique)

        for pattern, n, e in pairs:
            assert fractional_chromatic(pattern).value * e <= n, (pattern, n)


@pytest.mark.criterion(9, "C_5 blow-up and shrink for k = 1, 2, 3")
def test_criterion_09_blow_up_and_shrink():
    with budget(10):
        h = Homomorphism.of(PatternGraph.cycle(5), 5, 2, [[1, 2], [3, 4], [5, 1], [2, 3], [4, 5]])
        assert h.is_valid()
        for k in (1, 2, 3):
            big = blow_up(h, k)
            assert big.is_valid() and (big.a, big.b) == (5 * k, 2 * k)
            small = shrink_injective(big)
            assert small is not None and small.is_embedding()
            assert (small.a, small.b) == (5 * k, 2 * k - 1)


@pytest.mark.criterion(10, "geometric bound for every 1 <= m < n/2, n <= 30")
def test_criterion_10_geometric_bound():
    with budget(1):
        checked = 0
        for n in range(1, 31):
            for m in range(1, n):
                if 2 * m < n:
                    assert geometric_bound(n, m).holds, (n, m)
                    checked += 1
        assert checked == sum((n - 1) // 2 for n in range(1, 31))
