"""Circuits: enumeration, words, homology, systole, separation."""

import math
from fractions import Fraction

import pytest

from conftest import DUMBBELL4_PAIRS, naive_cycle_count, naive_is_separating
from randsurf.curves import (enumerate_cycles, essential_circuit_stats,
                             has_short_separating_cycle, homology_basis,
                             is_graph_separating, is_null_homologous, m_ell,
                             systole_estimate, walk_word, word_class_of_cycle)
from randsurf.exact import enumerate_all_pairings, expected_xk
from randsurf.ribbon import RibbonGraph, pairing_from_pairs, sample_uniform
from randsurf.words import canonicalize


class TestEnumerate:
    def test_theta_has_three_two_cycles(self, theta_torus):
        cycles = enumerate_cycles(theta_torus, 3)
        assert [c.length for c in cycles] == [2, 2, 2]
        # pairs of parallel edges: C(3,2) = 3
        assert len({c.canonical_key for c in cycles}) == 3

    def test_max_len_zero(self, theta_torus):
        assert enumerate_cycles(theta_torus, 0) == []

    def test_loops_in_dumbbell(self, dumbbell):
        cycles = enumerate_cycles(dumbbell, 1)
        assert [c.length for c in cycles] == [1, 1]
        assert all(c.word.letters in ("L", "R") for c in cycles)

    def test_counts_match_naive_all_of_omega1(self):
        for p in enumerate_all_pairings(1):
            g = RibbonGraph(p)
            cycles = enumerate_cycles(g, 2)
            for k in (1, 2):
                assert (sum(1 for c in cycles if c.length == k)
                        == naive_cycle_count(p, k))

    def test_counts_match_naive_sampled_n3(self):
        for seed in range(6):
            p = sample_uniform(3, seed)
            g = RibbonGraph(p)
            cycles = enumerate_cycles(g, 3)
            for k in (1, 2, 3):
                assert (sum(1 for c in cycles if c.length == k)
                        == naive_cycle_count(p, k))

    def test_omega2_average_two_cycles(self):
        total = 0
        count = 0
        for p in enumerate_all_pairings(2):
            count += 1
            total += sum(1 for c in enumerate_cycles(RibbonGraph(p), 2)
                         if c.length == 2)
        assert Fraction(total, count) == expected_xk(2, 2) == Fraction(12, 11)


class TestWords:
    def test_loop_word_single_letter(self, dumbbell):
        for c in enumerate_cycles(dumbbell, 1):
            assert len(c.word.letters) == 1

    def test_reversal_same_class(self, theta_torus):
        # the canonical cycle orientation is one of two; its class must be
        # closed under reverse-swap by construction
        for c in enumerate_cycles(theta_torus, 3):
            cls = word_class_of_cycle(c)
            rev = canonicalize(c.word.letters[::-1].translate(
                str.maketrans("LR", "RL")))
            assert cls.canonical == rev.canonical

    def test_torus_two_cycles_carry_lr(self, theta_torus):
        classes = {word_class_of_cycle(c).canonical.letters
                   for c in enumerate_cycles(theta_torus, 2)}
        assert classes == {"LR"}

    def test_sphere_two_cycles_carry_ll(self, theta_sphere):
        classes = {word_class_of_cycle(c).canonical.letters
                   for c in enumerate_cycles(theta_sphere, 2)}
        assert classes == {"LL"}

    def test_faces_read_as_walks_are_all_same_letter(self):
        for seed in range(8):
            g = RibbonGraph(sample_uniform(4, seed))
            for face in g.faces:
                w = walk_word(g, face).letters
                assert set(w) == {"L"}

    def test_cycle_words_on_all_of_omega2_match_formula(self):
        # average count per class equals the exact expectation
        targets = {w: canonicalize(w) for w in ("LR", "LLR")}
        sums = {w: 0 for w in targets}
        count = 0
        for p in enumerate_all_pairings(2):
            count += 1
            for c in enumerate_cycles(RibbonGraph(p), 3):
                for w, cls in targets.items():
                    if word_class_of_cycle(c).canonical == cls.canonical:
                        sums[w] += 1
        assert Fraction(sums["LR"], count) == Fraction(6, 11)
        assert Fraction(sums["LLR"], count) == Fraction(72, 77)


class TestHomology:
    def test_faces_are_null_homologous(self):
        for seed in range(6):
            g = RibbonGraph(sample_uniform(3, seed))
            basis = homology_basis(g)
            for c in enumerate_cycles(g, 6):
                if set(c.word.letters) in ({"L"}, {"R"}):
                    assert is_null_homologous(basis, g, c)

    def test_all_faces_row_sum_zero(self):
        for seed in range(10):
            g = RibbonGraph(sample_uniform(8, seed))
            basis = homology_basis(g)
            acc = 0
            for row in basis.rows:
                acc ^= row
            assert acc == 0

    def test_rank_is_faces_minus_one_when_connected(self):
        for seed in range(30):
            g = RibbonGraph(sample_uniform(8, seed))
            if g.num_components != 1:
                continue
            basis = homology_basis(g)
            assert basis.rank == g.num_faces - 1

    def test_torus_two_cycle_not_null(self, theta_torus):
        basis = homology_basis(theta_torus)
        for c in enumerate_cycles(theta_torus, 2):
            assert not is_null_homologous(basis, theta_torus, c)

    def test_symmetric_difference_of_faces_in_span(self, theta_sphere):
        basis = homology_basis(theta_sphere)
        assert len(basis.rows) == 3
        from randsurf._kernel import gf2_in_span
        assert gf2_in_span(basis.rows[0] ^ basis.rows[1], list(basis.basis))

    def test_dimension_mismatch(self, theta_torus, two_tori):
        basis = homology_basis(theta_torus)
        assert basis.num_edges == 3
        with pytest.raises(ValueError):
            is_null_homologous(basis, two_tori,
                               enumerate_cycles(two_tori, 2)[0])


class TestSeparating:
    def test_theta_not_separating(self, theta_torus, theta_sphere):
        for g in (theta_torus, theta_sphere):
            for c in enumerate_cycles(g, 3):
                assert not is_graph_separating(g, c)
            assert not has_short_separating_cycle(g, 3)

    def test_dumbbell4_bridge_separates(self, dumbbell4):
        cycles = enumerate_cycles(dumbbell4, 2)
        two_cycles = [c for c in cycles if c.length == 2]
        seps = [is_graph_separating(dumbbell4, c) for c in two_cycles]
        # the 4=5 bridge pair separates; the 1=2 and 7=8 pairs do not
        assert seps.count(True) == 1
        assert has_short_separating_cycle(dumbbell4, 2)

    def test_matches_naive_on_samples(self):
        for seed in range(25):
            g = RibbonGraph(sample_uniform(4, seed))
            for c in enumerate_cycles(g, 4):
                if c.length < 2:
                    continue
                edges = [(d - 1, a - 1) for d, a in c.steps]
                assert (is_graph_separating(g, c)
                        == naive_is_separating(g.pairing, edges))

    def test_bound_validation(self, theta_torus):
        with pytest.raises(ValueError):
            has_short_separating_cycle(theta_torus, 1)


class TestEssential:
    def test_sphere_mell_zero(self, theta_sphere, dumbbell):
        assert m_ell(theta_sphere) == 0
        assert m_ell(dumbbell) == 0
        assert systole_estimate(theta_sphere) is None

    def test_torus_theta(self, theta_torus):
        assert m_ell(theta_torus) == 2
        assert systole_estimate(theta_torus) == pytest.approx(
            2 * math.acosh(1.5), abs=1e-12)

    def test_systole_matches_exhaustive_minimum(self):
        # against a flat scan: min geodesic length over essential circuits
        # of length <= 6 on small samples
        from randsurf.series import geodesic_length
        for seed in range(40):
            g = RibbonGraph(sample_uniform(3, seed))
            if g.total_genus == 0:
                assert systole_estimate(g) is None
                continue
            basis = homology_basis(g)
            best = None
            for c in enumerate_cycles(g, 6):
                if set(c.word.letters) in ({"L"}, {"R"}):
                    continue
                if is_null_homologous(basis, g, c):
                    continue
                val = geodesic_length(word_class_of_cycle(c).trace)
                best = val if best is None else min(best, val)
            assert best is not None
            assert systole_estimate(g) == pytest.approx(best, abs=1e-12)

    def test_mell_matches_exhaustive_minimum(self):
        for seed in range(40):
            g = RibbonGraph(sample_uniform(3, seed))
            if g.total_genus == 0:
                continue
            basis = homology_basis(g)
            lengths = [c.length for c in enumerate_cycles(g, 6)
                       if set(c.word.letters) not in ({"L"}, {"R"})
                       and not is_null_homologous(basis, g, c)]
            assert m_ell(g) == min(lengths)

    def test_stats_tuple(self, theta_torus):
        mell, trace, skips, capped = essential_circuit_stats(theta_torus)
        assert (mell, trace, capped) == (2, 3, False)
        assert skips == 0


class TestEdgeCycleBound:
    def test_circuits_through_an_edge(self):
        # at most 2^(k//2) k-circuits share an edge (cubic graphs)
        for n, seeds in ((16, range(6)), (64, range(4))):
            for seed in seeds:
                g = RibbonGraph(sample_uniform(n, seed))
                per_edge = {}
                for c in enumerate_cycles(g, 10):
                    for e in c.edge_labels():
                        key = (e, c.length)
                        per_edge[key] = per_edge.get(key, 0) + 1
                for (e, k), cnt in per_edge.items():
                    assert cnt <= 2 ** (k // 2)
