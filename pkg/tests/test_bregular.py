"""Counting, enumeration, uniform sampling, and exact fixed-point moments
of restricted permutation families."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

import oracles
import strategies
from bregperm.bregular import (
    BRegularFamily,
    MomentPair,
    count_b_regular,
    count_k_cycles,
    enumerate_b_regular,
    fixed_point_mean,
    fixed_point_moments,
    fixed_point_variance,
    sample_b_regular,
)
from bregperm.core import CapExceeded, Permutation, RestrictionVector


class TestCount:
    def test_one_step_staircase_doubles(self):
        for n in range(1, 17):
            assert count_b_regular(RestrictionVector.b2(n)) == 2 ** (n - 1)

    def test_two_step_staircase_triples(self):
        for n in range(2, 11):
            assert count_b_regular(RestrictionVector.br(3, n)) == 2 * 3 ** (n - 2)

    def test_unrestricted_is_factorial(self):
        for n in range(1, 9):
            b = RestrictionVector((1,) * n)
            assert count_b_regular(b) == math.factorial(n)

    def test_anchor(self):
        assert count_b_regular(RestrictionVector((1, 1, 2, 4, 4))) == 8

    def test_family_bundle(self):
        fam = BRegularFamily.of(RestrictionVector.b2(6))
        assert fam.n == 6
        assert fam.cardinality == 32

    @given(strategies.restriction_vectors(max_n=7))
    @settings(deadline=None, max_examples=60)
    def test_matches_filter_oracle(self, b):
        assert count_b_regular(b) == len(oracles.family(b.entries))


class TestEnumerate:
    def test_yields_exactly_the_family(self):
        for n in range(1, 7):
            for r in range(1, n + 1):
                b = RestrictionVector.br(r, n)
                got = sorted(p.images for p in enumerate_b_regular(b))
                assert got == oracles.family(b.entries)

    def test_deterministic_order_and_no_duplicates(self):
        b = RestrictionVector.b2(7)
        first = [p.images for p in enumerate_b_regular(b)]
        second = [p.images for p in enumerate_b_regular(b)]
        assert first == second
        assert len(set(first)) == len(first) == 64

    def test_cap_checked_before_iteration(self):
        b = RestrictionVector.b2(10)
        with pytest.raises(CapExceeded) as info:
            enumerate_b_regular(b, cap=100)
        assert info.value.needed == 512

    def test_empty_vector_rejected(self):
        with pytest.raises(ValueError):
            enumerate_b_regular(RestrictionVector(()))

    @given(strategies.restriction_vectors(max_n=7))
    @settings(deadline=None, max_examples=40)
    def test_members_satisfy_bounds(self, b):
        members = list(enumerate_b_regular(b))
        assert len(members) == count_b_regular(b)
        assert all(p.satisfies(b) for p in members)


class TestSample:
    def test_membership_and_seed_determinism(self):
        b = RestrictionVector((1, 1, 2, 4, 4))
        p1 = sample_b_regular(b, 7)
        p2 = sample_b_regular(b, 7)
        assert p1 == p2
        assert p1.satisfies(b)

    def test_shared_rng_advances(self):
        b = RestrictionVector.b2(9)
        rng = random.Random(3)
        draws = [sample_b_regular(b, rng) for _ in range(50)]
        assert all(p.satisfies(b) for p in draws)
        assert len({p.images for p in draws}) > 1

    def test_empty_vector_rejected(self):
        with pytest.raises(ValueError):
            sample_b_regular(RestrictionVector(()), 0)

    def test_small_family_frequencies_are_uniform(self):
        # deterministic seeded run; loose bounds around the exact mean
        b = RestrictionVector.b2(4)
        rng = random.Random(5)
        counts: dict[tuple[int, ...], int] = {}
        draws = 8000
        for _ in range(draws):
            key = sample_b_regular(b, rng).images
            counts[key] = counts.get(key, 0) + 1
        assert len(counts) == 8
        expected = draws / 8
        assert all(0.85 * expected < c < 1.15 * expected for c in counts.values())

    @given(strategies.restriction_vectors(max_n=10))
    @settings(deadline=None)
    def test_draws_stay_in_family(self, b):
        assert sample_b_regular(b, 1).satisfies(b)


class TestFixedPointMoments:
    def test_anchors(self):
        b = RestrictionVector.b2(5)
        assert fixed_point_mean(b) == Fraction(7, 4)
        assert fixed_point_variance(b) == Fraction(29, 16)
        assert fixed_point_moments(b) == MomentPair(Fraction(7, 4), Fraction(29, 16))

    def test_unrestricted_family_mean_is_one(self):
        for n in range(1, 7):
            b = RestrictionVector((1,) * n)
            assert fixed_point_mean(b) == 1

    @given(strategies.restriction_vectors(max_n=6))
    @settings(deadline=None, max_examples=50)
    def test_matches_enumeration(self, b):
        mean, variance = oracles.fixed_point_stats(oracles.family(b.entries))
        assert fixed_point_mean(b) == mean
        assert fixed_point_variance(b) == variance


class TestCountKCycles:
    def test_anchors(self):
        p = Permutation((2, 3, 1, 5, 4, 6))
        assert count_k_cycles(p, 1) == 1
        assert count_k_cycles(p, 2) == 1
        assert count_k_cycles(p, 3) == 1
        assert count_k_cycles(p, 4) == 0
        with pytest.raises(ValueError):
            count_k_cycles(p, 0)

    @given(strategies.permutations(max_n=12))
    @settings(deadline=None)
    def test_matches_cycle_oracle(self, p):
        for k in range(1, p.n + 1):
            assert count_k_cycles(p, k) == oracles.count_cycles(p.images, k)
