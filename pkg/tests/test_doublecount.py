import random
from fractions import Fraction

import pytest

from ekrlab.cyclic import Interval, RectFamily, Rectangle, all_intervals
from ekrlab.doublecount import (
    double_count_check,
    enumerate_rectangle_pair_count,
    member_weight,
    rectangle_pair_count,
    weight,
    weighted_sum_check,
)
from ekrlab.families import Family, Universe, candidate_sets, mask_of, star_family


class TestWeights:
    def test_two_part_weight(self):
        assert member_weight(Universe(3, 3), (1, 1)) == Fraction(1, 4)

    def test_one_part_full_weight(self):
        assert member_weight(Universe(3, 0), (3, 0)) == Fraction(1, 6)

    def test_weight_depends_only_on_profile(self):
        u = Universe(4, 4)
        masks = candidate_sets(u, [(2, 1)])
        values = {weight(u, [(2, 1)], m) for m in masks}
        assert len(values) == 1

    def test_weight_requires_listed_profile(self):
        u = Universe(4, 4)
        with pytest.raises(ValueError):
            weight(u, [(2, 2)], mask_of([0, 4]))


class TestPairCounts:
    def test_examples(self):
        assert rectangle_pair_count(Universe(3, 3), mask_of([0, 1, 3])) == 4
        assert enumerate_rectangle_pair_count(Universe(3, 3), mask_of([0, 1, 3])) == 4
        u43 = Universe(4, 3)
        assert rectangle_pair_count(u43, mask_of([0, 1, 4])) == 8
        assert enumerate_rectangle_pair_count(u43, mask_of([0, 1, 4])) == 8

    def test_full_parts_match_enumeration(self):
        u = Universe(3, 3)
        full = mask_of(range(6))
        assert rectangle_pair_count(u, full) == enumerate_rectangle_pair_count(u, full) == 4

    def test_closed_form_equals_enumeration_small_grid(self):
        for n1 in range(1, 5):
            for n2 in range(0, 5):
                u = Universe(n1, n2)
                for k in range(1, n1 + 1):
                    for l in range(1 if n2 else 0, n2 + 1):
                        mask = mask_of(list(range(k)) + list(range(n1, n1 + l)))
                        assert rectangle_pair_count(u, mask) == \
                            enumerate_rectangle_pair_count(u, mask), (n1, n2, k, l)

    def test_enumeration_cap(self):
        with pytest.raises(ValueError):
            enumerate_rectangle_pair_count(Universe(7, 2), 1)


class TestDoubleCount:
    def test_singleton(self):
        f = Family.from_lists(Universe(3, 3), [[0, 3]])
        res = double_count_check(f)
        assert res.exact and res.by_member == 1 and res.by_pair == 1

    def test_star(self):
        f = star_family(Universe(3, 3), [(1, 1)], 0)
        res = double_count_check(f)
        assert res.exact and res.by_pair == 3
        assert len(res.per_pair_terms) == 4
        assert sum(res.per_pair_terms) == 3

    def test_seeded_random_families(self):
        u = Universe(4, 4)
        pool = candidate_sets(u, [(1, 1), (2, 1)])
        rng = random.Random(42)
        for _ in range(20):
            sets = rng.sample(pool, rng.randint(1, 8))
            res = double_count_check(Family(u, tuple(sorted(sets))))
            assert res.exact

    def test_one_part_family(self):
        u = Universe(4, 0)
        f = Family.from_lists(u, [[0, 1], [1, 2], [0, 2]])
        assert double_count_check(f).exact

    def test_full_part_profiles_rejected(self):
        f = Family.from_lists(Universe(3, 3), [[0, 1, 2, 3]])
        with pytest.raises(ValueError, match="full"):
            double_count_check(f)

    def test_size_cap(self):
        f = Family.from_lists(Universe(7, 0), [[0, 1]])
        with pytest.raises(ValueError):
            double_count_check(f)


class TestWeightedSum:
    def test_full_row_of_unit_rectangles(self):
        rects = tuple(Rectangle(Interval(10, s, 1), Interval(10, 0, 1)) for s in range(10))
        fam = RectFamily(10, 10, rects)
        res = weighted_sum_check(fam, {(1, 1): Fraction(1)}, b=1)
        assert res.hypothesis_ok
        assert res.lhs == 10 and res.rhs == 10
        assert res.holds

    def test_empty_family(self):
        res = weighted_sum_check(RectFamily(10, 10, ()), {}, b=1)
        assert res.hypothesis_ok and res.holds and res.lhs == 0

    def test_hypothesis_violation_reported_not_checked(self):
        rects = (Rectangle(Interval(5, 0, 1), Interval(5, 0, 1)),)
        res = weighted_sum_check(RectFamily(5, 5, rects), {(1, 1): Fraction(1)}, b=1)
        assert not res.hypothesis_ok
        assert any("9b^2" in msg for msg in res.hypothesis_failures)

    def test_sampled_families_hold(self):
        rng = random.Random(7)
        space = [Rectangle(i, j) for i in all_intervals(10, 1) for j in all_intervals(10, 1)]
        checked = 0
        for _ in range(500):
            seedr = rng.choice(space)
            rects = [seedr]
            for cand in rng.sample(space, 30):
                if cand not in rects and all(
                        cand.i.overlaps(r.i) or cand.j.overlaps(r.j) for r in rects):
                    rects.append(cand)
            fam = RectFamily(10, 10, tuple(sorted(rects)))
            res = weighted_sum_check(fam, {(1, 1): Fraction(rng.randint(1, 9), rng.randint(1, 9))}, b=1)
            assert res.hypothesis_ok and res.holds
            checked += 1
        assert checked == 500
