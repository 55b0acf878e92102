import pytest

from ekrlab.verifiers import InfeasibleExhaustive, SAMPLED, verify_check


class TestDistanceGraphCheck:
    def test_exhaustive_small(self):
        report = verify_check("1", {"n": 7, "k": 3})
        assert report.passed
        assert report.instances > 0

    def test_grid(self):
        for n in range(3, 11):
            for k in range(1, (n - 1) // 2 + 1):
                assert verify_check("1", {"n": n, "k": k}).passed

    def test_bad_hypothesis(self):
        with pytest.raises(ValueError, match="2k < n"):
            verify_check("1", {"n": 6, "k": 3})

    def test_sampled(self):
        report = verify_check("1", {"n": 12, "k": 4}, mode=SAMPLED, seed=5, trials=200)
        assert report.passed and report.instances == 400


class TestIntervalDispersionCheck:
    def test_exhaustive_example(self):
        report = verify_check("2", {"n": 10, "k": 2, "b": 2})
        assert report.passed
        assert report.instances == 252  # all 5-subsets of the 10 intervals

    def test_bad_hypothesis(self):
        with pytest.raises(ValueError, match=r"2\(k\+b\)"):
            verify_check("2", {"n": 7, "k": 2, "b": 2})


class TestBlockingPairExistence:
    def test_vacuous_at_tiny_corner(self):
        # no proj-intersecting family of >= 9 unit rectangles fits in Z_5 x Z_5
        report = verify_check("3", {"n1": 5, "n2": 5, "k": 1, "l": 1, "b": 1})
        assert report.passed
        assert report.instances == 0

    def test_nonvacuous_lines(self):
        report = verify_check("3", {"n1": 10, "n2": 10, "k": 1, "l": 1, "b": 1})
        assert report.passed
        assert report.instances == 220  # line subsets of size >= 9

    def test_sampled_mode(self):
        report = verify_check("3", {"n1": 10, "n2": 10, "k": 1, "l": 1, "b": 1},
                              mode=SAMPLED, seed=3, trials=50)
        assert report.passed
        assert report.instances > 0


class TestThirdRectangleOverlap:
    def test_exhaustive(self):
        report = verify_check("4", {"n1": 5, "n2": 5, "k": 1, "l": 1, "b": 1})
        assert report.passed and report.instances > 0

    def test_wider(self):
        report = verify_check("4", {"n1": 9, "n2": 9, "k": 2, "l": 2, "b": 2},
                              mode=SAMPLED, seed=11, trials=300)
        assert report.passed


class TestSingleShapeChecks:
    def test_distinct_base_collapse_exhaustive(self):
        report = verify_check("5", {"n1": 5, "n2": 5, "k": 1, "l": 1, "b": 1})
        assert report.passed and report.instances > 0

    def test_distinct_base_collapse_sampled(self):
        report = verify_check("5", {"n1": 9, "n2": 9, "k": 2, "l": 2, "b": 2},
                              mode=SAMPLED, seed=3, trials=40)
        assert report.passed and report.instances == 40

    def test_total_count_bound(self):
        assert verify_check("c1", {"n1": 5, "n2": 5, "k": 1, "l": 1, "b": 1}).passed

    def test_multiplicity_split_sampled(self):
        report = verify_check("6", {"n1": 9, "n2": 9, "k": 2, "l": 2, "b": 2},
                              mode=SAMPLED, seed=3, trials=40)
        assert report.passed and report.instances == 40

    def test_five_way_bound(self):
        assert verify_check("c2", {"n1": 5, "n2": 5, "k": 1, "l": 1, "b": 1}).passed

    def test_strict_box_hypothesis(self):
        with pytest.raises(ValueError, match="<"):
            verify_check("5", {"n1": 4, "n2": 5, "k": 1, "l": 1, "b": 1})


class TestMultiShapeChecks:
    def test_no_mixed_blocking_pairs_sampled(self):
        report = verify_check("7", {"n1": 5, "n2": 5, "b": 1, "shapes": [[1, 1]]},
                              mode=SAMPLED, seed=1, trials=1000)
        assert report.passed
        assert report.instances == 1000

    def test_no_mixed_blocking_pairs_two_shapes(self):
        report = verify_check("7", {"n1": 9, "n2": 9, "b": 2, "shapes": [[1, 1], [2, 1]]},
                              mode=SAMPLED, seed=2, trials=200)
        assert report.passed

    def test_per_shape_bounds(self):
        report = verify_check("8", {"n1": 5, "n2": 5, "b": 1, "shapes": [[1, 1]]},
                              mode=SAMPLED, seed=5, trials=300)
        assert report.passed and report.instances == 300

    def test_large_ground_bounds(self):
        report = verify_check("9", {"n1": 10, "n2": 10, "b": 1, "shapes": [[1, 1]]},
                              mode=SAMPLED, seed=7, trials=500)
        assert report.passed and report.instances == 500

    def test_weighted_sum_bound(self):
        report = verify_check("c3", {"n1": 10, "n2": 10, "b": 1, "shapes": [[1, 1]]},
                              mode=SAMPLED, seed=7, trials=500)
        assert report.passed and report.instances == 500

    def test_shape_hypothesis_validated(self):
        with pytest.raises(ValueError, match="within 1..b"):
            verify_check("9", {"n1": 12, "n2": 12, "b": 1, "shapes": [[2, 1]]},
                         mode=SAMPLED, seed=1)


class TestVerifierPlumbing:
    def test_unknown_check(self):
        with pytest.raises(ValueError, match="unknown check"):
            verify_check("42", {})

    def test_sampled_needs_seed(self):
        with pytest.raises(ValueError, match="seed"):
            verify_check("1", {"n": 9, "k": 2}, mode=SAMPLED)

    def test_infeasible_exhaustive_advises_sampling(self):
        with pytest.raises(InfeasibleExhaustive, match="sampled"):
            verify_check("2", {"n": 40, "k": 8, "b": 8})

    def test_report_json(self):
        report = verify_check("1", {"n": 7, "k": 3})
        data = report.to_json()
        assert set(data) == {"lemma", "params", "mode", "instances",
                             "counterexamples", "hypothesis_rejections", "elapsed_ms"}
        assert data["lemma"] == "1"
        assert data["counterexamples"] == []

    def test_sampled_determinism(self):
        a = verify_check("7", {"n1": 5, "n2": 5, "b": 1, "shapes": [[1, 1]]},
                         mode=SAMPLED, seed=9, trials=50)
        b = verify_check("7", {"n1": 5, "n2": 5, "b": 1, "shapes": [[1, 1]]},
                         mode=SAMPLED, seed=9, trials=50)
        assert a.instances == b.instances
        assert a.counterexamples == b.counterexamples
        assert a.hypothesis_rejections == b.hypothesis_rejections

    def test_counterexample_detection_wired(self):
        # a deliberately false inequality variant is not exposed; instead check
        # that a failing conclusion would be reported, using check 6 with l = 1
        # whose hypothesis (1..l-1 distinct bases) is unsatisfiable: zero instances
        report = verify_check("6", {"n1": 5, "n2": 5, "k": 1, "l": 1, "b": 1})
        assert report.instances == 0 and report.passed
