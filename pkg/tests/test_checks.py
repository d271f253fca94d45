import random

from paramhom.checks import (
    additivity_suite,
    bound_suite,
    correspondence_suite,
    duality_suite,
    equivalence_suite,
    random_rectangle,
    restriction_suite,
    run_all,
)
from paramhom.measures import measure_direct

import corpus


class TestSuitesPass:
    def test_run_all_on_circle(self):
        results = run_all(corpus.circle(), random.Random(3), samples=8)
        assert [r.name for r in results] == [
            "additivity", "restriction", "equivalence",
            "duality", "bound", "correspondence",
        ]
        assert all(r.passed for r in results), results

    def test_run_all_on_w_shape(self):
        results = run_all(corpus.w_shape(), random.Random(5), samples=6)
        assert all(r.passed for r in results), results

    def test_restriction_alone(self):
        r = restriction_suite(random.Random(1), modules=40)
        assert r.passed
        assert "coarsenings" in r.detail


class TestNegativeControl:
    def test_corrupted_measure_is_caught(self):
        X = corpus.circle()
        calls = {"n": 0}

        def lying(X_, k, t, R):
            calls["n"] += 1
            v = measure_direct(X_, k, t, R)
            # misreport every seventh query
            return v + 1 if calls["n"] % 7 == 0 else v

        r = additivity_suite(X, random.Random(0), samples=12, measure=lying)
        assert not r.passed
        assert "split" in r.detail and "Rectangle" in r.detail


class TestRectangleSampler:
    def test_respects_regularity(self):
        rng = random.Random(9)
        vals = (0.0, 1.0, 2.0)
        for _ in range(50):
            R = random_rectangle(rng, vals, regular=True)
            assert R.is_regular(vals)

    def test_single_critical_value(self):
        rng = random.Random(2)
        for _ in range(20):
            R = random_rectangle(rng, (0.5,))
            assert R.b < R.c
