import unittest

import numpy as np
from numpy.testing import assert_array_equal

from fixtures import make_path
from src.conescan import (AMBIGUOUS, LEFT, RIGHT, SENTINEL, ConeIntervalTable, brute_force_cone_oracle,
                          bubble_envelope, cone_gap_event, covered_mask, covering_count, dyadic_grid,
                          entrance_times, infimum_straddle, maximal_cone_intervals, non_cone_set,
                          overshoot_probability_bound, simultaneous_infima, skip_bubbles, window_argmins)
from src.corrpath import Window, build_cov_spec, sample_lattice_pair
from src.errors import DomainError, EmptySetError, SizeError


class EntranceTimesTest(unittest.TestCase):

    def test_decreasing_prefix_dominates(self):
        path = make_path([0, -1, -2], [0, -1, -2])
        self.assertEqual(entrance_times(path, Window(0, 2))[2], 0)

    def test_return_to_level(self):
        path = make_path([0, 1, 0], [0, 1, 0])
        self.assertEqual(entrance_times(path, Window(0, 2))[2], 0)

    def test_single_index_window(self):
        path = make_path([0, 1, 0, 1], [0, -1, 0, 1])
        for t in range(4):
            self.assertEqual(entrance_times(path, Window(t, t))[t], t)

    def test_cone_reaching_past_the_window(self):
        path = make_path([2, 1, 2, 1], [2, 1, 2, 1])
        entrance = entrance_times(path, Window(1, 3))
        self.assertEqual(entrance[3], SENTINEL)
        assert_array_equal(entrance.cone_times(), np.array([], dtype=np.int64))

    def test_cone_condition(self):
        path = sample_lattice_pair(build_cov_spec(6), 300, seed=8)
        w = Window(20, 280)
        entrance = entrance_times(path, w)
        for t in range(w.a, w.b + 1):
            v = entrance[t]
            if v == SENTINEL:
                continue
            self.assertLessEqual(v, t)
            self.assertTrue(np.all(path.L[v:t + 1] >= path.L[t]) and np.all(path.R[v:t + 1] >= path.R[t]))
            if v > w.a:
                self.assertTrue(path.L[v - 1] < path.L[t] or path.R[v - 1] < path.R[t])


class MaximalIntervalsTest(unittest.TestCase):

    def setUp(self) -> None:
        self.spec = build_cov_spec(6)

    def test_global_cone(self):
        path = make_path([0, -1, -2, -3], [0, -2, -3, -5])
        intervals = maximal_cone_intervals(path, Window(0, 3))
        self.assertEqual([(c.v, c.t) for c in intervals], [(0, 3)])
        assert_array_equal(non_cone_set(path, Window(0, 3)), [0, 3])

    def test_excursion_back_to_start(self):
        path = make_path([0, 1, 0, 1, 0], [0, 1, 2, 1, 0])
        intervals = maximal_cone_intervals(path, Window(0, 4))
        self.assertEqual([(c.v, c.t, c.side) for c in intervals], [(0, 4, AMBIGUOUS)])
        _, oracle = brute_force_cone_oracle(path, Window(0, 4))
        self.assertEqual(ConeIntervalTable.from_intervals(oracle), intervals)

    def test_no_cone_intervals(self):
        path = make_path(np.arange(6), np.arange(6))
        self.assertEqual(len(maximal_cone_intervals(path, Window(0, 5))), 0)
        assert_array_equal(non_cone_set(path, Window(0, 5)), np.arange(6))

    def test_side_rule(self):
        path = make_path([0, 1, 0, -1, 0, -1], [0, 1, 1, 0, 1, 0])
        sides = {(c.v, c.t): c.side for c in maximal_cone_intervals(path, Window(0, 5))}
        _, oracle = brute_force_cone_oracle(path, Window(0, 5))
        self.assertEqual(sides, {(c.v, c.t): c.side for c in oracle})
        checked = 0
        for c in maximal_cone_intervals(sample_lattice_pair(self.spec, 2000, seed=1), Window(0, 2000)):
            if c.v == 0:
                continue
            checked += 1
            dl, dr = c.jump
            self.assertTrue(dl <= 0 and dr <= 0)
            if c.side == LEFT:
                self.assertTrue(dr == 0 and dl != 0)
            elif c.side == RIGHT:
                self.assertTrue(dl == 0 and dr != 0)
            else:
                self.assertTrue(dl == 0 and dr == 0)
        self.assertGreater(checked, 0)

    def test_oracle_equivalence(self):
        rng = np.random.default_rng(0)
        for trial in range(40):
            path = sample_lattice_pair(self.spec, 256, seed=13, trial=trial)
            a = int(rng.integers(0, 128))
            b = int(rng.integers(a, 257))
            w = Window(a, b)
            entrance, oracle = brute_force_cone_oracle(path, w)
            self.assertEqual(entrance, entrance_times(path, w))
            assert_array_equal(entrance.prev_L, entrance_times(path, w).prev_L)
            self.assertEqual(ConeIntervalTable.from_intervals(oracle), maximal_cone_intervals(path, w))

    def test_nesting_and_partition(self):
        path = sample_lattice_pair(self.spec, 4096, seed=21)
        w = Window(100, 4000)
        intervals = maximal_cone_intervals(path, w)
        self.assertTrue(np.all(np.diff(intervals.t) > 0))
        # sorted by t with disjoint interiors: every interval starts at or after the previous end
        self.assertTrue(np.all(intervals.v[1:] >= intervals.t[:-1]))
        self.assertTrue(np.all((intervals.v >= w.a) & (intervals.t <= w.b)))
        covered = covered_mask(intervals, w)
        a_set = non_cone_set(path, w, intervals=intervals)
        assert_array_equal(np.sort(np.r_[a_set, w.indices()[covered]]), w.indices())

    def test_restriction_to_ancestor_free_endpoints(self):
        path = sample_lattice_pair(self.spec, 4096, seed=5)
        w = path.full_window
        intervals = maximal_cone_intervals(path, w)
        a_set = non_cone_set(path, w, intervals=intervals)
        c, d = int(a_set[len(a_set) // 4]), int(a_set[3 * len(a_set) // 4])
        inside = intervals.select((intervals.v >= c) & (intervals.t <= d))
        self.assertEqual(maximal_cone_intervals(path, Window(c, d)), inside)

    def test_oracle_guards(self):
        path = make_path([0, 1, 0], [0, -1, 0])
        _, intervals = brute_force_cone_oracle(path, Window(1, 1))
        self.assertEqual(intervals, [])
        big = make_path(np.zeros(2 ** 16 + 2), np.zeros(2 ** 16 + 2))
        with self.assertRaises(SizeError):
            brute_force_cone_oracle(big, big.full_window)


class BubbleSkippingTest(unittest.TestCase):

    def test_envelope_and_skipping(self):
        path = sample_lattice_pair(build_cov_spec(6), 2048, seed=3)
        w = Window(0, 2048)
        intervals = maximal_cone_intervals(path, w)
        sigma, tau = bubble_envelope(path, w, intervals=intervals)
        self.assertTrue(np.all(sigma <= w.indices()) and np.all(w.indices() <= tau))
        skipped = skip_bubbles(path, w, intervals=intervals)
        a_set = non_cone_set(path, w, intervals=intervals)
        self.assertTrue(np.all(np.isin(skipped, a_set)))
        fixed = a_set[~np.isin(a_set, intervals.v)]
        assert_array_equal(skipped[fixed - w.a], fixed)


class CoveringTest(unittest.TestCase):

    def test_single_point(self):
        curve = covering_count(np.array([0]), [.5, 1., 4.])
        assert_array_equal(curve.counts, [1, 1, 1])

    def test_integer_run(self):
        for k in range(21):
            self.assertEqual(covering_count(np.arange(k + 1), [1.]).counts[0], k + 1)
            self.assertEqual(covering_count(np.arange(k + 1), [2.]).counts[0], (k + 2) // 2)

    def test_monotone_and_export(self):
        path = sample_lattice_pair(build_cov_spec(6), 4096, seed=1)
        a_set = non_cone_set(path, path.full_window)
        curve = covering_count(a_set, dyadic_grid(4096, 1, 10), dt=.5)
        self.assertTrue(np.all(np.diff(curve.counts) <= 0))
        self.assertEqual(list(curve.to_frame().columns), ['epsilon', 'count'])

    def test_errors(self):
        with self.assertRaises(EmptySetError):
            covering_count(np.array([], dtype=np.int64), [1.])
        with self.assertRaises(DomainError):
            covering_count(np.array([1]), [0.])
        with self.assertRaises(DomainError):
            dyadic_grid(1., 5, 2)

    def test_dyadic_grid(self):
        assert_array_equal(dyadic_grid(64., 1, 3), [8., 16., 32.])


class InfimaTest(unittest.TestCase):

    def test_decreasing(self):
        path = make_path([0, -1, -2, -3], [0, -1, -3, -4])
        assert_array_equal(simultaneous_infima(path, 1), [1, 2, 3])

    def test_one_coordinate_above_minimum(self):
        path = make_path([0, -1, -2], [0, -1, 0])
        assert_array_equal(simultaneous_infima(path, 0), [0, 1])

    def test_window_argmins(self):
        self.assertEqual(window_argmins(make_path([0, -1, -2, -3], [0, 1, 2, 3]), Window(0, 3)), (3, 0))
        self.assertEqual(window_argmins(make_path([0, -1, 0, -1], [0, 1, 0, 1]), Window(0, 3)), (1, 0))

    def test_straddle(self):
        path = make_path([0, -1, 0, 1, 0, -1, -2], [0, -1, -2, -1, -2, -3, -4])
        self.assertEqual(infimum_straddle(path, 0, 2), (1, 5))
        self.assertEqual(infimum_straddle(path, 0, 5), (5, 5))
        self.assertEqual(infimum_straddle(make_path([0, 1, 2], [0, 1, 2]), 0, 1), (0, None))


class ConeGapTest(unittest.TestCase):

    def test_global_cone(self):
        path = make_path([0, -1, -2, -3, -4], [0, -1, -1, -2, -3])
        w = Window(0, 4)
        for t in range(5):
            for eps in range(0, 5 - t):
                self.assertFalse(cone_gap_event(path, t, eps, w))

    def test_whole_window(self):
        path = make_path([0, 1, 2, 1, 2], [0, 1, 0, 1, 2])
        self.assertTrue(cone_gap_event(path, 0, 4, Window(0, 4)))

    def test_against_all_cone_times(self):
        path = sample_lattice_pair(build_cov_spec(6), 512, seed=17)
        w = Window(0, 512)
        entrance = entrance_times(path, w)
        cones = [(entrance[s], s) for s in entrance.cone_times()]
        for t in (100, 256, 400):
            for eps in (1, 4, 16, 64):
                expected = not any(v <= t and t + eps <= s for v, s in cones)
                self.assertEqual(cone_gap_event(path, t, eps, w), expected)

    def test_admissibility(self):
        with self.assertRaises(DomainError):
            cone_gap_event(make_path([0, 1, 2], [0, 1, 2]), 1, 2, Window(0, 2))

    def test_overshoot_bound(self):
        self.assertAlmostEqual(overshoot_probability_bound(0., .01, 1., 6.), .01 ** .25)
        self.assertLess(overshoot_probability_bound(0., .01, 1., 6.), overshoot_probability_bound(0., .1, 1., 6.))
        with self.assertRaises(DomainError):
            overshoot_probability_bound(0., 1., 1., 6.)


if __name__ == '__main__':
    unittest.main()
