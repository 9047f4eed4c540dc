import unittest

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal
from scipy import integrate

from fixtures import make_path
from src.beads import (bead_ledger, boltzmann_area_cdf, boltzmann_area_law, boltzmann_area_pdf, bubble_tail_sample,
                       chordal_boundary_process, first_bead_in, infima_gap_sample, mass_to_jumpcount_reparam,
                       p_function, reconstruct, restore_constancy, sample_boltzmann_area, PROXY_LABEL)
from src.conescan import AMBIGUOUS, LEFT
from src.conescan.cones import ConeInterval
from src.corrpath import build_cov_spec, sample_lattice_pair
from src.errors import DomainError, EmptySetError, IncompleteError, NotFound
from src.exponents.claims import first_infimum_after


def first_infimum_scan(path, origin: int, s: int):
    """First u > s with L_u and R_u both at their minimum over [origin, u], by direct scan."""
    low_l, low_r = path.L[origin:s + 1].min(), path.R[origin:s + 1].min()
    for u in range(s + 1, path.n + 1):
        low_l, low_r = min(low_l, path.L[u]), min(low_r, path.R[u])
        if path.L[u] == low_l and path.R[u] == low_r:
            return u
    return None


def sampled_ledger(seed: int, origin: int = 0, n: int = 8192):
    """First trial whose ledger from `origin` holds several complete beads covering a fair share of the path."""
    for trial in range(100):
        path = sample_lattice_pair(build_cov_spec(6), n, seed=seed, trial=trial)
        ledger = bead_ledger(path, origin)
        if ledger.complete and len(ledger) >= 3 and ledger.end[-1] - origin >= n // 8:
            return path, ledger
    raise AssertionError("no trial produced a usable ledger")


class BeadLedgerTest(unittest.TestCase):

    def setUp(self) -> None:
        self.staircase = make_path([0, -1, -2, -3], [0, -1, -3, -4])

    def test_single_bead(self):
        ledger = bead_ledger(make_path([0, -1, -2], [0, -1, 0]), 0)
        self.assertTrue(ledger.complete)
        self.assertEqual(ledger.records(), [(0, 1, 1, 1., 1.)])

    def test_incomplete(self):
        path = make_path([0, 1, 2], [0, 1, 2])
        ledger = bead_ledger(path, 0)
        self.assertFalse(ledger.complete)
        start, end, area, dl, dr = ledger.record(0)
        self.assertEqual((start, end, area), (0, 2, 2))
        self.assertTrue(np.isnan(dl) and np.isnan(dr))
        with self.assertRaises(IncompleteError):
            p_function(ledger, 1)
        with self.assertRaises(NotFound):
            first_bead_in(ledger, lambda area, dl, dr: True)
        with self.assertRaises(IncompleteError):
            chordal_boundary_process(path, ledger.record(0), complete=ledger.complete)

    def test_origin_range(self):
        with self.assertRaises(DomainError):
            bead_ledger(self.staircase, 3)

    def test_p_function(self):
        ledger = bead_ledger(self.staircase, 0)
        self.assertEqual(len(ledger), 3)
        self.assertEqual(p_function(ledger, 0), (1, 1., 1.))
        # right-continuous at the shared boundary of the first two beads
        self.assertEqual(p_function(ledger, 1), (1, 1., 2.))
        self.assertEqual(p_function(bead_ledger(self.staircase, 1), 0), (0, 0., 0.))
        with self.assertRaises(IncompleteError):
            p_function(ledger, 3)

    def test_reconstruct(self):
        ledger = bead_ledger(self.staircase, 0)
        self.assertEqual(reconstruct(ledger, 1), (2, 2., 3.))
        path, ledger = sampled_ledger(seed=2, origin=100)
        checked = 0
        for s in range(100, int(ledger.end[-1]), 37):
            T = first_infimum_scan(path, 100, s)
            self.assertEqual(first_infimum_after(path, 100, s), T)
            self.assertEqual(reconstruct(ledger, s), (T - 100, path.L[100] - path.L[T], path.R[100] - path.R[T]))
            checked += 1
        self.assertGreater(checked, 0)

    def test_first_infimum_after(self):
        self.assertEqual(first_infimum_after(self.staircase, 0, 1), 2)
        self.assertEqual(first_infimum_after(self.staircase, 0, 0), 1)
        self.assertIsNone(first_infimum_after(make_path([0, -1, 0], [0, -1, 0]), 0, 1))

    def test_first_bead_in(self):
        ledger = bead_ledger(self.staircase, 0)
        self.assertEqual(first_bead_in(ledger, lambda area, dl, dr: True), 0)
        self.assertEqual(first_bead_in(ledger, lambda area, dl, dr: dr >= 2), 1)
        with self.assertRaises(NotFound):
            first_bead_in(ledger, lambda area, dl, dr: area > 1)


class ChordalProcessTest(unittest.TestCase):

    def setUp(self) -> None:
        # one left bubble [1, 3] inside the bead [0, 4]
        self.path = make_path([0, 2, 3, 1, -1], [0, 1, 2, 1, -1])

    def test_short_bead(self):
        path = make_path([0, -1, -2], [0, -1, 0])
        cp = chordal_boundary_process(path, bead_ledger(path, 0).record(0))
        self.assertEqual(len(cp.bubbles), 0)
        assert_array_equal(cp.Lb, [1., 0.])
        assert_array_equal(cp.Rb, [1., 0.])

    def test_single_bubble(self):
        ledger = bead_ledger(self.path, 0)
        self.assertEqual(ledger.records(), [(0, 4, 4, 1., 1.)])
        cp = chordal_boundary_process(self.path, ledger.record(0))
        self.assertEqual([(c.v, c.t, c.side) for c in cp.bubbles], [(1, 3, LEFT)])
        assert_array_equal(cp.Lb, [1., 3., 3., 2., 0.])
        assert_array_equal(cp.Rb, [1., 2., 2., 2., 0.])
        assert_array_equal(cp.is_jump, [False, False, False, True, False])
        jumps = cp.jumps()
        self.assertEqual(jumps.coordinate.tolist(), ['L'])
        self.assertEqual(jumps.magnitude.tolist(), [1.])
        self.assertEqual(list(cp.to_frame().columns), ['mass_time', 'Lb', 'Rb', 'is_jump'])

    def test_jump_ordinal_clock(self):
        cp = chordal_boundary_process(self.path, bead_ledger(self.path, 0).record(0))
        clock = mass_to_jumpcount_reparam(cp)
        self.assertEqual(clock.label, PROXY_LABEL)
        assert_array_equal(clock.mass_times, [1])
        assert_array_equal(clock.hold_lengths, [1, 2, 1, 1])
        Lb, Rb = restore_constancy(clock)
        assert_array_equal(Lb, cp.Lb)
        assert_array_equal(Rb, cp.Rb)

    def test_sampled_beads(self):
        path, ledger = sampled_ledger(seed=4)
        bubble_count = 0
        for k in range(len(ledger)):
            cp = chordal_boundary_process(path, ledger.record(k))
            bubble_count += len(cp.bubbles)
            self.assertEqual((cp.Lb[-1], cp.Rb[-1]), (0., 0.))
            self.assertEqual(len(cp.jumps()), len(cp.bubbles))
            for sigma, tau, length in zip(cp.sigma_b, cp.tau_b, cp.bubbles.boundary_length):
                self.assertTrue(np.all(cp.Lb[sigma:tau] == cp.Lb[sigma]) and np.all(cp.Rb[sigma:tau] == cp.Rb[sigma]))
                drop = cp.Lb[tau - 1] - cp.Lb[tau] + cp.Rb[tau - 1] - cp.Rb[tau]
                self.assertEqual(drop, length)
            Lb, Rb = restore_constancy(mass_to_jumpcount_reparam(cp))
            assert_array_equal(Lb, cp.Lb)
            assert_array_equal(Rb, cp.Rb)
        self.assertGreater(bubble_count, 0)


class TailSampleTest(unittest.TestCase):

    def test_bubble_lengths(self):
        bubbles = [ConeInterval(v=0, t=4, side=LEFT, jump=(-3., 0.))]
        assert_array_equal(bubble_tail_sample(bubbles).values, [3.])
        bubbles.append(ConeInterval(v=5, t=7, side=AMBIGUOUS, jump=(0., 0.)))
        assert_array_equal(bubble_tail_sample(bubbles).values, [3.])
        with self.assertRaises(EmptySetError):
            bubble_tail_sample([])

    def test_gaps(self):
        assert_array_equal(infima_gap_sample(np.array([0, 1, 5]), dt=.5).values, [.5, 2.])
        with self.assertRaises(EmptySetError):
            infima_gap_sample(np.array([3]))


class BoltzmannTest(unittest.TestCase):

    def test_scaling(self):
        assert_allclose(sample_boltzmann_area(2., seed=7, size=100), 4 * sample_boltzmann_area(1., seed=7, size=100))
        self.assertIsInstance(sample_boltzmann_area(1., seed=7), float)

    def test_pdf_normalized(self):
        for length in (.5, 1., 3.):
            total, _ = integrate.quad(lambda a: float(boltzmann_area_pdf(a, length)), 0, np.inf)
            self.assertAlmostEqual(total, 1., places=6)
            partial, _ = integrate.quad(lambda a: float(boltzmann_area_pdf(a, length)), 0, length ** 2)
            self.assertAlmostEqual(partial, float(boltzmann_area_cdf(length ** 2, length)), places=6)

    def test_sampled_law(self):
        samples = sample_boltzmann_area(1.5, seed=11, size=200000)
        law = boltzmann_area_law(1.5)
        self.assertAlmostEqual(law.mean() / 1.5 ** 2, 1.)
        self.assertAlmostEqual(np.median(samples) / law.median(), 1., delta=.02)
        self.assertAlmostEqual(samples.mean() / 1.5 ** 2, 1., delta=.2)

    def test_domain(self):
        with self.assertRaises(DomainError):
            sample_boltzmann_area(0., seed=1)
        with self.assertRaises(DomainError):
            boltzmann_area_pdf(1., -1.)


if __name__ == '__main__':
    unittest.main()
