import tempfile
import unittest
from pathlib import Path

import numpy as np
from numpy.testing import assert_array_equal, assert_allclose

from fixtures import make_path
from src import settings
from src.corrpath import (BROWNIAN, LATTICE, Window, build_cov_spec, coarsen_to_lattice, empirical_correlation,
                          lattice_step_law, load_path, rescale, sample_brownian_pair, sample_lattice_pair,
                          save_path, time_reversal)
from src.corrpath.path_io import HEADER
from src.corrpath.sampling import empirical_cov
from src.errors import DomainError, FormatError, SizeError


class CovSpecTest(unittest.TestCase):

    def test_closed_forms(self):
        spec = build_cov_spec(6)
        self.assertAlmostEqual(spec.gamma, np.sqrt(8 / 3), places=12)
        self.assertAlmostEqual(spec.rho, .5, places=12)
        self.assertAlmostEqual(build_cov_spec(5).rho, 0.809017, places=6)
        self.assertEqual(build_cov_spec(8).rho, 0.)
        self.assertFalse(build_cov_spec(8).has_cone_times)

    def test_invariants_on_grid(self):
        for kappa_prime in np.linspace(4.01, 7.99, 50):
            spec = build_cov_spec(kappa_prime)
            self.assertAlmostEqual(spec.gamma ** 2 * kappa_prime, 16., places=10)
            self.assertTrue(0 < spec.rho < 1)
            self.assertTrue(np.all(np.linalg.eigvalsh(spec.covariance) >= 0))

    def test_out_of_range(self):
        for kappa_prime in (4., 3., 8.5):
            with self.assertRaises(DomainError):
                build_cov_spec(kappa_prime)
        with self.assertRaises(DomainError):
            build_cov_spec(6, alpha_scale=0.)

    def test_lattice_step_law(self):
        law = lattice_step_law(.5)
        self.assertAlmostEqual(law[(1, 1)], .375)
        self.assertAlmostEqual(law[(1, -1)], .125)
        for p in lattice_step_law(0.).values():
            self.assertAlmostEqual(p, .25)
        for rho in np.linspace(0, .99, 20):
            law = lattice_step_law(rho)
            self.assertAlmostEqual(sum(law.values()), 1.)
            self.assertAlmostEqual(sum(p * a * b for (a, b), p in law.items()), rho)


class SamplingTest(unittest.TestCase):

    def setUp(self) -> None:
        self.spec = build_cov_spec(6)

    def test_brownian_determinism(self):
        first = sample_brownian_pair(self.spec, 1000, .01, seed=3)
        second = sample_brownian_pair(self.spec, 1000, .01, seed=3)
        self.assertEqual(first, second)
        self.assertNotEqual(first, sample_brownian_pair(self.spec, 1000, .01, seed=3, trial=1))
        self.assertEqual(first.L[0], 0.)
        self.assertEqual(first.R[0], 0.)

    def test_chunking_does_not_change_the_prefix(self):
        size = settings.rng_chunk_size
        long = sample_lattice_pair(self.spec, size + 10, seed=11)
        short = sample_lattice_pair(self.spec, 10, seed=11)
        assert_array_equal(long.L[:11], short.L)
        assert_array_equal(long.R[:11], short.R)

    def test_brownian_covariance(self):
        path = sample_brownian_pair(self.spec, 10 ** 6, 1e-6, seed=5)
        var_l, var_r, cov = empirical_cov(path)
        self.assertAlmostEqual(cov, .5, delta=.01)
        self.assertAlmostEqual(var_l, 1., delta=.01)
        self.assertAlmostEqual(empirical_correlation(path), .5, delta=.01)

    def test_lattice_steps(self):
        path = sample_lattice_pair(self.spec, 10 ** 6, seed=9)
        dl, dr = path.increments()
        self.assertTrue(np.all(np.abs(dl) == 1) and np.all(np.abs(dr) == 1))
        self.assertEqual(path.kind, LATTICE)
        self.assertAlmostEqual(np.mean(dl * dr), .5, delta=.005)
        self.assertAlmostEqual(np.mean(dl), 0., delta=.005)

    def test_independent_lattice(self):
        path = sample_lattice_pair(build_cov_spec(8), 10 ** 6, seed=1)
        self.assertAlmostEqual(empirical_cov(path)[2], 0., delta=.005)

    def test_degenerate_covariance(self):
        path = make_path(np.zeros(5), np.zeros(5), kind=BROWNIAN)
        self.assertEqual(empirical_cov(path), (0., 0., 0.))

    def test_size_errors(self):
        with self.assertRaises(DomainError):
            sample_lattice_pair(self.spec, 0, seed=1)
        with self.assertRaises(DomainError):
            sample_brownian_pair(self.spec, 10, 0., seed=1)
        with self.assertRaises(SizeError):
            sample_brownian_pair(self.spec, 2 ** 60, 1., seed=1)

    def test_transforms(self):
        path = sample_lattice_pair(self.spec, 100, seed=2)
        scaled = rescale(path, .5)
        self.assertEqual(scaled.kind, BROWNIAN)
        self.assertAlmostEqual(scaled.dt, .25)
        assert_allclose(scaled.L, path.L / 2)

        reversed_path = time_reversal(path)
        self.assertEqual(reversed_path.L[0], 0.)
        assert_array_equal(time_reversal(reversed_path).L, path.L)

        brownian = sample_brownian_pair(self.spec, 100, .1, seed=2)
        coarse = coarsen_to_lattice(brownian)
        self.assertEqual(coarse.kind, LATTICE)
        assert_array_equal(np.sign(np.diff(coarse.L)), np.where(np.diff(brownian.L) < 0, -1, 1))

    def test_scaling_keeps_the_covariance(self):
        n = 200000
        path = sample_brownian_pair(self.spec, n, .01, seed=6)
        # three standard errors of the sample variance and covariance of unit Gaussians
        var_err = 3 * np.sqrt(2 / n)
        cov_err = 3 * np.sqrt((1 + self.spec.rho ** 2) / n)
        for c in (.1, 3.):
            scaled = rescale(path, c)
            var_l, var_r, cov = empirical_cov(scaled)
            self.assertAlmostEqual(var_l, 1., delta=var_err)
            self.assertAlmostEqual(var_r, 1., delta=var_err)
            self.assertAlmostEqual(cov, self.spec.rho, delta=cov_err)
            assert_allclose(empirical_cov(scaled), empirical_cov(path), rtol=1e-9)
        fresh = sample_brownian_pair(self.spec, n, .09, seed=7)
        for scaled_value, fresh_value in zip(empirical_cov(rescale(path, 3.)), empirical_cov(fresh)):
            self.assertAlmostEqual(scaled_value, fresh_value, delta=np.sqrt(2) * var_err)

    def test_window(self):
        self.assertEqual(len(Window(2, 5)), 4)
        self.assertEqual(Window.from_fractions(100, .25, .75), Window(25, 75))
        with self.assertRaises(DomainError):
            Window(5, 2)
        with self.assertRaises(DomainError):
            make_path([0, 1], [0, 1]).check_window(Window(0, 3))


class PathIoTest(unittest.TestCase):

    def setUp(self) -> None:
        self.tmp = tempfile.TemporaryDirectory()
        self.file = Path(self.tmp.name) / "path.pnlb"

    def tearDown(self) -> None:
        self.tmp.cleanup()

    def test_round_trip(self):
        for path in (sample_lattice_pair(build_cov_spec(7), 257, seed=4),
                     sample_brownian_pair(build_cov_spec(5, 2.), 100, .3, seed=4)):
            save_path(path, self.file)
            self.assertEqual(load_path(self.file), path)
            self.assertEqual(self.file.stat().st_size, HEADER.size + 16 * (path.n + 1))

    def test_truncated(self):
        save_path(sample_lattice_pair(build_cov_spec(6), 10, seed=1), self.file)
        raw = self.file.read_bytes()
        for size in (10, len(raw) - 3):
            self.file.write_bytes(raw[:size])
            with self.assertRaises(FormatError):
                load_path(self.file)

    def test_bad_magic_and_version(self):
        save_path(sample_lattice_pair(build_cov_spec(6), 10, seed=1), self.file)
        raw = self.file.read_bytes()
        self.file.write_bytes(b'XXXX' + raw[4:])
        with self.assertRaises(FormatError):
            load_path(self.file)
        self.file.write_bytes(raw[:4] + b'\x02\x00' + raw[6:])
        with self.assertRaises(FormatError) as context:
            load_path(self.file)
        self.assertIn(str(self.file), str(context.exception))


if __name__ == '__main__':
    unittest.main()
