"""
Tests de l'Analyse des Erreurs et du Balayage de λ
==================================================

Date: 2026-10-17
"""

import sys
import unittest
from pathlib import Path

import numpy as np
from hypothesis import given, strategies as st

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from analysis import (
    linf_error, estimate_order, observed_temporal_order, lambda_grid,
    scan_lambda, ScanPoint, _best_point
)
from problems import example1, example2
from simulation import solve_problem
from solver_errors import InvalidInputError, ScanError

vectors = st.lists(st.floats(min_value=-1e6, max_value=1e6), min_size=1, max_size=20)


class TestLinfError(unittest.TestCase):

    def test_value(self):
        self.assertEqual(linf_error([1.0, 2.0, 3.0], [1.0, 2.5, 2.0]), 1.0)

    def test_length_mismatch(self):
        with self.assertRaises(InvalidInputError):
            linf_error([1.0, 2.0], [1.0])

    @given(values=vectors)
    def test_zero_iff_equal(self, values):
        self.assertEqual(linf_error(values, values), 0.0)

    def test_norm_properties(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            u, v, w = rng.normal(size=(3, 12))
            self.assertGreaterEqual(linf_error(u, v), 0.0)
            self.assertEqual(linf_error(u, v), linf_error(v, u))
            self.assertLessEqual(linf_error(u, w), linf_error(u, v) + linf_error(v, w) + 1e-15)


class TestOrders(unittest.TestCase):

    def test_second_order(self):
        orders = estimate_order([(0.1, 4e-4), (0.05, 1e-4), (0.025, 2.5e-5)])
        for order in orders:
            self.assertAlmostEqual(order, 2.0, places=10)

    def test_zero_error_gives_none(self):
        self.assertEqual(estimate_order([(0.1, 1e-3), (0.05, 0.0)]), [None])

    def test_rejections(self):
        with self.assertRaises(InvalidInputError):
            estimate_order([(0.1, 1e-3)])
        with self.assertRaises(InvalidInputError):
            estimate_order([(0.1, 1e-3), (0.04, 1e-4)])

    def test_temporal_order(self):
        self.assertAlmostEqual(observed_temporal_order([(4e-3, 8e-6), (2e-3, 2e-6)])[0], 2.0, places=10)

    def test_spatial_order_is_two(self):
        problem = example1(1.0, 1.0, 1)
        errors = [(1.0 / n, solve_problem(problem, n, 1e-5, 0.0, 0.1).final_error()) for n in (8, 16, 32)]
        orders = estimate_order(errors)
        self.assertEqual(len(orders), 2)
        for order in orders:
            self.assertGreaterEqual(order, 1.8)
            self.assertLessEqual(order, 2.2)


class TestLambdaGrid(unittest.TestCase):

    def test_inclusive_grid_with_exact_zero(self):
        grid = lambda_grid(-1e-5, 1e-5, 1e-6)
        self.assertEqual(len(grid), 21)
        self.assertIn(0.0, grid)
        self.assertEqual(grid[0], -1e-5)
        self.assertEqual(grid[-1], 1e-5)

    def test_grid_points_have_no_accumulated_noise(self):
        grid = lambda_grid(-1e-5, 1e-5, 1e-6)
        self.assertEqual(grid[7], -3e-06)
        self.assertEqual(repr(grid[7]), '-3e-06')
        self.assertEqual(grid, [float(f"{k}e-6") for k in range(-10, 11)])
        self.assertEqual(lambda_grid(np.float64(0.0), np.float64(0.3), np.float64(0.1)), [0.0, 0.1, 0.2, 0.3])

    def test_single_point(self):
        self.assertEqual(lambda_grid(0.5, 0.5, 0.1), [0.5])

    def test_rejections(self):
        for lo, hi, step in ((0.0, 1.0, 0.0), (1.0, 0.0, 0.1), (0.0, float('nan'), 0.1)):
            with self.assertRaises(InvalidInputError):
                lambda_grid(lo, hi, step)

    def test_tie_break_prefers_smallest_magnitude(self):
        points = [ScanPoint(-0.2, 1e-9), ScanPoint(0.1, 1e-9), ScanPoint(-0.1, 1e-9), ScanPoint(0.3, 2e-9)]
        self.assertEqual(_best_point(points).lam, 0.1)


class TestScanLambda(unittest.TestCase):
    """Balayage sur un petit problème (N = 8, 10 pas)."""

    def setUp(self):
        self.problem = example1(1.0, 1.0, 1)
        self.args = dict(n_cells=8, dt=1e-3, t_end=0.01)

    def test_trace_contains_zero_and_best_is_minimum(self):
        result = scan_lambda(self.problem, lambda_lo=-0.2, lambda_hi=0.2, lambda_step=0.1, **self.args)
        self.assertEqual([p.lam for p in result.trace][2], 0.0)
        self.assertEqual(result.runs, 5)
        self.assertEqual(result.failures, 0)
        at_zero = next(p.linf for p in result.trace if p.lam == 0.0)
        self.assertLessEqual(result.best_error, at_zero)
        self.assertEqual(result.best_error, min(p.linf for p in result.trace))

    def test_deterministic_across_worker_counts(self):
        serial = scan_lambda(self.problem, lambda_lo=-0.2, lambda_hi=0.2, lambda_step=0.1, max_workers=1, **self.args)
        parallel = scan_lambda(self.problem, lambda_lo=-0.2, lambda_hi=0.2, lambda_step=0.1, max_workers=4, **self.args)
        self.assertEqual(serial.trace, parallel.trace)
        self.assertEqual(serial.best_lambda, parallel.best_lambda)

    def test_failed_runs_are_flagged(self):
        with self.assertLogs('analysis', level='ERROR'):
            result = scan_lambda(self.problem, lambda_lo=3.0, lambda_hi=4.0, lambda_step=0.5, **self.args)
        self.assertEqual(result.failures, 1)
        failed = result.trace[-1]
        self.assertEqual(failed.lam, 4.0)
        self.assertIsNone(failed.linf)
        self.assertIn('BoundaryEliminationError', failed.error)
        self.assertNotEqual(result.best_lambda, 4.0)

    def test_all_runs_failed(self):
        with self.assertRaises(ScanError):
            scan_lambda(self.problem, lambda_lo=4.0, lambda_hi=4.0, lambda_step=0.1, **self.args)

    def test_requires_exact_solution(self):
        with self.assertRaises(InvalidInputError):
            scan_lambda(example2(), lambda_lo=-0.1, lambda_hi=0.1, lambda_step=0.1, **self.args)


if __name__ == '__main__':
    unittest.main()
