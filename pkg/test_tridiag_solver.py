"""
Tests du Solveur Tridiagonal
============================

Date: 2026-10-17
"""

import sys
import unittest
from pathlib import Path

import numpy as np
from hypothesis import given, strategies as st

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from tridiag_solver import TridiagonalSystem, solve_thomas, solve_dense_oracle, thomas_sweep
from solver_errors import InvalidInputError, SingularSystemError


def dominant_system(rng, m):
    lower = rng.uniform(-1.0, 1.0, m - 1)
    upper = rng.uniform(-1.0, 1.0, m - 1)
    main = rng.uniform(2.5, 4.0, m) * rng.choice([-1.0, 1.0], m)
    rhs = rng.normal(size=m)
    return TridiagonalSystem(lower, main, upper, rhs)


class TestThomas(unittest.TestCase):

    def test_identity(self):
        rhs = np.array([1.0, -2.0, 3.5, 0.25])
        system = TridiagonalSystem(np.zeros(3), np.ones(4), np.zeros(3), rhs)
        np.testing.assert_array_equal(solve_thomas(system), rhs)

    def test_known_solution(self):
        system = TridiagonalSystem([1.0, 1.0], [4.0, 4.0, 4.0], [1.0, 1.0], [5.0, 6.0, 5.0])
        np.testing.assert_allclose(solve_thomas(system), [1.0, 1.0, 1.0], rtol=0, atol=1e-15)

    def test_single_row(self):
        system = TridiagonalSystem([], [2.0], [], [3.0])
        np.testing.assert_allclose(solve_thomas(system), [1.5])

    def test_matches_dense_oracle(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            m = int(rng.integers(1, 40))
            system = dominant_system(rng, m)
            x = solve_thomas(system)
            reference = solve_dense_oracle(system)
            scale = max(1.0, float(np.max(np.abs(reference))))
            self.assertLessEqual(float(np.max(np.abs(x - reference))), 1e-11 * scale)

    @given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1), m=st.integers(min_value=1, max_value=60))
    def test_residual_bound(self, seed, m):
        system = dominant_system(np.random.default_rng(seed), m)
        x = solve_thomas(system)
        bound = 1e-10 * max(1.0, float(np.max(np.abs(system.rhs))))
        self.assertLessEqual(system.residual_norm(x), bound)

    def test_deterministic(self):
        system = dominant_system(np.random.default_rng(5), 25)
        first = solve_thomas(system)
        second = solve_thomas(system)
        self.assertEqual(first.tobytes(), second.tobytes())

    def test_zero_pivot_reports_row(self):
        system = TridiagonalSystem([1.0], [0.0, 1.0], [1.0], [1.0, 1.0])
        with self.assertRaises(SingularSystemError) as ctx:
            solve_thomas(system)
        self.assertEqual(ctx.exception.row, 0)

    def test_pivot_breakdown_in_elimination(self):
        # Deuxième pivot : 1 - 1·1 = 0
        system = TridiagonalSystem([1.0, 1.0], [1.0, 1.0, 3.0], [1.0, 1.0], [1.0, 2.0, 3.0])
        with self.assertRaises(SingularSystemError) as ctx:
            solve_thomas(system)
        self.assertEqual(ctx.exception.row, 1)
        self.assertIsInstance(ctx.exception, ArithmeticError)

    def test_sweep_on_lists_matches_system_solve(self):
        system = dominant_system(np.random.default_rng(11), 30)
        x = thomas_sweep(system.lower.tolist(), system.main.tolist(),
                         system.upper.tolist(), system.rhs.tolist())
        self.assertIsInstance(x, list)
        self.assertEqual(np.array(x).tobytes(), solve_thomas(system).tobytes())

    def test_sweep_zero_pivot_reports_row(self):
        with self.assertRaises(SingularSystemError) as ctx:
            thomas_sweep([1.0, 1.0], [1.0, 1.0, 3.0], [1.0, 1.0], [1.0, 2.0, 3.0])
        self.assertEqual(ctx.exception.row, 1)


class TestSystemValidation(unittest.TestCase):

    def test_length_mismatch(self):
        with self.assertRaises(InvalidInputError):
            TridiagonalSystem([1.0, 1.0], [1.0, 1.0], [1.0], [1.0, 1.0])
        with self.assertRaises(InvalidInputError):
            TridiagonalSystem([1.0], [1.0, 1.0], [1.0], [1.0])

    def test_non_finite(self):
        with self.assertRaises(InvalidInputError):
            TridiagonalSystem([1.0], [1.0, np.inf], [1.0], [1.0, 1.0])

    def test_empty(self):
        with self.assertRaises(InvalidInputError):
            TridiagonalSystem([], [], [], [])

    def test_to_dense(self):
        system = TridiagonalSystem([1.0, 2.0], [3.0, 4.0, 5.0], [6.0, 7.0], [0.0, 0.0, 0.0])
        expected = np.array([[3.0, 6.0, 0.0], [1.0, 4.0, 7.0], [0.0, 2.0, 5.0]])
        np.testing.assert_array_equal(system.to_dense(), expected)

    def test_dense_oracle_singular(self):
        system = TridiagonalSystem([1.0], [1.0, 1.0], [1.0], [1.0, 2.0])
        with self.assertRaises(SingularSystemError):
            solve_dense_oracle(system)


if __name__ == '__main__':
    unittest.main()
