"""
Tests de la Ligne de Commande
=============================
Lecture de la configuration (fichier + options), codes de sortie et fichiers
produits (profils CSV, meta.txt, échantillons de la base).

Date: 2026-10-17
"""

import contextlib
import io
import shutil
import sys
import tempfile
import unittest
from pathlib import Path

import numpy as np
import pandas as pd

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from data_formatters import write_profile, format_meta
from problems import example1
from run_config import RunConfig, parse_config, read_config_text
from run_solver import main, run
from simulation import solve_problem, solution_figure
from solve_report import Snapshot, SolveReport
from solver_errors import ConfigurationError, InvalidInputError

EXAMPLE1_FLAGS = ['--problem', 'example1', '--alpha', '0.1', '--eta', '-0.0025', '--q', '1', '--t-end', '0.5']


def quiet_main(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class TestParseConfig(unittest.TestCase):
    """Fichier `clé = valeur`, options et valeurs par défaut."""

    def test_defaults_filled(self):
        config = parse_config(EXAMPLE1_FLAGS)
        self.assertIsInstance(config, RunConfig)
        self.assertEqual(config.problem, 'example1')
        self.assertEqual((config.lam, config.n_cells, config.dt, config.mu), (0.0, 16, 1e-4, 1.0))
        self.assertEqual(config.q, 1)
        self.assertEqual(config.eta, -0.0025)
        self.assertEqual(config.effective_report_times(), [0.5])
        self.assertEqual(config.mode, 'solve')

    def test_flags_override_file(self):
        config = parse_config(EXAMPLE1_FLAGS + ['--dt', '0.0001'], file_text="dt = 0.001\n")
        self.assertEqual(config.dt, 0.0001)

    def test_file_only(self):
        text = """
        # onde progressive
        problem = example1
        alpha = 1   # advection
        eta = 1
        q = 2
        t_end = 0.2
        report_times = 0.1, 0.2
        lambda = -0.0003
        n = 32
        """
        config = parse_config([], file_text=text)
        self.assertEqual(config.report_times, [0.1, 0.2])
        self.assertEqual(config.lam, -0.0003)
        self.assertEqual(config.n_cells, 32)

    def test_non_integer_q_reports_key_and_line(self):
        text = "problem = example1\nalpha = 0.1\neta = -0.0025\nq = 1.5\nt_end = 0.5\n"
        with self.assertRaises(ConfigurationError) as ctx:
            parse_config([], file_text=text)
        self.assertEqual(ctx.exception.key, 'q')
        self.assertEqual(ctx.exception.line, 4)

    def test_unknown_key(self):
        with self.assertRaises(ConfigurationError) as ctx:
            parse_config(EXAMPLE1_FLAGS, file_text="\nspeed = 3\n")
        self.assertEqual((ctx.exception.key, ctx.exception.line), ('speed', 2))

    def test_malformed_line(self):
        with self.assertRaises(ConfigurationError) as ctx:
            read_config_text("dt 0.1")
        self.assertEqual(ctx.exception.line, 1)

    def test_malformed_number_from_flag(self):
        with self.assertRaises(ConfigurationError) as ctx:
            parse_config(EXAMPLE1_FLAGS + ['--dt', 'abc'])
        self.assertEqual(ctx.exception.key, 'dt')
        self.assertIsNone(ctx.exception.line)

    def test_non_finite_rejected(self):
        with self.assertRaises(ConfigurationError):
            parse_config(EXAMPLE1_FLAGS + ['--lambda', 'nan'])

    def test_invariants(self):
        cases = [
            ['--problem', 'example1', '--alpha', '0.1', '--eta', '0', '--q', '1'],
            EXAMPLE1_FLAGS + ['--dt', '-1e-4'],
            EXAMPLE1_FLAGS + ['--n', '1'],
            EXAMPLE1_FLAGS + ['--report-times', '0.2,0.1'],
            EXAMPLE1_FLAGS + ['--report-times', '0.6'],
            ['--problem', 'example1', '--alpha', '0', '--eta', '1', '--q', '1', '--t-end', '1'],
            ['--problem', 'example5', '--t-end', '1'],
            ['--problem', 'example2', '--t-end', '1', '--scan=-1:1:0.5'],
            ['--problem', 'example3', '--t-end', '1', '--eta', '2'],
            ['--table', '5'],
            [],
        ]
        for argv in cases:
            with self.assertRaises(ConfigurationError, msg=str(argv)):
                parse_config(argv)

    def test_scan_range(self):
        config = parse_config(EXAMPLE1_FLAGS + ['--scan=-1e-5:1e-5:1e-6'])
        self.assertEqual(config.scan, (-1e-5, 1e-5, 1e-6))
        with self.assertRaises(ConfigurationError):
            parse_config(EXAMPLE1_FLAGS + ['--scan', '0:1'])

    def test_table_and_basis_modes(self):
        self.assertEqual(parse_config(['--table', '3']).mode, 'table')
        self.assertEqual(parse_config(['--basis-figure', '2']).mode, 'basis')

    def test_figure_mode(self):
        self.assertEqual(parse_config(['--figure', '8']).mode, 'figure')
        with self.assertRaises(ConfigurationError):
            parse_config(['--figure', '3'])

    def test_unknown_flag(self):
        with self.assertRaises(ConfigurationError):
            parse_config(EXAMPLE1_FLAGS + ['--speed', '3'])

    def test_config_file_option(self):
        tmp = Path(tempfile.mkdtemp())
        try:
            path = tmp / "run.conf"
            path.write_text("problem = example3\nt_end = 0.1\nmu = 0.0625\n", encoding='utf-8')
            config = parse_config(['--config', str(path), '--n', '8'])
            self.assertEqual((config.problem, config.mu, config.n_cells), ('example3', 0.0625, 8))
        finally:
            shutil.rmtree(tmp)


class TestOutputs(unittest.TestCase):
    """Profils CSV et meta.txt."""

    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def test_profile_columns_and_rows(self):
        report = solve_problem(example1(1.0, 1.0, 1), 4, 1e-3, 0.0, 0.01, [0.005, 0.01])
        written = write_profile(report, self.tmp)
        self.assertEqual(sorted(p.name for p in written), ['meta.txt', 'profile_t0.005.csv', 'profile_t0.01.csv'])

        frame = pd.read_csv(self.tmp / 'profile_t0.01.csv', float_precision='round_trip')
        self.assertEqual(list(frame.columns), ['x', 'u_numeric', 'u_exact', 'abs_error'])
        self.assertEqual(len(frame), 5)
        np.testing.assert_array_equal(frame['u_numeric'].to_numpy(), report.snapshots[-1].knot_values)

    def test_close_report_times_get_distinct_files(self):
        knots = np.linspace(0.0, 1.0, 5)
        values = np.full(5, 0.5)
        snapshots = [Snapshot(t, values, np.full(7, 0.5)) for t in (10.0, 10.00001)]
        written = write_profile(SolveReport(snapshots, None, {}, knots), self.tmp)
        self.assertEqual(sorted(p.name for p in written),
                         ['meta.txt', 'profile_t10.00001.csv', 'profile_t10.csv'])

    def test_duplicate_profile_name_rejected(self):
        knots = np.linspace(0.0, 1.0, 5)
        snapshots = [Snapshot(0.5, np.zeros(5), np.zeros(7))] * 2
        with self.assertRaises(InvalidInputError):
            write_profile(SolveReport(snapshots, None, {}, knots), self.tmp)

    def test_meta_contains_configuration_and_assumptions(self):
        config = parse_config(EXAMPLE1_FLAGS)
        report = solve_problem(example1(0.1, -0.0025, 1), 4, 1e-4, 0.0, 0.001)
        text = format_meta(report.meta, config)
        for key in ('problem = example1', 'n_cells = 16', 'dt = 0.0001', 'output_path = results', 'assumption = mu=1'):
            self.assertIn(key, text)

    def test_example1_run(self):
        code, out, _ = quiet_main(EXAMPLE1_FLAGS[:-1] + ['0.01', '--n', '4', '--out', str(self.tmp)])
        self.assertEqual(code, 0)
        self.assertIn('L∞', out)
        header = (self.tmp / 'profile_t0.01.csv').read_text().splitlines()[0]
        self.assertEqual(header, 'x,u_numeric,u_exact,abs_error')

    def test_example2_run_has_no_error_column(self):
        code, _, _ = quiet_main(['--problem', 'example2', '--t-end', '0.01', '--dt', '0.001',
                                 '--mu', '0.02', '--n', '8', '--out', str(self.tmp)])
        self.assertEqual(code, 0)
        header = (self.tmp / 'profile_t0.01.csv').read_text().splitlines()[0]
        self.assertEqual(header, 'x,u_numeric')
        self.assertIn('assumption = ', (self.tmp / 'meta.txt').read_text())

    def test_example3_report_times(self):
        code, _, _ = quiet_main(['--problem', 'example3', '--mu', '0.25', '--dt', '0.001', '--n', '8',
                                 '--t-end', '0.9', '--report-times', '0.1,0.3,0.6,0.9', '--out', str(self.tmp)])
        self.assertEqual(code, 0)
        names = sorted(p.name for p in self.tmp.glob('profile_t*.csv'))
        self.assertEqual(names, ['profile_t0.1.csv', 'profile_t0.3.csv', 'profile_t0.6.csv', 'profile_t0.9.csv'])

    def test_reproducible_output(self):
        argv = EXAMPLE1_FLAGS[:-1] + ['0.005', '--n', '8', '--dt', '0.001']
        bodies = []
        for name in ('a', 'b'):
            out_dir = self.tmp / name
            self.assertEqual(quiet_main(argv + ['--out', str(out_dir)])[0], 0)
            bodies.append((out_dir / 'profile_t0.005.csv').read_bytes())
        self.assertEqual(bodies[0], bodies[1])

    def test_scan_run_writes_trace(self):
        code, out, _ = quiet_main(['--problem', 'example1', '--alpha', '1', '--eta', '1', '--q', '1',
                                   '--t-end', '0.01', '--dt', '0.001', '--n', '8',
                                   '--scan=-0.1:0.1:0.1', '--out', str(self.tmp)])
        self.assertEqual(code, 0)
        self.assertIn('λ optimal', out)
        trace = pd.read_csv(self.tmp / 'scan_trace.csv')
        self.assertEqual(len(trace), 3)

    def test_basis_figure(self):
        code, _, _ = quiet_main(['--basis-figure', '1', '--out', str(self.tmp)])
        self.assertEqual(code, 0)
        frame = pd.read_csv(self.tmp / 'basis_figure1.csv')
        self.assertEqual(list(frame.columns)[0], 'x')
        self.assertEqual(len(frame.columns), 6)

    def test_solution_figure_over_time(self):
        code, out, _ = quiet_main(['--figure', '9', '--out', str(self.tmp)])
        self.assertEqual(code, 0)
        self.assertIn('Figure 9', out)
        frame = pd.read_csv(self.tmp / 'figure9.csv')
        self.assertEqual(list(frame.columns), ['x', 'u_t0.1', 'u_t0.3', 'u_t0.6', 'u_t0.9'])
        self.assertEqual(len(frame), 41)
        self.assertTrue(np.isfinite(frame.to_numpy()).all())

    def test_solution_figure_over_mu(self):
        frame = solution_figure(10)
        self.assertEqual(list(frame.columns), ['x', 'u_mu0.25', 'u_mu0.0625', 'u_mu0.015625', 'u_mu0.00390625'])
        self.assertAlmostEqual(frame['x'].iloc[-1], 1.0, places=14)

    def test_unknown_solution_figure(self):
        with self.assertRaises(InvalidInputError):
            solution_figure(12)


class TestExitCodes(unittest.TestCase):

    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def test_configuration_error_exit_code(self):
        code, _, err = quiet_main(['--problem', 'example1', '--q', '1.5'])
        self.assertEqual(code, 2)
        self.assertIn('configuration', err)

    def test_numerical_failure_exit_code(self):
        code, _, err = quiet_main(EXAMPLE1_FLAGS[:-1] + ['0.001', '--lambda', '4', '--out', str(self.tmp)])
        self.assertEqual(code, 1)
        self.assertIn('BoundaryEliminationError', err)

    def test_off_grid_report_time_exit_code(self):
        config = parse_config(EXAMPLE1_FLAGS[:-1] + ['0.01', '--dt', '0.001', '--report-times', '0.0015,0.01',
                                                     '--out', str(self.tmp)])
        with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
            self.assertEqual(run(config), 2)

    def test_io_failure_exit_code(self):
        blocker = self.tmp / 'file'
        blocker.write_text('x')
        code, _, _ = quiet_main(EXAMPLE1_FLAGS[:-1] + ['0.001', '--out', str(blocker / 'sub')])
        self.assertEqual(code, 1)


if __name__ == '__main__':
    unittest.main()
