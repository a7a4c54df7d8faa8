"""
Script de Lancement du Solveur GBF
==================================
Interface en ligne de commande : résolution d'un problème, balayage de λ,
reproduction des tableaux d'erreurs de référence, données des figures
et échantillons de la base.

Codes de sortie : 0 succès, 1 échec numérique ou d'entrée/sortie,
2 erreur de configuration.

Date: 2026-10-17
"""

import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from analysis import scan_lambda
from config import OutputConfig, TablePresets, FigurePresets, setup_logging
from data_formatters import (
    write_profile, format_error_block, format_table_block, table_csv_lines,
    write_lines, write_scan_trace, write_basis_samples, write_solution_figure
)
from problems import build_problem, example1
from run_config import RunConfig, parse_config
from simulation import solve_problem, solution_figure
from spline_basis import sample_basis
from solver_errors import GBFSolverError, ConfigurationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2


def print_banner():
    """Affiche la bannière du programme"""
    print("\n" + "=" * 70)
    print("🚀 SOLVEUR BURGERS-FISHER GÉNÉRALISÉ")
    print("   Collocation B-spline cubique étendue + Crank-Nicolson")
    print("=" * 70 + "\n")


def print_configuration(config: RunConfig):
    print("Configuration:")
    print(f"  Problème: {config.problem}")
    print(f"  α={config.alpha}, μ={config.mu}, η={config.eta}, q={config.q}")
    print(f"  N={config.n_cells}, Δt={config.dt:g}, t_end={config.t_end:g}, λ={config.lam:g}")
    if config.scan is not None:
        lo, hi, step = config.scan
        print(f"  Balayage de λ: [{lo:g}, {hi:g}] pas {step:g}")
    print(f"  Sortie: {config.output_path}")
    print()


def run_solve(config: RunConfig) -> int:
    """Une résolution (et éventuellement un balayage) pour un problème."""
    print_configuration(config)
    problem = build_problem(config.problem, config.alpha, config.mu, config.eta, config.q)
    times = config.effective_report_times()

    report = solve_problem(problem, config.n_cells, config.dt, config.lam, config.t_end, times)
    out_dir = Path(config.output_path)
    write_profile(report, out_dir, config)

    if not report.has_exact:
        print(f"✅ {len(report.snapshots)} profil(s) écrit(s) dans {out_dir}")
        return EXIT_OK

    best_lambda, best_report = None, None
    if config.scan is not None:
        lo, hi, step = config.scan
        result = scan_lambda(problem, config.n_cells, config.dt, config.t_end, lo, hi, step)
        write_scan_trace(result.trace, out_dir / OutputConfig.SCAN_FILE)
        best_lambda = result.best_lambda
        best_report = solve_problem(problem, config.n_cells, config.dt, best_lambda, config.t_end, times)
        if result.failures:
            print(f"⚠️  {result.failures} exécution(s) du balayage en échec")

    print(format_error_block(report, config.lam, best_lambda, best_report))
    print()
    return EXIT_OK


def run_table(config: RunConfig) -> int:
    """Reproduit un tableau de référence (colonne au λ configuré, balayage optionnel)."""
    preset = TablePresets.get(config.table)
    times = preset['times']
    t_end = times[-1]
    row_results = []

    for row_set in preset['row_sets']:
        problem = example1(row_set['alpha'], row_set['eta'], row_set['q'])
        report = solve_problem(problem, preset['n_cells'], preset['dt'], config.lam, t_end, times)
        result: Dict[str, Any] = {'errors': [linf for _, linf in report.errors]}

        if config.scan is not None:
            lo, hi, step = config.scan
            scan = scan_lambda(problem, preset['n_cells'], preset['dt'], t_end, lo, hi, step)
            best = solve_problem(problem, preset['n_cells'], preset['dt'], scan.best_lambda, t_end, times)
            result['best_lambda'] = scan.best_lambda
            result['best_errors'] = [linf for _, linf in best.errors]

        row_results.append(result)
        logger.info(f"Tableau {config.table}, q={row_set['q']}: L∞(t={t_end:g}) = {result['errors'][-1]:.5e}")

    print(format_table_block(preset, row_results, config.lam))
    lines = table_csv_lines(preset, row_results, config.lam)
    print("\n".join(lines))

    write_lines(lines, Path(config.output_path) / OutputConfig.TABLE_FILE.format(table=config.table))
    return EXIT_OK


def run_basis_figure(config: RunConfig) -> int:
    frame = sample_basis(FigurePresets.BASIS_LAMBDAS[config.basis_figure])
    target = write_basis_samples(frame, config.output_path, config.basis_figure)
    print(f"✅ Échantillons de la base écrits: {target}")
    return EXIT_OK


def run_figure(config: RunConfig) -> int:
    """Profils d'une figure des exemples 2 et 3 (exemple 2 : t = 1.5 ; exemple 3 : N = 40)."""
    frame = solution_figure(config.figure, config.lam)
    target = write_solution_figure(frame, config.output_path, config.figure)
    print(f"✅ Figure {config.figure}: {len(frame.columns) - 1} profil(s) écrit(s) dans {target}")
    return EXIT_OK


def run(config: RunConfig) -> int:
    """
    Exécute la configuration et retourne le code de sortie

    Args:
        config: Configuration validée

    Returns:
        0 succès, 1 échec numérique ou d'E/S, 2 erreur de configuration
    """
    try:
        if config.mode == 'table':
            return run_table(config)

        status = EXIT_OK
        if config.basis_figure is not None:
            status = run_basis_figure(config)
        if config.mode == 'figure':
            status = run_figure(config)
        if config.mode == 'solve':
            status = run_solve(config)
        return status

    except ConfigurationError as e:
        logger.error(f"Erreur de configuration: {e}")
        print(f"❌ Erreur de configuration: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (GBFSolverError, OSError) as e:
        logger.error(f"Échec de l'exécution: {e}")
        print(f"❌ Échec: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILURE


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Point d'entrée principal"""
    setup_logging()
    try:
        config = parse_config(argv)
    except ConfigurationError as e:
        print(f"❌ Erreur de configuration: {e}", file=sys.stderr)
        return EXIT_CONFIG

    print_banner()
    return run(config)


if __name__ == '__main__':
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n\n❌ Interruption par l'utilisateur")
        sys.exit(EXIT_FAILURE)
