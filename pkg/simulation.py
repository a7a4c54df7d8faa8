"""
Simulation
==========
Une résolution complète d'un problème : maillage, ajustement initial et
intégration de Crank-Nicolson jusqu'à t_end ; profils des figures des
exemples sans solution exacte.

Date: 2026-10-17
"""

import logging
from typing import Iterable, Optional

import pandas as pd

from cn_stepper import CrankNicolsonStepper
from config import FigurePresets
from initial_fit import fit_initial
from mesh_field import UniformMesh
from problems import ProblemSpec, example2, example3
from solve_report import SolveReport
from solver_errors import InvalidInputError

logger = logging.getLogger(__name__)


def solve_problem(problem: ProblemSpec, n_cells: int, dt: float, lam: float, t_end: float,
                  report_times: Optional[Iterable[float]] = None) -> SolveReport:
    """
    Résout un problème et retourne le rapport avec ses métadonnées

    Args:
        problem: Problème à résoudre
        n_cells: Nombre de cellules N
        dt: Pas de temps
        lam: Paramètre de forme λ
        t_end: Temps final
        report_times: Temps de rapport (défaut: [t_end])

    Returns:
        SolveReport
    """
    mesh = UniformMesh(problem.domain[0], problem.domain[1], n_cells)
    params = problem.step_params(dt)
    stepper = CrankNicolsonStepper(mesh, lam, params)

    field = fit_initial(mesh, lam, problem.initial)
    meta = {
        'problem': problem.problem_id,
        'alpha': problem.alpha,
        'mu': problem.mu,
        'eta': problem.eta,
        'q': problem.q,
        'n_cells': n_cells,
        'dt': dt,
        'lambda': lam,
        't_end': t_end,
        'assumptions': list(problem.assumptions),
    }
    for assumption in problem.assumptions:
        logger.debug(f"Hypothèse ({problem.problem_id}): {assumption}")

    return stepper.integrate(field, problem.bc, t_end, report_times,
                             exact=problem.exact, meta=meta)


def solution_figure(figure: int, lam: float = 0.0) -> pd.DataFrame:
    """
    Profils nodaux d'une figure de référence des exemples 2 et 3

    Figures 4-7 : exemple 2 à t = 1.5 pour chaque jeu (α, η, μ).
    Figures 8-9 : exemple 3 à μ fixé, aux temps 0.1, 0.3, 0.6, 0.9.
    Figures 10-11 : exemple 3 à t fixé, pour μ = 2^-2, 2^-4, 2^-6, 2^-8.

    Args:
        figure: Numéro de figure (4 à 11)
        lam: Paramètre de forme λ

    Returns:
        DataFrame : colonne x puis une colonne u_t<t> ou u_mu<μ> par courbe
    """
    if figure in FigurePresets.EXAMPLE2_SETS:
        run = FigurePresets.EXAMPLE2_RUN
        problem = example2(**FigurePresets.EXAMPLE2_SETS[figure])
        report = solve_problem(problem, run['n_cells'], run['dt'], lam, run['t_end'])
        columns = {f"u_t{s.t:g}": s.knot_values for s in report.snapshots}

    elif figure in FigurePresets.EXAMPLE3_BY_MU:
        run = FigurePresets.EXAMPLE3_RUN
        times = FigurePresets.EXAMPLE3_TIMES
        problem = example3(FigurePresets.EXAMPLE3_BY_MU[figure])
        report = solve_problem(problem, run['n_cells'], run['dt'], lam, times[-1], times)
        columns = {f"u_t{s.t:g}": s.knot_values for s in report.snapshots}

    elif figure in FigurePresets.EXAMPLE3_BY_TIME:
        run = FigurePresets.EXAMPLE3_RUN
        t = FigurePresets.EXAMPLE3_BY_TIME[figure]
        columns = {}
        for mu in FigurePresets.EXAMPLE3_MUS:
            report = solve_problem(example3(mu), run['n_cells'], run['dt'], lam, t)
            columns[f"u_mu{mu:g}"] = report.snapshots[-1].knot_values

    else:
        raise InvalidInputError(f"Figure inconnue: {figure} (attendu: {FigurePresets.SOLUTION_FIGURES})")

    logger.info(f"Figure {figure}: {len(columns)} profil(s), N={len(report.knots) - 1}")
    return pd.DataFrame({'x': report.knots, **columns})
