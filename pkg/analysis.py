"""
Analyse des Erreurs et Balayage de λ
====================================
Erreur L∞ aux noeuds, ordres de convergence observés et balayage du paramètre
de forme λ sur une grille inclusive (une résolution par valeur).

Date: 2026-10-17
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from config import ScanConfig
from solve_report import SolveReport, Snapshot
from solver_errors import GBFSolverError, InvalidInputError, ScanError

logger = logging.getLogger(__name__)

__all__ = [
    'linf_error', 'estimate_order', 'observed_temporal_order',
    'ScanPoint', 'ScanResult', 'lambda_grid', 'scan_lambda',
    'SolveReport', 'Snapshot',
]


def linf_error(numeric: Sequence[float], exact: Sequence[float]) -> float:
    """max_j |u_j - U_j|."""
    numeric = np.asarray(numeric, dtype=float)
    exact = np.asarray(exact, dtype=float)
    if numeric.shape != exact.shape:
        raise InvalidInputError(f"Tailles incompatibles: {numeric.shape} vs {exact.shape}")
    if numeric.size == 0:
        raise InvalidInputError("Vecteurs vides")
    return float(np.max(np.abs(exact - numeric)))


def _orders(pairs: Sequence[Tuple[float, float]], label: str) -> List[Optional[float]]:
    if len(pairs) < 2:
        raise InvalidInputError(f"Au moins deux valeurs de {label} requises: {len(pairs)}")

    orders = []
    for (step, error), (next_step, next_error) in zip(pairs, pairs[1:]):
        if not math.isclose(next_step, step / 2.0, rel_tol=1e-9):
            raise InvalidInputError(f"{label} non divisé par deux: {step} -> {next_step}")
        if error == 0.0 or next_error == 0.0:
            orders.append(None)
        else:
            orders.append(math.log2(error / next_error))
    return orders


def estimate_order(errors_by_h: Sequence[Tuple[float, float]]) -> List[Optional[float]]:
    """
    Ordre observé log2(E(h)/E(h/2)) pour chaque paire adjacente

    Args:
        errors_by_h: Liste (h, E(h)) avec h divisé par deux d'une entrée à l'autre

    Returns:
        Ordres (None lorsqu'une erreur est nulle)
    """
    return _orders(list(errors_by_h), 'h')


def observed_temporal_order(errors_by_dt: Sequence[Tuple[float, float]]) -> List[Optional[float]]:
    """Même estimation avec Δt divisé par deux."""
    return _orders(list(errors_by_dt), 'Δt')


class ScanPoint(NamedTuple):
    """Une exécution du balayage (linf None si échec)."""
    lam: float
    linf: Optional[float]
    error: Optional[str] = None


@dataclass
class ScanResult:
    """Meilleur λ et trace complète du balayage"""
    best_lambda: float
    best_error: float
    trace: List[ScanPoint] = field(default_factory=list)
    failures: int = 0

    @property
    def runs(self) -> int:
        return len(self.trace)


def lambda_grid(lambda_lo: float, lambda_hi: float, lambda_step: float) -> List[float]:
    """
    Grille inclusive λ_k = lo + k·pas, k = 0..K

    Les points sont calculés en décimal à partir de repr(lo) et repr(pas),
    puis arrondis une seule fois en flottant : -1e-5 + 7·1e-6 donne -3e-06.
    Un point à moins de ZERO_SNAP·pas de zéro est ramené exactement à 0.
    """
    for name, value in (('lo', lambda_lo), ('hi', lambda_hi), ('step', lambda_step)):
        if not math.isfinite(value):
            raise InvalidInputError(f"Borne de balayage non finie ({name}): {value}")
    if lambda_step <= 0.0:
        raise InvalidInputError(f"Pas de balayage doit être > 0: {lambda_step}")
    if lambda_hi < lambda_lo:
        raise InvalidInputError(f"Intervalle de balayage vide: [{lambda_lo}, {lambda_hi}]")

    count = int(math.floor((lambda_hi - lambda_lo) / lambda_step + 1e-9))
    lo, step = Decimal(repr(float(lambda_lo))), Decimal(repr(float(lambda_step)))
    grid = []
    for k in range(count + 1):
        lam = float(lo + k * step)
        if abs(lam) < ScanConfig.ZERO_SNAP * lambda_step:
            lam = 0.0
        grid.append(lam)
    return grid


def _best_point(points: Sequence[ScanPoint]) -> ScanPoint:
    # Minimum d'erreur ; égalité -> plus petit |λ| puis premier rencontré
    best = None
    for point in points:
        if best is None or point.linf < best.linf or (
                point.linf == best.linf and abs(point.lam) < abs(best.lam)):
            best = point
    return best


def scan_lambda(problem, n_cells: int, dt: float, t_end: float,
                lambda_lo: float, lambda_hi: float, lambda_step: float,
                max_workers: Optional[int] = None) -> ScanResult:
    """
    Balaye λ sur la grille inclusive et retient l'erreur L∞ minimale à t_end

    Args:
        problem: ProblemSpec avec solution exacte
        n_cells: Nombre de cellules N
        dt: Pas de temps
        t_end: Temps auquel l'erreur est comparée
        lambda_lo, lambda_hi, lambda_step: Grille de balayage
        max_workers: Nombre de fils (défaut: ScanConfig.MAX_WORKERS)

    Returns:
        ScanResult

    Raises:
        InvalidInputError: problème sans solution exacte ou grille invalide
        ScanError: toutes les exécutions ont échoué
    """
    # Import local : simulation dépend de cn_stepper qui dépend de ce module
    from simulation import solve_problem

    if problem.exact is None:
        raise InvalidInputError(
            f"Balayage impossible: le problème {problem.problem_id} n'a pas de solution exacte"
        )

    grid = lambda_grid(lambda_lo, lambda_hi, lambda_step)
    logger.info(
        f"Balayage de λ sur [{lambda_lo:g}, {lambda_hi:g}] pas {lambda_step:g}: {len(grid)} exécutions"
    )

    def run_one(lam: float) -> ScanPoint:
        try:
            report = solve_problem(problem, n_cells, dt, lam, t_end)
            return ScanPoint(lam, report.final_error())
        except GBFSolverError as e:
            logger.error(f"Échec de l'exécution λ={lam:g}: {e}")
            return ScanPoint(lam, None, f"{type(e).__name__}: {e}")

    workers = max_workers or ScanConfig.MAX_WORKERS
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        trace = list(executor.map(run_one, grid))

    succeeded = [point for point in trace if point.error is None]
    failures = len(trace) - len(succeeded)
    if not succeeded:
        raise ScanError(f"Les {len(trace)} exécutions du balayage ont échoué")

    best = _best_point(succeeded)
    logger.info(f"Meilleur λ = {best.lam:.6g} (L∞ = {best.linf:.5e}, {failures} échec(s))")
    return ScanResult(best_lambda=best.lam, best_error=best.linf, trace=trace, failures=failures)
