"""
Ajustement Initial
==================
Détermine δ⁰ à partir de la condition initiale : interpolation aux N+1 noeuds
et dérivée de u0 imposée aux deux extrémités.

Les deux équations de dérivée éliminent les fantômes :
    δ_{-1}  = δ_1     - 2h·u0'(a)
    δ_{N+1} = δ_{N-1} + 2h·u0'(b)

Date: 2026-10-17
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from config import Tolerances
from mesh_field import UniformMesh, SplineField
from spline_basis import ExtendedCubicBasis
from tridiag_solver import TridiagonalSystem, solve_thomas
from solver_errors import InvalidInputError

logger = logging.getLogger(__name__)

# Différences unilatérales d'ordre 4 : f'(x) ≈ Σ c_k f(x + k·s) / (12 s)
_ONE_SIDED_COEFFS = np.array([-25.0, 48.0, -36.0, 16.0, -3.0])


@dataclass(frozen=True)
class InitialData:
    """Profil initial u0 et sa dérivée (optionnelle) ; fonctions vectorisées"""
    u0: Callable[[np.ndarray], np.ndarray]
    du0: Optional[Callable[[np.ndarray], np.ndarray]] = None


def one_sided_derivative(f: Callable[[np.ndarray], np.ndarray], x: float,
                         step: float, direction: int = 1) -> float:
    """Dérivée de f en x par différence unilatérale d'ordre 4 (direction +1 ou -1)."""
    if direction not in (1, -1):
        raise InvalidInputError(f"Direction invalide: {direction}")
    points = x + direction * step * np.arange(5)
    values = np.asarray(f(points), dtype=float)
    return float(direction * np.dot(_ONE_SIDED_COEFFS, values) / (12.0 * step))


def _evaluate(f: Callable[[np.ndarray], np.ndarray], xs: np.ndarray) -> np.ndarray:
    values = np.broadcast_to(np.asarray(f(xs), dtype=float), xs.shape)
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("Condition initiale non finie sur [a, b]")
    return np.array(values)


def end_derivatives(mesh: UniformMesh, data: InitialData):
    """(u0'(a), u0'(b)), analytiques si fournies, sinon par différences finies."""
    if data.du0 is not None:
        ends = _evaluate(data.du0, np.array([mesh.a, mesh.b]))
        return float(ends[0]), float(ends[1])

    step = Tolerances.ONE_SIDED_STEP_FRACTION * mesh.h
    logger.debug(f"Dérivée de u0 absente : différences unilatérales, pas {step:.3e}")
    return (one_sided_derivative(data.u0, mesh.a, step, direction=1),
            one_sided_derivative(data.u0, mesh.b, step, direction=-1))


def fit_initial(mesh: UniformMesh, lam: float, data: InitialData) -> SplineField:
    """
    Calcule δ⁰ tel que U(x_i, 0) = u0(x_i) et U'(a) = u0'(a), U'(b) = u0'(b)

    Args:
        mesh: Maillage uniforme
        lam: Paramètre de forme λ
        data: Condition initiale

    Returns:
        Champ spline initial

    Raises:
        SingularSystemError: système d'ajustement singulier
    """
    weights = ExtendedCubicBasis(lam, mesh.h).nodal_weights()
    a1, a2 = weights.a1, weights.a2
    h = mesh.h
    n = mesh.n_cells

    values = _evaluate(data.u0, np.asarray(mesh.knots))
    du_left, du_right = end_derivatives(mesh, data)

    lower = np.full(n, a1)
    main = np.full(n + 1, a2)
    upper = np.full(n, a1)
    rhs = values.copy()

    # Lignes de bord après élimination des fantômes
    upper[0] = 2.0 * a1
    rhs[0] += 2.0 * h * a1 * du_left
    lower[-1] = 2.0 * a1
    rhs[-1] -= 2.0 * h * a1 * du_right

    interior = solve_thomas(TridiagonalSystem(lower, main, upper, rhs))

    delta = np.empty(n + 3)
    delta[1:-1] = interior
    delta[0] = interior[1] - 2.0 * h * du_left
    delta[-1] = interior[-2] + 2.0 * h * du_right

    logger.debug(f"Ajustement initial: N={n}, λ={lam:g}, max|u0|={np.max(np.abs(values)):.4g}")
    return SplineField(mesh, lam, delta)
