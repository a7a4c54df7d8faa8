"""
Solveur Tridiagonal
===================
Algorithme de Thomas (sans pivotage, avec garde de pivot) pour les systèmes
de chaque pas de temps et de l'ajustement initial, plus un oracle dense avec
pivotage partiel pour la vérification.

Date: 2026-10-17
"""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np
import scipy.linalg

from config import Tolerances
from solver_errors import InvalidInputError, SingularSystemError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TridiagonalSystem:
    """Diagonales inférieure/principale/supérieure et second membre"""
    lower: np.ndarray = field(repr=False)
    main: np.ndarray = field(repr=False)
    upper: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)

    def __post_init__(self):
        arrays = {}
        for name in ('lower', 'main', 'upper', 'rhs'):
            values = np.atleast_1d(np.asarray(getattr(self, name), dtype=float))
            if values.ndim != 1:
                raise InvalidInputError(f"{name} doit être un vecteur")
            if not np.all(np.isfinite(values)):
                raise InvalidInputError(f"Valeurs non finies dans {name}")
            arrays[name] = values

        m = arrays['main'].size
        if m < 1:
            raise InvalidInputError("Système vide")
        if arrays['rhs'].size != m:
            raise InvalidInputError(f"rhs de taille {arrays['rhs'].size}, attendu {m}")
        for name in ('lower', 'upper'):
            if arrays[name].size != m - 1:
                raise InvalidInputError(f"{name} de taille {arrays[name].size}, attendu {m - 1}")

        for name, values in arrays.items():
            object.__setattr__(self, name, values)

    @property
    def size(self) -> int:
        return self.main.size

    def to_dense(self) -> np.ndarray:
        """Matrice pleine m×m."""
        matrix = np.diag(self.main)
        if self.size > 1:
            matrix += np.diag(self.lower, -1) + np.diag(self.upper, 1)
        return matrix

    def residual_norm(self, x: np.ndarray) -> float:
        """‖T·x - rhs‖∞."""
        return float(np.max(np.abs(self.to_dense() @ np.asarray(x, dtype=float) - self.rhs)))


def thomas_sweep(lower: Sequence[float], main: Sequence[float], upper: Sequence[float],
                 rhs: Sequence[float]) -> List[float]:
    """
    Balayage de Thomas sur des diagonales déjà validées (listes de flottants)

    Chemin rapide de l'intégrateur : ni copie ni contrôle de finitude,
    seulement la garde de pivot.

    Raises:
        SingularSystemError: pivot |p| < 1e-14·max|ligne| ; porte l'indice de ligne
    """
    m = len(main)
    rtol = Tolerances.PIVOT_RTOL

    gamma = [0.0] * m
    rho = [0.0] * m

    pivot = main[0]
    row_max = max(abs(main[0]), abs(upper[0]) if m > 1 else 0.0)
    if pivot == 0.0 or abs(pivot) < rtol * row_max:
        raise SingularSystemError(f"Pivot quasi nul à la ligne 0: {pivot:.3e}", row=0)
    if m > 1:
        gamma[0] = upper[0] / pivot
    rho[0] = rhs[0] / pivot

    for i in range(1, m):
        pivot = main[i] - lower[i - 1] * gamma[i - 1]
        row_max = max(abs(lower[i - 1]), abs(main[i]), abs(upper[i]) if i < m - 1 else 0.0)
        if pivot == 0.0 or abs(pivot) < rtol * row_max:
            raise SingularSystemError(f"Pivot quasi nul à la ligne {i}: {pivot:.3e}", row=i)
        if i < m - 1:
            gamma[i] = upper[i] / pivot
        rho[i] = (rhs[i] - lower[i - 1] * rho[i - 1]) / pivot

    x = [0.0] * m
    x[m - 1] = rho[m - 1]
    for i in range(m - 2, -1, -1):
        x[i] = rho[i] - gamma[i] * x[i + 1]
    return x


def solve_thomas(system: TridiagonalSystem) -> np.ndarray:
    """
    Résout T·x = rhs par élimination avant / substitution arrière

    Args:
        system: Système tridiagonal

    Returns:
        Solution x (longueur m)

    Raises:
        SingularSystemError: pivot |p| < 1e-14·max|ligne| ; porte l'indice de ligne
    """
    return np.array(thomas_sweep(system.lower.tolist(), system.main.tolist(),
                                 system.upper.tolist(), system.rhs.tolist()))


def solve_dense_oracle(system: TridiagonalSystem) -> np.ndarray:
    """Même système par élimination de Gauss pleine avec pivotage partiel (LAPACK)."""
    try:
        return scipy.linalg.solve(system.to_dense(), system.rhs)
    except scipy.linalg.LinAlgError as e:
        raise SingularSystemError(f"Matrice singulière (oracle dense): {e}") from e
