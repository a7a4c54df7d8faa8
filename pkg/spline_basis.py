"""
Base B-spline Cubique Étendue
=============================
Fonction de mélange E_i(x) à paramètre de forme λ, ses deux premières
dérivées et les poids nodaux utilisés par la collocation.

La fonction est quartique par morceaux sur quatre cellules [x_{i-2}, x_{i+2}]
et se réduit à la B-spline cubique uniforme pour λ = 0.

Convention de signe de la dérivée : E_i'(x_{i-1}) = +1/(2h),
E_i'(x_{i+1}) = -1/(2h), cohérente avec U'_i = -(δ_{i-1} - δ_{i+1})/(2h).

Date: 2026-10-17
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd

from config import Tolerances, FigurePresets
from solver_errors import InvalidInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NodalWeights:
    """Poids nodaux fermés de la collocation"""
    a1: float  # E_i(x_{i±1})
    a2: float  # E_i(x_i)
    b1: float  # -1/(2h)
    g1: float  # E_i''(x_{i±1})
    g2: float  # E_i''(x_i)


@dataclass(frozen=True)
class ExtendedCubicBasis:
    """Base B-spline cubique étendue sur un maillage uniforme de pas h."""
    lam: float
    h: float

    def __post_init__(self):
        if not math.isfinite(self.lam):
            raise InvalidInputError(f"λ doit être fini: {self.lam}")
        if not math.isfinite(self.h) or self.h <= 0.0:
            raise InvalidInputError(f"Le pas h doit être > 0 et fini: {self.h}")

    # ------------------------------------------------------------------
    # Localisation
    # ------------------------------------------------------------------
    def _locate(self, center_index: int, x: float, knot0: float):
        """Retourne (branche, ξ) avec ξ ∈ [0, 1] dans la cellule, ou None hors support."""
        if not math.isfinite(x):
            raise InvalidInputError(f"Abscisse non finie: {x}")
        if not math.isfinite(knot0):
            raise InvalidInputError(f"Origine des noeuds non finie: {knot0}")

        # Position en pas de maillage depuis x_{i-2}
        r = (x - knot0) / self.h - (center_index - 2)
        nearest = round(r)
        if abs(r - nearest) < Tolerances.KNOT_SNAP_RTOL:
            r = float(nearest)

        if r < 0.0 or r > 4.0:
            return None
        branch = min(int(math.floor(r)), 3)
        return branch, r - branch

    # ------------------------------------------------------------------
    # Évaluation
    # ------------------------------------------------------------------
    def eval(self, center_index: int, x: float, knot0: float) -> float:
        """E_i(x) ; 0 exactement hors de [x_{i-2}, x_{i+2}]."""
        located = self._locate(center_index, x, knot0)
        if located is None:
            return 0.0
        branch, xi = located
        lam = self.lam

        if branch == 0:
            return (4.0 * (1.0 - lam) * xi ** 3 + 3.0 * lam * xi ** 4) / 24.0
        if branch == 1:
            return ((4.0 - lam) + 12.0 * xi + 6.0 * (2.0 + lam) * xi ** 2
                    - 12.0 * xi ** 3 - 3.0 * lam * xi ** 4) / 24.0

        # Branches droites exprimées en s = (x - x_{i+1})/h ou (x - x_{i+2})/h
        s = xi - 1.0
        if branch == 2:
            return ((4.0 - lam) - 12.0 * s + 6.0 * (2.0 + lam) * s ** 2
                    + 12.0 * s ** 3 - 3.0 * lam * s ** 4) / 24.0
        return (4.0 * (lam - 1.0) * s ** 3 + 3.0 * lam * s ** 4) / 24.0

    def eval_d1(self, center_index: int, x: float, knot0: float) -> float:
        """dE_i/dx."""
        located = self._locate(center_index, x, knot0)
        if located is None:
            return 0.0
        branch, xi = located
        lam = self.lam

        if branch == 0:
            value = 12.0 * (1.0 - lam) * xi ** 2 + 12.0 * lam * xi ** 3
        elif branch == 1:
            value = (12.0 + 12.0 * (2.0 + lam) * xi - 36.0 * xi ** 2
                     - 12.0 * lam * xi ** 3)
        elif branch == 2:
            s = xi - 1.0
            value = (-12.0 + 12.0 * (2.0 + lam) * s + 36.0 * s ** 2
                     - 12.0 * lam * s ** 3)
        else:
            s = xi - 1.0
            value = 12.0 * (lam - 1.0) * s ** 2 + 12.0 * lam * s ** 3
        return value / (24.0 * self.h)

    def eval_d2(self, center_index: int, x: float, knot0: float) -> float:
        """d²E_i/dx²."""
        located = self._locate(center_index, x, knot0)
        if located is None:
            return 0.0
        branch, xi = located
        lam = self.lam

        if branch == 0:
            value = 24.0 * (1.0 - lam) * xi + 36.0 * lam * xi ** 2
        elif branch == 1:
            value = 12.0 * (2.0 + lam) - 72.0 * xi - 36.0 * lam * xi ** 2
        elif branch == 2:
            s = xi - 1.0
            value = 12.0 * (2.0 + lam) + 72.0 * s - 36.0 * lam * s ** 2
        else:
            s = xi - 1.0
            value = 24.0 * (lam - 1.0) * s + 36.0 * lam * s ** 2
        return value / (24.0 * self.h ** 2)

    # ------------------------------------------------------------------
    # Poids nodaux
    # ------------------------------------------------------------------
    def nodal_weights(self) -> NodalWeights:
        """Valeurs de E_i, E_i', E_i'' aux noeuds voisins de x_i."""
        lam, h = self.lam, self.h
        return NodalWeights(
            a1=(4.0 - lam) / 24.0,
            a2=(8.0 + lam) / 12.0,
            b1=-1.0 / (2.0 * h),
            g1=(2.0 + lam) / (2.0 * h ** 2),
            g2=-(4.0 + 2.0 * lam) / (2.0 * h ** 2),
        )


def sample_basis(lambdas: Sequence[float], n_points: int = FigurePresets.BASIS_POINTS,
                 a: float = 0.0, b: float = 1.0, n_cells: int = 4) -> pd.DataFrame:
    """
    Échantillonne la fonction de base centrale sur [a, b] pour plusieurs λ

    Args:
        lambdas: Valeurs du paramètre de forme
        n_points: Nombre d'abscisses
        a, b: Intervalle d'échantillonnage
        n_cells: Nombre de cellules (la base centrale couvre 4 cellules)

    Returns:
        DataFrame avec une colonne x et une colonne E_lambda=<λ> par valeur
    """
    if n_points < 2:
        raise InvalidInputError(f"Au moins 2 points requis: {n_points}")
    h = (b - a) / n_cells
    center = n_cells // 2
    xs = np.linspace(a, b, n_points)

    columns = {'x': xs}
    for lam in lambdas:
        basis = ExtendedCubicBasis(lam, h)
        columns[f"E_lambda={lam:g}"] = [basis.eval(center, float(x), a) for x in xs]

    logger.debug(f"Base échantillonnée: {len(lambdas)} valeurs de λ, {n_points} points")
    return pd.DataFrame(columns)
