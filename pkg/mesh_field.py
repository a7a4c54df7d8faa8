"""
Maillage Uniforme et Champ Spline
=================================
Maillage de collocation a = x_0 < ... < x_N = b et champ de coefficients
δ_{-1}..δ_{N+1} avec évaluation de U, U', U'' aux noeuds et en tout point.

Les deux coefficients fantômes δ_{-1} et δ_{N+1} sont stockés explicitement
(décalage d'indice +1 dans le tableau).

Date: 2026-10-17
"""

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List

import numpy as np

from spline_basis import ExtendedCubicBasis, NodalWeights
from solver_errors import InvalidInputError, DomainError, KnotIndexError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UniformMesh:
    """Maillage uniforme de N cellules sur [a, b]"""
    a: float
    b: float
    n_cells: int

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidInputError(f"Bornes non finies: [{self.a}, {self.b}]")
        if self.a >= self.b:
            raise InvalidInputError(f"Intervalle invalide: a={self.a} >= b={self.b}")
        if int(self.n_cells) != self.n_cells or self.n_cells < 2:
            raise InvalidInputError(f"N doit être un entier >= 2: {self.n_cells}")

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n_cells

    def knot(self, i: int) -> float:
        """Coordonnée du noeud i (0 <= i <= N)."""
        if i < 0 or i > self.n_cells:
            raise KnotIndexError(f"Noeud {i} hors de 0..{self.n_cells}")
        return self.a + i * self.h

    @cached_property
    def knots(self) -> np.ndarray:
        xs = self.a + np.arange(self.n_cells + 1) * self.h
        xs.setflags(write=False)
        return xs


@dataclass(frozen=True, eq=False)
class SplineField:
    """Coefficients δ_{-1}..δ_{N+1} d'une spline cubique étendue."""
    mesh: UniformMesh
    lam: float
    delta: np.ndarray = field(repr=False)

    def __post_init__(self):
        coefficients = np.array(self.delta, dtype=float)
        expected = self.mesh.n_cells + 3
        if coefficients.shape != (expected,):
            raise InvalidInputError(
                f"Nombre de coefficients invalide: {coefficients.shape} (attendu: {expected})"
            )
        if not np.all(np.isfinite(coefficients)):
            raise InvalidInputError("Coefficients non finis dans le champ spline")
        coefficients.setflags(write=False)
        object.__setattr__(self, 'delta', coefficients)

    @cached_property
    def basis(self) -> ExtendedCubicBasis:
        return ExtendedCubicBasis(self.lam, self.mesh.h)

    @cached_property
    def weights(self) -> NodalWeights:
        return self.basis.nodal_weights()

    def with_delta(self, delta: np.ndarray) -> "SplineField":
        """Nouveau champ sur le même maillage et le même λ."""
        return SplineField(self.mesh, self.lam, delta)

    def _check_knot(self, i: int):
        if i < 0 or i > self.mesh.n_cells:
            raise KnotIndexError(f"Noeud {i} hors de 0..{self.mesh.n_cells}")

    # ------------------------------------------------------------------
    # Valeurs nodales
    # ------------------------------------------------------------------
    def value_at_knot(self, i: int) -> float:
        """U_i = a1·δ_{i-1} + a2·δ_i + a1·δ_{i+1}."""
        self._check_knot(i)
        w = self.weights
        d = self.delta
        return w.a1 * d[i] + w.a2 * d[i + 1] + w.a1 * d[i + 2]

    def deriv_at_knot(self, i: int) -> float:
        """U'_i = -(δ_{i-1} - δ_{i+1})/(2h)."""
        self._check_knot(i)
        d = self.delta
        return -(d[i] - d[i + 2]) / (2.0 * self.mesh.h)

    def second_deriv_at_knot(self, i: int) -> float:
        """U''_i = g1·(δ_{i-1} - 2δ_i + δ_{i+1})."""
        self._check_knot(i)
        d = self.delta
        return self.weights.g1 * (d[i] - 2.0 * d[i + 1] + d[i + 2])

    def knot_values(self) -> np.ndarray:
        w = self.weights
        d = self.delta
        return w.a1 * d[:-2] + w.a2 * d[1:-1] + w.a1 * d[2:]

    def knot_derivatives(self) -> np.ndarray:
        d = self.delta
        return -(d[:-2] - d[2:]) / (2.0 * self.mesh.h)

    def knot_second_derivatives(self) -> np.ndarray:
        d = self.delta
        return self.weights.g1 * (d[:-2] - 2.0 * d[1:-1] + d[2:])

    # ------------------------------------------------------------------
    # Évaluation en tout point
    # ------------------------------------------------------------------
    def eval_profile(self, xs: Iterable[float]) -> List[float]:
        """
        U(x) = Σ δ_i E_i(x) sur les (au plus) 4 fonctions de base non nulles

        Args:
            xs: Abscisses dans [a, b]

        Returns:
            Valeurs de U aux abscisses demandées
        """
        mesh = self.mesh
        h = mesh.h
        slack = 1e-12 * (mesh.b - mesh.a)
        values = []

        for x in xs:
            x = float(x)
            if not math.isfinite(x):
                raise InvalidInputError(f"Abscisse non finie: {x}")
            if x < mesh.a - slack or x > mesh.b + slack:
                raise DomainError(f"x={x} hors du domaine [{mesh.a}, {mesh.b}]")

            # Cellule [x_j, x_{j+1}] contenant x ; la dernière est fermée
            j = min(max(int(math.floor((x - mesh.a) / h)), 0), mesh.n_cells - 1)
            total = 0.0
            for i in range(j - 1, j + 3):
                total += self.delta[i + 1] * self.basis.eval(i, x, mesh.a)
            values.append(total)

        return values
