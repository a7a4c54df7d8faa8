"""
Rapport de Résolution
=====================
Instantanés (t, valeurs nodales, coefficients), erreurs L∞ par temps de
rapport et métadonnées complètes d'une exécution.

Date: 2026-10-17
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class Snapshot:
    """Instantané du champ à un temps de rapport"""
    t: float
    knot_values: np.ndarray = field(repr=False)
    coefficients: np.ndarray = field(repr=False)
    exact_values: Optional[np.ndarray] = field(default=None, repr=False)


@dataclass
class SolveReport:
    """Résultat d'une intégration en temps"""
    snapshots: List[Snapshot]
    errors: Optional[List[Tuple[float, float]]]
    meta: Dict[str, Any]
    knots: np.ndarray = field(default=None, repr=False)

    @property
    def has_exact(self) -> bool:
        return self.errors is not None

    def final_error(self) -> Optional[float]:
        """L∞ au dernier temps de rapport (None sans solution exacte)."""
        if not self.errors:
            return None
        return self.errors[-1][1]

    def error_at(self, t: float, rtol: float = 1e-9) -> Optional[float]:
        """L∞ au temps de rapport t."""
        if self.errors is None:
            return None
        for time, linf in self.errors:
            if abs(time - t) <= rtol * max(abs(t), 1.0):
                return linf
        raise KeyError(f"Aucun temps de rapport t={t}")
