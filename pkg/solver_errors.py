"""
Erreurs du Solveur GBF
======================
Hiérarchie d'exceptions partagée par tous les modules du solveur.

Date: 2026-10-17
"""

from typing import Optional


class GBFSolverError(Exception):
    """Erreur de base du solveur Burgers-Fisher."""


class InvalidInputError(GBFSolverError, ValueError):
    """Entrée invalide (valeur non finie, paramètre hors domaine, tailles incohérentes)."""


class DomainError(InvalidInputError):
    """Évaluation demandée hors de l'intervalle [a, b]."""


class KnotIndexError(GBFSolverError, IndexError):
    """Indice de noeud hors de 0..N."""


class SingularSystemError(GBFSolverError, ArithmeticError):
    """Système linéaire singulier (pivot quasi nul)."""

    def __init__(self, message: str, row: Optional[int] = None):
        super().__init__(message)
        self.row = row


class BoundaryEliminationError(GBFSolverError, ArithmeticError):
    """Élimination des coefficients fantômes impossible (a1 = 0, soit λ = 4)."""


class NumericOverflowError(GBFSolverError, ArithmeticError):
    """Coefficient non fini pendant l'assemblage ou la résolution."""

    def __init__(self, message: str, node: Optional[int] = None):
        super().__init__(message)
        self.node = node


class ConfigurationError(GBFSolverError, ValueError):
    """Erreur de configuration, avec la clé fautive et sa ligne si connue."""

    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        location = ""
        if key is not None:
            location = f" [clé '{key}'"
            location += f", ligne {line}]" if line is not None else "]"
        super().__init__(f"{message}{location}")
        self.key = key
        self.line = line


class ScanError(GBFSolverError):
    """Toutes les exécutions d'un balayage de λ ont échoué."""
