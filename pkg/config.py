import logging
import os
from typing import Dict, Any


# ========== SOLVER DEFAULTS ==========
class SolverDefaults:
    """Valeurs par défaut du solveur (appliquées par parse_config)."""

    LAMBDA = 0.0
    N_CELLS = 16
    DT = 1e-4
    MU = 1.0

    # Domaine des trois exemples
    DOMAIN = (0.0, 1.0)


# ========== TOLERANCES ==========
class Tolerances:
    """Seuils numériques partagés."""

    # Garde de pivot relative de l'algorithme de Thomas
    PIVOT_RTOL = 1e-14

    # Les temps de rapport doivent tomber sur la grille n·Δt
    TIME_GRID_RTOL = 1e-9

    # Ligne de bord sans coefficient après élimination du fantôme
    DEGENERATE_ROW_RTOL = 1e-12

    # Abscisses ramenées sur le noeud le plus proche (relatif à h)
    KNOT_SNAP_RTOL = 1e-12

    # Pas relatif (h/100) de la dérivée unilatérale de u0
    ONE_SIDED_STEP_FRACTION = 0.01


# ========== SCAN CONFIGURATION ==========
class ScanConfig:
    """Configuration du balayage du paramètre λ."""

    MAX_WORKERS = int(os.getenv("GBF_SCAN_WORKERS", "4"))

    # Point de grille ramené à 0 s'il en est à moins de ZERO_SNAP·pas
    ZERO_SNAP = 1e-9


# ========== OUTPUT CONFIGURATION ==========
class OutputConfig:
    """Configuration des fichiers de sortie."""

    DEFAULT_OUTPUT_DIR = "results"
    FLOAT_FORMAT = "%.17g"
    TIME_LABEL_FORMAT = "%.12g"
    PROFILE_PATTERN = "profile_t{t}.csv"
    META_FILE = "meta.txt"
    TABLE_FILE = "table_{table}.csv"
    BASIS_PATTERN = "basis_figure{figure}.csv"
    FIGURE_PATTERN = "figure{figure}.csv"
    SCAN_FILE = "scan_trace.csv"


# ========== LOGGING CONFIGURATION ==========
class LoggingConfig:
    """Configuration des logs."""

    LOG_LEVEL = os.getenv("GBF_LOG_LEVEL", "INFO")
    LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


# ========== REFERENCE TABLES ==========
class TablePresets:
    """Jeux de paramètres des tableaux d'erreurs de référence.

    Les colonnes de référence (λ = 0, λ optimisé, méthodes de comparaison) ne
    servent que de constantes d'affichage.
    """

    TABLE_2 = {
        'title': "Exemple 1 - alpha = 0.1, eta = -0.0025, dt = 1e-4, N = 16",
        'dt': 1e-4,
        'n_cells': 16,
        'times': [0.1, 0.2, 0.3, 0.4, 0.5],
        'comparison_labels': ['bf'],
        'row_sets': [
            {'alpha': 0.1, 'eta': -0.0025, 'q': 1,
             'lambda_zero': [1.08646e-12, 1.46944e-12, 1.61926e-12, 1.67277e-12, 1.67277e-12],
             'optimized_lambda': -0.000003,
             'optimized': [1.02251e-13, 1.24456e-13, 1.24456e-13, 1.24456e-13, 1.24456e-13],
             'comparisons': {'bf': [1.32396e-11, 1.78026e-11, 1.94258e-11, 2.00083e-11, 2.02158e-11]}},
            {'alpha': 0.1, 'eta': -0.0025, 'q': 2,
             'lambda_zero': [2.17542e-11, 3.02457e-11, 3.33861e-11, 3.45414e-11, 3.49593e-11],
             'optimized_lambda': -0.000003,
             'optimized': [1.34003e-13, 1.47881e-13, 1.47881e-13, 1.47104e-13, 1.43551e-13],
             'comparisons': {'bf': [2.84700e-10, 3.87950e-10, 4.24646e-10, 4.37589e-10, 4.02050e-10]}},
            {'alpha': 0.1, 'eta': -0.0025, 'q': 4,
             'lambda_zero': [3.12324e-11, 4.34227e-11, 4.79300e-11, 4.95853e-11, 5.01746e-11],
             'optimized_lambda': -0.000003,
             'optimized': [2.65165e-12, 3.67783e-12, 4.05153e-12, 4.18043e-12, 4.21829e-12],
             'comparisons': {'bf': [3.99168e-10, 5.43802e-10, 5.95169e-10, 6.13233e-10, 6.19407e-10]}},
        ],
    }

    # N n'est pas fixé pour ce tableau : N = 16 par hypothèse
    TABLE_3 = {
        'title': "Exemple 1 - alpha = 1, eta = 1, dt = 1e-4, N = 16 (supposé)",
        'dt': 1e-4,
        'n_cells': 16,
        'times': [0.2, 0.4, 0.6, 0.8, 1.0],
        'comparison_labels': ['bf'],
        'row_sets': [
            {'alpha': 1.0, 'eta': 1.0, 'q': 1,
             'lambda_zero': [5.58038e-8, 8.54479e-8, 2.04362e-7, 2.80869e-7, 2.99588e-7],
             'optimized_lambda': -0.000319,
             'optimized': [1.94765e-10, 1.54361e-9, 1.37196e-8, 4.72669e-8, 1.02753e-7],
             'comparisons': {'bf': [5.55746e-7, 9.05507e-7, 2.18808e-6, 2.93314e-7, 3.01455e-6]}},
            {'alpha': 1.0, 'eta': 1.0, 'q': 2,
             'lambda_zero': [2.82618e-7, 4.62302e-7, 4.29008e-7, 2.56283e-7, 8.03168e-8],
             'optimized_lambda': -0.000293,
             'optimized': [7.64068e-9, 2.75394e-8, 7.20780e-8, 2.07798e-7, 3.03531e-7],
             'comparisons': {'bf': [2.56108e-6, 4.24308e-6, 3.56848e-6, 1.46518e-6, 5.54230e-6]}},
            {'alpha': 1.0, 'eta': 1.0, 'q': 4,
             'lambda_zero': [3.98349e-7, 2.64952e-7, 1.73948e-8, 8.61362e-8, 6.63329e-7],
             'optimized_lambda': 0.000193,
             'optimized': [6.38513e-7, 5.11063e-7, 1.59753e-7, 3.38624e-9, 2.41389e-8],
             'comparisons': {'bf': [1.76161e-6, 4.17351e-7, 2.42401e-6, 2.35757e-6, 1.44350e-6]}},
        ],
    }

    # Valeurs d'alpha des lignes (la légende de référence dit 0.001 et 0.0001)
    TABLE_4 = {
        'title': "Exemple 1 - t = 0.5, q = 1, dt = 1e-4, N = 8",
        'dt': 1e-4,
        'n_cells': 8,
        'times': [0.5],
        'comparison_labels': ['gold', 'ZZ', 'BF1'],
        'row_sets': [
            {'alpha': 0.01, 'eta': 1.0, 'q': 1,
             'lambda_zero': [2.43664e-11], 'optimized_lambda': 0.00034, 'optimized': [2.95541e-13],
             'comparisons': {'gold': [4.6763e-12], 'ZZ': [2.8999e-13], 'BF1': [2.4264e-12]}},
            {'alpha': 0.01, 'eta': 10.0, 'q': 1,
             'lambda_zero': [6.89380e-10], 'optimized_lambda': 0.07066, 'optimized': [1.18782e-12],
             'comparisons': {'gold': [6.2529e-12], 'ZZ': [3.3184e-13], 'BF1': [1.2833e-13]}},
            {'alpha': 0.01, 'eta': 100.0, 'q': 1,
             'lambda_zero': [9.32587e-15], 'optimized_lambda': -0.56755, 'optimized': [4.44089e-16],
             'comparisons': {'gold': [8.0269e-12], 'ZZ': [2.4225e-13], 'BF1': [1.2500e-12]}},
            {'alpha': 0.001, 'eta': 1.0, 'q': 1,
             'lambda_zero': [2.43607e-11], 'optimized_lambda': 0.03311, 'optimized': [4.138911e-13],
             'comparisons': {'gold': [4.5374e-12], 'ZZ': [2.8821e-13], 'BF1': [2.4251e-12]}},
            {'alpha': 0.001, 'eta': 10.0, 'q': 1,
             'lambda_zero': [6.87854e-10], 'optimized_lambda': None, 'optimized': [None],
             'comparisons': {'gold': [6.0540e-12], 'ZZ': [3.3295e-13], 'BF1': [1.2832e-13]}},
            {'alpha': 0.001, 'eta': 100.0, 'q': 1,
             'lambda_zero': [9.10383e-15], 'optimized_lambda': -0.85953, 'optimized': [8.88178e-16],
             'comparisons': {'gold': [8.1424e-13], 'ZZ': [2.4480e-13], 'BF1': [1.2500e-12]}},
        ],
    }

    @classmethod
    def get(cls, table: int) -> Dict[str, Any]:
        """Retourne le preset d'un tableau (2, 3 ou 4)."""
        presets = {2: cls.TABLE_2, 3: cls.TABLE_3, 4: cls.TABLE_4}
        if table not in presets:
            raise KeyError(f"Tableau inconnu: {table}")
        return presets[table]


# ========== REFERENCE FIGURES ==========
class FigurePresets:
    """Paramètres des figures de référence (données seulement, pas de rendu)."""

    # Formes de la fonction de base
    BASIS_LAMBDAS = {
        1: [-1.0, -0.5, 0.0, 0.5, 1.0],
        2: [-10.0, -5.0, 0.0, 5.0, 10.0],
    }
    BASIS_POINTS = 401

    # Exemple 2 : N = 80, dt = 1e-3, t = 1.5
    EXAMPLE2_RUN = {'n_cells': 80, 'dt': 1e-3, 't_end': 1.5}
    EXAMPLE2_SETS = {
        4: {'alpha': 0.0, 'eta': 1.0, 'mu': 0.1},
        5: {'alpha': 1.0, 'eta': 0.02, 'mu': 0.02},
        6: {'alpha': 1.0, 'eta': 0.02, 'mu': 0.002},
        7: {'alpha': 1.0, 'eta': 0.02, 'mu': 0.0002},
    }

    # Exemple 3 : dt = 1e-3 ; N n'est pas fixé, N = 40 par hypothèse
    EXAMPLE3_RUN = {'n_cells': 40, 'dt': 1e-3}
    EXAMPLE3_MUS = [2.0 ** -2, 2.0 ** -4, 2.0 ** -6, 2.0 ** -8]
    EXAMPLE3_TIMES = [0.1, 0.3, 0.6, 0.9]
    # Profils à μ fixé pour plusieurs temps
    EXAMPLE3_BY_MU = {8: 2.0 ** -2, 9: 2.0 ** -6}
    # Profils à t fixé pour les quatre μ
    EXAMPLE3_BY_TIME = {10: 0.5, 11: 0.9}

    SOLUTION_FIGURES = sorted([*EXAMPLE2_SETS, *EXAMPLE3_BY_MU, *EXAMPLE3_BY_TIME])


# ========== LOGGING SETUP ==========
def setup_logging(level: str = None):
    """Configure le logging racine (appelé par la CLI uniquement)."""
    logging.basicConfig(
        level=getattr(logging, (level or LoggingConfig.LOG_LEVEL).upper(), logging.INFO),
        format=LoggingConfig.LOG_FORMAT
    )
