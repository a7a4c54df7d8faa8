"""
Configuration d'Exécution
=========================
Lecture de la configuration d'une exécution : fichier texte `clé = valeur`
(commentaires `#`) puis options de ligne de commande, qui ont priorité.
Les valeurs brutes sont validées et converties par un schéma marshmallow.

Date: 2026-10-17
"""

import argparse
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from marshmallow import Schema, fields, ValidationError, validates, validates_schema
from marshmallow.decorators import post_load
from marshmallow.validate import OneOf

from config import SolverDefaults, OutputConfig, FigurePresets
from problems import PROBLEM_IDS
from solver_errors import ConfigurationError

logger = logging.getLogger(__name__)

# Clés admises dans un fichier de configuration (mêmes noms que les options)
CONFIG_KEYS = (
    'problem', 'alpha', 'mu', 'eta', 'q', 'n', 'dt', 't_end', 'lambda',
    'report_times', 'out', 'scan', 'table', 'basis_figure', 'figure',
)


@dataclass
class RunConfig:
    """Configuration complète d'une exécution"""
    problem: Optional[str] = None
    alpha: Optional[float] = None
    mu: float = SolverDefaults.MU
    eta: Optional[float] = None
    q: Optional[int] = None
    n_cells: int = SolverDefaults.N_CELLS
    dt: float = SolverDefaults.DT
    t_end: Optional[float] = None
    lam: float = SolverDefaults.LAMBDA
    report_times: Optional[List[float]] = None
    output_path: str = OutputConfig.DEFAULT_OUTPUT_DIR
    scan: Optional[Tuple[float, float, float]] = None
    table: Optional[int] = None
    basis_figure: Optional[int] = None
    figure: Optional[int] = None
    assumptions: List[str] = field(default_factory=list)

    @property
    def mode(self) -> str:
        if self.table is not None:
            return 'table'
        if self.figure is not None:
            return 'figure'
        if self.basis_figure is not None and self.problem is None:
            return 'basis'
        return 'solve'

    def effective_report_times(self) -> List[float]:
        return list(self.report_times) if self.report_times else [self.t_end]


# ========== CHAMPS PERSONNALISÉS ==========

def _finite_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"valeur non finie: {text}")
    return value


class FloatListField(fields.Field):
    """Liste de réels séparés par des virgules ("0.1, 0.3, 0.6")."""

    def _deserialize(self, value, attr, data, **kwargs):
        if isinstance(value, (list, tuple)):
            items = list(value)
        else:
            items = [item for item in str(value).split(',') if item.strip()]
        try:
            return [_finite_float(str(item).strip()) for item in items]
        except ValueError as e:
            raise ValidationError(f"Liste de réels invalide: {value!r} ({e})") from e


class ScanRangeField(fields.Field):
    """Intervalle de balayage "lo:hi:pas"."""

    def _deserialize(self, value, attr, data, **kwargs):
        parts = str(value).split(':')
        if len(parts) != 3:
            raise ValidationError(f"Format attendu lo:hi:pas, reçu {value!r}")
        try:
            lo, hi, step = (_finite_float(part.strip()) for part in parts)
        except ValueError as e:
            raise ValidationError(f"Intervalle de balayage invalide: {value!r} ({e})") from e
        if step <= 0.0:
            raise ValidationError(f"Le pas de balayage doit être > 0: {step}")
        if hi < lo:
            raise ValidationError(f"Intervalle de balayage vide: [{lo}, {hi}]")
        return lo, hi, step


# ========== SCHÉMA DE VALIDATION ==========

class BaseSchema(Schema):
    """Schéma de base avec journalisation des erreurs."""

    def handle_error(self, error, data, **kwargs):
        logger.warning(f"Erreur de validation: {error.messages}")


class RunConfigSchema(BaseSchema):
    """Valide les valeurs brutes (texte) et construit un RunConfig."""

    problem = fields.Str(load_default=None, allow_none=True, validate=OneOf(PROBLEM_IDS))
    alpha = fields.Float(load_default=None, allow_none=True)
    mu = fields.Float(load_default=SolverDefaults.MU)
    eta = fields.Float(load_default=None, allow_none=True)
    q = fields.Integer(load_default=None, allow_none=True)
    n_cells = fields.Integer(data_key='n', load_default=SolverDefaults.N_CELLS)
    dt = fields.Float(load_default=SolverDefaults.DT)
    t_end = fields.Float(load_default=None, allow_none=True)
    lam = fields.Float(data_key='lambda', load_default=SolverDefaults.LAMBDA)
    report_times = FloatListField(load_default=None, allow_none=True)
    output_path = fields.Str(data_key='out', load_default=OutputConfig.DEFAULT_OUTPUT_DIR)
    scan = ScanRangeField(load_default=None, allow_none=True)
    table = fields.Integer(load_default=None, allow_none=True, validate=OneOf([2, 3, 4]))
    basis_figure = fields.Integer(load_default=None, allow_none=True, validate=OneOf([1, 2]))
    figure = fields.Integer(load_default=None, allow_none=True,
                            validate=OneOf(FigurePresets.SOLUTION_FIGURES))

    @validates('q')
    def validate_q(self, value, **kwargs):
        if value is not None and value < 1:
            raise ValidationError(f"q doit être un entier >= 1: {value}")

    @validates('n_cells')
    def validate_n_cells(self, value, **kwargs):
        if value < 2:
            raise ValidationError(f"N doit être >= 2: {value}")

    @validates('dt')
    def validate_dt(self, value, **kwargs):
        if value <= 0.0:
            raise ValidationError(f"Δt doit être > 0: {value}")

    @validates('t_end')
    def validate_t_end(self, value, **kwargs):
        if value is not None and value <= 0.0:
            raise ValidationError(f"t_end doit être > 0: {value}")

    @validates('output_path')
    def validate_output_path(self, value, **kwargs):
        if not value.strip():
            raise ValidationError("Répertoire de sortie vide")

    @validates_schema
    def validate_run(self, data, **kwargs):
        """Contraintes croisées selon le mode d'exécution."""
        if data.get('table') is not None or data.get('figure') is not None:
            return

        problem = data.get('problem')
        if problem is None:
            if data.get('basis_figure') is None:
                raise ValidationError("problem est requis (ou table, figure, basis_figure)", 'problem')
            return

        t_end = data.get('t_end')
        if t_end is None:
            raise ValidationError("t_end est requis pour une résolution", 't_end')

        if problem == 'example1':
            for name in ('alpha', 'eta', 'q'):
                if data.get(name) is None:
                    raise ValidationError(f"{name} est requis pour example1", name)
            if data['alpha'] == 0.0:
                raise ValidationError("example1 exige alpha ≠ 0", 'alpha')
        elif data.get('scan') is not None:
            raise ValidationError(f"Balayage impossible sans solution exacte ({problem})", 'scan')

        if problem == 'example2' and data.get('q') not in (None, 1):
            raise ValidationError("example2 impose q = 1", 'q')
        if problem == 'example3':
            for name, fixed in (('alpha', 1.0), ('eta', 0.0), ('q', 1)):
                if data.get(name) not in (None, fixed):
                    raise ValidationError(f"example3 impose {name} = {fixed:g}", name)

        times = data.get('report_times')
        if times:
            if times != sorted(times):
                raise ValidationError("Temps de rapport non triés", 'report_times')
            if times[0] < 0.0 or times[-1] > t_end:
                raise ValidationError(f"Temps de rapport hors de [0, {t_end:g}]", 'report_times')

    @post_load
    def make_config(self, data, **kwargs) -> RunConfig:
        config = RunConfig(**data)
        if config.problem == 'example1':
            config.assumptions.append("mu=1 imposé pour example1")
        return config


# ========== LECTURE ==========

def read_config_text(text: str) -> Tuple[Dict[str, str], Dict[str, int]]:
    """
    Analyse un fichier `clé = valeur`

    Returns:
        (valeurs brutes, numéro de ligne de chaque clé)
    """
    values, lines = {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigurationError(f"Ligne {lineno} sans '=': {raw.strip()!r}", line=lineno)

        key, value = (part.strip() for part in line.split('=', 1))
        key = key.replace('-', '_')
        if key not in CONFIG_KEYS:
            raise ConfigurationError(f"Clé inconnue: {key}", key=key, line=lineno)
        if key in values:
            raise ConfigurationError(f"Clé répétée: {key}", key=key, line=lineno)
        values[key] = value
        lines[key] = lineno
    return values, lines


class _ConfigArgumentParser(argparse.ArgumentParser):
    """argparse qui lève ConfigurationError au lieu de quitter."""

    def error(self, message):
        raise ConfigurationError(f"Argument invalide: {message}")


def build_parser() -> argparse.ArgumentParser:
    """Options de la CLI ; les valeurs restent des chaînes validées par le schéma."""
    parser = _ConfigArgumentParser(
        prog='run_solver.py',
        description='Solveur B-spline cubique étendue pour Burgers-Fisher généralisé',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        argument_default=argparse.SUPPRESS,
        epilog="""
Exemples d'utilisation:

  Onde progressive (example1):
    python run_solver.py --problem example1 --alpha 0.1 --eta -0.0025 --q 1 --t-end 0.5

  Balayage de λ (forme --scan=... pour une borne négative):
    python run_solver.py --problem example1 --alpha 0.1 --eta -0.0025 --q 1 --t-end 0.1 --scan=-1e-5:1e-5:1e-6

  Reproduction d'un tableau:
    python run_solver.py --table 2

  Données d'une figure (exemple 3, μ = 2^-2):
    python run_solver.py --figure 8

  Avec fichier de configuration:
    python run_solver.py --config run.conf --dt 0.0001
        """
    )

    parser.add_argument('--problem', help=f"Problème ({', '.join(PROBLEM_IDS)})")
    parser.add_argument('--alpha', help='Coefficient d\'advection α')
    parser.add_argument('--mu', help='Coefficient de diffusion μ (défaut: 1)')
    parser.add_argument('--eta', help='Coefficient de réaction η')
    parser.add_argument('--q', help='Exposant entier q >= 1')
    parser.add_argument('--n', help='Nombre de cellules N (défaut: 16)')
    parser.add_argument('--dt', help='Pas de temps Δt (défaut: 1e-4)')
    parser.add_argument('--t-end', dest='t_end', help='Temps final')
    parser.add_argument('--lambda', dest='lambda', help='Paramètre de forme λ (défaut: 0)')
    parser.add_argument('--report-times', dest='report_times', help='Temps de rapport, liste séparée par des virgules')
    parser.add_argument('--scan', help='Balayage de λ lo:hi:pas')
    parser.add_argument('--table', help='Reproduire un tableau de référence (2, 3 ou 4)')
    parser.add_argument('--out', help='Répertoire de sortie (défaut: results)')
    parser.add_argument('--basis-figure', dest='basis_figure', help='Échantillons de la fonction de base (1 ou 2)')
    parser.add_argument('--figure', help='Profils d\'une figure des exemples 2 et 3 (4 à 11)')
    parser.add_argument('--config', help='Fichier de configuration clé = valeur')
    return parser


def _first_error(error: ValidationError) -> Tuple[Optional[str], str]:
    messages = error.normalized_messages()
    key, detail = next(iter(messages.items()))
    if isinstance(detail, (list, tuple)):
        detail = '; '.join(str(item) for item in detail)
    elif isinstance(detail, dict):
        detail = '; '.join(f"{k}: {v}" for k, v in detail.items())
    return (None if key == '_schema' else key), str(detail)


def parse_config(argv: Optional[Sequence[str]] = None, file_text: Optional[str] = None) -> RunConfig:
    """
    Construit la configuration à partir du texte de fichier et des options

    Args:
        argv: Options de ligne de commande
        file_text: Contenu d'un fichier de configuration (sinon lu via --config)

    Returns:
        RunConfig validé

    Raises:
        ConfigurationError: clé inconnue, valeur mal formée ou contrainte violée
    """
    flags = vars(build_parser().parse_args(list(argv) if argv is not None else None))
    config_path = flags.pop('config', None)

    if file_text is None and config_path is not None:
        try:
            file_text = Path(config_path).read_text(encoding='utf-8')
        except OSError as e:
            raise ConfigurationError(f"Lecture impossible de {config_path}: {e}", key='config') from e

    values, lines = read_config_text(file_text) if file_text else ({}, {})
    values.update(flags)

    try:
        config = RunConfigSchema().load(values)
    except ValidationError as e:
        key, detail = _first_error(e)
        line = lines.get(key) if key is not None and key not in flags else None
        raise ConfigurationError(f"Configuration invalide: {detail}", key=key, line=line) from e

    logger.debug(f"Configuration: {config}")
    return config
