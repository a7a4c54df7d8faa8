"""
Formatage des Sorties
=====================
Écriture des profils CSV (17 chiffres significatifs), du fichier meta.txt,
des blocs de tableaux d'erreurs et des échantillons de la fonction de base.

Date: 2026-10-17
"""

import logging
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import pandas as pd

from config import OutputConfig
from solve_report import SolveReport
from solver_errors import InvalidInputError

logger = logging.getLogger(__name__)


class FormatUtils:
    """Utilitaires de formatage des nombres."""

    @staticmethod
    def exact_float(value: float) -> str:
        """Représentation à 17 chiffres significatifs (relecture bit à bit)."""
        return OutputConfig.FLOAT_FORMAT % value

    @staticmethod
    def scientific(value: Optional[float], digits: int = 5) -> str:
        if value is None:
            return "-"
        return f"{value:.{digits}e}"

    @staticmethod
    def time_label(t: float) -> str:
        """Étiquette de fichier ; 12 chiffres distinguent les temps de grille voisins."""
        return OutputConfig.TIME_LABEL_FORMAT % t


def _write_frame(frame: pd.DataFrame, path: Path):
    frame.to_csv(path, index=False, float_format=OutputConfig.FLOAT_FORMAT, lineterminator='\n')


def write_profile(report: SolveReport, path, config_fields: Optional[Any] = None) -> List[Path]:
    """
    Écrit un fichier profile_t<t>.csv par instantané et meta.txt

    Args:
        report: Rapport de résolution
        path: Répertoire de sortie (créé si absent)
        config_fields: RunConfig (ou dict) recopié dans meta.txt

    Returns:
        Chemins des fichiers écrits
    """
    out_dir = Path(path)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    for snapshot in report.snapshots:
        columns = {'x': report.knots, 'u_numeric': snapshot.knot_values}
        if snapshot.exact_values is not None:
            columns['u_exact'] = snapshot.exact_values
            columns['abs_error'] = abs(snapshot.exact_values - snapshot.knot_values)

        target = out_dir / OutputConfig.PROFILE_PATTERN.format(t=FormatUtils.time_label(snapshot.t))
        if target in written:
            raise InvalidInputError(f"Deux temps de rapport produisent le même fichier {target.name}")
        _write_frame(pd.DataFrame(columns), target)
        written.append(target)

    meta_path = out_dir / OutputConfig.META_FILE
    meta_path.write_text(format_meta(report.meta, config_fields), encoding='utf-8')
    written.append(meta_path)

    logger.info(f"{len(report.snapshots)} profil(s) écrit(s) dans {out_dir}")
    return written


def _meta_value(value: Any) -> str:
    if isinstance(value, float):
        return FormatUtils.exact_float(value)
    if isinstance(value, (list, tuple)):
        return ", ".join(_meta_value(item) for item in value)
    return str(value)


def format_meta(meta: Dict[str, Any], config_fields: Optional[Any] = None) -> str:
    """Lignes `clé = valeur` : configuration puis métadonnées de la résolution."""
    lines = []
    if config_fields is not None:
        values = asdict(config_fields) if is_dataclass(config_fields) else dict(config_fields)
        lines.append("# configuration")
        lines.extend(f"{key} = {_meta_value(value)}" for key, value in values.items())
    lines.append("# resolution")
    for key, value in meta.items():
        if key == 'assumptions':
            continue
        lines.append(f"{key} = {_meta_value(value)}")
    for assumption in meta.get('assumptions', []):
        lines.append(f"assumption = {assumption}")
    return "\n".join(lines) + "\n"


def format_error_block(report: SolveReport, lam: float,
                       best_lambda: Optional[float] = None,
                       best_report: Optional[SolveReport] = None) -> str:
    """Bloc t | L∞(λ) [| λ optimal | L∞] d'une résolution avec solution exacte."""
    header = f"{'t':>8} | {'L∞ (λ=' + format(lam, 'g') + ')':>16}"
    if best_report is not None:
        header += f" | {'λ optimal':>12} | {'L∞ optimal':>12}"
    lines = [header, "-" * len(header)]

    for t, linf in report.errors or []:
        line = f"{t:>8g} | {FormatUtils.scientific(linf):>16}"
        if best_report is not None:
            line += f" | {best_lambda:>12.6g} | {FormatUtils.scientific(best_report.error_at(t)):>12}"
        lines.append(line)
    return "\n".join(lines)


def format_table_block(preset: Dict[str, Any], row_results: Sequence[Dict[str, Any]], lam: float) -> str:
    """
    Bloc lisible d'un tableau de référence : valeurs calculées et constantes de référence

    Args:
        preset: TablePresets.TABLE_k
        row_results: Pour chaque jeu de lignes, {'errors': [...], 'best_lambda', 'best_errors'}
        lam: λ de la colonne calculée
    """
    labels = preset['comparison_labels']
    lines = [preset['title'], "=" * len(preset['title'])]

    for row_set, result in zip(preset['row_sets'], row_results):
        lines.append(f"q = {row_set['q']}, alpha = {row_set['alpha']:g}, eta = {row_set['eta']:g}")
        header = (f"{'t':>6} | {'calculé λ=' + format(lam, 'g'):>14} | {'réf. λ=0':>12}"
                  f" | {'réf. λ opt':>12}")
        if result.get('best_errors') is not None:
            header += f" | {'λ balayé':>10} | {'calculé':>12}"
        header += "".join(f" | {label:>11}" for label in labels)
        lines.append(header)
        lines.append("-" * len(header))

        for k, t in enumerate(preset['times']):
            line = (f"{t:>6g} | {FormatUtils.scientific(result['errors'][k]):>14}"
                    f" | {FormatUtils.scientific(row_set['lambda_zero'][k]):>12}"
                    f" | {FormatUtils.scientific(row_set['optimized'][k]):>12}")
            if result.get('best_errors') is not None:
                line += (f" | {result['best_lambda']:>10.4g}"
                         f" | {FormatUtils.scientific(result['best_errors'][k]):>12}")
            line += "".join(f" | {FormatUtils.scientific(row_set['comparisons'][label][k], 4):>11}"
                            for label in labels)
            lines.append(line)

        reference = row_set['optimized_lambda']
        lines.append(f"λ optimisé (réf.): {'-' if reference is None else format(reference, 'g')}")
        lines.append("")
    return "\n".join(lines)


def table_csv_lines(preset: Dict[str, Any], row_results: Sequence[Dict[str, Any]], lam: float) -> List[str]:
    """Lignes `q,t,lambda,linf` (une ligne de commentaire par jeu de paramètres)."""
    lines = ["q,t,lambda,linf"]
    for row_set, result in zip(preset['row_sets'], row_results):
        lines.append(f"# alpha={row_set['alpha']:g}, eta={row_set['eta']:g}")
        for t, linf in zip(preset['times'], result['errors']):
            lines.append(f"{row_set['q']},{t:g},{lam:g},{FormatUtils.exact_float(linf)}")
        if result.get('best_errors') is not None:
            for t, linf in zip(preset['times'], result['best_errors']):
                lines.append(f"{row_set['q']},{t:g},{result['best_lambda']:.17g},{FormatUtils.exact_float(linf)}")
    return lines


def write_lines(lines: Iterable[str], path) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text("\n".join(lines) + "\n", encoding='utf-8')
    return target


def write_scan_trace(trace, path) -> Path:
    """Trace du balayage : lambda,linf,error."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(
        [(point.lam, point.linf, point.error or "") for point in trace],
        columns=['lambda', 'linf', 'error'],
    )
    _write_frame(frame, target)
    return target


def _write_figure(frame: pd.DataFrame, path, name: str) -> Path:
    out_dir = Path(path)
    out_dir.mkdir(parents=True, exist_ok=True)
    target = out_dir / name
    _write_frame(frame, target)
    logger.info(f"Données de figure écrites: {target}")
    return target


def write_basis_samples(frame: pd.DataFrame, path, figure: int) -> Path:
    """basis_figure<k>.csv dans le répertoire de sortie."""
    return _write_figure(frame, path, OutputConfig.BASIS_PATTERN.format(figure=figure))


def write_solution_figure(frame: pd.DataFrame, path, figure: int) -> Path:
    """figure<k>.csv : x puis un profil nodal par courbe."""
    return _write_figure(frame, path, OutputConfig.FIGURE_PATTERN.format(figure=figure))
