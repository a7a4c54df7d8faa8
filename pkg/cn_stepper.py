"""
Schéma de Crank-Nicolson Linéarisé
==================================
Avance le vecteur de coefficients d'un pas Δt : collocation aux N+1 noeuds,
linéarisation de Rubin-Graves des termes non linéaires, élimination des
coefficients fantômes par les conditions de Dirichlet, résolution de Thomas.

Pour chaque noeud i, avec L1 = U_i^n et L2 = U'_i^n :
    A = 1 + αΔt/2·q·L1^(q-1)·L2 - ηΔt/2 + ηΔt/2·(1+q)·L1^q
    B = 1 + ηΔt/2 - ηΔt/2·(1-q)·L1^q

Date: 2026-10-17
"""

import logging
import math
from dataclasses import dataclass
from numbers import Integral
from typing import Any, Callable, Dict, Iterable, Optional, Tuple, Union

import numpy as np

from analysis import linf_error
from config import Tolerances
from mesh_field import UniformMesh, SplineField
from solve_report import Snapshot, SolveReport
from spline_basis import ExtendedCubicBasis, NodalWeights
from tridiag_solver import thomas_sweep
from solver_errors import (
    InvalidInputError, KnotIndexError, BoundaryEliminationError,
    NumericOverflowError, ConfigurationError
)

logger = logging.getLogger(__name__)

Scalar = Union[float, np.ndarray]
BoundaryFunction = Callable[[float], Tuple[float, float]]
ExactSolution = Callable[[np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class StepParams:
    """Coefficients de l'équation et pas de temps"""
    alpha: float
    mu: float
    eta: float
    q: int
    dt: float

    def __post_init__(self):
        for name in ('alpha', 'mu', 'eta', 'dt'):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidInputError(f"{name} doit être fini: {value}")
        if self.dt <= 0.0:
            raise InvalidInputError(f"Δt doit être > 0: {self.dt}")
        if isinstance(self.q, bool) or not isinstance(self.q, Integral) or self.q < 1:
            raise InvalidInputError(f"q doit être un entier >= 1: {self.q!r}")


@dataclass(frozen=True, eq=False)
class LinearizationTerms:
    """L1 = U au niveau n, L2 = U_x au niveau n (scalaires ou vecteurs nodaux)"""
    l1: Scalar
    l2: Scalar


def _int_power(base: Scalar, exponent: int) -> Scalar:
    """base**exponent par multiplications répétées (base négative admise)."""
    result = np.ones_like(base, dtype=float) if isinstance(base, np.ndarray) else 1.0
    for _ in range(exponent):
        result = result * base
    return result


def linearization_terms(field: SplineField, i: int) -> LinearizationTerms:
    """Termes de linéarisation au noeud i."""
    if i < 0 or i > field.mesh.n_cells:
        raise KnotIndexError(f"Noeud {i} hors de 0..{field.mesh.n_cells}")
    w = field.weights
    d = field.delta
    return LinearizationTerms(
        l1=w.a1 * d[i] + w.a2 * d[i + 1] + w.a1 * d[i + 2],
        l2=w.b1 * d[i] - w.b1 * d[i + 2],
    )


def linearization_terms_all(field: SplineField) -> LinearizationTerms:
    """Termes de linéarisation aux N+1 noeuds."""
    w = field.weights
    d = field.delta
    return LinearizationTerms(
        l1=w.a1 * d[:-2] + w.a2 * d[1:-1] + w.a1 * d[2:],
        l2=w.b1 * d[:-2] - w.b1 * d[2:],
    )


def _row_coefficients(params: StepParams, weights: NodalWeights, l1: Scalar, l2: Scalar):
    q = params.q
    half = params.dt / 2.0
    a1, a2, b1, g1, g2 = weights.a1, weights.a2, weights.b1, weights.g1, weights.g2

    l1_q = _int_power(l1, q)
    l1_qm1 = _int_power(l1, q - 1)

    big_a = (1.0 + params.alpha * half * q * l1_qm1 * l2
             - params.eta * half + params.eta * half * (1 + q) * l1_q)
    big_b = 1.0 + params.eta * half - params.eta * half * (1 - q) * l1_q

    advection_new = params.alpha * half * l1_q * b1
    advection_old = params.alpha * half * (1 - q) * l1_q * b1
    diffusion = params.mu * half

    left3 = (big_a * a1 + advection_new - diffusion * g1,
             big_a * a2 - diffusion * g2,
             big_a * a1 - advection_new - diffusion * g1)
    right3 = (big_b * a1 - advection_old + diffusion * g1,
              big_b * a2 + diffusion * g2,
              big_b * a1 + advection_old + diffusion * g1)
    return left3, right3


def assemble_row(params: StepParams, weights: NodalWeights, terms: LinearizationTerms,
                 node: Optional[int] = None):
    """
    Coefficients d'une ligne de collocation (ou de toutes, en vectoriel)

    Args:
        params: Paramètres du pas
        weights: Poids nodaux a1, a2, b1, g1, g2
        terms: L1, L2 au niveau n
        node: Indice du noeud (messages d'erreur en mode scalaire)

    Returns:
        (left3, right3) : coefficients de (δ_{i-1}, δ_i, δ_{i+1}) aux niveaux n+1 et n

    Raises:
        NumericOverflowError: coefficient non fini
    """
    with np.errstate(over='ignore', invalid='ignore'):
        left3, right3 = _row_coefficients(params, weights, terms.l1, terms.l2)

    stacked = np.vstack([np.atleast_1d(c) for c in left3 + right3])
    bad_columns = np.flatnonzero(~np.all(np.isfinite(stacked), axis=0))
    if bad_columns.size:
        bad_node = node if node is not None else int(bad_columns[0])
        raise NumericOverflowError(f"Coefficient non fini au noeud {bad_node}", node=bad_node)

    return left3, right3


class CrankNicolsonStepper:
    """
    Intégrateur de Crank-Nicolson pour un maillage, un λ et des paramètres donnés.

    L'instance possède son espace de travail (diagonales, second membre) ;
    une intégration est strictement séquentielle.
    """

    def __init__(self, mesh: UniformMesh, lam: float, params: StepParams):
        self.mesh = mesh
        self.lam = lam
        self.params = params
        self.weights = ExtendedCubicBasis(lam, mesh.h).nodal_weights()

        if self.weights.a1 == 0.0:
            raise BoundaryEliminationError(
                f"a1 = (4-λ)/24 nul pour λ={lam}: élimination des fantômes impossible"
            )

        m = mesh.n_cells + 1
        self._lower = np.empty(m - 1)
        self._main = np.empty(m)
        self._upper = np.empty(m - 1)
        self._rhs = np.empty(m)
        self._degenerate_logged = False

    # ------------------------------------------------------------------
    # Un pas
    # ------------------------------------------------------------------
    def _check_field(self, field: SplineField):
        if field.mesh != self.mesh or field.lam != self.lam:
            raise InvalidInputError("Champ incompatible avec le maillage ou le λ de l'intégrateur")

    def step(self, field: SplineField, bc_left: float, bc_right: float) -> SplineField:
        """
        Avance le champ d'un pas Δt

        Args:
            field: Champ au niveau n
            bc_left, bc_right: ζ1(t^{n+1}), ζ2(t^{n+1})

        Returns:
            Champ au niveau n+1
        """
        self._check_field(field)
        with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
            new_delta = self._advance(field.delta, bc_left, bc_right)
        return field.with_delta(new_delta)

    def _advance(self, d: np.ndarray, bc_left: float, bc_right: float) -> np.ndarray:
        """Un pas sur le vecteur brut des coefficients (appelé sous np.errstate)."""
        w = self.weights
        a1, a2 = w.a1, w.a2
        d_minus, d_center, d_plus = d[:-2], d[1:-1], d[2:]

        l1 = a1 * (d_minus + d_plus) + a2 * d_center
        l2 = w.b1 * (d_minus - d_plus)
        left3, right3 = _row_coefficients(self.params, w, l1, l2)
        l_minus, l_center, l_plus = left3

        lower, main, upper, rhs = self._lower, self._main, self._upper, self._rhs
        rhs[:] = right3[0] * d_minus + right3[1] * d_center + right3[2] * d_plus
        lower[:] = l_minus[1:]
        main[:] = l_center
        upper[:] = l_plus[:-1]

        ratio = a2 / a1
        n = self.mesh.n_cells
        lm0, lc0, lp0 = float(l_minus[0]), float(l_center[0]), float(l_plus[0])
        lmn, lcn, lpn = float(l_minus[n]), float(l_center[n]), float(l_plus[n])

        # δ_{-1} = (ζ1 - a2·δ_0 - a1·δ_1)/a1
        main[0] = lc0 - lm0 * ratio
        upper[0] = lp0 - lm0
        rhs[0] -= lm0 * bc_left / a1
        if self._is_degenerate(main[0], upper[0], lm0, lc0, lp0):
            main[0], upper[0], rhs[0] = 1.0, 0.0, d_center[0]

        # δ_{N+1} = (ζ2 - a1·δ_{N-1} - a2·δ_N)/a1
        main[n] = lcn - lpn * ratio
        lower[n - 1] = lmn - lpn
        rhs[n] -= lpn * bc_right / a1
        if self._is_degenerate(main[n], lower[n - 1], lmn, lcn, lpn):
            main[n], lower[n - 1], rhs[n] = 1.0, 0.0, d_center[n]

        finite = np.isfinite(main) & np.isfinite(rhs)
        finite[1:] &= np.isfinite(lower)
        finite[:-1] &= np.isfinite(upper)
        if not finite.all():
            bad = int(np.flatnonzero(~finite)[0])
            raise NumericOverflowError(f"Coefficient non fini au noeud {bad}", node=bad)

        solution = thomas_sweep(lower.tolist(), main.tolist(), upper.tolist(), rhs.tolist())

        new_delta = np.empty(n + 3)
        new_delta[1:-1] = solution
        new_delta[0] = (bc_left - a2 * solution[0] - a1 * solution[1]) / a1
        new_delta[-1] = (bc_right - a1 * solution[-2] - a2 * solution[-1]) / a1

        if not np.isfinite(new_delta).all():
            bad = int(np.flatnonzero(~np.isfinite(new_delta))[0]) - 1
            raise NumericOverflowError(f"Coefficient δ_{bad} non fini après résolution", node=bad)
        return new_delta

    def _is_degenerate(self, coeff_a: float, coeff_b: float, *row: float) -> bool:
        """Ligne de bord vide après élimination (ni diffusion ni advection)."""
        scale = max(abs(c) for c in row)
        tol = Tolerances.DEGENERATE_ROW_RTOL * scale
        degenerate = abs(coeff_a) <= tol and abs(coeff_b) <= tol
        if degenerate and not self._degenerate_logged:
            logger.warning("Ligne de bord dégénérée : coefficient de bord maintenu au niveau n")
            self._degenerate_logged = True
        return degenerate

    # ------------------------------------------------------------------
    # Intégration
    # ------------------------------------------------------------------
    def _report_steps(self, t_end: float, report_times: Iterable[float]) -> Tuple[int, Dict[int, float]]:
        dt = self.params.dt
        rtol = Tolerances.TIME_GRID_RTOL

        if not math.isfinite(t_end) or t_end <= 0.0:
            raise ConfigurationError(f"t_end doit être > 0: {t_end}", key='t_end')
        n_steps = int(round(t_end / dt))
        if n_steps < 1 or abs(n_steps * dt - t_end) > rtol * max(t_end, dt):
            raise ConfigurationError(f"t_end={t_end} n'est pas un multiple de Δt={dt}", key='t_end')

        times = [float(t) for t in report_times]
        if times != sorted(times):
            raise ConfigurationError(f"Temps de rapport non triés: {times}", key='report_times')

        steps = {}
        for t in times:
            k = int(round(t / dt))
            if k < 0 or k > n_steps or abs(k * dt - t) > rtol * max(abs(t), dt):
                raise ConfigurationError(
                    f"Temps de rapport t={t} hors de la grille n·Δt sur [0, {t_end}]",
                    key='report_times'
                )
            steps[k] = t
        return n_steps, steps

    def integrate(self, field: SplineField, bcs: BoundaryFunction, t_end: float,
                  report_times: Optional[Iterable[float]] = None,
                  exact: Optional[ExactSolution] = None,
                  meta: Optional[Dict[str, Any]] = None) -> SolveReport:
        """
        Intègre de t = 0 à t_end et capture les instantanés

        Args:
            field: Champ initial
            bcs: t -> (ζ1(t), ζ2(t))
            t_end: Temps final
            report_times: Temps de rapport triés (défaut: [t_end])
            exact: Solution exacte (x, t) -> u, pour les erreurs L∞
            meta: Métadonnées copiées dans le rapport

        Returns:
            SolveReport
        """
        dt = self.params.dt
        n_steps, report_steps = self._report_steps(
            t_end, report_times if report_times is not None else [t_end]
        )
        knots = np.asarray(self.mesh.knots)

        snapshots = []
        errors = [] if exact is not None else None

        def record(k: int, current: SplineField):
            values = current.knot_values()
            t_label = report_steps[k]
            exact_values = None
            if exact is not None:
                exact_values = np.asarray(exact(knots, k * dt), dtype=float)
                linf = linf_error(values, exact_values)
                errors.append((t_label, linf))
                logger.debug(f"t={t_label:g}: L∞={linf:.5e}")
            snapshots.append(Snapshot(t_label, values, current.delta, exact_values))

        logger.info(
            f"Intégration CN: N={self.mesh.n_cells}, Δt={dt:g}, {n_steps} pas, λ={self.lam:g}"
        )

        self._check_field(field)
        if 0 in report_steps:
            record(0, field)

        # Boucle sur le vecteur brut ; un SplineField seulement aux temps de rapport
        delta = field.delta
        with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
            for n in range(n_steps):
                bc_left, bc_right = bcs((n + 1) * dt)
                delta = self._advance(delta, bc_left, bc_right)
                if n + 1 in report_steps:
                    record(n + 1, field.with_delta(delta))

        return SolveReport(snapshots=snapshots, errors=errors, meta=dict(meta or {}), knots=knots)


def step(field: SplineField, params: StepParams, bc_left: float, bc_right: float) -> SplineField:
    """Un pas de Crank-Nicolson (intégrateur temporaire)."""
    return CrankNicolsonStepper(field.mesh, field.lam, params).step(field, bc_left, bc_right)


def integrate(field: SplineField, params: StepParams, bcs: BoundaryFunction, t_end: float,
              report_times: Optional[Iterable[float]] = None,
              exact: Optional[ExactSolution] = None,
              meta: Optional[Dict[str, Any]] = None) -> SolveReport:
    """Intègre jusqu'à t_end ; voir CrankNicolsonStepper.integrate."""
    stepper = CrankNicolsonStepper(field.mesh, field.lam, params)
    return stepper.integrate(field, bcs, t_end, report_times, exact=exact, meta=meta)
