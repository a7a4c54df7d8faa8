"""
Problèmes de Référence
======================
Trois problèmes de Burgers-Fisher généralisé sur [0, 1] :

    u_t + α u^q u_x - μ u_xx = η u (1 - u^q)

- example1 : onde progressive en tanh avec solution exacte (μ = 1)
- example2 : profil gaussien exp(-40x²), sans solution exacte
- example3 : u0 = x(1 - x²), η = 0, conditions de Dirichlet homogènes

Date: 2026-10-17
"""

import logging
import math
from dataclasses import dataclass
from numbers import Integral
from typing import Callable, Optional, Tuple

import numpy as np

from cn_stepper import StepParams
from config import SolverDefaults
from initial_fit import InitialData
from solver_errors import InvalidInputError

logger = logging.getLogger(__name__)

PROBLEM_IDS = ('example1', 'example2', 'example3')

BoundaryFunction = Callable[[float], Tuple[float, float]]
ExactSolution = Callable[[np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class ProblemSpec:
    """Équation, domaine, donnée initiale, conditions aux limites, solution exacte"""
    problem_id: str
    alpha: float
    mu: float
    eta: float
    q: int
    domain: Tuple[float, float]
    initial: InitialData
    bc: BoundaryFunction
    exact: Optional[ExactSolution] = None
    assumptions: Tuple[str, ...] = ()

    def step_params(self, dt: float) -> StepParams:
        return StepParams(alpha=self.alpha, mu=self.mu, eta=self.eta, q=self.q, dt=dt)


def _check_q(q) -> int:
    if isinstance(q, bool) or not isinstance(q, Integral) or q < 1:
        raise InvalidInputError(f"q doit être un entier >= 1: {q!r}")
    return int(q)


def wave_speed(alpha: float, eta: float, q: int) -> float:
    """c = α/(q+1) + η(q+1)/α."""
    if alpha == 0.0:
        raise InvalidInputError("La vitesse d'onde exige α ≠ 0")
    return alpha / (q + 1) + eta * (q + 1) / alpha


def example1(alpha: float, eta: float, q: int) -> ProblemSpec:
    """
    Onde progressive u = (1/2 + 1/2·tanh[k(x - c·t)])^(1/q), k = -αq/(2(q+1))

    Args:
        alpha: Coefficient d'advection (non nul)
        eta: Coefficient de réaction
        q: Exposant entier >= 1

    Returns:
        ProblemSpec avec μ = 1 et solution exacte
    """
    q = _check_q(q)
    speed = wave_speed(alpha, eta, q)
    k = -alpha * q / (2.0 * (q + 1))
    inv_q = 1.0 / q

    def exact(x, t):
        base = 0.5 + 0.5 * np.tanh(k * (np.asarray(x, dtype=float) - speed * t))
        return base ** inv_q

    def u0(x):
        return exact(x, 0.0)

    def du0(x):
        th = np.tanh(k * np.asarray(x, dtype=float))
        base = 0.5 + 0.5 * th
        return inv_q * base ** (inv_q - 1.0) * 0.5 * k * (1.0 - th * th)

    a, b = SolverDefaults.DOMAIN

    def boundary_value(x: float, t: float) -> float:
        return (0.5 + 0.5 * math.tanh(k * (x - speed * t))) ** inv_q

    def bc(t):
        return boundary_value(a, t), boundary_value(b, t)

    return ProblemSpec(
        problem_id='example1', alpha=alpha, mu=1.0, eta=eta, q=q,
        domain=(a, b), initial=InitialData(u0, du0), bc=bc, exact=exact,
        assumptions=("mu=1 (la solution exacte n'est valable que pour mu = 1)",),
    )


def example2(alpha: float = 1.0, eta: float = 0.02, mu: float = 0.02) -> ProblemSpec:
    """Profil gaussien exp(-40x²), q = 1, valeurs de bord gelées à 1 et exp(-40)."""
    def u0(x):
        x = np.asarray(x, dtype=float)
        return np.exp(-40.0 * x * x)

    def du0(x):
        x = np.asarray(x, dtype=float)
        return -80.0 * x * np.exp(-40.0 * x * x)

    a, b = SolverDefaults.DOMAIN
    left, right = float(u0(a)), float(u0(b))

    def bc(t):
        return left, right

    return ProblemSpec(
        problem_id='example2', alpha=alpha, mu=mu, eta=eta, q=1,
        domain=(a, b), initial=InitialData(u0, du0), bc=bc,
        assumptions=(f"conditions de Dirichlet gelées aux valeurs initiales ({left:g}, {right:g})",),
    )


def example3(mu: float = 0.25) -> ProblemSpec:
    """u0 = x(1 - x²), α = 1, η = 0, q = 1, u(0,t) = u(1,t) = 0."""
    def u0(x):
        x = np.asarray(x, dtype=float)
        return x * (1.0 - x * x)

    def du0(x):
        x = np.asarray(x, dtype=float)
        return 1.0 - 3.0 * x * x

    def bc(t):
        return 0.0, 0.0

    return ProblemSpec(
        problem_id='example3', alpha=1.0, mu=mu, eta=0.0, q=1,
        domain=SolverDefaults.DOMAIN, initial=InitialData(u0, du0), bc=bc,
    )


def build_problem(problem_id: str, alpha: Optional[float] = None, mu: Optional[float] = None,
                  eta: Optional[float] = None, q: Optional[int] = None) -> ProblemSpec:
    """
    Construit un problème à partir de son identifiant et des paramètres fournis

    Les paramètres fixés par le problème (μ pour example1 ; α, η, q pour
    example3 ; q pour example2) ne peuvent pas être modifiés.
    """
    if problem_id == 'example1':
        if alpha is None or eta is None or q is None:
            raise InvalidInputError("example1 exige alpha, eta et q")
        if mu is not None and mu != 1.0:
            logger.warning(f"example1 impose mu = 1 (mu={mu} ignoré)")
        return example1(alpha, eta, q)

    if problem_id == 'example2':
        if q is not None and q != 1:
            raise InvalidInputError(f"example2 impose q = 1: {q}")
        kwargs = {k: v for k, v in (('alpha', alpha), ('eta', eta), ('mu', mu)) if v is not None}
        return example2(**kwargs)

    if problem_id == 'example3':
        for name, value, fixed in (('alpha', alpha, 1.0), ('eta', eta, 0.0), ('q', q, 1)):
            if value is not None and value != fixed:
                raise InvalidInputError(f"example3 impose {name} = {fixed}: {value}")
        return example3(mu) if mu is not None else example3()

    raise InvalidInputError(f"Problème inconnu: {problem_id} (attendu: {', '.join(PROBLEM_IDS)})")


def exact_residual(problem: ProblemSpec, x: np.ndarray, t: np.ndarray, step: float = 1e-4) -> np.ndarray:
    """
    Résidu de l'EDP pour la solution exacte, par différences centrées

    Args:
        problem: Problème avec solution exacte
        x, t: Points d'évaluation (diffusés ensemble)
        step: Pas des différences finies

    Returns:
        |u_t + α u^q u_x - μ u_xx - η u (1 - u^q)|
    """
    if problem.exact is None:
        raise InvalidInputError(f"{problem.problem_id} n'a pas de solution exacte")
    if not math.isfinite(step) or step <= 0.0:
        raise InvalidInputError(f"Pas invalide: {step}")

    u = problem.exact
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)

    center = u(x, t)
    u_t = (u(x, t + step) - u(x, t - step)) / (2.0 * step)
    u_x = (u(x + step, t) - u(x - step, t)) / (2.0 * step)
    u_xx = (u(x + step, t) - 2.0 * center + u(x - step, t)) / (step * step)
    u_q = center ** problem.q

    residual = (u_t + problem.alpha * u_q * u_x - problem.mu * u_xx
                - problem.eta * center * (1.0 - u_q))
    return np.abs(residual)
