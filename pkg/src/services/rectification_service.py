"""
Servicio de rectificación.

Compara las corrientes bajo sesgo directo e invertido con acoplamientos
asimétricos Γ₁ = Λ(1-γ), Γ₂ = Λ(1+γ):

    R_I = [I(ΔT, γ) + I(-ΔT, γ)] / I(ΔT, γ=0)

y lo mismo para R_J. Incluye barridos en γ y en T₁/ω₀ y el localizador del
cambio de signo de R_J en χ.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from core.config import settings
from core.exceptions import DomainError, NoSignChange, ZeroDenominator
from schemas.params import AsymmetryParams, Setup
from schemas.results import CurrentPair, GammaSweep, RectificationResult, ReversalResult
from services.limits_service import nesb_currents
from services.ness_service import NessService


logger = logging.getLogger(__name__)


def gammas_from_asymmetry(p: AsymmetryParams) -> Tuple[float, float]:
    """Γ₁ = Λ(1-γ), Γ₂ = Λ(1+γ)."""
    return p.gammas()


def _forward_backward(setup: Setup) -> Tuple[Setup, Setup]:
    """Sesgo directo (T₁ > T₂ como en ``setup``) y el mismo sesgo invertido."""
    t1, t2 = setup.temperatures
    return setup, setup.with_temperatures(t2, t1)


def _pair(setup: Setup, tol: Optional[float]) -> CurrentPair:
    if min(setup.gammas) == 0.0:
        # Un baño desconectado no transporta
        return CurrentPair(particle=0.0, energy=0.0)
    currents = NessService(setup, tol).steady_currents()
    return CurrentPair(particle=currents.particle, energy=currents.energy)


def _nesb_pair(setup: Setup, tol: Optional[float]) -> CurrentPair:
    result = nesb_currents(setup)
    return CurrentPair(particle=result.current_particle, energy=result.current_energy)


def _coefficients(
    setup: Setup,
    p: AsymmetryParams,
    tol: Optional[float],
    currents=_pair
) -> RectificationResult:
    asymmetric = setup.with_gammas(*gammas_from_asymmetry(p))
    symmetric = setup.with_gammas(p.lambda_, p.lambda_)

    forward_setup, backward_setup = _forward_backward(asymmetric)
    ref_forward_setup, ref_backward_setup = _forward_backward(symmetric)

    forward = currents(forward_setup, tol)
    backward = currents(backward_setup, tol)
    reference_forward = currents(ref_forward_setup, tol)
    reference_backward = currents(ref_backward_setup, tol)

    if reference_forward.particle == 0.0 or reference_forward.energy == 0.0:
        raise ZeroDenominator(
            "symmetric-coupling reference current vanishes (is deltaT zero?)"
        )

    return RectificationResult(
        gamma=p.gamma,
        chi=setup.system.chi,
        r_i=(forward.particle + backward.particle) / reference_forward.particle,
        r_j=(forward.energy + backward.energy) / reference_forward.energy,
        forward=forward,
        backward=backward,
        reference_forward=reference_forward,
        reference_backward=reference_backward,
    )


def rectification(
    setup: Setup,
    p: AsymmetryParams,
    tol: Optional[float] = None
) -> RectificationResult:
    """
    Coeficientes R_I y R_J.

    ``setup`` fija el sesgo directo: T₁ = T_m + ΔT/2 y T₂ = T_m - ΔT/2. Un R
    positivo indica mayor corriente cuando el baño frío está más acoplado.

    Args:
        setup: Configuración con el sesgo directo (sus Γ se reemplazan)
        p: Parámetros de asimetría (Λ, γ)
        tol: Tolerancia del NESS

    Returns:
        Coeficientes y las cuatro corrientes

    Raises:
        ZeroDenominator: Si la corriente de referencia con γ = 0 se anula
    """
    return _coefficients(setup, p, tol)


def nesb_rectification(setup: Setup, p: AsymmetryParams) -> RectificationResult:
    """R_I y R_J evaluados con las corrientes del límite de dos niveles."""
    return _coefficients(setup, p, None, currents=_nesb_pair)


def _argmax(results: Sequence[RectificationResult], attribute: str) -> float:
    values = np.array([getattr(result, attribute) for result in results])
    return results[int(np.argmax(values))].gamma


def _pool_size(threads: Optional[int]) -> Optional[int]:
    return threads if threads is not None else settings.threads


def sweep_gamma(
    setup: Setup,
    chis: Iterable[float],
    gammas: Sequence[float],
    lambda_: float = 1.0,
    tol: Optional[float] = None,
    threads: Optional[int] = None
) -> List[GammaSweep]:
    """
    Barre R_I(γ), R_J(γ) para cada χ.

    Los puntos se evalúan en un pool de hilos; los resultados conservan el
    orden de la malla.

    Args:
        setup: Configuración con el sesgo directo
        chis: Interacciones a barrer
        gammas: Malla de γ en [0, 1]
        lambda_: Escala de acoplamiento Λ
        tol: Tolerancia del NESS
        threads: Tamaño del pool (None = paralelismo disponible)

    Returns:
        Un GammaSweep por χ con el argmax de R_I y R_J
    """
    chis = list(chis)
    points = [
        (chi, AsymmetryParams(lambda_=lambda_, gamma=gamma))
        for chi in chis
        for gamma in gammas
    ]

    def evaluate(point) -> RectificationResult:
        chi, p = point
        return rectification(setup.with_chi(chi), p, tol)

    with ThreadPoolExecutor(max_workers=_pool_size(threads)) as pool:
        results = list(pool.map(evaluate, points))

    sweeps = []
    width = len(gammas)
    for index, chi in enumerate(chis):
        block = results[index * width:(index + 1) * width]
        sweeps.append(
            GammaSweep(
                chi=chi,
                results=block,
                argmax_r_i=_argmax(block, "r_i"),
                argmax_r_j=_argmax(block, "r_j"),
            )
        )
        logger.debug("gamma sweep chi=%g argmax R_I at gamma=%g", chi, sweeps[-1].argmax_r_i)
    return sweeps


def sweep_temperature(
    setup: Setup,
    p: AsymmetryParams,
    r: float,
    t1_values: Sequence[float],
    tol: Optional[float] = None,
    threads: Optional[int] = None
) -> List[RectificationResult]:
    """
    Rectificación en función de T₁ con r = T₂/T₁ fijo.

    Args:
        setup: Configuración base (sus temperaturas se reemplazan)
        p: Parámetros de asimetría
        r: Razón T₂/T₁ en (0, 1)
        t1_values: Temperaturas T₁ del baño caliente
        tol: Tolerancia del NESS
        threads: Tamaño del pool

    Returns:
        Un RectificationResult por temperatura, en orden
    """
    def evaluate(t1: float) -> RectificationResult:
        return rectification(setup.with_temperatures(t1, r * t1), p, tol)

    with ThreadPoolExecutor(max_workers=_pool_size(threads)) as pool:
        return list(pool.map(evaluate, t1_values))


def find_rj_zero(
    setup: Setup,
    p: AsymmetryParams,
    bracket: Tuple[float, float],
    tol: Optional[float] = None
) -> ReversalResult:
    """
    Localiza χ* con R_J(χ*) = 0.

    Recorre una malla logarítmica de ``settings.reversal_scan_points`` valores
    de χ dentro del intervalo y biseca la primera celda donde R_J cambia de
    signo, de modo que un cero interior se encuentra aunque los extremos
    tengan el mismo signo.

    Args:
        setup: Configuración con el sesgo directo (su χ se reemplaza)
        p: Parámetros de asimetría
        bracket: Intervalo (χ_a, χ_b) con 0 < χ_a < χ_b
        tol: Tolerancia del NESS

    Returns:
        χ*, la celda bisecada y R_I, R_J en χ*

    Raises:
        DomainError: Si el intervalo no cumple 0 < χ_a < χ_b
        NoSignChange: Si R_J no cambia de signo en ninguna celda
    """
    lower, upper = bracket
    if not 0.0 < lower < upper:
        raise DomainError(f"reversal bracket must satisfy 0 < lower < upper, got {bracket}")

    def r_j(chi: float) -> float:
        return rectification(setup.with_chi(chi), p, tol).r_j

    chis = np.geomspace(lower, upper, max(settings.reversal_scan_points, 2))
    chis[0], chis[-1] = lower, upper
    values = [r_j(float(chi)) for chi in chis]

    cell = next(
        (k for k in range(len(chis) - 1) if np.sign(values[k]) != np.sign(values[k + 1])),
        None,
    )
    if cell is None:
        raise NoSignChange(
            f"R_J keeps its sign on {len(chis)} points in chi=[{lower}, {upper}]"
        )

    a, b = float(chis[cell]), float(chis[cell + 1])
    logger.debug("R_J changes sign between chi=%g and chi=%g", a, b)
    threshold = 1e-8 * max(abs(values[cell]), abs(values[cell + 1]))
    chi_star, info = optimize.bisect(
        r_j,
        a,
        b,
        xtol=1e-14,
        maxiter=settings.reversal_max_iter,
        full_output=True,
        disp=False,
    )
    final = rectification(setup.with_chi(chi_star), p, tol)
    converged = bool(info.converged) or abs(final.r_j) < threshold
    if not converged:
        logger.warning("R_J bisection stopped after %d iterations", info.iterations)
    return ReversalResult(
        chi_star=chi_star,
        bracket=(a, b),
        r_i=final.r_i,
        r_j=final.r_j,
        iterations=info.iterations,
        converged=converged,
    )
