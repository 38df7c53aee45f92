"""
Fórmulas límite y asintóticas.

Se usan como oráculos de los servicios exactos y como salidas de leyes de
escala:
- Límite de dos niveles (χ ≫ Ω₀, T₁, T₂)
- Temperatura efectiva armónica (χ = 0) y de alta temperatura T̃
- Promedios de alta temperatura, K(s), F(z, s) y sus asintotas

Nunca se sustituyen en silencio por las sumas exactas.
"""

import logging
import math
from typing import Tuple

import numpy as np
from scipy import optimize

from core.exceptions import DegenerateChi, DomainError, RequiresHarmonic
from core.numerics import gamma_fn, integrate_halfline
from models.bose_hubbard import bose, spectral_density
from schemas.params import Setup
from schemas.results import HighTScaling, NesbResult


logger = logging.getLogger(__name__)


def nesb_populations(setup: Setup) -> NesbResult:
    """
    Poblaciones del límite de dos niveles con ω₀ = Ω₀ + χ.

    ρ₀ = ΣΓ_ℓ(n_ℓ + 1)/ΣΓ_ℓ(1 + 2n_ℓ), ρ₁ = ΣΓ_ℓ n_ℓ/ΣΓ_ℓ(1 + 2n_ℓ).

    Args:
        setup: Configuración completa

    Returns:
        NesbResult sin corrientes
    """
    gap = setup.system.gap
    gamma1, gamma2 = setup.gammas
    n1 = bose(gap, setup.bath1)
    n2 = bose(gap, setup.bath2)
    excited = gamma1 * n1 + gamma2 * n2
    total = gamma1 * (1.0 + 2.0 * n1) + gamma2 * (1.0 + 2.0 * n2)
    return NesbResult(
        rho0=(excited + gamma1 + gamma2) / total,
        rho1=excited / total,
        gap=gap,
    )


def nesb_currents(setup: Setup) -> NesbResult:
    """
    Corrientes del límite de dos niveles.

    I_SB = ε²Γ₁Γ₂J(ω₀)(n₁ - n₂)/(Γ₁(1+2n₁) + Γ₂(1+2n₂)) y J_SB = ω₀ I_SB.

    Args:
        setup: Configuración completa

    Returns:
        NesbResult con poblaciones y corrientes
    """
    populations = nesb_populations(setup)
    gap = populations.gap
    gamma1, gamma2 = setup.gammas
    n1 = bose(gap, setup.bath1)
    n2 = bose(gap, setup.bath2)
    total = gamma1 * (1.0 + 2.0 * n1) + gamma2 * (1.0 + 2.0 * n2)
    particle = (
        setup.system.eps ** 2 * gamma1 * gamma2
        * spectral_density(gap, setup.spectral) * (n1 - n2) / total
    )
    return populations.model_copy(
        update={"current_particle": particle, "current_energy": gap * particle}
    )


def effective_temperature_harmonic(setup: Setup) -> float:
    """
    Temperatura efectiva del oscilador armónico (χ = 0).

    Resuelve coth(β_eff Ω₀/2) = [Γ₁coth(β₁Ω₀/2) + Γ₂coth(β₂Ω₀/2)]/(Γ₁+Γ₂)
    en [min β, max β]; con esa forma ρ_{n+1}/ρ_n = e^{-β_eff Ω₀} exactamente.

    Args:
        setup: Configuración con χ = 0

    Returns:
        T_eff = 1/β_eff

    Raises:
        RequiresHarmonic: Si χ ≠ 0
    """
    if setup.system.chi != 0.0:
        raise RequiresHarmonic("effective_temperature_harmonic requires chi = 0")

    t1, t2 = setup.temperatures
    gamma1, gamma2 = setup.gammas
    if t1 == t2 or gamma2 == 0.0:
        return t1
    if gamma1 == 0.0:
        return t2

    half = 0.5 * setup.system.omega0
    beta1, beta2 = 1.0 / t1, 1.0 / t2
    target = (
        gamma1 / math.tanh(beta1 * half) + gamma2 / math.tanh(beta2 * half)
    ) / (gamma1 + gamma2)

    def residual(beta: float) -> float:
        return 1.0 / math.tanh(beta * half) - target

    beta_eff = optimize.brentq(
        residual, min(beta1, beta2), max(beta1, beta2), xtol=1e-15, maxiter=200
    )
    return 1.0 / beta_eff


def effective_temperature_high_t(setup: Setup) -> float:
    """T̃ = (Γ₁T₁ + Γ₂T₂)/(Γ₁ + Γ₂)."""
    gamma1, gamma2 = setup.gammas
    t1, t2 = setup.temperatures
    return (gamma1 * t1 + gamma2 * t2) / (gamma1 + gamma2)


def plateau_constant(setup: Setup) -> float:
    """Constante A = ε²Γ₁Γ₂/(Γ₁ + Γ₂) de la meseta óhmica."""
    gamma1, gamma2 = setup.gammas
    return setup.system.eps ** 2 * gamma1 * gamma2 / (gamma1 + gamma2)


def high_t_averages(setup: Setup) -> Tuple[float, float]:
    """
    Promedios continuos de alta temperatura.

    ⟨N̂⟩ ≈ √(T̃/(πχ)) y ⟨Ĥ_S⟩ ≈ T̃/2 + Ω₀√(T̃/(πχ)).

    La energía sale de la misma integral gaussiana que la ocupación:
    ⟨χN̂²⟩ ≈ T̃/2, de modo que ⟨Ĥ_S⟩ = T̃/2 + Ω₀⟨N̂⟩. La forma
    T̃ + (Ω₀ + 2χ)√(T̃/(πχ)) que a veces se cita sobreestima la energía
    del estado estacionario y no se usa.

    Args:
        setup: Configuración con χ > 0

    Returns:
        Tupla (ocupación, energía)

    Raises:
        DegenerateChi: Si χ = 0
    """
    chi = setup.system.chi
    if chi == 0.0:
        raise DegenerateChi("high-temperature averages are singular at chi = 0")
    t_eff = effective_temperature_high_t(setup)
    occupation = math.sqrt(t_eff / (math.pi * chi))
    return occupation, 0.5 * t_eff + setup.system.omega0 * occupation


def k_function(s: float, setup: Setup) -> float:
    """
    Estimación de alta temperatura K(s) de la corriente.

    K(s) = [AΔT/(√π T̃)] ∫₀^∞ y^{-1/2}e^{-y}(√(T̃y/χ) + 1)(Ω₀ + χ + 2√(T̃χy))^s dy.
    I ≈ K(s) y J ≈ K(s+1).

    Args:
        s: Exponente espectral (≥ 0)
        setup: Configuración con χ > 0

    Returns:
        K(s)

    Raises:
        DegenerateChi: Si χ = 0
        QuadratureFailure: Si la cuadratura no converge
    """
    chi = setup.system.chi
    if chi == 0.0:
        raise DegenerateChi("K(s) requires chi > 0")
    delta_t = setup.delta_t
    if delta_t == 0.0:
        return 0.0

    t_eff = effective_temperature_high_t(setup)
    base = setup.system.omega0 + chi

    def integrand(y: np.ndarray) -> np.ndarray:
        root = np.sqrt(y)
        return (np.sqrt(t_eff / chi) * root + 1.0) * np.power(
            base + 2.0 * np.sqrt(t_eff * chi) * root, s
        )

    integral = integrate_halfline(integrand).value
    return plateau_constant(setup) * delta_t / (math.sqrt(math.pi) * t_eff) * integral


def f_function(z: float, s: float) -> float:
    """
    F(z, s) = ∫₀^∞ y^{-1/2}e^{-y}(√(zy) + 1)(1 + 2√(zy))^s dy.

    Args:
        z: Variable de escala T̃/χ (> 0)
        s: Exponente espectral

    Returns:
        F(z, s)

    Raises:
        DomainError: Si z ≤ 0 o s < 0
    """
    if not z > 0.0:
        raise DomainError(f"F(z, s) requires z > 0, got z={z}")
    if s < 0.0:
        raise DomainError(f"F(z, s) requires s >= 0, got s={s}")
    sqrt_z = math.sqrt(z)

    def integrand(y: np.ndarray) -> np.ndarray:
        root = sqrt_z * np.sqrt(y)
        return (root + 1.0) * np.power(1.0 + 2.0 * root, s)

    return integrate_halfline(integrand).value


def f_ratio_asymptote(z: float, s: float) -> float:
    """
    Asintota de F(z, s+1)/F(z, s) para z ≫ 1.

    2√z (s+1)Γ((s+1)/2)/(sΓ(s/2)), escrita como 2√z Γ((s+3)/2)/Γ(s/2+1)
    para que s = 0 sea regular.
    """
    return 2.0 * math.sqrt(z) * gamma_fn(0.5 * s + 1.5) / gamma_fn(0.5 * s + 1.0)


def current_ratio_asymptote(setup: Setup, s: float) -> float:
    """
    Asintota J/(χI) ≈ 2√(T̃/χ)(s+1)Γ((s+1)/2)/(sΓ(s/2)).

    Raises:
        DegenerateChi: Si χ = 0
    """
    chi = setup.system.chi
    if chi == 0.0:
        raise DegenerateChi("J/(chi I) asymptote requires chi > 0")
    return f_ratio_asymptote(effective_temperature_high_t(setup) / chi, s)


def high_t_scaling(setup: Setup) -> HighTScaling:
    """Agrupa T̃, A, K(s) y K(s+1) con el exponente de ``setup.spectral``."""
    s = setup.spectral.s
    return HighTScaling(
        t_eff=effective_temperature_high_t(setup),
        amp=plateau_constant(setup),
        k_s=k_function(s, setup),
        k_s1=k_function(s + 1.0, setup),
    )
