"""
Modelo de Bose-Hubbard de un sitio acoplado a dos baños bosónicos.

Funciones elementales que consumen todos los servicios: frecuencias de
transición, energías de los niveles, ocupación de Bose y densidad espectral.
Todas aceptan escalares o arreglos de numpy.
"""

from typing import Union

import numpy as np

from core.exceptions import NonPositiveGap
from schemas.params import BathParams, SpectralParams, SystemParams


ArrayLike = Union[float, int, np.ndarray]


def _as_output(value: np.ndarray) -> Union[float, np.ndarray]:
    return float(value) if np.ndim(value) == 0 else value


def level_freq(n: ArrayLike, system: SystemParams) -> Union[float, np.ndarray]:
    """
    Frecuencia de la transición n → n+1: ω_n = Ω₀ + χ(2n+1).

    Args:
        n: Índice de nivel (≥ 0)
        system: Parámetros del sistema

    Returns:
        ω_n
    """
    n = np.asarray(n, dtype=float)
    return _as_output(system.omega0 + system.chi * (2.0 * n + 1.0))


def level_energy(n: ArrayLike, system: SystemParams) -> Union[float, np.ndarray]:
    """Energía E_n = Ω₀n + χn² del nivel n."""
    n = np.asarray(n, dtype=float)
    return _as_output(system.omega0 * n + system.chi * n * n)


def bose(omega: ArrayLike, bath: BathParams) -> Union[float, np.ndarray]:
    """
    Ocupación de Bose 1/(e^{β(ω-μ)} - 1), evaluada con expm1.

    Args:
        omega: Frecuencia(s)
        bath: Baño con temperatura y potencial químico

    Returns:
        Ocupación (exactamente 0 cuando e^{β(ω-μ)} desborda)

    Raises:
        NonPositiveGap: Si alguna frecuencia no supera μ
    """
    x = (np.asarray(omega, dtype=float) - bath.mu) / bath.temperature
    if np.any(x <= 0.0):
        raise NonPositiveGap(
            f"bose factor requires omega > mu={bath.mu} (T={bath.temperature})"
        )
    with np.errstate(over="ignore"):
        return _as_output(1.0 / np.expm1(x))


def spectral_density(omega: ArrayLike, spectral: SpectralParams) -> Union[float, np.ndarray]:
    """Densidad espectral J(ω) = ω^s e^{-ω/ω_c} (sin el peso Γ_ℓ)."""
    omega = np.asarray(omega, dtype=float)
    return _as_output(np.power(omega, spectral.s) * np.exp(-omega / spectral.omega_c))


def gibbs_populations(
    system: SystemParams,
    temperature: float,
    n_max: int,
    mu: float = 0.0
) -> np.ndarray:
    """
    Estado de Gibbs ρ_n ∝ e^{-(E_n - μn)/T}, truncado en ``n_max``.

    Args:
        system: Parámetros del sistema
        temperature: Temperatura de equilibrio
        n_max: Último nivel incluido
        mu: Potencial químico

    Returns:
        Poblaciones normalizadas ρ_0..ρ_{n_max}
    """
    levels = np.arange(n_max + 1, dtype=float)
    exponent = -(level_energy(levels, system) - mu * levels) / temperature
    weights = np.exp(exponent - exponent.max())
    return weights / weights.sum()
