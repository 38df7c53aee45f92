"""
Servicio de tasas de transición.

Calcula las tasas de nacimiento/muerte C_n, D_n por baño y el kernel de
corriente estacionaria 𝓘(ω). Las tasas NO incluyen el factor ε²: se aplica
en el servicio de NESS (corrientes) y en la dinámica (escala de tiempo).
"""

import logging
from typing import Tuple, Union

import numpy as np

from models.bose_hubbard import bose, level_freq, spectral_density
from schemas.params import BathParams, Setup, SpectralParams, SystemParams
from schemas.results import KernelValue, LevelRates


logger = logging.getLogger(__name__)


def rate_up(
    n: Union[int, np.ndarray],
    bath: BathParams,
    system: SystemParams,
    spectral: SpectralParams
) -> Union[float, np.ndarray]:
    """
    Tasa de absorción n → n+1 de un baño: (n+1) Γ J(ω_n) n_ℓ(ω_n).

    Args:
        n: Nivel o arreglo de niveles (≥ 0)
        bath: Baño ℓ
        system: Parámetros del sistema
        spectral: Densidad espectral compartida

    Returns:
        C_n^ℓ sin el factor ε²
    """
    levels = np.asarray(n, dtype=float)
    omega = level_freq(levels, system)
    value = (levels + 1.0) * bath.gamma * spectral_density(omega, spectral) * bose(omega, bath)
    return float(value) if np.ndim(value) == 0 else value


def rate_down(
    n: Union[int, np.ndarray],
    bath: BathParams,
    system: SystemParams,
    spectral: SpectralParams
) -> Union[float, np.ndarray]:
    """
    Tasa de emisión n → n-1 de un baño: n Γ J(ω_{n-1}) (n_ℓ(ω_{n-1}) + 1).

    En n = 0 devuelve exactamente 0 (ω_{-1} nunca se evalúa).
    """
    levels = np.asarray(n, dtype=float)
    omega = level_freq(np.maximum(levels - 1.0, 0.0), system)
    value = levels * bath.gamma * spectral_density(omega, spectral) * (bose(omega, bath) + 1.0)
    return float(value) if np.ndim(value) == 0 else value


def current_kernel(omega: float, setup: Setup) -> KernelValue:
    """
    Kernel de corriente 𝓘(ω) = ε²Γ₁Γ₂J(ω)(n₁ - n₂)/(Γ₁n₁ + Γ₂n₂).

    Args:
        omega: Frecuencia (> 0)
        setup: Configuración completa

    Returns:
        Valor del kernel; 0 con ``degenerate=True`` si ambas ocupaciones
        son cero
    """
    values, degenerate = kernel_array(np.asarray([omega], dtype=float), setup)
    return KernelValue(value=float(values[0]), degenerate=bool(degenerate[0]))


def kernel_array(omegas: np.ndarray, setup: Setup) -> Tuple[np.ndarray, np.ndarray]:
    """
    Versión vectorizada de ``current_kernel``.

    Returns:
        Tupla (valores, máscara de frecuencias degeneradas)
    """
    gamma1, gamma2 = setup.gammas
    n1 = np.asarray(bose(omegas, setup.bath1), dtype=float)
    n2 = np.asarray(bose(omegas, setup.bath2), dtype=float)
    denominator = gamma1 * n1 + gamma2 * n2
    degenerate = denominator <= 0.0

    safe = np.where(degenerate, 1.0, denominator)
    eps2 = setup.system.eps ** 2
    values = eps2 * gamma1 * gamma2 * spectral_density(omegas, setup.spectral) * (n1 - n2) / safe
    values = np.where(degenerate, 0.0, values)

    if np.any(degenerate):
        logger.debug(
            "current kernel degenerate at %d frequencies (both occupations underflow)",
            int(np.count_nonzero(degenerate)),
        )
    return values, degenerate


class RateService:
    """
    Tasas de un ``Setup`` completo sobre mallas de niveles.

    Agrupa las tasas de ambos baños para que NESS y dinámica compartan
    exactamente las mismas evaluaciones.
    """

    def __init__(self, setup: Setup):
        """
        Inicializa el servicio.

        Args:
            setup: Configuración completa
        """
        self.setup = setup

    def bath_rates(self, levels: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Tasas por baño sobre ``levels``.

        Returns:
            Tupla (c_bath, d_bath), cada una de forma (2, len(levels))
        """
        setup = self.setup
        c_bath = np.vstack([
            rate_up(levels, bath, setup.system, setup.spectral)
            for bath in (setup.bath1, setup.bath2)
        ])
        d_bath = np.vstack([
            rate_down(levels, bath, setup.system, setup.spectral)
            for bath in (setup.bath1, setup.bath2)
        ])
        return c_bath, d_bath

    def level_rates(self, n: int) -> LevelRates:
        """Tasas C_n, D_n de un nivel, por baño y totales."""
        c_bath, d_bath = self.bath_rates(np.array([n], dtype=float))
        return LevelRates(
            level=n,
            c_per_bath=(float(c_bath[0, 0]), float(c_bath[1, 0])),
            d_per_bath=(float(d_bath[0, 0]), float(d_bath[1, 0])),
        )

    def population_ratios(self, count: int) -> np.ndarray:
        """
        Factores r_p = ΣΓ_ℓ n_ℓ(ω_{p-1}) / ΣΓ_ℓ(n_ℓ(ω_{p-1}) + 1), p = 1..count.

        J(ω_{p-1}) se cancela entre numerador y denominador, por lo que los
        factores no dependen de la densidad espectral.
        """
        setup = self.setup
        omegas = level_freq(np.arange(count, dtype=float), setup.system)
        omegas = np.atleast_1d(omegas)
        gamma1, gamma2 = setup.gammas
        n1 = np.atleast_1d(bose(omegas, setup.bath1))
        n2 = np.atleast_1d(bose(omegas, setup.bath2))
        numerator = gamma1 * n1 + gamma2 * n2
        return numerator / (numerator + gamma1 + gamma2)
