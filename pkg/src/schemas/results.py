"""
Schemas de resultados.

Todos los resultados son inmutables. Los vectores y matrices se guardan como
arreglos de numpy de sólo lectura (``arbitrary_types_allowed``).
"""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.config import settings
from enums import QuadratureScheme


def frozen_array(values) -> np.ndarray:
    """Copia ``values`` a un arreglo float64 marcado como no escribible."""
    array = np.array(values, dtype=float)
    array.flags.writeable = False
    return array


class _ArrayModel(BaseModel):
    """Base para resultados que transportan arreglos de numpy."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class LevelRates(BaseModel):
    """Tasas de subida C_n y bajada D_n de un nivel, por baño y totales (sin ε²)."""

    level: int = Field(..., ge=0)
    c_per_bath: Tuple[float, float]
    d_per_bath: Tuple[float, float]

    model_config = ConfigDict(frozen=True)

    @property
    def c(self) -> float:
        """Tasa total n → n+1."""
        return self.c_per_bath[0] + self.c_per_bath[1]

    @property
    def d(self) -> float:
        """Tasa total n → n-1."""
        return self.d_per_bath[0] + self.d_per_bath[1]


class KernelValue(BaseModel):
    """Valor del kernel de corriente 𝓘(ω) y bandera de caso degenerado."""

    value: float
    degenerate: bool = False

    model_config = ConfigDict(frozen=True)


class NessDistribution(_ArrayModel):
    """
    Poblaciones del estado estacionario truncadas en ``n_max``.

    Attributes:
        rho: ρ_0..ρ_{n_max}, normalizadas
        n_max: Nivel de truncación
        z_tilde: Normalización Z̃ (ρ_0 = 1/Z̃)
        tail_bound: Cota de la masa de probabilidad descartada
        ratio_check: Máximo residuo relativo de ρ_n D_n = ρ_{n-1} C_{n-1}
    """

    rho: np.ndarray
    n_max: int = Field(..., ge=1)
    z_tilde: float = Field(..., gt=0.0)
    tail_bound: float = Field(..., ge=0.0)
    ratio_check: float = Field(..., ge=0.0)

    @field_validator("rho")
    @classmethod
    def validate_rho(cls, v: np.ndarray) -> np.ndarray:
        """Verifica que las poblaciones sean no negativas y estén normalizadas."""
        if np.any(v < 0.0):
            raise ValueError("populations must be nonnegative")
        if abs(float(np.sum(v)) - 1.0) > 1e-12:
            raise ValueError("populations must sum to one")
        return v

    @property
    def levels(self) -> np.ndarray:
        """Índices n = 0..n_max."""
        return np.arange(self.n_max + 1)


class CurrentPair(BaseModel):
    """
    Corriente de partículas I y de energía J.

    Para las corrientes estacionarias, ``inflow1``/``inflow2`` guardan las
    formas por baño (flujo entrante al sistema desde cada baño).
    """

    particle: float
    energy: float
    inflow1: Optional["CurrentPair"] = None
    inflow2: Optional["CurrentPair"] = None
    degenerate: bool = False

    model_config = ConfigDict(frozen=True)


class NessObservables(BaseModel):
    """⟨N̂⟩, ⟨Ĥ_S⟩ y corrientes de un estado estacionario."""

    occupation: float
    energy: float
    currents: CurrentPair
    n_max: int
    z_tilde: float
    tail_bound: float

    model_config = ConfigDict(frozen=True)


class NesbResult(BaseModel):
    """Límite de dos niveles (spin-boson fuera de equilibrio)."""

    rho0: float
    rho1: float
    gap: float
    current_particle: Optional[float] = None
    current_energy: Optional[float] = None

    model_config = ConfigDict(frozen=True)


class HighTScaling(BaseModel):
    """Escalas de alta temperatura: T̃, A, K(s) y K(s+1)."""

    t_eff: float
    amp: float
    k_s: float
    k_s1: float

    model_config = ConfigDict(frozen=True)


class RectificationResult(BaseModel):
    """
    Coeficientes de rectificación y las cuatro corrientes que los definen.

    ``forward``/``backward`` usan (Γ₁, Γ₂) asimétricos con sesgo directo e
    invertido; ``reference_forward``/``reference_backward`` usan γ = 0.
    """

    gamma: float
    chi: float
    r_i: float
    r_j: float
    forward: CurrentPair
    backward: CurrentPair
    reference_forward: CurrentPair
    reference_backward: CurrentPair

    model_config = ConfigDict(frozen=True)


class GammaSweep(BaseModel):
    """R_I(γ), R_J(γ) para un χ fijo."""

    chi: float
    results: List[RectificationResult]
    argmax_r_i: float
    argmax_r_j: float

    model_config = ConfigDict(frozen=True)

    @property
    def gammas(self) -> List[float]:
        return [result.gamma for result in self.results]


class ReversalResult(BaseModel):
    """Interacción χ* donde R_J cambia de signo."""

    chi_star: float
    bracket: Tuple[float, float]
    r_i: float
    r_j: float
    iterations: int
    converged: bool

    model_config = ConfigDict(frozen=True)


class RateMatrix(_ArrayModel):
    """
    Generador tridiagonal M truncado (sin el factor ε²).

    ``diag[n] = C_n + D_n`` salvo el último nivel, que sólo conserva D_N
    (frontera reflectante); ``lower[n] = -C_n`` es M[n+1, n] y
    ``upper[n] = -D_{n+1}`` es M[n, n+1]. ``boundary_defect`` es la tasa
    C_N descartada.
    """

    size: int = Field(..., ge=2)
    diag: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    c_bath: np.ndarray
    d_bath: np.ndarray
    level_freq: np.ndarray
    level_energy: np.ndarray
    boundary_defect: float
    omega_c: float

    def dense(self) -> np.ndarray:
        """Matriz M completa."""
        return (
            np.diag(self.diag)
            + np.diag(self.lower, k=-1)
            + np.diag(self.upper, k=1)
        )

    def column_sums(self) -> np.ndarray:
        """Suma de cada columna de M."""
        return self.dense().sum(axis=0)


class TimeSeries(_ArrayModel):
    """
    Observables sobre una malla de tiempos (unidades de 1/Ω₀).

    ``populations`` es None en la evolución armónica, donde sólo se
    propaga ⟨N̂⟩.
    """

    times: np.ndarray
    populations: Optional[np.ndarray] = None
    occupation: np.ndarray
    energy: np.ndarray
    particle1: np.ndarray
    particle2: np.ndarray
    energy1: np.ndarray
    energy2: np.ndarray
    markov_flags: np.ndarray

    def trace(self) -> np.ndarray:
        """Σ_n ρ_n(t) en cada tiempo."""
        if self.populations is None:
            return np.ones_like(self.times)
        return self.populations.sum(axis=1)


class TssResult(BaseModel):
    """Brecha espectral λ₁ y tiempo de relajación t_ss = 1/(ε²λ₁)."""

    lambda1: float = Field(..., gt=0.0)
    t_ss: float = Field(..., gt=0.0)
    spectral_radius: float
    spectrum_imag: float = 0.0
    eps: float
    size: int

    model_config = ConfigDict(frozen=True)


class HarmonicRelaxation(BaseModel):
    """
    Relajación exacta del oscilador armónico (χ = 0).

    ⟨N̂(t)⟩ = N_ss + (N(0) - N_ss) e^{-t/t_ss}.
    """

    t_ss: float
    n_ss: float
    decay_rate: float

    model_config = ConfigDict(frozen=True)

    def occupation(self, times, n_initial: float = 0.0) -> np.ndarray:
        """Evalúa ⟨N̂(t)⟩ en ``times`` partiendo de ``n_initial``."""
        times = np.asarray(times, dtype=float)
        return self.n_ss + (n_initial - self.n_ss) * np.exp(-self.decay_rate * times)


class NesbRelaxation(BaseModel):
    """Tasa exacta de dos niveles C₀ + D₁ y sus tiempos de relajación."""

    gap_rate: float
    t_ss: float
    t_ss_asymptote: float

    model_config = ConfigDict(frozen=True)


class QuadratureSpec(BaseModel):
    """Esquema y tolerancia para integrales con peso y^{-1/2} e^{-y}."""

    scheme: QuadratureScheme = QuadratureScheme.GAUSS_LAGUERRE
    node_count: int = Field(default_factory=lambda: settings.quadrature_start_nodes, ge=1)
    rel_tol: float = Field(default_factory=lambda: settings.quadrature_rel_tol)

    model_config = ConfigDict(frozen=True)

    @field_validator("rel_tol")
    @classmethod
    def validate_rel_tol(cls, v: float) -> float:
        """Restringe la tolerancia a [1e-12, 1e-6]."""
        if not 1e-12 <= v <= 1e-6:
            raise ValueError("rel_tol must lie in [1e-12, 1e-6]")
        return v


class QuadratureResult(BaseModel):
    """Valor convergido de una cuadratura y su estimación de error."""

    value: float
    error: float
    scheme: QuadratureScheme
    nodes: int

    model_config = ConfigDict(frozen=True)
