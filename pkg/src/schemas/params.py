"""
Schemas de validación para los parámetros físicos.

Define el sistema (Ω₀, χ, ε), los baños (Γ, T, μ), la densidad espectral
compartida (s, ω_c), el agregado ``Setup`` y la parametrización de asimetría
(Λ, γ). Todos los modelos son inmutables.
"""

import logging
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.config import settings


logger = logging.getLogger(__name__)


def _revalidated(model: BaseModel, **update) -> BaseModel:
    """Crea una copia validada de un modelo inmutable con campos actualizados."""
    return type(model).model_validate({**model.model_dump(), **update})


class SystemParams(BaseModel):
    """Hamiltoniano de un sitio Ĥ_S = Ω₀N̂ + χN̂² y escala de acoplamiento ε."""

    omega0: float = Field(default=1.0, gt=0.0, description="Frecuencia Ω₀")
    chi: float = Field(default=0.0, ge=0.0, description="Interacción Bose-Hubbard χ")
    eps: float = Field(default=0.1, gt=0.0, lt=1.0, description="Acoplamiento ε")

    model_config = ConfigDict(frozen=True)

    @property
    def gap(self) -> float:
        """Brecha ω₀ = Ω₀ + χ entre los dos niveles más bajos."""
        return self.omega0 + self.chi


class BathParams(BaseModel):
    """Un reservorio bosónico térmico."""

    gamma: float = Field(default=1.0, ge=0.0, description="Peso de acoplamiento Γ")
    temperature: float = Field(..., gt=0.0, description="Temperatura T")
    mu: float = Field(default=0.0, description="Potencial químico μ")

    model_config = ConfigDict(frozen=True)

    @property
    def beta(self) -> float:
        """Temperatura inversa."""
        return 1.0 / self.temperature


class SpectralParams(BaseModel):
    """Densidad espectral J(ω) = ω^s e^{-ω/ω_c} compartida por ambos baños."""

    s: float = Field(default=1.0, ge=0.0, description="Exponente espectral")
    omega_c: float = Field(default=1000.0, gt=0.0, description="Frecuencia de corte")

    model_config = ConfigDict(frozen=True)


class AsymmetryParams(BaseModel):
    """Parametrización Γ₁ = Λ(1-γ), Γ₂ = Λ(1+γ)."""

    lambda_: float = Field(default=1.0, gt=0.0, alias="lambda")
    gamma: float = Field(default=0.0, ge=0.0, le=1.0)

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    def gammas(self) -> Tuple[float, float]:
        """Retorna (Γ₁, Γ₂)."""
        return self.lambda_ * (1.0 - self.gamma), self.lambda_ * (1.0 + self.gamma)


class Setup(BaseModel):
    """
    Configuración completa: sistema, dos baños y densidad espectral.

    Valida las invariantes cruzadas: μ_ℓ < Ω₀ + χ, al menos un
    baño acoplado, y advierte si ω_c no es mucho mayor que las escalas.
    """

    system: SystemParams
    bath1: BathParams
    bath2: BathParams
    spectral: SpectralParams = Field(default_factory=SpectralParams)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_cross_invariants(self) -> "Setup":
        """
        Verifica las invariantes que involucran varios componentes.

        Returns:
            El mismo Setup

        Raises:
            ValueError: Si algún μ_ℓ ≥ Ω₀ + χ o ambos Γ son cero
        """
        lowest = self.system.gap
        for label, bath in (("bath1", self.bath1), ("bath2", self.bath2)):
            if bath.mu >= lowest:
                raise ValueError(
                    f"{label}.mu={bath.mu} must be below the lowest level frequency {lowest}"
                )
        if self.bath1.gamma + self.bath2.gamma <= 0.0:
            raise ValueError("at least one bath must be coupled (gamma1 + gamma2 > 0)")

        scale = max(
            self.system.omega0,
            self.system.chi,
            self.bath1.temperature,
            self.bath2.temperature,
        )
        if self.spectral.omega_c < settings.cutoff_margin * scale:
            logger.warning(
                "omega_c=%g is not >> max(omega0, chi, T1, T2)=%g (margin %g)",
                self.spectral.omega_c,
                scale,
                settings.cutoff_margin,
            )
        return self

    @property
    def gammas(self) -> Tuple[float, float]:
        """Pesos de acoplamiento (Γ₁, Γ₂)."""
        return self.bath1.gamma, self.bath2.gamma

    @property
    def temperatures(self) -> Tuple[float, float]:
        """Temperaturas (T₁, T₂)."""
        return self.bath1.temperature, self.bath2.temperature

    @property
    def delta_t(self) -> float:
        """Sesgo térmico ΔT = T₁ - T₂."""
        return self.bath1.temperature - self.bath2.temperature

    @property
    def is_equilibrium(self) -> bool:
        """True si ambos baños tienen la misma temperatura y potencial químico."""
        return (
            self.bath1.temperature == self.bath2.temperature
            and self.bath1.mu == self.bath2.mu
        )

    def with_temperatures(self, t1: float, t2: float) -> "Setup":
        """Copia con nuevas temperaturas (revalidada)."""
        return Setup(
            system=self.system,
            bath1=_revalidated(self.bath1, temperature=t1),
            bath2=_revalidated(self.bath2, temperature=t2),
            spectral=self.spectral,
        )

    def with_bias(self, t_mean: float, delta_t: float) -> "Setup":
        """Copia con T₁ = T_m + ΔT/2 y T₂ = T_m - ΔT/2."""
        return self.with_temperatures(t_mean + 0.5 * delta_t, t_mean - 0.5 * delta_t)

    def with_gammas(self, gamma1: float, gamma2: float) -> "Setup":
        """Copia con nuevos pesos de acoplamiento."""
        return Setup(
            system=self.system,
            bath1=_revalidated(self.bath1, gamma=gamma1),
            bath2=_revalidated(self.bath2, gamma=gamma2),
            spectral=self.spectral,
        )

    def with_chi(self, chi: float) -> "Setup":
        """Copia con otra interacción χ."""
        return Setup(
            system=_revalidated(self.system, chi=chi),
            bath1=self.bath1,
            bath2=self.bath2,
            spectral=self.spectral,
        )

    def with_eps(self, eps: float) -> "Setup":
        """Copia con otro acoplamiento ε."""
        return Setup(
            system=_revalidated(self.system, eps=eps),
            bath1=self.bath1,
            bath2=self.bath2,
            spectral=self.spectral,
        )

    def with_spectral(self, s: float) -> "Setup":
        """Copia con otro exponente espectral."""
        return Setup(
            system=self.system,
            bath1=self.bath1,
            bath2=self.bath2,
            spectral=_revalidated(self.spectral, s=s),
        )

    def swapped(self) -> "Setup":
        """Copia con los dos baños intercambiados."""
        return Setup(
            system=self.system,
            bath1=self.bath2,
            bath2=self.bath1,
            spectral=self.spectral,
        )
