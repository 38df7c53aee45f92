"""
Servicio del estado estacionario fuera de equilibrio (NESS).

Contiene la lógica de:
- Selección del nivel de truncación con verificación por duplicación
- Poblaciones ρ_n por producto acumulado de razones (todas < 1)
- Promedios ⟨N̂⟩, ⟨Ĥ_S⟩ y corrientes estacionarias I, J
"""

import logging
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from core.config import settings
from core.exceptions import ConfigError, TruncationOverflow
from models.bose_hubbard import level_energy, level_freq
from schemas.params import Setup, SystemParams
from schemas.results import CurrentPair, NessDistribution, NessObservables, frozen_array
from services.audit_service import AuditService
from services.rate_service import RateService, kernel_array


logger = logging.getLogger(__name__)

_INITIAL_CHUNK = 64
# Poblaciones por debajo de este piso pierden precisión relativa (subnormales)
_NORMAL_FLOOR = np.finfo(float).tiny / np.finfo(float).eps


def mean_occupation(dist: NessDistribution) -> float:
    """⟨N̂⟩ = Σ n ρ_n."""
    return float(np.dot(dist.levels, dist.rho))


def mean_energy(dist: NessDistribution, system: SystemParams) -> float:
    """⟨Ĥ_S⟩ = Σ E_n ρ_n con E_n = Ω₀n + χn²."""
    return float(np.dot(level_energy(dist.levels, system), dist.rho))


class NessService:
    """
    Servicio del NESS para un ``Setup``.

    Las poblaciones y corrientes se calculan una sola vez por instancia y
    son inmutables, por lo que pueden compartirse entre hilos.
    """

    def __init__(
        self,
        setup: Setup,
        tol: Optional[float] = None,
        audit: Optional[AuditService] = None
    ):
        """
        Inicializa el servicio.

        Args:
            setup: Configuración completa
            tol: Tolerancia relativa en (0, 1e-6] (por defecto ``settings.default_tol``)
            audit: Registro de eventos opcional

        Raises:
            ConfigError: Si la tolerancia está fuera de rango
        """
        tol = settings.default_tol if tol is None else tol
        if not 0.0 < tol <= 1e-6:
            raise ConfigError(f"tol must lie in (0, 1e-6], got {tol}")
        self.setup = setup
        self.tol = tol
        self.audit = audit
        self.rates = RateService(setup)

    # ------------------------------------------------------------------
    # Truncación
    # ------------------------------------------------------------------

    def _weights(self, n_max: int) -> Tuple[np.ndarray, np.ndarray]:
        """Pesos no normalizados w_0..w_{n_max} y razones r_1..r_{n_max+1}."""
        ratios = self.rates.population_ratios(n_max + 1)
        weights = np.concatenate(([1.0], np.cumprod(ratios[:n_max])))
        return weights, ratios

    def _admissible(self, levels: np.ndarray) -> np.ndarray:
        """Máscara C_n/D_n < admissibility_ratio (sólo se exige con χ > 0)."""
        if self.setup.system.chi == 0.0:
            return np.ones(levels.shape, dtype=bool)
        c_bath, d_bath = self.rates.bath_rates(levels)
        c_total = c_bath.sum(axis=0)
        d_total = d_bath.sum(axis=0)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(d_total > 0.0, c_total / d_total, np.inf)
        return ratio < settings.admissibility_ratio

    def _first_candidate(self) -> int:
        cap = settings.truncation_cap
        threshold = self.tol * settings.tail_safety_factor
        chunk = _INITIAL_CHUNK
        while True:
            length = min(chunk, cap)
            weights, _ = self._weights(length)
            levels = np.arange(1, length + 1)
            small = weights[1:] < threshold
            candidates = levels[small]
            if candidates.size:
                admissible = self._admissible(candidates.astype(float))
                if np.any(admissible):
                    return int(candidates[admissible][0])
            if length >= cap:
                raise TruncationOverflow(
                    f"truncation level would exceed the cap of {cap} levels"
                )
            chunk *= 2

    def _observables_at(self, n_max: int) -> Tuple[float, float, float]:
        dist = self._distribution(n_max)
        currents = self._kernel_currents(dist)
        return mean_occupation(dist), currents[0], currents[1]

    def _gross_flux(self, dist: NessDistribution) -> Tuple[float, float]:
        """Flujos brutos ε²Σρ_nD_n y ε²Σρ_nω_{n-1}D_n (escala absoluta de I, J)."""
        _, d_bath = self.rates.bath_rates(dist.levels.astype(float))
        d_total = d_bath.sum(axis=0)
        omegas = level_freq(np.maximum(dist.levels - 1, 0).astype(float), self.setup.system)
        eps2 = self.setup.system.eps ** 2
        return (
            eps2 * float(np.dot(dist.rho, d_total)),
            eps2 * float(np.dot(dist.rho, omegas * d_total)),
        )

    def _stable(self, n_max: int) -> bool:
        coarse = self._observables_at(n_max)
        fine = self._observables_at(2 * n_max)
        scale_i, scale_j = self._gross_flux(self._distribution(2 * n_max))
        scales = (abs(fine[0]), max(abs(fine[1]), scale_i), max(abs(fine[2]), scale_j))
        return all(
            abs(f - c) <= self.tol * s or f == c
            for c, f, s in zip(coarse, fine, scales)
        )

    @cached_property
    def n_max(self) -> int:
        """Nivel de truncación (ver ``truncation_level``)."""
        return self.truncation_level()

    def truncation_level(self) -> int:
        """
        Selecciona el nivel de truncación n_max.

        Toma el menor n con ρ_n/ρ_0 < tol·tail_safety_factor y, si χ > 0,
        C_n/D_n < admissibility_ratio. Luego verifica que duplicar n_max
        cambie ⟨N̂⟩, I y J en menos de ``tol``; si no, duplica n_max.

        Returns:
            n_max ≥ 1

        Raises:
            TruncationOverflow: Si n_max superaría ``settings.truncation_cap``
        """
        cap = settings.truncation_cap
        n_max = self._first_candidate()
        while not self._stable(n_max):
            n_max *= 2
            if 2 * n_max > cap:
                raise TruncationOverflow(
                    f"doubling check requires more than {cap} levels"
                )
        logger.debug("selected n_max=%d (tol=%g)", n_max, self.tol)
        if self.audit is not None:
            self.audit.log_truncation(n_max, self.tol)
        return n_max

    # ------------------------------------------------------------------
    # Poblaciones
    # ------------------------------------------------------------------

    def _distribution(self, n_max: int) -> NessDistribution:
        weights, ratios = self._weights(n_max)
        z_tilde = float(weights.sum())
        rho = weights / z_tilde

        r_next = float(ratios[n_max])
        tail_bound = float(rho[-1] * r_next / (1.0 - r_next))

        return NessDistribution(
            rho=frozen_array(rho),
            n_max=n_max,
            z_tilde=z_tilde,
            tail_bound=tail_bound,
            ratio_check=self._ratio_residual(rho),
        )

    def _ratio_residual(self, rho: np.ndarray) -> float:
        levels = np.arange(rho.size, dtype=float)
        c_bath, d_bath = self.rates.bath_rates(levels)
        inflow = rho[:-1] * c_bath.sum(axis=0)[:-1]
        outflow = rho[1:] * d_bath.sum(axis=0)[1:]
        valid = (
            (rho[:-1] > _NORMAL_FLOOR) & (rho[1:] > _NORMAL_FLOOR)
            & (inflow > _NORMAL_FLOOR) & (outflow > _NORMAL_FLOOR)
        )
        if not np.any(valid):
            return 0.0
        return float(np.max(np.abs(outflow[valid] - inflow[valid]) / inflow[valid]))

    @cached_property
    def distribution(self) -> NessDistribution:
        """Distribución estacionaria (ver ``steady_populations``)."""
        return self._distribution(self.n_max)

    def steady_populations(self) -> NessDistribution:
        """
        Poblaciones estacionarias ρ_n = ρ_0 Π_{p=1}^{n} r_p con ρ_0 = 1/Z̃.

        No dependen de ε ni del exponente espectral s.

        Returns:
            Distribución normalizada con sus diagnósticos

        Raises:
            TruncationOverflow: Propagada desde la truncación
        """
        return self.distribution

    # ------------------------------------------------------------------
    # Corrientes
    # ------------------------------------------------------------------

    def _kernel_currents(self, dist: NessDistribution) -> Tuple[float, float, bool]:
        levels = dist.levels[1:].astype(float)
        omegas = np.atleast_1d(level_freq(levels - 1.0, self.setup.system))
        kernel, degenerate = kernel_array(omegas, self.setup)
        weighted = dist.rho[1:] * levels * kernel
        return (
            float(weighted.sum()),
            float(np.dot(weighted, omegas)),
            bool(np.any(degenerate & (dist.rho[1:] > 0.0))),
        )

    def _inflow_currents(self, dist: NessDistribution) -> Tuple[CurrentPair, CurrentPair]:
        levels = dist.levels.astype(float)
        c_bath, d_bath = self.rates.bath_rates(levels)
        freq_up = level_freq(levels, self.setup.system)
        freq_down = level_freq(np.maximum(levels - 1.0, 0.0), self.setup.system)
        eps2 = self.setup.system.eps ** 2
        pairs = []
        for ell in range(2):
            particle = eps2 * float(np.dot(dist.rho, c_bath[ell] - d_bath[ell]))
            energy = eps2 * float(
                np.dot(dist.rho, freq_up * c_bath[ell] - freq_down * d_bath[ell])
            )
            pairs.append(CurrentPair(particle=particle, energy=energy))
        return pairs[0], pairs[1]

    @cached_property
    def currents(self) -> CurrentPair:
        """Corrientes estacionarias (ver ``steady_currents``)."""
        dist = self.distribution
        particle, energy, degenerate = self._kernel_currents(dist)
        inflow1, inflow2 = self._inflow_currents(dist)
        if degenerate:
            logger.warning("current kernel degenerate for populated levels; treated as zero")
        return CurrentPair(
            particle=particle,
            energy=energy,
            inflow1=inflow1,
            inflow2=inflow2,
            degenerate=degenerate,
        )

    def steady_currents(self) -> CurrentPair:
        """
        Corrientes estacionarias I = Σρ_n n 𝓘(ω_{n-1}) y J = Σρ_n ω_{n-1} n 𝓘(ω_{n-1}).

        Incluye las formas por baño (flujo entrante desde cada baño), cuyo
        acuerdo con las formas de kernel es un chequeo de consistencia.

        Returns:
            Corrientes con el factor ε² incluido
        """
        return self.currents

    # ------------------------------------------------------------------
    # Observables
    # ------------------------------------------------------------------

    def mean_occupation(self) -> float:
        """⟨N̂⟩ del NESS."""
        return mean_occupation(self.distribution)

    def mean_energy(self) -> float:
        """⟨Ĥ_S⟩ del NESS."""
        return mean_energy(self.distribution, self.setup.system)

    def observables(self) -> NessObservables:
        """Agrupa ⟨N̂⟩, ⟨Ĥ_S⟩, corrientes y diagnósticos de truncación."""
        dist = self.distribution
        return NessObservables(
            occupation=self.mean_occupation(),
            energy=self.mean_energy(),
            currents=self.currents,
            n_max=dist.n_max,
            z_tilde=dist.z_tilde,
            tail_bound=dist.tail_bound,
        )
