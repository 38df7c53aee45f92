"""
Servicio de dinámica transitoria de la ecuación maestra diagonal.

dρ/dt = -ε² M ρ con M tridiagonal de nacimiento/muerte. M es semejante, vía
una matriz diagonal S = diag(√π_n), a una matriz simétrica con
subdiagonal -√(C_n D_{n+1}); por eso su espectro es real y se usa un
eigensolver simétrico tridiagonal. La propagación es exacta en cualquier t:

    ρ(t) = S V e^{-ε²Λt} Vᵀ S⁻¹ ρ(0)
"""

import logging
from typing import Optional, Sequence

import numpy as np

from core.config import settings
from core.exceptions import (
    ConfigError,
    InadmissibleTruncation,
    NonPhysicalState,
    RequiresHarmonic,
    RequiresInteraction,
    SpectralGapUnresolved,
)
from core.numerics import eig_sym_tridiag
from models.bose_hubbard import bose, level_energy, level_freq, spectral_density
from schemas.params import Setup
from schemas.results import (
    HarmonicRelaxation,
    NesbRelaxation,
    RateMatrix,
    TimeSeries,
    TssResult,
    frozen_array,
)
from services.audit_service import AuditService
from services.ness_service import NessService
from services.rate_service import RateService


logger = logging.getLogger(__name__)

_NEGATIVE_TOLERANCE = 1e-8
_GAP_RESOLUTION = 1e-12


def default_times() -> np.ndarray:
    """Malla logarítmica por defecto en [time_grid_min, time_grid_max]."""
    return np.logspace(
        np.log10(settings.time_grid_min),
        np.log10(settings.time_grid_max),
        settings.time_grid_points,
    )


def build_rate_matrix(
    setup: Setup,
    n_max: Optional[int] = None,
    tol: Optional[float] = None
) -> RateMatrix:
    """
    Construye el generador truncado M (sin ε²).

    Args:
        setup: Configuración completa
        n_max: Último nivel (por defecto el de truncación del NESS)
        tol: Tolerancia para elegir n_max

    Returns:
        Matriz tridiagonal con las tasas por baño

    Raises:
        InadmissibleTruncation: Si C_{n_max}/D_{n_max} no es ≪ 1
    """
    if n_max is None:
        n_max = NessService(setup, tol).truncation_level()
    if n_max < 1:
        raise ConfigError(f"n_max must be at least 1, got {n_max}")

    levels = np.arange(n_max + 1, dtype=float)
    c_bath, d_bath = RateService(setup).bath_rates(levels)
    c_total = c_bath.sum(axis=0)
    d_total = d_bath.sum(axis=0)

    defect = float(c_total[-1])
    if not defect < settings.admissibility_ratio * d_total[-1]:
        raise InadmissibleTruncation(
            f"C_N/D_N = {defect / d_total[-1]:.3g} at n_max={n_max} "
            f"(needs < {settings.admissibility_ratio:g})"
        )

    diag = c_total + d_total
    diag[-1] = d_total[-1]

    return RateMatrix(
        size=n_max + 1,
        diag=frozen_array(diag),
        lower=frozen_array(-c_total[:-1]),
        upper=frozen_array(-d_total[1:]),
        c_bath=frozen_array(c_bath),
        d_bath=frozen_array(d_bath),
        level_freq=frozen_array(level_freq(levels, setup.system)),
        level_energy=frozen_array(level_energy(levels, setup.system)),
        boundary_defect=defect,
        omega_c=setup.spectral.omega_c,
    )


class _Spectrum:
    """Descomposición de la forma simetrizada de M."""

    def __init__(self, m: RateMatrix, vectors: bool):
        c_total = -np.asarray(m.lower)
        d_next = -np.asarray(m.upper)
        self.offdiag = -np.sqrt(c_total * d_next)

        # log π_n = Σ_{p<n} log(C_p/D_{p+1}), desplazado para que max = 0
        with np.errstate(divide="ignore"):
            steps = np.log(c_total) - np.log(d_next)
        log_pi = np.concatenate(([0.0], np.cumsum(steps)))
        log_pi -= log_pi.max()
        self.scale = np.maximum(np.exp(0.5 * log_pi), np.finfo(float).tiny)

        if vectors:
            self.eigvals, self.eigvecs = eig_sym_tridiag(m.diag, self.offdiag, vectors=True)
        else:
            self.eigvals = eig_sym_tridiag(m.diag, self.offdiag)
            self.eigvecs = None


def evolve(
    m: RateMatrix,
    rho0: Optional[Sequence[float]],
    times: Optional[Sequence[float]],
    eps: float,
    audit: Optional[AuditService] = None
) -> TimeSeries:
    """
    Propaga las poblaciones ρ(t) = exp(-ε²Mt) ρ(0).

    Args:
        m: Generador truncado
        rho0: Poblaciones iniciales (None = vacío, ρ_0(0) = 1)
        times: Tiempos ordenados ≥ 0 (None = malla logarítmica por defecto)
        eps: Acoplamiento ε
        audit: Registro de eventos opcional

    Returns:
        Serie temporal con poblaciones, ⟨N̂⟩, ⟨Ĥ_S⟩ y corrientes por baño

    Raises:
        ConfigError: Si ρ(0) o la malla de tiempos no son válidos
        EigenFailure: Si el eigensolver falla
        NonPhysicalState: Si alguna población cae por debajo de -1e-8
    """
    times = default_times() if times is None else np.asarray(times, dtype=float)
    if times.ndim != 1 or np.any(times < 0.0) or np.any(np.diff(times) < 0.0):
        raise ConfigError("times must be a sorted sequence of nonnegative values")

    if rho0 is None:
        rho0 = np.zeros(m.size)
        rho0[0] = 1.0
    rho0 = np.asarray(rho0, dtype=float)
    if rho0.shape != (m.size,):
        raise ConfigError(f"initial populations must have {m.size} entries")
    if np.any(rho0 < 0.0) or abs(rho0.sum() - 1.0) > 1e-10:
        raise ConfigError("initial populations must be nonnegative and sum to one")

    spectrum = _Spectrum(m, vectors=True)
    coefficients = spectrum.eigvecs.T @ (rho0 / spectrum.scale)
    decay = np.exp(-(eps ** 2) * np.outer(times, spectrum.eigvals))
    populations = ((decay * coefficients) @ spectrum.eigvecs.T) * spectrum.scale

    # t = 0 es la identidad exacta
    populations[times == 0.0] = rho0

    worst = float(populations.min())
    if worst < -_NEGATIVE_TOLERANCE:
        raise NonPhysicalState(f"population fell to {worst:.3g} during propagation")

    levels = np.arange(m.size, dtype=float)
    freq_down = np.concatenate(([0.0], np.asarray(m.level_freq[:-1])))
    # La frontera reflectante descarta la transición N → N+1
    c_active = np.array(m.c_bath)
    c_active[:, -1] = 0.0
    eps2 = eps ** 2
    particle = eps2 * populations @ (c_active - m.d_bath).T
    energy = eps2 * populations @ (m.level_freq * c_active - freq_down * m.d_bath).T

    markov_flags = times < 1.0 / m.omega_c
    if np.any(markov_flags):
        (audit or AuditService()).log_markov_flagged(int(markov_flags.sum()), m.omega_c)

    return TimeSeries(
        times=frozen_array(times),
        populations=frozen_array(populations),
        occupation=frozen_array(populations @ levels),
        energy=frozen_array(populations @ m.level_energy),
        particle1=frozen_array(particle[:, 0]),
        particle2=frozen_array(particle[:, 1]),
        energy1=frozen_array(energy[:, 0]),
        energy2=frozen_array(energy[:, 1]),
        markov_flags=np.array(markov_flags),
    )


def relaxation_time(m: RateMatrix, eps: float) -> TssResult:
    """
    Tiempo de relajación t_ss = 1/(ε²λ₁) con λ₁ el menor autovalor no nulo.

    Para matrices de hasta ``settings.dense_spectrum_check_max`` niveles
    también diagonaliza M sin simetrizar y reporta la mayor parte imaginaria.

    Args:
        m: Generador truncado
        eps: Acoplamiento ε

    Returns:
        λ₁, t_ss y diagnósticos espectrales

    Raises:
        EigenFailure: Si el eigensolver falla
        SpectralGapUnresolved: Si λ₁ < 1e-12·max|λ|
    """
    eigvals = _Spectrum(m, vectors=False).eigvals
    radius = float(np.max(np.abs(eigvals)))
    lambda1 = float(eigvals[1])
    if not lambda1 > _GAP_RESOLUTION * radius:
        raise SpectralGapUnresolved(
            f"smallest nonzero eigenvalue {lambda1:.3g} is not resolved "
            f"(spectral radius {radius:.3g})"
        )

    spectrum_imag = 0.0
    if m.size <= settings.dense_spectrum_check_max:
        spectrum_imag = float(np.max(np.abs(np.linalg.eigvals(m.dense()).imag)))

    return TssResult(
        lambda1=lambda1,
        t_ss=1.0 / (eps ** 2 * lambda1),
        spectral_radius=radius,
        spectrum_imag=spectrum_imag,
        eps=eps,
        size=m.size,
    )


def tss_harmonic(setup: Setup) -> HarmonicRelaxation:
    """
    Relajación exacta del oscilador armónico.

    d⟨N̂⟩/dt = ε²Σ_ℓΓ_ℓJ(Ω₀)(n_ℓ(Ω₀) - ⟨N̂⟩), de modo que
    t_ss = 1/(ε²ΣΓ_ℓJ(Ω₀)) y N_ss = ΣΓ_ℓn_ℓ/ΣΓ_ℓ.

    Args:
        setup: Configuración con χ = 0

    Returns:
        t_ss, N_ss y la tasa de decaimiento

    Raises:
        RequiresHarmonic: Si χ ≠ 0
    """
    if setup.system.chi != 0.0:
        raise RequiresHarmonic("tss_harmonic requires chi = 0")
    omega0 = setup.system.omega0
    gamma1, gamma2 = setup.gammas
    density = spectral_density(omega0, setup.spectral)
    weights = (gamma1 * density, gamma2 * density)
    occupations = (bose(omega0, setup.bath1), bose(omega0, setup.bath2))

    rate = sum(weights)
    decay_rate = setup.system.eps ** 2 * rate
    return HarmonicRelaxation(
        t_ss=1.0 / decay_rate,
        n_ss=sum(w * n for w, n in zip(weights, occupations)) / rate,
        decay_rate=decay_rate,
    )


def evolve_harmonic(
    setup: Setup,
    times: Optional[Sequence[float]] = None,
    n_initial: float = 0.0,
    audit: Optional[AuditService] = None
) -> TimeSeries:
    """
    Evolución cerrada de ⟨N̂(t)⟩ y de las corrientes por baño para χ = 0.

    I_ℓ(t) = ε²Γ_ℓJ(Ω₀)(n_ℓ - ⟨N̂(t)⟩), J_ℓ = Ω₀I_ℓ y ⟨Ĥ_S⟩ = Ω₀⟨N̂⟩. No se
    propagan poblaciones.

    Args:
        setup: Configuración con χ = 0
        times: Tiempos (None = malla por defecto)
        n_initial: ⟨N̂(0)⟩
        audit: Registro de eventos opcional

    Returns:
        Serie temporal sin poblaciones

    Raises:
        RequiresHarmonic: Si χ ≠ 0
    """
    relaxation = tss_harmonic(setup)
    times = default_times() if times is None else np.asarray(times, dtype=float)
    occupation = relaxation.occupation(times, n_initial)

    omega0 = setup.system.omega0
    eps2 = setup.system.eps ** 2
    density = spectral_density(omega0, setup.spectral)
    particle = [
        eps2 * bath.gamma * density * (bose(omega0, bath) - occupation)
        for bath in (setup.bath1, setup.bath2)
    ]

    markov_flags = times < 1.0 / setup.spectral.omega_c
    if np.any(markov_flags):
        (audit or AuditService()).log_markov_flagged(int(markov_flags.sum()), setup.spectral.omega_c)

    return TimeSeries(
        times=frozen_array(times),
        occupation=frozen_array(occupation),
        energy=frozen_array(omega0 * occupation),
        particle1=frozen_array(particle[0]),
        particle2=frozen_array(particle[1]),
        energy1=frozen_array(omega0 * particle[0]),
        energy2=frozen_array(omega0 * particle[1]),
        markov_flags=np.array(markov_flags),
    )


def tss_nesb(setup: Setup) -> NesbRelaxation:
    """
    Relajación del límite de dos niveles.

    Tasa exacta C₀ + D₁ = Σ_ℓΓ_ℓJ(ω₀)(2n_ℓ(ω₀) + 1) y asintota
    t_ss ≈ 1/(ε²ω₀^s(Γ₁+Γ₂)) para factores de Bose despreciables.
    """
    gap = setup.system.gap
    density = spectral_density(gap, setup.spectral)
    gap_rate = sum(
        bath.gamma * density * (2.0 * bose(gap, bath) + 1.0)
        for bath in (setup.bath1, setup.bath2)
    )
    eps2 = setup.system.eps ** 2
    return NesbRelaxation(
        gap_rate=gap_rate,
        t_ss=1.0 / (eps2 * gap_rate),
        t_ss_asymptote=1.0 / (eps2 * gap ** setup.spectral.s * sum(setup.gammas)),
    )


class DynamicsService:
    """
    Dinámica de un ``Setup``.

    Enruta χ = 0 a la evolución armónica cerrada y χ > 0 a la propagación
    completa de poblaciones.
    """

    def __init__(
        self,
        setup: Setup,
        tol: Optional[float] = None,
        n_max: Optional[int] = None,
        audit: Optional[AuditService] = None
    ):
        """
        Inicializa el servicio.

        Args:
            setup: Configuración completa
            tol: Tolerancia de truncación
            n_max: Truncación explícita (None = la del NESS)
            audit: Registro de eventos opcional
        """
        self.setup = setup
        self.tol = tol
        self.n_max = n_max
        self.audit = audit
        self._matrix: Optional[RateMatrix] = None

    @property
    def is_harmonic(self) -> bool:
        return self.setup.system.chi == 0.0

    def rate_matrix(self) -> RateMatrix:
        """Generador truncado; sólo para χ > 0."""
        if self.is_harmonic:
            raise RequiresInteraction(
                "full population propagation requires chi > 0; use the harmonic closed form"
            )
        if self._matrix is None:
            n_max = self.n_max
            if n_max is None:
                n_max = NessService(self.setup, self.tol, self.audit).truncation_level()
            self._matrix = build_rate_matrix(self.setup, n_max)
        return self._matrix

    def evolve(
        self,
        times: Optional[Sequence[float]] = None,
        rho0: Optional[Sequence[float]] = None
    ) -> TimeSeries:
        """Serie temporal desde ``rho0`` (vacío por defecto)."""
        if self.is_harmonic:
            n_initial = 0.0
            if rho0 is not None:
                rho0 = np.asarray(rho0, dtype=float)
                n_initial = float(np.dot(np.arange(rho0.size), rho0))
            return evolve_harmonic(self.setup, times, n_initial, self.audit)
        return evolve(self.rate_matrix(), rho0, times, self.setup.system.eps, self.audit)

    def relaxation_time(self) -> float:
        """t_ss por autovalores (χ > 0) o por la forma cerrada armónica."""
        if self.is_harmonic:
            return tss_harmonic(self.setup).t_ss
        return relaxation_time(self.rate_matrix(), self.setup.system.eps).t_ss
