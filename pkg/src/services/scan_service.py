"""
Servicio de barridos de parámetros.

Arma las filas de ``scan`` y ``tss`` evaluando cada punto de la malla en un
pool de hilos. Un punto que falla produce una fila con valores nulos y el
motivo; el barrido continúa. Las filas salen en el orden de la malla.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from core.config import settings
from core.exceptions import ConfigError, SSBHError
from enums import ScanAxis
from schemas.run_config import RunConfig
from services.audit_service import AuditService
from services.dynamics_service import build_rate_matrix, relaxation_time, tss_harmonic, tss_nesb
from services.limits_service import (
    effective_temperature_high_t,
    nesb_currents,
    plateau_constant,
)
from services.ness_service import NessService
from services.rectification_service import nesb_rectification, rectification


logger = logging.getLogger(__name__)

Point = Tuple[float, Optional[float]]

_STATUS_COLUMNS = ["status", "reason"]


def _ratio(numerator: float, denominator: float) -> Optional[float]:
    return numerator / denominator if denominator != 0.0 else None


class ScanService:
    """
    Servicio de barridos sobre una ``RunConfig``.

    Cada punto es un cálculo puro e independiente.
    """

    def __init__(
        self,
        config: RunConfig,
        audit: Optional[AuditService] = None,
        threads: Optional[int] = None
    ):
        """
        Inicializa el servicio.

        Args:
            config: Configuración validada
            audit: Registro de eventos opcional
            threads: Tamaño del pool (None = ``settings.threads`` o paralelismo disponible)
        """
        self.config = config
        self.audit = audit or AuditService()
        self.threads = threads if threads is not None else settings.threads

    # ------------------------------------------------------------------
    # Infraestructura común
    # ------------------------------------------------------------------

    def _run_points(
        self,
        points: Sequence[Point],
        columns: List[str],
        evaluate: Callable[[float, Optional[float]], Dict[str, Any]]
    ) -> List[List[Any]]:
        def guarded(indexed: Tuple[int, Point]) -> List[Any]:
            index, (value, chi) = indexed
            try:
                row = evaluate(value, chi)
                row.update(status="ok", reason=None)
            except (SSBHError, ValidationError) as exc:
                reason = exc.detail if isinstance(exc, SSBHError) else _first_error(exc)
                self.audit.log_point_failed(index, value, reason)
                row = {"status": "failed", "reason": reason}
            return [row.get(column) for column in columns]

        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(guarded, enumerate(points)))

    # ------------------------------------------------------------------
    # scan
    # ------------------------------------------------------------------

    def scan_columns(self) -> List[str]:
        """Columnas de la tabla de ``scan`` para esta configuración."""
        columns = [
            self.config.axis.value, "chi", "T1", "T2", "gamma1", "gamma2",
            "n_max", "occupation", "energy",
            "I", "J", "I_over_dT", "J_over_dT_omega0", "J_over_I_omega0",
            "A", "T_tilde", "T1_over_omega0", "T_tilde_over_chi",
            "I_nesb", "J_nesb",
        ]
        if self.config.axis == ScanAxis.CHI:
            columns += ["I_reverse", "J_reverse"]
        if self.config.has_asymmetry:
            columns += ["R_I", "R_J", "R_I_nesb", "R_J_nesb"]
        return columns + _STATUS_COLUMNS

    def scan_points(self) -> List[Point]:
        """Puntos (valor del eje, χ) en el orden de salida."""
        config = self.config
        if config.axis is None:
            raise ConfigError("scan requires an axis and a grid")
        if config.axis == ScanAxis.GAMMA:
            chis = config.chis or [config.chi]
            return [(gamma, chi) for chi in chis for gamma in config.grid]
        return [(value, None) for value in config.grid]

    def _scan_row(self, value: float, chi: Optional[float]) -> Dict[str, Any]:
        config = self.config
        setup = config.setup_at(value, chi)
        system = setup.system
        gap = system.gap
        t1, t2 = setup.temperatures
        delta_t = setup.delta_t

        observables = NessService(setup, config.tol, self.audit).observables()
        particle = observables.currents.particle
        energy = observables.currents.energy
        nesb = nesb_currents(setup)
        t_tilde = effective_temperature_high_t(setup)

        row = {
            config.axis.value: value,
            "chi": system.chi,
            "T1": t1,
            "T2": t2,
            "gamma1": setup.bath1.gamma,
            "gamma2": setup.bath2.gamma,
            "n_max": observables.n_max,
            "occupation": observables.occupation,
            "energy": observables.energy,
            "I": particle,
            "J": energy,
            "I_over_dT": _ratio(particle, delta_t),
            "J_over_dT_omega0": _ratio(energy, delta_t * gap),
            "J_over_I_omega0": _ratio(energy, particle * gap),
            "A": plateau_constant(setup),
            "T_tilde": t_tilde,
            "T1_over_omega0": t1 / gap,
            "T_tilde_over_chi": _ratio(t_tilde, system.chi),
            "I_nesb": nesb.current_particle,
            "J_nesb": nesb.current_energy,
        }

        if config.axis == ScanAxis.CHI:
            reverse = NessService(setup.with_temperatures(t2, t1), config.tol).steady_currents()
            row.update(I_reverse=reverse.particle, J_reverse=reverse.energy)

        if config.has_asymmetry:
            p = config.asymmetry_params(value if config.axis == ScanAxis.GAMMA else None)
            result = rectification(setup, p, config.tol)
            reference = nesb_rectification(setup, p)
            row.update(
                R_I=result.r_i,
                R_J=result.r_j,
                R_I_nesb=reference.r_i,
                R_J_nesb=reference.r_j,
            )
        return row

    def scan(self) -> Tuple[List[str], List[List[Any]]]:
        """
        Ejecuta el barrido configurado.

        Returns:
            Tupla (columnas, filas)

        Raises:
            ConfigError: Si la configuración no define un eje
        """
        points = self.scan_points()
        columns = self.scan_columns()
        return columns, self._run_points(points, columns, self._scan_row)

    # ------------------------------------------------------------------
    # tss
    # ------------------------------------------------------------------

    def tss_columns(self) -> List[str]:
        """Columnas de la tabla de ``tss``."""
        return [
            "chi", "n_max", "lambda1", "t_ss", "eps2_t_ss",
            "t_ss_nesb", "t_ss_nesb_asymptote", "t_ss_harmonic",
            "spectrum_imag",
        ] + _STATUS_COLUMNS

    def tss_points(self) -> List[Point]:
        """Interacciones χ de la tabla de ``tss``."""
        config = self.config
        if config.axis == ScanAxis.CHI:
            return [(chi, chi) for chi in config.grid]
        if config.axis is not None:
            raise ConfigError(f"tss takes a chi grid, not axis={config.axis.value}")
        if config.chis:
            return [(chi, chi) for chi in config.chis]
        raise ConfigError("tss requires a chi grid (axis = chi or chis = ...)")

    def _harmonic_reference(self) -> float:
        base = self.config.setup_at(0.0 if self.config.axis == ScanAxis.CHI else None, 0.0)
        return tss_harmonic(base).t_ss

    def _tss_row(self, value: float, chi: Optional[float]) -> Dict[str, Any]:
        config = self.config
        setup = config.setup_at(value if config.axis == ScanAxis.CHI else None, chi)
        eps2 = setup.system.eps ** 2
        nesb = tss_nesb(setup)
        row = {
            "chi": chi,
            "t_ss_nesb": nesb.t_ss,
            "t_ss_nesb_asymptote": nesb.t_ss_asymptote,
            "t_ss_harmonic": self._harmonic_reference(),
        }
        if chi == 0.0:
            harmonic = tss_harmonic(setup)
            row.update(
                lambda1=harmonic.decay_rate / eps2,
                t_ss=harmonic.t_ss,
                eps2_t_ss=eps2 * harmonic.t_ss,
                spectrum_imag=0.0,
            )
            return row

        n_max = config.n_max or NessService(setup, config.tol, self.audit).truncation_level()
        result = relaxation_time(build_rate_matrix(setup, n_max), setup.system.eps)
        row.update(
            n_max=n_max,
            lambda1=result.lambda1,
            t_ss=result.t_ss,
            eps2_t_ss=eps2 * result.t_ss,
            spectrum_imag=result.spectrum_imag,
        )
        return row

    def tss(self) -> Tuple[List[str], List[List[Any]]]:
        """
        Calcula t_ss(χ) con sus referencias analíticas.

        Returns:
            Tupla (columnas, filas)
        """
        points = self.tss_points()
        columns = self.tss_columns()
        return columns, self._run_points(points, columns, self._tss_row)


def _first_error(exc: ValidationError) -> str:
    errors = exc.errors()
    return errors[0]["msg"] if errors else str(exc)
