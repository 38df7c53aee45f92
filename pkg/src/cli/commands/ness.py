"""
Comando ``ness``: poblaciones estacionarias de una configuración.
"""

from typing import Optional

from core.exceptions import ConfigError
from enums import CommandName
from models.bose_hubbard import gibbs_populations
from repositories.output_repository import OutputTable
from schemas.run_config import RunConfig
from services.audit_service import AuditService
from services.ness_service import NessService
from cli.commands import build_meta


def run(config: RunConfig, audit: AuditService, threads: Optional[int] = None) -> OutputTable:
    """
    Calcula ρ_n junto con la referencia de Gibbs.

    La referencia usa ``gibbs_temperature`` o, por defecto, la temperatura
    media (T₁+T₂)/2 y el potencial químico medio.

    Args:
        config: Configuración sin eje de barrido
        audit: Registro de eventos
        threads: Sin uso (un solo punto)

    Returns:
        Tabla n, rho_n, gibbs_rho_n con ⟨N̂⟩, ⟨Ĥ_S⟩, I, J en el resumen

    Raises:
        ConfigError: Si la configuración define un eje
        NumericsError: Si el NESS no se puede construir
    """
    if config.axis is not None:
        raise ConfigError("ness takes a single setup; remove axis/grid or use scan")

    setup = config.base_setup()
    service = NessService(setup, config.tol, audit)
    dist = service.steady_populations()
    observables = service.observables()

    t1, t2 = setup.temperatures
    reference_t = config.gibbs_temperature or 0.5 * (t1 + t2)
    reference_mu = 0.5 * (setup.bath1.mu + setup.bath2.mu)
    gibbs = gibbs_populations(setup.system, reference_t, dist.n_max, reference_mu)

    rows = [[n, float(rho), float(reference)] for n, (rho, reference) in enumerate(zip(dist.rho, gibbs))]
    summary = {
        "occupation": observables.occupation,
        "energy": observables.energy,
        "I": observables.currents.particle,
        "J": observables.currents.energy,
        "z_tilde": dist.z_tilde,
        "tail_bound": dist.tail_bound,
        "ratio_check": dist.ratio_check,
        "gibbs_temperature": reference_t,
    }
    return OutputTable(
        columns=["n", "rho_n", "gibbs_rho_n"],
        rows=rows,
        meta=build_meta(CommandName.NESS, config, dist.n_max, summary),
    )
