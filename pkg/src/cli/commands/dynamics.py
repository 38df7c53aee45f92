"""
Comando ``dynamics``: relajación transitoria hacia el NESS.
"""

from typing import Optional

import numpy as np

from core.exceptions import ConfigError
from enums import CommandName
from models.bose_hubbard import bose, gibbs_populations
from repositories.output_repository import OutputTable
from schemas.params import BathParams
from schemas.run_config import RunConfig
from services.audit_service import AuditService
from services.dynamics_service import DynamicsService, evolve_harmonic
from cli.commands import build_meta


COLUMNS = ["t", "N", "H", "I1", "I2", "J1", "J2", "markov_flag"]


def run(config: RunConfig, audit: AuditService, threads: Optional[int] = None) -> OutputTable:
    """
    Propaga el estado inicial configurado sobre la malla ``times``.

    χ = 0 usa la forma cerrada armónica; χ > 0 propaga todas las poblaciones.
    El estado ``gibbs`` parte del equilibrio a ``gibbs_temperature`` (por
    defecto T₁).

    Args:
        config: Configuración sin eje de barrido
        audit: Registro de eventos
        threads: Sin uso

    Returns:
        Serie temporal con corrientes por baño y la marca de validez markoviana

    Raises:
        ConfigError: Si la configuración define un eje
        NumericsError: Si la propagación falla
    """
    if config.axis is not None:
        raise ConfigError("dynamics takes a single setup; remove axis/grid")

    setup = config.base_setup()
    service = DynamicsService(setup, config.tol, config.n_max, audit)
    times = None if config.times is None else np.asarray(config.times, dtype=float)
    start_t = config.gibbs_temperature or setup.bath1.temperature

    n_max = None
    if service.is_harmonic:
        n_initial = 0.0
        if config.initial_state == "gibbs":
            start = BathParams(gamma=setup.bath1.gamma, temperature=start_t, mu=setup.bath1.mu)
            n_initial = bose(setup.system.omega0, start)
        series = evolve_harmonic(setup, times, n_initial, audit)
    else:
        matrix = service.rate_matrix()
        n_max = matrix.size - 1
        rho0 = None
        if config.initial_state == "gibbs":
            rho0 = gibbs_populations(setup.system, start_t, n_max, setup.bath1.mu)
        series = service.evolve(times, rho0)

    rows = [
        [float(t), float(n), float(h), float(i1), float(i2), float(j1), float(j2), bool(flag)]
        for t, n, h, i1, i2, j1, j2, flag in zip(
            series.times,
            series.occupation,
            series.energy,
            series.particle1,
            series.particle2,
            series.energy1,
            series.energy2,
            series.markov_flags,
        )
    ]
    summary = {
        "initial_state": config.initial_state,
        "final_occupation": float(series.occupation[-1]),
        "markov_flagged_rows": int(np.count_nonzero(series.markov_flags)),
    }
    return OutputTable(
        columns=COLUMNS,
        rows=rows,
        meta=build_meta(CommandName.DYNAMICS, config, n_max, summary),
    )
