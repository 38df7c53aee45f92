"""
Comandos del CLI.

Cada comando recibe la configuración validada y devuelve un ``OutputTable``
cuyos metadatos describen la corrida completa.
"""

from typing import Any, Callable, Dict, Optional

from core.config import settings
from enums import CommandName
from repositories.output_repository import OutputTable
from schemas.run_config import RunConfig
from services.audit_service import AuditService


Command = Callable[[RunConfig, AuditService, Optional[int]], OutputTable]


def build_meta(
    command: CommandName,
    config: RunConfig,
    n_max: Any = None,
    summary: Optional[Dict[str, Any]] = None
) -> Dict[str, Any]:
    """
    Metadatos comunes de un archivo de salida.

    Args:
        command: Subcomando ejecutado
        config: Configuración resuelta (se reingesta tal cual)
        n_max: Truncación usada (entero o lista por punto)
        summary: Observables escalares del comando

    Returns:
        Diccionario de metadatos sin marcas de tiempo
    """
    meta: Dict[str, Any] = {
        "command": command.value,
        "version": settings.app_version,
        "units": settings.units_note,
        "config": config.resolved(),
        "tolerances": {
            "tol": config.tol,
            "tail_safety_factor": settings.tail_safety_factor,
            "admissibility_ratio": settings.admissibility_ratio,
        },
        "n_max": n_max,
    }
    if summary is not None:
        meta["summary"] = summary
    return meta


def get_command(name: CommandName) -> Command:
    """Función que implementa un subcomando."""
    from cli.commands import dynamics, ness, scan, tss

    registry: Dict[CommandName, Command] = {
        CommandName.NESS: ness.run,
        CommandName.SCAN: scan.run,
        CommandName.DYNAMICS: dynamics.run,
        CommandName.TSS: tss.run,
    }
    return registry[name]
