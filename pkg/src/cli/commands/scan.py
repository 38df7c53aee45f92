"""
Comando ``scan``: tabla de corrientes y rectificación a lo largo de un eje.
"""

from typing import Optional

from enums import CommandName
from repositories.output_repository import OutputTable
from schemas.run_config import RunConfig
from services.audit_service import AuditService
from services.scan_service import ScanService
from cli.commands import build_meta


def run(config: RunConfig, audit: AuditService, threads: Optional[int] = None) -> OutputTable:
    """
    Evalúa cada punto de la malla configurada.

    Los puntos que fallan quedan como filas nulas con ``status=failed``.

    Args:
        config: Configuración con ``axis`` y ``grid``
        audit: Registro de eventos
        threads: Tamaño del pool de hilos

    Returns:
        Tabla con una fila por punto, en el orden de la malla

    Raises:
        ConfigError: Si no hay eje de barrido
    """
    columns, rows = ScanService(config, audit, threads).scan()
    status = [row[columns.index("status")] for row in rows]
    summary = {
        "axis": config.axis.value,
        "points": len(rows),
        "failed": status.count("failed"),
    }
    n_max = [row[columns.index("n_max")] for row in rows]
    return OutputTable(
        columns=columns,
        rows=rows,
        meta=build_meta(CommandName.SCAN, config, n_max, summary),
    )
