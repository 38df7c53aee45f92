"""
Comando ``tss``: tiempo de relajación en función de χ.
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
    Calcula λ₁ y t_ss por χ con las referencias armónica y de dos niveles.

    Args:
        config: Configuración con ``axis = chi`` o ``chis``
        audit: Registro de eventos
        threads: Tamaño del pool de hilos

    Returns:
        Tabla con una fila por χ
    """
    columns, rows = ScanService(config, audit, threads).tss()
    status = [row[columns.index("status")] for row in rows]
    summary = {"points": len(rows), "failed": status.count("failed")}
    n_max = [row[columns.index("n_max")] for row in rows]
    return OutputTable(
        columns=columns,
        rows=rows,
        meta=build_meta(CommandName.TSS, config, n_max, summary),
    )
