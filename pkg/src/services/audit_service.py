"""
Servicio de auditoría para el registro de eventos de una corrida.

Registra eventos importantes para trazabilidad y análisis:
- Inicio y fin de cada comando
- Nivel de truncación elegido
- Puntos de un barrido que fallaron
- Filas fuera del régimen markoviano
- Archivos de salida escritos

Los registros no llevan marca de tiempo, así que dos corridas idénticas
producen exactamente los mismos eventos.
"""

import logging
import threading
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from enums import AuditAction


logger = logging.getLogger(__name__)


class AuditEntry(BaseModel):
    """Un evento registrado."""

    action: AuditAction
    details: Dict[str, Any] = Field(default_factory=dict)

    model_config = ConfigDict(frozen=True)

    def format(self) -> str:
        """Representación ``action=... clave=valor`` para el log."""
        pairs = " ".join(f"{key}={value}" for key, value in self.details.items())
        return f"action={self.action.value} {pairs}".rstrip()


class AuditService:
    """
    Servicio para registrar eventos de una corrida.

    Centraliza el logging estructurado de los comandos del CLI. Es seguro
    usarlo desde los hilos del pool de barridos.
    """

    def __init__(self):
        """Inicializa el servicio con un registro vacío."""
        self._entries: List[AuditEntry] = []
        self._lock = threading.Lock()

    @property
    def entries(self) -> List[AuditEntry]:
        """Copia de los eventos registrados, en orden."""
        with self._lock:
            return list(self._entries)

    def log_event(
        self,
        action: AuditAction,
        level: int = logging.INFO,
        **details: Any
    ) -> AuditEntry:
        """
        Registra un evento.

        Args:
            action: Tipo de evento
            level: Nivel de logging de la línea emitida
            **details: Pares clave-valor del evento

        Returns:
            Registro creado
        """
        entry = AuditEntry(action=action, details=details)
        with self._lock:
            self._entries.append(entry)
        logger.log(level, entry.format())
        return entry

    def log_run_started(self, command: str, **details: Any) -> AuditEntry:
        """Registra el inicio de un comando."""
        return self.log_event(AuditAction.RUN_STARTED, command=command, **details)

    def log_truncation(self, n_max: int, tol: float) -> AuditEntry:
        """Registra el nivel de truncación elegido."""
        return self.log_event(
            AuditAction.TRUNCATION_SELECTED,
            level=logging.DEBUG,
            n_max=n_max,
            tol=tol,
        )

    def log_point_failed(self, index: int, value: Optional[float], reason: str) -> AuditEntry:
        """
        Registra un punto de barrido que falló.

        Args:
            index: Índice en la malla
            value: Valor del eje en ese punto
            reason: Mensaje de la excepción

        Returns:
            Registro de auditoría
        """
        return self.log_event(
            AuditAction.POINT_FAILED,
            level=logging.WARNING,
            index=index,
            value=value,
            reason=reason,
        )

    def log_markov_flagged(self, rows: int, omega_c: float) -> AuditEntry:
        """Registra cuántas filas quedan antes del tiempo de correlación 1/ω_c."""
        return self.log_event(
            AuditAction.MARKOV_FLAGGED,
            level=logging.WARNING,
            rows=rows,
            threshold=1.0 / omega_c,
        )

    def log_output_written(self, path: str, fmt: str, rows: int) -> AuditEntry:
        """Registra un archivo de salida escrito."""
        return self.log_event(AuditAction.OUTPUT_WRITTEN, path=path, format=fmt, rows=rows)

    def log_run_finished(self, command: str, exit_code: int) -> AuditEntry:
        """Registra el fin de un comando y su código de salida."""
        return self.log_event(AuditAction.RUN_FINISHED, command=command, exit_code=exit_code)
