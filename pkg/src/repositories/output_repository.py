"""
Repositorio de archivos de salida.

Escribe tablas en CSV (pandas, 17 dígitos significativos, metadatos en
líneas ``#``) o JSON (un objeto {schema_version, meta, columns, rows}).
Ninguna salida contiene marcas de tiempo: misma configuración, mismos bytes.
"""

import io
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, Field

from core.config import settings
from core.exceptions import ConfigError
from enums import OutputFormat


logger = logging.getLogger(__name__)


class OutputTable(BaseModel):
    """Tabla lista para escribir: columnas, filas y metadatos."""

    columns: List[str]
    rows: List[List[Any]]
    meta: Dict[str, Any] = Field(default_factory=dict)


def _clean(value: Any) -> Any:
    """Convierte NaN/inf y tipos de numpy en valores JSON."""
    if isinstance(value, dict):
        return {key: _clean(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(item) for item in value]
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


class OutputRepository:
    """Repositorio para serializar tablas de resultados."""

    def render(self, table: OutputTable, fmt: OutputFormat) -> str:
        """
        Serializa una tabla.

        Args:
            table: Tabla a escribir
            fmt: Formato de salida

        Returns:
            Texto del archivo
        """
        if fmt == OutputFormat.JSON:
            return self._render_json(table)
        return self._render_csv(table)

    def _render_json(self, table: OutputTable) -> str:
        document = {
            "schema_version": settings.schema_version,
            "meta": _clean(table.meta),
            "columns": table.columns,
            "rows": _clean(table.rows),
        }
        return json.dumps(document, indent=2, allow_nan=False) + "\n"

    def _render_csv(self, table: OutputTable) -> str:
        buffer = io.StringIO()
        for key, value in _clean(table.meta).items():
            buffer.write(f"# {key}: {json.dumps(value, allow_nan=False)}\n")
        frame = pd.DataFrame(table.rows, columns=table.columns)
        frame.to_csv(
            buffer,
            index=False,
            float_format=f"%.{settings.csv_significant_digits}g",
            na_rep="",
            lineterminator="\n",
        )
        return buffer.getvalue()

    def write(
        self,
        table: OutputTable,
        fmt: OutputFormat,
        path: Optional[str] = None
    ) -> str:
        """
        Escribe una tabla en ``path`` o en stdout.

        Args:
            table: Tabla a escribir
            fmt: Formato
            path: Ruta de salida (None = stdout)

        Returns:
            Ruta escrita o ``"-"`` para stdout

        Raises:
            ConfigError: Si no se puede escribir el archivo
        """
        text = self.render(table, fmt)
        if path is None or path == "-":
            sys.stdout.write(text)
            return "-"
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot write output file {path}: {exc.strerror}") from exc
        logger.debug("wrote %d rows to %s", len(table.rows), path)
        return path
