"""
Módulo de configuración centralizada de la librería.

Este módulo gestiona las tolerancias numéricas, los límites de truncación y
las opciones de salida usando Pydantic Settings para validación y type safety.
Los parámetros físicos de cada corrida NO viven aquí: se definen en
``schemas.run_config.RunConfig``.
"""

from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Configuración principal de la librería.

    Carga automáticamente las variables desde el entorno (prefijo ``SSBH_``)
    o desde un archivo .env y las valida.
    """

    # Application
    app_name: str = Field(default="ssbh-transport", alias="SSBH_APP_NAME")
    app_version: str = Field(default="1.0.0", alias="SSBH_APP_VERSION")
    log_level: str = Field(default="WARNING", alias="SSBH_LOG_LEVEL")

    # NESS - truncación
    default_tol: float = Field(default=1e-10, alias="SSBH_DEFAULT_TOL")
    truncation_cap: int = Field(default=200_000, alias="SSBH_TRUNCATION_CAP")
    tail_safety_factor: float = Field(default=1e-4, alias="SSBH_TAIL_SAFETY_FACTOR")
    admissibility_ratio: float = Field(default=1e-6, alias="SSBH_ADMISSIBILITY_RATIO")

    # Espectro del baño
    cutoff_margin: float = Field(default=100.0, alias="SSBH_CUTOFF_MARGIN")

    # Cuadratura
    quadrature_rel_tol: float = Field(default=1e-9, alias="SSBH_QUADRATURE_REL_TOL")
    quadrature_start_nodes: int = Field(default=32, alias="SSBH_QUADRATURE_START_NODES")
    quadrature_max_nodes: int = Field(default=256, alias="SSBH_QUADRATURE_MAX_NODES")
    quadrature_fallback_upper: float = Field(
        default=60.0,
        alias="SSBH_QUADRATURE_FALLBACK_UPPER"
    )

    # Rectificación
    reversal_max_iter: int = Field(default=60, alias="SSBH_REVERSAL_MAX_ITER")
    reversal_scan_points: int = Field(default=16, alias="SSBH_REVERSAL_SCAN_POINTS")

    # Dinámica
    dense_spectrum_check_max: int = Field(
        default=400,
        alias="SSBH_DENSE_SPECTRUM_CHECK_MAX"
    )
    time_grid_min: float = Field(default=1e-2, alias="SSBH_TIME_GRID_MIN")
    time_grid_max: float = Field(default=1e3, alias="SSBH_TIME_GRID_MAX")
    time_grid_points: int = Field(default=200, alias="SSBH_TIME_GRID_POINTS")

    # Concurrencia (None = paralelismo disponible)
    threads: Optional[int] = Field(default=None, alias="SSBH_THREADS")

    # Salida
    csv_significant_digits: int = Field(default=17, alias="SSBH_CSV_SIGNIFICANT_DIGITS")
    schema_version: str = Field(default="1.0", alias="SSBH_SCHEMA_VERSION")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
        populate_by_name=True
    )

    @field_validator("default_tol")
    @classmethod
    def validate_default_tol(cls, v: float) -> float:
        """
        Valida que la tolerancia relativa esté en (0, 1e-6].

        Args:
            v: Tolerancia relativa

        Returns:
            Tolerancia validada

        Raises:
            ValueError: Si la tolerancia está fuera de rango
        """
        if not 0.0 < v <= 1e-6:
            raise ValueError("default_tol must lie in (0, 1e-6]")
        return v

    @field_validator("quadrature_rel_tol")
    @classmethod
    def validate_quadrature_rel_tol(cls, v: float) -> float:
        """Valida que la tolerancia de cuadratura esté en [1e-12, 1e-6]."""
        if not 1e-12 <= v <= 1e-6:
            raise ValueError("quadrature_rel_tol must lie in [1e-12, 1e-6]")
        return v

    @field_validator(
        "truncation_cap",
        "quadrature_start_nodes",
        "quadrature_max_nodes",
        "reversal_max_iter",
        "reversal_scan_points",
        "time_grid_points",
        "csv_significant_digits",
    )
    @classmethod
    def validate_positive_int(cls, v: int) -> int:
        """Valida que los límites enteros sean positivos."""
        if v < 1:
            raise ValueError("value must be a positive integer")
        return v

    @field_validator("threads")
    @classmethod
    def validate_threads(cls, v: Optional[int]) -> Optional[int]:
        """Valida el número de hilos del pool de trabajo."""
        if v is not None and v < 1:
            raise ValueError("threads must be at least 1")
        return v

    @field_validator("log_level")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        """Normaliza el nivel de logging a mayúsculas."""
        return v.strip().upper()

    @property
    def units_note(self) -> str:
        """Nota de unidades incluida en cada archivo de salida."""
        return "energies in units of Omega0, time in units of 1/Omega0"


# Singleton de configuración
settings = Settings()
