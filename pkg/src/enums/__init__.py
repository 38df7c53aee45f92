"""
Enumeraciones compartidas por el CLI, los servicios y los schemas.
"""

import enum


class ScanAxis(str, enum.Enum):
    """Ejes de barrido soportados por ``scan``."""
    CHI = "chi"
    T1_OVER_OMEGA0 = "T1_over_omega0"
    GAMMA = "gamma"
    DELTA_T = "deltaT"


class OutputFormat(str, enum.Enum):
    """Formatos de salida."""
    CSV = "csv"
    JSON = "json"


class QuadratureScheme(str, enum.Enum):
    """Esquemas de cuadratura sobre la semirrecta."""
    GAUSS_LAGUERRE = "gauss_laguerre"
    ADAPTIVE = "adaptive"


class CommandName(str, enum.Enum):
    """Subcomandos del CLI."""
    NESS = "ness"
    SCAN = "scan"
    DYNAMICS = "dynamics"
    TSS = "tss"


class AuditAction(str, enum.Enum):
    """Tipos de eventos registrados durante una corrida."""
    RUN_STARTED = "run_started"
    TRUNCATION_SELECTED = "truncation_selected"
    POINT_FAILED = "point_failed"
    MARKOV_FLAGGED = "markov_flagged"
    OUTPUT_WRITTEN = "output_written"
    RUN_FINISHED = "run_finished"
