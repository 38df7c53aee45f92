"""
Exportación centralizada de todos los schemas.

Facilita los imports en otras partes de la librería.
"""

from schemas.params import (
    AsymmetryParams,
    BathParams,
    Setup,
    SpectralParams,
    SystemParams,
)
from schemas.results import (
    CurrentPair,
    GammaSweep,
    HarmonicRelaxation,
    HighTScaling,
    KernelValue,
    LevelRates,
    NesbRelaxation,
    NesbResult,
    NessDistribution,
    NessObservables,
    QuadratureResult,
    QuadratureSpec,
    RateMatrix,
    RectificationResult,
    ReversalResult,
    TimeSeries,
    TssResult,
)
from schemas.run_config import RunConfig

__all__ = [
    # Parámetros físicos
    "AsymmetryParams",
    "BathParams",
    "Setup",
    "SpectralParams",
    "SystemParams",
    # Resultados
    "CurrentPair",
    "GammaSweep",
    "HarmonicRelaxation",
    "HighTScaling",
    "KernelValue",
    "LevelRates",
    "NesbRelaxation",
    "NesbResult",
    "NessDistribution",
    "NessObservables",
    "QuadratureResult",
    "QuadratureSpec",
    "RateMatrix",
    "RectificationResult",
    "ReversalResult",
    "TimeSeries",
    "TssResult",
    # CLI
    "RunConfig",
]
