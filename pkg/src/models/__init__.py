"""
Exportación centralizada de las funciones del modelo.

Facilita los imports en otras partes de la librería.
"""

from models.bose_hubbard import (
    bose,
    gibbs_populations,
    level_energy,
    level_freq,
    spectral_density,
)

__all__ = [
    "bose",
    "gibbs_populations",
    "level_energy",
    "level_freq",
    "spectral_density",
]
