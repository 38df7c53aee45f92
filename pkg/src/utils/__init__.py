"""
Utilidades compartidas.
"""

from utils.grids import parse_grid

__all__ = ["parse_grid"]
