"""
Transporte en el modelo de Bose-Hubbard de un sitio entre dos baños térmicos.
"""

__version__ = "1.0.0"
