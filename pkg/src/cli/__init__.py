"""
Interfaz de línea de comandos ``ssbh``.
"""
