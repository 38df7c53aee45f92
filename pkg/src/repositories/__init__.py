"""
Repositorios de archivos: configuraciones de entrada y tablas de salida.
"""
