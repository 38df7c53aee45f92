"""
Utilidades de mallas para barridos y series temporales.

Sintaxis aceptada:
- ``"a,b,c"``: valores explícitos
- ``"start:stop:num"``: ``num`` puntos equiespaciados, extremos incluidos
- ``"log:start:stop:num"``: ``num`` puntos logarítmicos, extremos incluidos
"""

from typing import List, Sequence, Union

import numpy as np


GridInput = Union[str, float, int, Sequence[float]]


def parse_grid(value: GridInput) -> List[float]:
    """
    Convierte una especificación de malla en una lista de floats.

    Args:
        value: Cadena con la sintaxis del módulo, número o secuencia

    Returns:
        Lista de valores en el orden dado

    Raises:
        ValueError: Si la especificación no es válida o queda vacía
    """
    if isinstance(value, (int, float)):
        return [float(value)]
    if not isinstance(value, str):
        values = [float(v) for v in value]
        if not values:
            raise ValueError("grid must not be empty")
        return values

    text = value.strip()
    if not text:
        raise ValueError("grid must not be empty")

    if ":" in text:
        parts = [part.strip() for part in text.split(":")]
        logarithmic = parts[0].lower() == "log"
        if logarithmic:
            parts = parts[1:]
        if len(parts) != 3:
            raise ValueError(f"range grid must look like start:stop:num, got {value!r}")
        start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
        if num < 1:
            raise ValueError("range grid needs at least one point")
        if logarithmic:
            if start <= 0.0 or stop <= 0.0:
                raise ValueError("log grid bounds must be positive")
            return [float(v) for v in np.logspace(np.log10(start), np.log10(stop), num)]
        return [float(v) for v in np.linspace(start, stop, num)]

    values = [float(part) for part in text.split(",") if part.strip()]
    if not values:
        raise ValueError("grid must not be empty")
    return values
