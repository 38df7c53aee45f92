"""
Jerarquía de excepciones de la librería.

Cada excepción lleva un ``exit_code`` (código de salida del CLI) y un
``detail`` legible, igual que un HTTPException lleva status y detalle:
- 2: error de configuración
- 3: falla numérica
"""

from typing import Optional


EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_FAILURE = 3


class SSBHError(Exception):
    """
    Excepción base de la librería.

    Attributes:
        detail: Mensaje legible del error
        exit_code: Código de salida que usa el CLI
    """

    exit_code: int = EXIT_NUMERICAL_FAILURE

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ConfigError(SSBHError):
    """Configuración inválida (archivo, flags o combinación de campos)."""

    exit_code = EXIT_CONFIG_ERROR


class NumericsError(SSBHError):
    """Base de las fallas numéricas."""

    exit_code = EXIT_NUMERICAL_FAILURE


class NonPositiveGap(NumericsError):
    """La frecuencia no supera el potencial químico (ω ≤ μ)."""


class DegenerateKernel(NumericsError):
    """Ambas ocupaciones de Bose son cero y el kernel de corriente es 0/0."""


class TruncationOverflow(NumericsError):
    """El nivel de truncación superaría el tope configurado."""


class InadmissibleTruncation(NumericsError):
    """La matriz truncada no conserva probabilidad (C_p no es ≪ D_p)."""


class EigenFailure(NumericsError):
    """El eigensolver tridiagonal falló o recibió entradas no finitas."""


class SpectralGapUnresolved(NumericsError):
    """El menor autovalor no nulo no se distingue del cero numérico."""


class NonPhysicalState(NumericsError):
    """La propagación produjo poblaciones negativas más allá de la tolerancia."""


class QuadratureFailure(NumericsError):
    """La cuadratura no convergió a la tolerancia pedida."""


class DomainError(NumericsError):
    """Argumento fuera del dominio de una función especial."""


class RequiresHarmonic(NumericsError):
    """La operación sólo está definida para χ = 0."""


class RequiresInteraction(NumericsError):
    """La operación requiere χ > 0 (propagación de poblaciones completa)."""


class DegenerateChi(NumericsError):
    """Fórmula asintótica singular en χ = 0."""


class ZeroDenominator(NumericsError):
    """La corriente de referencia con acoplamiento simétrico es cero."""


class NoSignChange(NumericsError):
    """R_J no cambia de signo en el intervalo dado."""
