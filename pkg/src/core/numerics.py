"""
Núcleos numéricos compartidos.

- Función Gamma con validación de dominio
- Cuadratura sobre la semirrecta con peso y^{-1/2} e^{-y}
- Autovalores de matrices simétricas tridiagonales
"""

import logging
from functools import lru_cache
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy import integrate, linalg, special

from core.config import settings
from core.exceptions import DomainError, EigenFailure, QuadratureFailure
from enums import QuadratureScheme
from schemas.results import QuadratureResult, QuadratureSpec


logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]


def gamma_fn(x: float) -> float:
    """
    Función Gamma Γ(x) para x > 0.

    Args:
        x: Argumento real positivo

    Returns:
        Γ(x)

    Raises:
        DomainError: Si x ≤ 0, no es finito o Γ(x) desborda
    """
    if not np.isfinite(x) or x <= 0.0:
        raise DomainError(f"gamma_fn requires a finite x > 0, got {x}")
    value = float(special.gamma(x))
    if not np.isfinite(value):
        raise DomainError(f"gamma_fn overflows at x={x}")
    return value


@lru_cache(maxsize=16)
def _laguerre_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    # Gauss-Laguerre generalizado con α = -1/2
    x, w = special.roots_genlaguerre(nodes, -0.5)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def _evaluate(f: Integrand, x: np.ndarray) -> np.ndarray:
    return np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)


def _converged(value: float, previous: float, rel_tol: float) -> bool:
    delta = abs(value - previous)
    return delta <= rel_tol * abs(value) or delta == 0.0


def integrate_halfline(
    f: Integrand,
    spec: Optional[QuadratureSpec] = None
) -> QuadratureResult:
    """
    Integra ∫₀^∞ y^{-1/2} e^{-y} f(y) dy.

    Usa Gauss-Laguerre generalizado duplicando nodos hasta que dos
    resultados consecutivos coincidan a ``rel_tol``. Si no converge antes de
    ``settings.quadrature_max_nodes`` (integrandos con √y, por ejemplo),
    integra 2 e^{-u²} f(u²) con ``scipy.integrate.quad`` en [0, √y_max].

    Args:
        f: Integrando vectorizado sobre arreglos de numpy
        spec: Esquema y tolerancia (por defecto los de ``settings``)

    Returns:
        Valor, error estimado, esquema usado y número de nodos

    Raises:
        QuadratureFailure: Si ningún esquema alcanza la tolerancia
    """
    spec = spec or QuadratureSpec()

    if spec.scheme == QuadratureScheme.GAUSS_LAGUERRE:
        nodes = spec.node_count
        previous = None
        while nodes <= settings.quadrature_max_nodes:
            x, w = _laguerre_rule(nodes)
            value = float(np.dot(w, _evaluate(f, x)))
            if not np.isfinite(value):
                break
            if previous is not None and _converged(value, previous, spec.rel_tol):
                return QuadratureResult(
                    value=value,
                    error=abs(value - previous),
                    scheme=QuadratureScheme.GAUSS_LAGUERRE,
                    nodes=nodes,
                )
            previous = value
            nodes *= 2
        logger.debug(
            "Gauss-Laguerre did not converge up to %d nodes, using adaptive fallback",
            settings.quadrature_max_nodes,
        )

    return _integrate_adaptive(f, spec.rel_tol)


def _integrate_adaptive(f: Integrand, rel_tol: float) -> QuadratureResult:
    upper = float(np.sqrt(settings.quadrature_fallback_upper))

    def substituted(u: float) -> float:
        return 2.0 * np.exp(-u * u) * float(_evaluate(f, np.array([u * u]))[0])

    value, error, info = integrate.quad(
        substituted,
        0.0,
        upper,
        epsabs=0.0,
        epsrel=rel_tol,
        limit=200,
        full_output=True,
    )[:3]
    if not np.isfinite(value) or error > 10.0 * rel_tol * abs(value) + 1e-300:
        raise QuadratureFailure(
            f"adaptive quadrature did not reach rel_tol={rel_tol} "
            f"(value={value}, error={error})"
        )
    return QuadratureResult(
        value=float(value),
        error=float(error),
        scheme=QuadratureScheme.ADAPTIVE,
        nodes=int(info["neval"]),
    )


def eig_sym_tridiag(
    diag: np.ndarray,
    offdiag: np.ndarray,
    vectors: bool = False
) -> Union[np.ndarray, Tuple[np.ndarray, np.ndarray]]:
    """
    Autovalores (y opcionalmente autovectores) de una matriz simétrica tridiagonal.

    Args:
        diag: Diagonal principal
        offdiag: Subdiagonal (igual a la superdiagonal)
        vectors: Si se devuelven también los autovectores (columnas)

    Returns:
        Autovalores en orden ascendente, o la tupla (autovalores, autovectores)

    Raises:
        EigenFailure: Si las entradas no son finitas o el solver falla
    """
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    if diag.ndim != 1 or offdiag.shape != (max(diag.size - 1, 0),):
        raise EigenFailure("offdiag must have one element less than diag")
    if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(offdiag))):
        raise EigenFailure("tridiagonal matrix has non-finite entries")

    if diag.size == 1:
        eigvals = diag.copy()
        return (eigvals, np.ones((1, 1))) if vectors else eigvals

    try:
        if vectors:
            eigvals, eigvecs = linalg.eigh_tridiagonal(diag, offdiag)
            return eigvals, eigvecs
        return linalg.eigh_tridiagonal(diag, offdiag, eigvals_only=True)
    except (linalg.LinAlgError, ValueError) as exc:
        raise EigenFailure(f"tridiagonal eigensolver failed: {exc}") from exc
