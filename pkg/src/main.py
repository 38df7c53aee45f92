"""
Punto de entrada del CLI ``ssbh``.

Configura:
- Logging a stderr con el nivel de ``settings`` o de ``--quiet``/``--verbose``
- Construcción de la configuración de la corrida
- Despacho al subcomando y escritura de la salida
- Traducción de errores a códigos de salida (0 ok, 2 configuración, 3 numérico)
"""

import logging
import os
import sys
from typing import Optional, Sequence

# Agregar el directorio actual (src) al path para permitir importaciones absolutas
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from pydantic import ValidationError

from core.config import settings
from core.exceptions import EXIT_CONFIG_ERROR, EXIT_OK, SSBHError
from cli.commands import get_command
from cli.dependencies import get_audit_service, get_output_repository, get_run_config, log_level
from cli.parser import parse_args


logger = logging.getLogger(__name__)


def configure_logging(level: int) -> None:
    """Configura el logger raíz una sola vez por proceso."""
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger().setLevel(level)
    logging.captureWarnings(True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Ejecuta un subcomando.

    Args:
        argv: Argumentos de línea de comandos (None = ``sys.argv[1:]``)

    Returns:
        Código de salida
    """
    args = parse_args(argv)
    configure_logging(log_level(args))
    audit = get_audit_service()
    command = args.command.value
    audit.log_run_started(command, version=settings.app_version)

    try:
        config = get_run_config(args)
        table = get_command(args.command)(config, audit, args.threads)
        path = get_output_repository().write(table, args.fmt, args.output)
        audit.log_output_written(path, args.fmt.value, len(table.rows))
    except SSBHError as exc:
        sys.stderr.write(f"error: {exc.detail}\n")
        audit.log_run_finished(command, exc.exit_code)
        return exc.exit_code
    except ValidationError as exc:
        # Un punto armado desde una configuración válida puede violar Setup (p. ej. μ ≥ ω₀)
        sys.stderr.write(f"error: invalid setup: {exc.errors()[0]['msg']}\n")
        audit.log_run_finished(command, EXIT_CONFIG_ERROR)
        return EXIT_CONFIG_ERROR

    audit.log_run_finished(command, EXIT_OK)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
