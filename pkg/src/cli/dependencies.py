"""
Dependencias de los comandos del CLI.

Provee funciones para construir lo que cada comando necesita:
- Configuración de la corrida validada
- Nivel de logging
- Servicio de auditoría y repositorio de salida
"""

import argparse
import logging

from pydantic import ValidationError

from core.config import settings
from core.exceptions import ConfigError
from repositories.config_repository import ConfigRepository
from repositories.output_repository import OutputRepository
from schemas.run_config import RunConfig
from services.audit_service import AuditService


def _describe(exc: ValidationError) -> str:
    messages = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error["loc"])
        messages.append(f"{location}: {error['msg']}" if location else error["msg"])
    return "; ".join(messages)


def get_run_config(args: argparse.Namespace) -> RunConfig:
    """
    Construye la configuración de la corrida.

    Carga el archivo de ``--config``, aplica los ``--set`` y luego ``--tol``.

    Args:
        args: Argumentos parseados

    Returns:
        Configuración validada

    Raises:
        ConfigError: Si el archivo, los overrides o la combinación de claves no son válidos
    """
    repository = ConfigRepository()
    values = repository.apply_overrides(repository.load(args.config), args.overrides)
    if args.tol is not None:
        values["tol"] = args.tol
    try:
        return RunConfig.model_validate(values)
    except ValidationError as exc:
        raise ConfigError(f"invalid configuration: {_describe(exc)}") from exc


def log_level(args: argparse.Namespace) -> int:
    """Nivel de logging según ``--quiet``/``--verbose`` y ``settings.log_level``."""
    if getattr(args, "quiet", False):
        return logging.ERROR
    if getattr(args, "verbose", False):
        return logging.DEBUG
    return logging.getLevelName(settings.log_level)


def get_audit_service() -> AuditService:
    """Registro de eventos nuevo para una corrida."""
    return AuditService()


def get_output_repository() -> OutputRepository:
    """Repositorio de salida."""
    return OutputRepository()
