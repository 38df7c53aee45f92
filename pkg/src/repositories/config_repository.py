"""
Repositorio de configuraciones de corrida.

Lee archivos ``clave = valor`` con comentarios ``#`` y reingesta la salida
JSON de una corrida previa (toma ``meta.config``). Todo el parseo de
archivos de configuración está encapsulado aquí.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

from core.exceptions import ConfigError


logger = logging.getLogger(__name__)


class ConfigRepository:
    """
    Repositorio para cargar configuraciones crudas.

    Devuelve diccionarios sin validar; la validación la hace ``RunConfig``.
    """

    def load(self, path: Optional[str]) -> Dict[str, Any]:
        """
        Carga un archivo de configuración.

        Args:
            path: Ruta del archivo (None = configuración vacía)

        Returns:
            Diccionario clave → valor crudo

        Raises:
            ConfigError: Si el archivo no existe o tiene líneas inválidas
        """
        if path is None:
            return {}
        file_path = Path(path)
        try:
            text = file_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from exc

        if file_path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
            return self._load_json(text, path)
        return self.parse_key_values(text.splitlines(), source=path)

    def parse_key_values(self, lines: Iterable[str], source: str = "<config>") -> Dict[str, Any]:
        """
        Parsea líneas ``clave = valor``.

        Args:
            lines: Líneas del archivo
            source: Nombre para los mensajes de error

        Returns:
            Diccionario clave → texto del valor

        Raises:
            ConfigError: Si una línea no tiene la forma esperada o repite una clave
        """
        values: Dict[str, Any] = {}
        for number, raw in enumerate(lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, separator, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not separator or not key:
                raise ConfigError(f"{source}:{number}: expected 'key = value', got {raw!r}")
            if key in values:
                raise ConfigError(f"{source}:{number}: duplicate key {key!r}")
            values[key] = value
        return values

    def _load_json(self, text: str, source: str) -> Dict[str, Any]:
        try:
            document = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{source}: invalid JSON ({exc.msg})") from exc
        if not isinstance(document, dict):
            raise ConfigError(f"{source}: JSON config must be an object")
        if "meta" in document:
            config = document["meta"].get("config")
            if not isinstance(config, dict):
                raise ConfigError(f"{source}: output file has no meta.config object")
            logger.debug("re-ingesting config from output file %s", source)
            return dict(config)
        return document

    def apply_overrides(self, values: Dict[str, Any], overrides: Iterable[str]) -> Dict[str, Any]:
        """
        Aplica overrides ``--set clave=valor`` sobre la configuración.

        Args:
            values: Configuración base
            overrides: Pares ``clave=valor``

        Returns:
            Nueva configuración con los overrides aplicados

        Raises:
            ConfigError: Si un override no tiene la forma ``clave=valor``
        """
        merged = dict(values)
        for item in overrides or ():
            key, separator, value = item.partition("=")
            if not separator or not key.strip():
                raise ConfigError(f"--set expects key=value, got {item!r}")
            merged[key.strip()] = value.strip()
        return merged
