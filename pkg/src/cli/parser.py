"""
Parser de argumentos del CLI.

Subcomandos ``ness``, ``scan``, ``dynamics`` y ``tss`` con un conjunto común
de flags (configuración, overrides, salida y tolerancia).
"""

import argparse
from typing import Optional, Sequence

from core.config import settings
from enums import CommandName, OutputFormat


_HELP = {
    CommandName.NESS: "steady-state populations and observables for one setup",
    CommandName.SCAN: "currents, scaling columns and rectification along a grid",
    CommandName.DYNAMICS: "transient relaxation of populations, occupation and currents",
    CommandName.TSS: "relaxation time t_ss as a function of chi",
}


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key = value config file or a previous JSON output")
    common.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one config key (repeatable)",
    )
    common.add_argument("--output", metavar="PATH", help="output file (default: stdout)")
    common.add_argument(
        "--format",
        dest="fmt",
        type=OutputFormat,
        choices=list(OutputFormat),
        metavar="{csv,json}",
        default=OutputFormat.CSV,
        help="output format",
    )
    common.add_argument("--tol", type=float, help=f"truncation tolerance (default {settings.default_tol:g})")
    common.add_argument("--threads", type=_positive_int, help="worker pool size (default: available parallelism)")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--quiet", action="store_true", help="log errors only")
    verbosity.add_argument("--verbose", action="store_true", help="log debug messages")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Construye el parser con todos los subcomandos."""
    parser = argparse.ArgumentParser(
        prog="ssbh",
        description="Single-site Bose-Hubbard transport between two thermal baths.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.app_version}")
    common = _common_flags()
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, text in _HELP.items():
        commands.add_parser(name.value, parents=[common], help=text, description=text)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """
    Parsea la línea de comandos.

    Args:
        argv: Argumentos (None = ``sys.argv[1:]``)

    Returns:
        Namespace con ``command`` convertido a ``CommandName``
    """
    args = build_parser().parse_args(argv)
    args.command = CommandName(args.command)
    return args
