"""Shared CLI helpers."""

from __future__ import annotations

import json
import logging
import sys
from typing import Any, Callable, NoReturn, TypeVar

import click
from rich.console import Console
from rich.logging import RichHandler

from ..config.loader import load_config_or_default
from ..config.models import RunConfig
from ..errors import Mk3Error
from ..fields.parse import parse_element
from ..fields.primefield import PrimeFieldCtx, fp_make
from ..geometry import INF, P1Elem, WkSurface, wk

console = Console()
err_console = Console(stderr=True)

EXIT_MISMATCH = 1
EXIT_INPUT = 2

F = TypeVar("F", bound=Callable[..., Any])


def configure_logging(verbose: int) -> None:
    """WARNING by default, INFO for ``-v``, DEBUG for ``-vv``."""
    level = logging.WARNING if verbose <= 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logger = logging.getLogger("mk3_orbits")
    logger.setLevel(level)
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        logger.addHandler(RichHandler(console=err_console, show_path=False, markup=False))


def run_config() -> RunConfig:
    """Load ``mk3-orbits.toml`` if one is found, defaults otherwise."""
    return load_config_or_default()


def fail(message: str, code: int = EXIT_INPUT) -> NoReturn:
    err_console.print(f"[red]{message}[/red]")
    sys.exit(code)


def surface_options(f: F) -> F:
    """``-p/--prime`` and ``-k`` for commands working on one W_k(F_p)."""
    f = click.option("-k", "k", type=int, required=True, help="Surface parameter k (nonzero mod p).")(f)
    f = click.option("-p", "--prime", "p", type=int, required=True, help="Odd prime p.")(f)
    return f  # type: ignore[return-value]


def make_surface(p: int, k: int) -> tuple[PrimeFieldCtx, WkSurface]:
    ctx = fp_make(p)
    return ctx, wk(ctx, k)


def parse_p1(ctx: PrimeFieldCtx, text: str) -> P1Elem:
    """``inf`` or a residue expression such as ``-3`` or ``1/2``."""
    if text.strip() in {"inf", "oo", "∞"}:
        return INF
    return parse_element(ctx, text)


def echo_json(payload: Any) -> None:
    click.echo(json.dumps(payload, indent=2, default=str))


class Mk3Group(click.Group):
    """Click group that turns library errors into a red message and exit code 2."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except (Mk3Error, ValueError, FileNotFoundError) as exc:
            fail(str(exc), EXIT_INPUT)
