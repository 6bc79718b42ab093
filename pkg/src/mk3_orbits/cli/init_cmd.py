"""``mk3-orbits init``: write a commented default config file."""

from __future__ import annotations

from pathlib import Path

import click

from ..config.loader import CONFIG_FILENAME, dump_config
from ..config.models import RunConfig
from .helpers import console, fail


@click.command()
@click.option(
    "-d",
    "--directory",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("."),
    help="Directory to write the config into.",
)
@click.option("--force", is_flag=True, help="Overwrite an existing config file.")
def init_cmd(directory: Path, force: bool) -> None:
    """Create ``mk3-orbits.toml`` with default census, cache and char0 settings."""
    target = directory / CONFIG_FILENAME
    if target.exists() and not force:
        fail(f"{target} already exists (use --force to overwrite)")
    directory.mkdir(parents=True, exist_ok=True)
    target.write_text(dump_config(RunConfig()))
    console.print(f"[green]✓ Wrote {target}[/green]")
