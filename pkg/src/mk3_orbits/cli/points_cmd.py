"""``mk3-orbits points``: list W_k(F_p)."""

from __future__ import annotations

import click

from ..geometry import enumerate_points, format_p1, point_to_text
from .helpers import echo_json, make_surface, surface_options


@click.command()
@surface_options
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "csv", "json"]),
    default="text",
    show_default=True,
)
def points(p: int, k: int, fmt: str) -> None:
    """Print every point of W_k(F_p), one per line, ∞ written as ``inf``."""
    ctx, W = make_surface(p, k)
    pts = enumerate_points(W, ctx)
    if fmt == "json":
        echo_json([[format_p1(ctx, v) for v in P] for P in pts])
    elif fmt == "csv":
        click.echo("x,y,z")
        for P in pts:
            click.echo(",".join(format_p1(ctx, v) for v in P))
    else:
        for P in pts:
            click.echo(point_to_text(ctx, P))
