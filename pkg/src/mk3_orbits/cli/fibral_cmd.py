"""``mk3-orbits fibral``: fibral orbit counts."""

from __future__ import annotations

import click
from rich.table import Table

from ..geometry import format_p1
from ..kernel import encode
from ..orbits import fibral_orbit_decomposition, fibral_table
from .helpers import console, echo_json, fail, make_surface, parse_p1, surface_options


@click.command()
@surface_options
@click.option("--axis", type=click.IntRange(1, 3), default=1, show_default=True, help="Fixed coordinate.")
@click.option("-t", "base", default=None, help="Fiber base value ('inf' allowed).")
@click.option("--table", "whole", is_flag=True, help="Counts for every base over P¹(F_p).")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def fibral(p: int, k: int, axis: int, base: str | None, whole: bool, as_json: bool) -> None:
    """Number of orbits of the fibral group inside one fiber, or in all of them."""
    if (base is None) == (not whole):
        fail("give exactly one of -t or --table")
    ctx, W = make_surface(p, k)

    if base is not None:
        t = parse_p1(ctx, base)
        n = len(fibral_orbit_decomposition(W, ctx, axis, t).orbits)
        if as_json:
            echo_json({"p": p, "k": k % p, "axis": axis, "t": format_p1(ctx, t), "orbits": n})
        else:
            click.echo(str(n))
        return

    counts = fibral_table(W, ctx, axis)
    # ∞ first, then 0, 1, ..., p-1
    ordered = sorted(counts.items(), key=lambda item: (encode(ctx, item[0]) != p, encode(ctx, item[0])))
    if as_json:
        echo_json({format_p1(ctx, t): n for t, n in ordered})
        return
    table = Table(title=f"Fibral orbits of {W}, axis {axis}")
    table.add_column("t", style="cyan", justify="right")
    table.add_column("Orbits", justify="right")
    for t, n in ordered:
        table.add_row(format_p1(ctx, t), str(n))
    console.print(table)
