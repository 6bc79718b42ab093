"""``mk3-orbits linkcurve``: points and genus data of one linking curve."""

from __future__ import annotations

import click
from rich.table import Table

from ..fibers import c_curve_fiber_sizes, c_curve_points, genus_bound_data
from ..geometry import format_p1
from .helpers import console, echo_json, make_surface, parse_p1, surface_options


@click.command()
@surface_options
@click.option("--variant", type=click.IntRange(1, 3), default=1, show_default=True, help="Scanned coordinate.")
@click.option("--bases", nargs=2, required=True, help="Bases of the two fixed fibers, in axis order.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def linkcurve(p: int, k: int, variant: int, bases: tuple[str, str], as_json: bool) -> None:
    """Count F_p-points of the curve joining two fibers and bound its genus."""
    ctx, W = make_surface(p, k)
    b1, b2 = (parse_p1(ctx, b) for b in bases)
    pts = c_curve_points(W, ctx, variant, (b1, b2))
    sizes = c_curve_fiber_sizes(W, ctx, variant, (b1, b2))
    genus = genus_bound_data(W, ctx, b1, b2, variant)
    histogram = {n: sum(1 for v in sizes.values() if v == n) for n in (0, 1, 2, 4)}

    if as_json:
        echo_json(
            {
                "p": p,
                "k": k % p,
                "variant": variant,
                "bases": [format_p1(ctx, b1), format_p1(ctx, b2)],
                "points": len(pts),
                "fiber_histogram": histogram,
                "A": genus.A,
                "B": genus.B,
                "genus_bound": float(genus.bound),
            }
        )
        return
    console.print(f"C({variant}) over ({format_p1(ctx, b1)}, {format_p1(ctx, b2)}) on {W}: {len(pts)} points")
    table = Table(title="Points per scanned value")
    table.add_column("Points", style="cyan", justify="right")
    table.add_column("Values", justify="right")
    for n, count in histogram.items():
        table.add_row(str(n), str(count))
    console.print(table)
    console.print(f"A = {genus.A}, B = {genus.B}, genus <= {genus.bound}")
