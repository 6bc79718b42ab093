"""``mk3-orbits singular``: singular points, singular fibers and flagged linking curves."""

from __future__ import annotations

import click
from rich.table import Table

from ..fibers import count_c_singular_points
from ..geometry import format_p1, p1_elements, point_to_text, singular_fibers, singular_points
from .helpers import console, echo_json, make_surface, surface_options


@click.command()
@surface_options
@click.option("--axis", type=click.IntRange(1, 3), default=1, show_default=True, help="Fiber direction.")
@click.option("--c-curves", is_flag=True, help="Count points whose linking curves may be singular.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def singular(p: int, k: int, axis: int, c_curves: bool, as_json: bool) -> None:
    """Singular points of W_k(F_p) and the fibers along *axis* that are singular."""
    ctx, W = make_surface(p, k)
    points = sorted(singular_points(W), key=str)
    fibers = {}
    for t in p1_elements(ctx):
        found = singular_fibers(W, axis, t)
        if found is not None:
            fibers[t] = sorted(found, key=str)
    count = count_c_singular_points(W, ctx) if c_curves else None

    if as_json:
        payload = {
            "p": p,
            "k": k % p,
            "singular_points": [point_to_text(ctx, P) for P in points],
            "singular_fibers": {
                format_p1(ctx, t): [point_to_text(ctx, P) for P in pts] for t, pts in fibers.items()
            },
        }
        if count is not None:
            payload["c_singular"] = {"count": count.count, "bound": count.bound, "total": count.total}
        echo_json(payload)
        return

    console.print(f"[bold]{W}[/bold]: {len(points)} singular points")
    for P in points:
        console.print(f"  {point_to_text(ctx, P)}")
    table = Table(title=f"Singular fibers along axis {axis}")
    table.add_column("t", style="cyan", justify="right")
    table.add_column("Singular points")
    for t, pts in fibers.items():
        table.add_row(format_p1(ctx, t), ", ".join(point_to_text(ctx, P) for P in pts))
    console.print(table)
    if count is not None:
        color = "green" if count.within_bound else "red"
        console.print(
            f"flagged points: [{color}]{count.count}[/{color}] of {count.total} (bound {count.bound})"
        )
