"""``mk3-orbits cage``: connected fibers and the cage graph."""

from __future__ import annotations

from pathlib import Path

import click
from rich.table import Table

from ..fibers import cage_graph, cage_points, cage_to_dot, pi_connfib
from ..geometry import format_p1
from ..kernel import PointTable, encode
from ..report.generator import write_report
from .helpers import console, echo_json, make_surface, surface_options


@click.command()
@surface_options
@click.option("--dot", is_flag=True, help="Emit Graphviz source instead of the summary.")
@click.option(
    "-o",
    "--output",
    "output",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write the DOT source to this file.",
)
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def cage(p: int, k: int, dot: bool, output: Path | None, as_json: bool) -> None:
    """Bases of connected x-fibers and how their fibers join up."""
    ctx, W = make_surface(p, k)
    table = PointTable.build(W, ctx)
    graph = cage_graph(W, ctx, table)

    if dot or output is not None:
        source = cage_to_dot(W, ctx, graph)
        if output is not None:
            write_report(source, output)
            console.print(f"[green]✓ Cage graph written to {output}[/green]")
        else:
            click.echo(source, nl=False)
        return

    conn = sorted(pi_connfib(W, ctx, 1, table), key=lambda v: encode(ctx, v))
    if as_json:
        payload = graph.to_dict(ctx)
        payload["connected"] = [format_p1(ctx, v) for v in conn]
        payload["cage_points"] = len(cage_points(W, ctx, table))
        echo_json(payload)
        return

    console.print(f"[bold]{W}[/bold]: {len(conn)} connected x-fibers")
    console.print("  " + ", ".join(format_p1(ctx, v) for v in conn))
    summary = Table(title="Cage components")
    summary.add_column("#", style="cyan", justify="right")
    summary.add_column("Size", justify="right")
    summary.add_column("Bases")
    for i, comp in enumerate(graph.components, start=1):
        summary.add_row(str(i), str(len(comp)), ", ".join(format_p1(ctx, v) for v in comp))
    console.print(summary)
