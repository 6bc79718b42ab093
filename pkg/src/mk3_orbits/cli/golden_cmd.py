"""``mk3-orbits golden``: print the bundled reference tables."""

from __future__ import annotations

import click
from rich.table import Table

from ..fields.primefield import fp_make
from ..geometry import format_p1
from ..golden import GoldenTable
from ..kernel import encode
from ..orbits import format_sizes
from .helpers import console, fail


@click.command()
@click.argument("which", type=click.Choice(["census", "fibral", "w4", "reductions"]), default="census")
@click.option("-p", "--prime", "p", type=int, default=None, help="Only this prime.")
def golden(which: str, p: int | None) -> None:
    """Show reference orbit data shipped with the package."""
    tables = GoldenTable.load()

    if which == "census":
        table = Table(title="Reference census")
        table.add_column("p", style="cyan", justify="right")
        table.add_column("k", style="cyan", justify="right")
        table.add_column("Sizes")
        for (q, k), sizes in sorted(tables.census.items()):
            if p is None or q == p:
                table.add_row(str(q), str(k), format_sizes(sizes))
    elif which == "fibral":
        if p is None:
            fail(f"fibral needs -p; available: {', '.join(map(str, sorted(tables.fibral_w1)))}")
        counts = tables.fibral_w1.get(p)
        if counts is None:
            fail(f"no fibral reference for p={p}")
        ctx = fp_make(p)
        table = Table(title=f"Reference fibral orbits of W_1 over GF({p})")
        table.add_column("t", style="cyan", justify="right")
        table.add_column("Orbits", justify="right")
        for t, n in sorted(counts.items(), key=lambda item: (encode(ctx, item[0]) != p, encode(ctx, item[0]))):
            table.add_row(format_p1(ctx, t), str(n))
    elif which == "w4":
        table = Table(title="Reference W_4, p = 1 (mod 8)")
        table.add_column("p", style="cyan", justify="right")
        table.add_column("Sizes")
        for q, sizes in sorted(tables.w4_mod8.items()):
            if p is None or q == p:
                table.add_row(str(q), format_sizes(sizes))
    else:
        table = Table(title="Reference reductions")
        for col in ("Family", "p", "k", "a", "b", "g", "Size"):
            table.add_column(col, justify="right")
        for r in tables.reductions:
            if p is None or r.p == p:
                cells = (r.family, r.p, r.k, r.alpha, r.beta, r.gamma, r.size)
                table.add_row(*("-" if c is None else str(c) for c in cells))
    console.print(table)
