"""``mk3-orbits orbits``: nontrivial orbit sizes of W_k(F_p)."""

from __future__ import annotations

import click
from rich.table import Table

from ..fields.primefield import fp_make
from ..geometry import wk
from ..orbits import (
    CensusOptions,
    census_k_values,
    format_sizes,
    generators_for,
    nontrivial_sizes,
    orbit_decomposition,
)
from .helpers import console, echo_json


@click.command()
@click.option("-p", "--prime", "p", type=int, required=True, help="Odd prime p.")
@click.option("-k", "k", type=int, default=None, help="Surface parameter; omit to sweep k.")
@click.option("--with-delta", is_flag=True, help="Add the δ-inversions to the group.")
@click.option("--sigma-only", is_flag=True, help="Act by ⟨σ₁, σ₂, σ₃⟩ only.")
@click.option("--all-k", is_flag=True, help="Sweep every k instead of one per ζ³k class.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def orbits(p: int, k: int | None, with_delta: bool, sigma_only: bool, all_k: bool, as_json: bool) -> None:
    """Orbit sizes without (0,0,0) and the ∞-orbit, in ``24^2, 48`` shorthand."""
    ctx = fp_make(p)
    gens = generators_for(sigma_only, with_delta)
    k_values = [k] if k is not None else census_k_values(ctx, CensusOptions(all_k=all_k))

    rows = []
    for kv in k_values:
        W = wk(ctx, kv)
        rows.append((kv % p, nontrivial_sizes(orbit_decomposition(W, ctx, gens))))

    if as_json:
        echo_json([{"p": p, "k": kv, "sizes": sizes} for kv, sizes in rows])
        return
    if k is not None:
        click.echo(format_sizes(rows[0][1]))
        return

    table = Table(title=f"W_k(F_{p})")
    table.add_column("k", style="cyan", justify="right")
    table.add_column("Orbits", justify="right")
    table.add_column("Sizes")
    for kv, sizes in rows:
        table.add_row(str(kv), str(len(sizes)), format_sizes(sizes))
    console.print(table)
