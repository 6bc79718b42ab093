"""``mk3-orbits orbit``: close one seed point or trace a generator word."""

from __future__ import annotations

import click

from ..autos import apply_generator, parse_word
from ..geometry import contains, parse_point, point_to_text
from ..errors import NotOnSurface
from ..orbits import generators_for, orbit_closure
from .helpers import console, echo_json, make_surface, run_config, surface_options


@click.command()
@surface_options
@click.option("--seed-point", "seed", required=True, help="Point such as '(38,-38,1)' or '(0,inf,inf)'.")
@click.option("--word", default=None, help="Generator word to trace, e.g. 's3 s2 e12'.")
@click.option("--with-delta", is_flag=True, help="Add the δ-inversions to the group.")
@click.option("--sigma-only", is_flag=True, help="Act by ⟨σ₁, σ₂, σ₃⟩ only.")
@click.option("--list", "list_points", is_flag=True, help="Print the orbit's points.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def orbit(
    p: int,
    k: int,
    seed: str,
    word: str | None,
    with_delta: bool,
    sigma_only: bool,
    list_points: bool,
    as_json: bool,
) -> None:
    """Orbit of a single point of W_k(F_p).

    With ``--word`` the generators are applied left to right and every
    intermediate point is printed instead.
    """
    ctx, W = make_surface(p, k)
    P = parse_point(ctx, seed)
    if not contains(W, P):
        raise NotOnSurface(point_to_text(ctx, P))

    if word is not None:
        steps = [(None, P)]
        for g in parse_word(word):
            P = apply_generator(W, g, P)
            steps.append((g, P))
        if as_json:
            echo_json(
                [
                    {"generator": None if g is None else str(g), "point": point_to_text(ctx, Q)}
                    for g, Q in steps
                ]
            )
            return
        for g, Q in steps:
            prefix = "   " if g is None else f"[cyan]{g}[/cyan] → "
            console.print(f"{prefix}{point_to_text(ctx, Q)}")
        return

    cap = run_config().char0.orbit_cap
    members = sorted(orbit_closure(W, [P], generators_for(sigma_only, with_delta), cap=cap), key=str)
    if as_json:
        echo_json(
            {
                "p": p,
                "k": k % p,
                "seed": point_to_text(ctx, P),
                "size": len(members),
                "points": [point_to_text(ctx, Q) for Q in members] if list_points else None,
            }
        )
        return
    console.print(f"Orbit of {point_to_text(ctx, P)} in {W}: [bold]{len(members)}[/bold] points")
    if list_points:
        for Q in members:
            click.echo(point_to_text(ctx, Q))
