"""``mk3-orbits linkcheck``: check that fibers are linked through a third fiber."""

from __future__ import annotations

import sys

import click

from ..fibers import verify_fiber_jumping
from .helpers import EXIT_MISMATCH, console, echo_json, fail, make_surface, surface_options


@click.command()
@surface_options
@click.option("--exhaustive", is_flag=True, help="Test every pair of fibers (the default).")
@click.option("--sample", "samples", type=click.IntRange(min=1), default=None, help="Test this many random pairs.")
@click.option("--seed", type=int, default=0, show_default=True, help="Random seed for --sample.")
@click.option("--restricted", is_flag=True, help="Also report the connected-fiber check.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def linkcheck(p: int, k: int, exhaustive: bool, samples: int | None, seed: int, restricted: bool, as_json: bool) -> None:
    """Report pairs of nonempty fibers that no third fiber meets.

    Failures exit 1 only for p >= 101, where linking is unconditional.
    """
    if exhaustive and samples is not None:
        fail("--exhaustive and --sample are mutually exclusive")
    ctx, W = make_surface(p, k)
    if samples is not None:
        report = verify_fiber_jumping(W, ctx, mode="sampled", samples=samples, seed=seed)
    else:
        report = verify_fiber_jumping(W, ctx)

    if as_json:
        echo_json(report.to_dict(ctx))
    else:
        color = "green" if not report.failures else "yellow"
        console.print(
            f"{W}: [{color}]{len(report.failures)} failures[/{color}] in {report.pairs_tested} pairs ({report.mode})"
        )
        for f1, f2 in report.failures[:20]:
            console.print(f"  {f1} / {f2}")
        if restricted:
            color = "green" if report.restricted_holds else "yellow"
            console.print(
                f"connected fibers: [{color}]{len(report.restricted_failures)} failures[/{color}] "
                f"in {report.restricted_pairs_tested} pairs; cage meets {report.cage_orbit_count} orbit(s)"
            )
        if not report.guaranteed:
            console.print("[dim]p < 101: linking is not guaranteed, report only[/dim]")

    inconsistent = report.mode == "exhaustive" and not report.single_orbit_consistent
    if (report.guaranteed and report.failures) or inconsistent:
        sys.exit(EXIT_MISMATCH)
