"""``mk3-orbits census``: orbit-size census over a range of primes."""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import click
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn
from rich.table import Table

from ..cache import RunCache
from ..config.models import GroupMode, parse_prime_range
from ..fields.primefield import fp_make
from ..golden import diff_census
from ..orbits import CensusOptions, CensusRow, census, census_k_values
from ..report.generator import render_census_report, write_report
from .helpers import EXIT_MISMATCH, console, echo_json, fail, run_config


def _write_prime_csv(out_dir: Path, p: int, rows: list[CensusRow]) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"census-p{p}.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["p", "k", "sizes"])
        for row in rows:
            writer.writerow([row.p, row.k, row.csv_sizes()])
    return path


@click.command("census")
@click.option("--primes", default=None, help="Prime range such as '3..53' or a list '7,11,13'.")
@click.option("-k", "k_values", type=int, multiple=True, help="Restrict to these k (repeatable).")
@click.option("-j", "--jobs", type=click.IntRange(min=1), default=None, help="Worker processes.")
@click.option("--all-k", is_flag=True, help="Every k instead of one per ζ³k class.")
@click.option("--with-delta", is_flag=True, help="Add the δ-inversions to the group.")
@click.option("--sigma-only", is_flag=True, help="Act by ⟨σ₁, σ₂, σ₃⟩ only.")
@click.option("--resume", is_flag=True, help="Reuse rows from the result cache.")
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Write one CSV per prime into this directory.",
)
@click.option("--diff", is_flag=True, help="Compare with the bundled reference; exit 1 on mismatch.")
@click.option(
    "--report",
    "report_path",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write a Markdown report.",
)
@click.option("--json", "as_json", is_flag=True, help="Emit JSON rows.")
def census_cmd(
    primes: str | None,
    k_values: tuple[int, ...],
    jobs: int | None,
    all_k: bool,
    with_delta: bool,
    sigma_only: bool,
    resume: bool,
    out_dir: Path | None,
    diff: bool,
    report_path: Path | None,
    as_json: bool,
) -> None:
    """Nontrivial orbit sizes of W_k(F_p) for every prime in range.

    Unset options fall back to the ``[census]`` table of ``mk3-orbits.toml``.
    """
    config = run_config()
    p_list = parse_prime_range(primes or config.census.primes)
    options = CensusOptions(
        jobs=jobs or config.census.jobs,
        all_k=all_k or config.census.all_k,
        with_delta=with_delta or config.census.with_delta,
        sigma_only=sigma_only or config.census.group is GroupMode.SIGMA,
        k_values=list(k_values) or None,
    )
    if diff and options.group_key() != "G":
        fail("--diff compares full-group censuses only")
    if resume or config.cache.enabled:
        options.cache = RunCache(config.cache.directory)

    total = sum(len(census_k_values(fp_make(p), options)) for p in p_list)
    with Progress(
        TextColumn("[bold]census[/bold]"),
        BarColumn(),
        MofNCompleteColumn(),
        TextColumn("{task.description}"),
        console=console,
        transient=True,
        disable=as_json,
    ) as progress:
        task = progress.add_task("", total=total)
        rows = census(
            p_list,
            options,
            progress=lambda row: progress.update(task, advance=1, description=f"p={row.p} k={row.k}"),
        )

    if out_dir is not None:
        for p in p_list:
            _write_prime_csv(out_dir, p, [r for r in rows if r.p == p])
        console.print(f"[green]✓ {len(p_list)} CSV files written to {out_dir}[/green]")

    mismatches = diff_census(rows) if diff else []
    if report_path is not None:
        write_report(render_census_report(rows, options.group_key(), mismatches), report_path)
        console.print(f"[green]✓ Report written to {report_path}[/green]")

    if as_json:
        echo_json([{"p": r.p, "k": r.k, "sizes": list(r.sizes)} for r in rows])
    elif out_dir is None:
        table = Table(title=f"Orbit census ({options.group_key()})")
        table.add_column("p", style="cyan", justify="right")
        table.add_column("k", style="cyan", justify="right")
        table.add_column("Sizes")
        for r in rows:
            table.add_row(str(r.p), str(r.k), r.shorthand())
        console.print(table)

    if diff:
        if mismatches:
            for m in mismatches:
                console.print(f"[red]p={m.p} k={m.k}: found {m.found}, expected {m.expected}[/red]")
            sys.exit(EXIT_MISMATCH)
        console.print("[green]✓ All rows match the bundled reference[/green]")
