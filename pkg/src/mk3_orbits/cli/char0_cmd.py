"""``mk3-orbits char0``: characteristic-0 finite orbits and their reductions."""

from __future__ import annotations

import sys

import click
from rich.table import Table

from ..char0 import (
    FAMILIES,
    FAMILY_NAMES,
    build_family,
    cautionary_checks,
    reduce_family_mod_p,
    verify_288_specialization,
    verify_family,
    verify_reductions,
)
from ..errors import FamilyError
from ..fields.parse import generator_names, parse_field
from ..geometry import point_to_text
from .helpers import EXIT_MISMATCH, console, echo_json, fail, run_config


def _status(ok: bool) -> str:
    return "[green]ok[/green]" if ok else "[red]FAIL[/red]"


@click.group("char0")
def char0() -> None:
    """Finite orbits over number fields and function fields."""


@char0.command("list")
def list_cmd() -> None:
    """Show the built-in families."""
    table = Table(title="Finite-orbit families")
    table.add_column("Family", style="cyan")
    table.add_column("Field")
    table.add_column("k")
    table.add_column("Size", justify="right")
    table.add_column("G° suborbits")
    for name, data in FAMILIES.items():
        subs = ", ".join(map(str, data.suborbits)) if data.suborbits else "-"
        k = f"{data.k} (any)" if data.free_k else data.k
        table.add_row(name, data.descriptor, k, str(data.size), subs)
    console.print(table)


@char0.command("verify")
@click.option("--family", "names", multiple=True, type=click.Choice(FAMILY_NAMES), help="Family to verify (repeatable).")
@click.option("--all", "all_families", is_flag=True, help="Verify every family.")
@click.option("-k", "k", default=None, help="Override k for families valid for every k.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def verify_cmd(names: tuple[str, ...], all_families: bool, k: str | None, as_json: bool) -> None:
    """Close each family's seeds under the group and compare with the expected sizes."""
    selected = list(FAMILY_NAMES) if all_families else list(names)
    if not selected:
        fail("give --family NAME or --all")
    cap = run_config().char0.orbit_cap

    results = []
    for name in selected:
        family = build_family(name, k)
        try:
            report = verify_family(family, cap)
            results.append({**report.to_dict(), "error": None})
        except FamilyError as exc:
            results.append({"family": name, "field": family.field.name, "ok": False, "error": str(exc)})

    if as_json:
        echo_json(results)
    else:
        table = Table(title="Characteristic-0 families")
        table.add_column("Family", style="cyan")
        table.add_column("Field")
        table.add_column("Size", justify="right")
        table.add_column("Status")
        for r in results:
            size = f"{r['found']}/{r['expected']}" if r["error"] is None else r["error"]
            table.add_row(r["family"], r["field"], size, _status(r["ok"]))
        console.print(table)
    if not all(r["ok"] for r in results):
        sys.exit(EXIT_MISMATCH)


@char0.command("reduce")
@click.option("--family", "name", required=True, type=click.Choice(FAMILY_NAMES))
@click.option("-p", "--prime", "p", type=int, required=True, help="Odd prime p.")
@click.option("--assign", "assignments", multiple=True, help="Generator residue, e.g. 'a=4' (repeatable).")
@click.option("--list", "list_points", is_flag=True, help="Print the reduced orbit.")
def reduce_cmd(name: str, p: int, assignments: tuple[str, ...], list_points: bool) -> None:
    """Send a family to F_p by assigning residues to its field generators."""
    values: dict[str, int] = {}
    for item in assignments:
        key, sep, value = item.partition("=")
        if not sep:
            fail(f"assignment must look like name=value, got '{item}'")
        values[key.strip()] = int(value)
    family = build_family(name)
    red = reduce_family_mod_p(family, p, values, cap=run_config().char0.orbit_cap)
    expected = generator_names(parse_field(family.data.descriptor))
    console.print(
        f"{name} with {', '.join(f'{n}={values[n] % p}' for n in expected)}: "
        f"W_{red.k} over GF({p}), orbit size [bold]{len(red.orbit)}[/bold] (expected {family.expected_size})"
    )
    if list_points:
        for P in sorted(red.orbit, key=str):
            click.echo(point_to_text(red.ctx, P))


@char0.command("specialize")
@click.option("-p", "--prime", "p", type=int, required=True, help="Odd prime p.")
@click.option("-k", "k", type=int, required=True, help="Expected k.")
@click.option("--point", nargs=3, type=int, required=True, help="Curve point (a, b, g).")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def specialize_cmd(p: int, k: int, point: tuple[int, int, int], as_json: bool) -> None:
    """Check an F_p point of the one-parameter 288 family."""
    a, b, g = point
    report = verify_288_specialization(p, k, a, b, g)
    if as_json:
        echo_json(report.to_dict())
        return
    values = ", ".join(str(v) for v in report.delta_values)
    console.print(f"(a, b, g) = {report.point} on the curve over GF({p}), k = {report.k}")
    console.print(f"δ, -δ, 1/δ, -1/δ = {values}")
    console.print(
        f"σ-orbit {report.sigma_orbit}, orbit [bold]{report.size}[/bold] (expected {report.expected_size}), "
        f"stabilizer {', '.join(str(c) for c in report.stabilizer)}"
    )


@char0.command("cautionary")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def cautionary_cmd(as_json: bool) -> None:
    """Finite-field orbits that look like lifts but are not."""
    results = cautionary_checks(strict=False)
    if as_json:
        echo_json([{"check": r.name, "expected": r.expected, "found": r.found, "ok": r.ok} for r in results])
    else:
        table = Table(title="Cautionary checks")
        table.add_column("Check", style="cyan")
        table.add_column("Found")
        table.add_column("Status")
        for r in results:
            table.add_row(r.name, r.found, _status(r.ok))
        console.print(table)
    if not all(r.ok for r in results):
        sys.exit(EXIT_MISMATCH)


@char0.command("reductions")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def reductions_cmd(as_json: bool) -> None:
    """Re-verify the bundled reductions of the 144, 160 and 288 families."""
    results = verify_reductions()
    if as_json:
        echo_json(
            [
                {
                    "family": r.family,
                    "p": r.p,
                    "k": r.k,
                    "size": r.size,
                    "expected": r.expected,
                    "ok": r.ok,
                    "skipped": r.skipped,
                    "detail": r.detail,
                }
                for r in results
            ]
        )
    else:
        table = Table(title="Reductions modulo p")
        table.add_column("Family", style="cyan")
        table.add_column("p", justify="right")
        table.add_column("k", justify="right")
        table.add_column("Size", justify="right")
        table.add_column("Status")
        for r in results:
            if r.skipped:
                status = f"[yellow]skipped[/yellow] {r.detail}"
            else:
                status = _status(r.ok) + (f" {r.detail}" if r.detail else "")
            table.add_row(r.family, str(r.p), str(r.k), f"{r.size}/{r.expected}", status)
        console.print(table)
    if not all(r.ok for r in results):
        sys.exit(EXIT_MISMATCH)
