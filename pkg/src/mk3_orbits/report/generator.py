"""Report generator: renders cage graphs and census tables through Jinja2 templates."""

from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

from jinja2 import Environment, FileSystemLoader

from .. import __version__
from ..fields.primefield import PrimeFieldCtx
from ..geometry import format_p1
from ..orbits import CensusRow, format_sizes

if TYPE_CHECKING:
    from ..fibers import CageGraph
    from ..golden import CensusMismatch

TEMPLATES_DIR = Path(__file__).resolve().parent.parent / "templates" / "report"


def _environment() -> Environment:
    return Environment(
        loader=FileSystemLoader(str(TEMPLATES_DIR)),
        keep_trailing_newline=True,
        trim_blocks=True,
        lstrip_blocks=True,
    )


def _dot_id(label: str) -> str:
    return "inf" if label == "inf" else f"t{label}"


def render_cage_dot(ctx: PrimeFieldCtx, graph: CageGraph, title: str) -> str:
    """Graphviz source for a cage graph; one cluster per connected component."""
    fmt = lambda v: format_p1(ctx, v)  # noqa: E731
    components = [
        [{"id": _dot_id(fmt(v)), "label": fmt(v)} for v in comp] for comp in graph.components
    ]
    edges = [(_dot_id(fmt(a)), _dot_id(fmt(b))) for a, b in graph.edges]
    return _environment().get_template("cage.dot.j2").render(
        title=title,
        components=components,
        edges=edges,
    )


def render_census_report(
    rows: Iterable[CensusRow],
    group: str,
    mismatches: Iterable[CensusMismatch] = (),
) -> str:
    """Markdown table of census rows grouped by prime, with any golden mismatches."""
    by_prime: dict[int, list[CensusRow]] = {}
    for row in rows:
        by_prime.setdefault(row.p, []).append(row)
    ctx = {
        "version": __version__,
        "generated": datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M UTC"),
        "group": group,
        "primes": [
            {"p": p, "rows": [{"k": r.k, "sizes": r.shorthand(), "count": len(r.sizes)} for r in prime_rows]}
            for p, prime_rows in sorted(by_prime.items())
        ],
        "mismatches": [
            {"p": m.p, "k": m.k, "found": format_sizes(m.found), "expected": format_sizes(m.expected)}
            for m in mismatches
        ],
    }
    return _environment().get_template("census.md.j2").render(**ctx)


def write_report(content: str, output_path: Path) -> Path:
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(content)
    return output_path
