"""Bundled reference tables and diffing of computed census rows against them."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from functools import cache
from pathlib import Path
from typing import Iterable

from .geometry import INF, P1Elem
from .orbits import CensusRow, parse_sizes

DATA_DIR = Path(__file__).resolve().parent / "data"


def _rows(name: str) -> list[dict[str, str]]:
    path = DATA_DIR / name
    with path.open(newline="") as fh:
        lines = [line for line in fh if line.strip() and not line.startswith("#")]
    return list(csv.DictReader(lines))


@dataclass(frozen=True)
class ReductionRow:
    family: str
    p: int
    k: int
    alpha: int | None
    beta: int | None
    gamma: int | None
    size: int
    note: str = ""

    @property
    def misprint(self) -> bool:
        return self.note == "misprint"


@dataclass
class GoldenTable:
    census: dict[tuple[int, int], tuple[int, ...]]
    fibral_w1: dict[int, dict[P1Elem, int]]
    w4_mod8: dict[int, tuple[int, ...]]
    reductions: list[ReductionRow] = field(default_factory=list)

    @classmethod
    def load(cls) -> GoldenTable:
        return cls(load_census(), load_fibral_w1(), load_w4_mod8(), load_reductions())

    def primes(self) -> list[int]:
        return sorted({p for p, _ in self.census})


@cache
def load_census() -> dict[tuple[int, int], tuple[int, ...]]:
    return {(int(r["p"]), int(r["k"])): parse_sizes(r["sizes"]) for r in _rows("census.csv")}


@cache
def load_fibral_w1() -> dict[int, dict[P1Elem, int]]:
    out: dict[int, dict[P1Elem, int]] = {}
    for r in _rows("fibral_w1.csv"):
        t: P1Elem = INF if r["t"] == "inf" else int(r["t"])
        out.setdefault(int(r["p"]), {})[t] = int(r["orbits"])
    return out


@cache
def load_w4_mod8() -> dict[int, tuple[int, ...]]:
    return {int(r["p"]): parse_sizes(r["sizes"]) for r in _rows("w4_mod8.csv")}


def load_reductions() -> list[ReductionRow]:
    opt = lambda s: int(s) if s else None  # noqa: E731
    return [
        ReductionRow(
            family=r["family"],
            p=int(r["p"]),
            k=int(r["k"]),
            alpha=opt(r["alpha"]),
            beta=opt(r["beta"]),
            gamma=opt(r["gamma"]),
            size=int(r["size"]),
            note=r.get("note") or "",
        )
        for r in _rows("reductions.csv")
    ]


@dataclass(frozen=True)
class CensusMismatch:
    p: int
    k: int
    found: tuple[int, ...]
    expected: tuple[int, ...]


def diff_census(rows: Iterable[CensusRow], golden: dict[tuple[int, int], tuple[int, ...]] | None = None) -> list[CensusMismatch]:
    """Mismatches against the reference; rows without a reference entry are skipped."""
    golden = golden if golden is not None else load_census()
    out = []
    for row in rows:
        expected = golden.get((row.p, row.k))
        if expected is not None and tuple(sorted(row.sizes)) != expected:
            out.append(CensusMismatch(row.p, row.k, tuple(row.sizes), expected))
    return out
