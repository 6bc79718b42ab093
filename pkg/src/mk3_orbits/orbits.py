"""Orbit closure, orbit decompositions of W_k(F_p), fibral orbits and the census."""

from __future__ import annotations

import logging
import re
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable, Iterable, Sequence

import numpy as np

from .autos import (
    Generator,
    apply_generator,
    fibral_generators,
    group_generators,
    sigma_generators,
)
from .errors import NotOnSurface, OrbitCapExceeded
from .fields.primefield import PrimeFieldCtx, fp_make
from .geometry import INF, P1Elem, P1Triple, Surface, WkSurface, contains, wk
from .kernel import PointTable, decode

if TYPE_CHECKING:
    from .cache import RunCache

logger = logging.getLogger(__name__)

DEFAULT_ORBIT_CAP = 10**6


@dataclass(frozen=True)
class Orbit:
    representative: P1Triple
    members: np.ndarray = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class OrbitDecomposition:
    """Partition of a point table (or a subset of it) into orbits.

    Orbits are ordered by representative, the least member in enumeration
    order; ``members`` index into ``table``.
    """

    table: PointTable
    labels: np.ndarray
    orbits: list[Orbit]

    @property
    def total(self) -> int:
        return sum(o.size for o in self.orbits)

    def sizes(self) -> list[int]:
        return sorted(o.size for o in self.orbits)

    def orbit_index(self, P: P1Triple) -> int:
        label = self.labels[self.table.index_of(P)]
        for i, o in enumerate(self.orbits):
            if self.table.index_of(o.representative) == label:
                return i
        raise NotOnSurface(P)

    def orbit_points(self, i: int) -> list[P1Triple]:
        return [self.table.point(int(j)) for j in self.orbits[i].members]


def _decompose(table: PointTable, labels: np.ndarray, mask: np.ndarray | None = None) -> OrbitDecomposition:
    idx = np.arange(len(table)) if mask is None else np.flatnonzero(mask)
    sub = labels[idx]
    order = np.argsort(sub, kind="stable")
    reps, starts, counts = np.unique(sub[order], return_index=True, return_counts=True)
    orbits = [
        Orbit(table.point(int(rep)), idx[order[s : s + c]])
        for rep, s, c in zip(reps, starts, counts)
    ]
    return OrbitDecomposition(table=table, labels=labels, orbits=orbits)


# -- closure over any field -------------------------------------------------------------


def orbit_closure(
    W: Surface,
    seeds: Iterable[P1Triple],
    generators: Sequence[Generator],
    cap: int = DEFAULT_ORBIT_CAP,
) -> set[P1Triple]:
    """Least generator-closed set containing *seeds* (breadth-first)."""
    seen: set[P1Triple] = set()
    queue: deque[P1Triple] = deque()
    for P in seeds:
        if not contains(W, P):
            raise NotOnSurface(P)
        if P not in seen:
            seen.add(P)
            queue.append(P)
    while queue:
        P = queue.popleft()
        for g in generators:
            Q = apply_generator(W, g, P)
            if Q not in seen:
                seen.add(Q)
                if len(seen) > cap:
                    raise OrbitCapExceeded(cap)
                queue.append(Q)
    return seen


def suborbit_sizes(W: Surface, points: Iterable[P1Triple], generators: Sequence[Generator]) -> list[int]:
    """Sizes of the generator-orbits meeting *points*, in first-seen order."""
    remaining = list(dict.fromkeys(points))
    covered: set[P1Triple] = set()
    sizes: list[int] = []
    for P in remaining:
        if P in covered:
            continue
        orbit = orbit_closure(W, [P], generators)
        covered |= orbit
        sizes.append(len(orbit))
    return sizes


# -- decompositions over F_p ---------------------------------------------------------------


def orbit_decomposition(
    W: Surface,
    ctx: PrimeFieldCtx,
    generators: Sequence[Generator] | None = None,
    table: PointTable | None = None,
) -> OrbitDecomposition:
    table = table or PointTable.build(W, ctx)
    gens = list(generators) if generators is not None else group_generators()
    return _decompose(table, table.components(gens))


def orbit_of(
    W: Surface,
    ctx: PrimeFieldCtx,
    P: P1Triple,
    generators: Sequence[Generator] | None = None,
    table: PointTable | None = None,
) -> list[P1Triple]:
    """The orbit of one point of W(F_p), in enumeration order."""
    d = orbit_decomposition(W, ctx, generators, table)
    return d.orbit_points(d.orbit_index(P))


def fibral_orbit_decomposition(
    W: Surface,
    ctx: PrimeFieldCtx,
    axis: int,
    t: P1Elem,
    table: PointTable | None = None,
) -> OrbitDecomposition:
    table = table or PointTable.build(W, ctx)
    labels = table.components(fibral_generators(axis))
    return _decompose(table, labels, table.fiber_mask(axis, t))


def fibral_table(W: Surface, ctx: PrimeFieldCtx, axis: int = 1, table: PointTable | None = None) -> dict[P1Elem, int]:
    """Number of 𝒢⁽ⁱ⁾-orbits in every fiber over P¹(F_p), in one pass."""
    table = table or PointTable.build(W, ctx)
    labels = table.components(fibral_generators(axis))
    reps = np.unique(labels)
    counts = np.bincount(table.codes[reps, axis - 1], minlength=ctx.p + 1)
    return {decode(ctx, code): int(n) for code, n in enumerate(counts)}


# -- census -----------------------------------------------------------------------------------


def _trivial_points(ctx: PrimeFieldCtx) -> tuple[P1Triple, ...]:
    return ((0, 0, 0), (0, INF, INF), (INF, 0, INF), (INF, INF, 0))


def nontrivial_sizes(d: OrbitDecomposition) -> list[int]:
    """Orbit sizes without the orbits of (0,0,0) and of the three ∞-points."""
    trivial = {d.labels[d.table.index_of(P)] for P in _trivial_points(d.table.ctx)}
    return sorted(
        o.size for o in d.orbits if d.labels[d.table.index_of(o.representative)] not in trivial
    )


def fourth_roots_mod(ctx: PrimeFieldCtx) -> list[int]:
    return [z for z in range(1, ctx.p) if pow(z, 4, ctx.p) == 1]


def k_class_representatives(ctx: PrimeFieldCtx) -> list[int]:
    """Least member of each class k ~ ζ³k (ζ⁴ = 1) in F_p*."""
    zetas = fourth_roots_mod(ctx)
    return [
        k for k in range(1, ctx.p) if k == min(k * pow(z, 3, ctx.p) % ctx.p for z in zetas)
    ]


def generators_for(sigma_only: bool = False, with_delta: bool = False) -> list[Generator]:
    if sigma_only:
        return sigma_generators()
    return group_generators(with_delta)


@dataclass(frozen=True)
class CensusRow:
    p: int
    k: int
    sizes: tuple[int, ...]

    def shorthand(self) -> str:
        return format_sizes(self.sizes)

    def csv_sizes(self) -> str:
        return ",".join(str(s) for s in self.sizes)


@dataclass
class CensusOptions:
    jobs: int = 1
    all_k: bool = False
    with_delta: bool = False
    sigma_only: bool = False
    k_values: list[int] | None = None
    cache: RunCache | None = None

    def group_key(self) -> str:
        if self.sigma_only:
            return "sigma"
        return "G+delta" if self.with_delta else "G"


def census_task(p: int, k: int, with_delta: bool = False, sigma_only: bool = False) -> CensusRow:
    """Nontrivial orbit sizes of W_k(F_p); a pure, picklable unit of work."""
    ctx = fp_make(p)
    W = wk(ctx, k)
    d = orbit_decomposition(W, ctx, generators_for(sigma_only, with_delta))
    row = CensusRow(p, k % p, tuple(nontrivial_sizes(d)))
    logger.debug("census p=%d k=%d: %s", p, k, row.shorthand())
    return row


def census_k_values(ctx: PrimeFieldCtx, options: CensusOptions) -> list[int]:
    if options.k_values:
        return sorted({k % ctx.p for k in options.k_values if k % ctx.p})
    if options.all_k:
        return list(range(1, ctx.p))
    return k_class_representatives(ctx)


def census(
    p_list: Iterable[int],
    options: CensusOptions | None = None,
    progress: Callable[[CensusRow], None] | None = None,
) -> list[CensusRow]:
    """Rows for every (p, representative k), sorted by (p, k)."""
    options = options or CensusOptions()
    cache = options.cache
    tasks: list[tuple[int, int]] = []
    rows: dict[tuple[int, int], CensusRow] = {}
    for p in p_list:
        ctx = fp_make(p)
        for k in census_k_values(ctx, options):
            cached = cache.get_row(p, k, options.group_key()) if cache else None
            if cached is not None:
                rows[(p, k)] = cached
                if progress:
                    progress(cached)
            else:
                tasks.append((p, k))
    logger.info("census: %d cached rows, %d tasks", len(rows), len(tasks))

    def record(row: CensusRow) -> None:
        rows[(row.p, row.k)] = row
        if cache:
            cache.put_row(row, options.group_key())
        if progress:
            progress(row)

    if options.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            futures = [
                pool.submit(census_task, p, k, options.with_delta, options.sigma_only)
                for p, k in tasks
            ]
            for fut in as_completed(futures):
                record(fut.result())
    else:
        for p, k in tasks:
            record(census_task(p, k, options.with_delta, options.sigma_only))
    return [rows[key] for key in sorted(rows)]


# -- size shorthand ----------------------------------------------------------------------------

_SIZE_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def format_sizes(sizes: Iterable[int]) -> str:
    """``[24, 24, 48, 3456]`` → ``"24^2, 48, 3456"``."""
    counts = Counter(sizes)
    return ", ".join(f"{s}^{n}" if n > 1 else str(s) for s, n in sorted(counts.items()))


def parse_sizes(text: str) -> tuple[int, ...]:
    """Inverse of :func:`format_sizes`; plain comma lists parse as well."""
    out: list[int] = []
    for part in text.split(","):
        if not part.strip():
            continue
        m = _SIZE_RE.match(part)
        if not m:
            raise ValueError(f"bad orbit size entry '{part}'")
        out.extend([int(m.group(1))] * int(m.group(2) or 1))
    return tuple(sorted(out))


def decomposition_for(p: int, k: int, with_delta: bool = False, sigma_only: bool = False) -> tuple[WkSurface, PrimeFieldCtx, OrbitDecomposition]:
    ctx = fp_make(p)
    W = wk(ctx, k)
    return W, ctx, orbit_decomposition(W, ctx, generators_for(sigma_only, with_delta))
