"""Fibers, connected fibers, the cage, linking sets and linking curves.

Fibers are indexed by an axis and a base value in P¹(F_p). Most scans work
on a shared :class:`~mk3_orbits.kernel.PointTable` and its projection root
matrices, so every function accepts an optional prebuilt ``table``.
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

import numpy as np
import sympy

from .autos import fibral_generators, group_generators
from .errors import GeometryError
from .fields.primefield import PrimeFieldCtx
from .geometry import (
    INF,
    AXES,
    P1Elem,
    P1Triple,
    Surface,
    WkSurface,
    as_form,
    format_p1,
)
from .kernel import PointTable, UnionFind, decode, encode

logger = logging.getLogger(__name__)

C_SINGULAR_CONSTANT = 144
LINKING_GUARANTEE_Q = 101


@dataclass(frozen=True)
class FiberId:
    axis: int
    base: P1Elem

    def __post_init__(self) -> None:
        if self.axis not in AXES:
            raise ValueError(f"axis must be 1, 2 or 3, got {self.axis}")

    def to_dict(self, ctx: PrimeFieldCtx) -> dict[str, Any]:
        return {"axis": self.axis, "base": format_p1(ctx, self.base)}

    def __str__(self) -> str:
        return f"W({self.axis})_{self.base!r}"


def _table(W: Surface, ctx: PrimeFieldCtx, table: PointTable | None) -> PointTable:
    return table if table is not None else PointTable.build(W, ctx)


def _others(axis: int) -> tuple[int, int]:
    j, l = (a for a in AXES if a != axis)
    return j, l


def _sorted_p1(ctx: PrimeFieldCtx, values: Iterable[P1Elem]) -> list[P1Elem]:
    return sorted(values, key=lambda v: encode(ctx, v))


# -- fibers and connectivity ----------------------------------------------------------


def fiber_points(W: Surface, ctx: PrimeFieldCtx, f: FiberId, table: PointTable | None = None) -> list[P1Triple]:
    table = _table(W, ctx, table)
    return [table.point(int(i)) for i in np.flatnonzero(table.fiber_mask(f.axis, f.base))]


def connected_fiber_mask(table: PointTable, axis: int) -> np.ndarray:
    """Boolean over base codes ``0..p``: nonempty fibers with one fibral orbit."""
    p1 = table.p + 1
    labels = table.components(fibral_generators(axis))
    base = table.codes[:, axis - 1]
    n_points = np.bincount(base, minlength=p1)
    n_orbits = np.bincount(base[np.unique(labels)], minlength=p1)
    return (n_points > 0) & (n_orbits == 1)


def is_connected_fiber(W: Surface, ctx: PrimeFieldCtx, f: FiberId, table: PointTable | None = None) -> bool:
    """Nonempty, and 𝒢⁽ⁱ⁾ acts transitively on it. Empty fibers are not connected."""
    table = _table(W, ctx, table)
    return bool(connected_fiber_mask(table, f.axis)[encode(ctx, f.base)])


def pi_connfib(W: Surface, ctx: PrimeFieldCtx, axis: int = 1, table: PointTable | None = None) -> set[P1Elem]:
    table = _table(W, ctx, table)
    return {decode(ctx, int(c)) for c in np.flatnonzero(connected_fiber_mask(table, axis))}


def flatten(S: Iterable[P1Triple], skip_axis: int | None = None) -> set[P1Elem]:
    """All coordinates of all points, optionally ignoring one axis."""
    return {v for P in S for i, v in enumerate(P, start=1) if i != skip_axis}


# -- the cage ----------------------------------------------------------------------------


@dataclass
class CageGraph:
    """Connected-fiber base values joined when their fibers meet."""

    vertices: list[P1Elem]
    edges: list[tuple[P1Elem, P1Elem]]
    components: list[list[P1Elem]] = field(default_factory=list)

    @property
    def component_count(self) -> int:
        return len(self.components)

    def adjacency(self) -> dict[P1Elem, list[P1Elem]]:
        adj: dict[P1Elem, list[P1Elem]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def to_dict(self, ctx: PrimeFieldCtx) -> dict[str, Any]:
        fmt = lambda v: format_p1(ctx, v)  # noqa: E731
        return {
            "vertices": [fmt(v) for v in self.vertices],
            "adjacency": {fmt(v): [fmt(u) for u in us] for v, us in self.adjacency().items()},
            "components": [[fmt(v) for v in comp] for comp in self.components],
        }


def cage_table(W: Surface, ctx: PrimeFieldCtx, table: PointTable | None = None) -> dict[P1Elem, set[P1Elem]]:
    """``t ↦ Flatten(W⁽¹⁾_t) ∩ πConnFib`` for every t ∈ πConnFib.

    The x-coordinate of the fiber (always t) is left out of the flatten.
    """
    table = _table(W, ctx, table)
    conn = connected_fiber_mask(table, 1)
    rows: dict[P1Elem, set[P1Elem]] = {}
    for t in np.flatnonzero(conn):
        values = np.unique(table.codes[table.codes[:, 0] == t][:, 1:])
        rows[decode(ctx, int(t))] = {decode(ctx, int(v)) for v in values if conn[v]}
    return rows


def cage_graph(W: Surface, ctx: PrimeFieldCtx, table: PointTable | None = None) -> CageGraph:
    rows = cage_table(W, ctx, table)
    vertices = _sorted_p1(ctx, rows)
    index = {v: i for i, v in enumerate(vertices)}
    edges: set[tuple[int, int]] = set()
    uf = UnionFind(len(vertices))
    for t, row in rows.items():
        for u in row:
            if u != t:
                a, b = sorted((index[t], index[u]))
                edges.add((a, b))
                uf.union(a, b)
    groups: dict[int, list[P1Elem]] = defaultdict(list)
    for i, v in enumerate(vertices):
        groups[uf.find(i)].append(v)
    components = sorted(groups.values(), key=lambda comp: encode(ctx, comp[0]))
    logger.debug("cage: %d vertices, %d edges, %d components", len(vertices), len(edges), len(components))
    return CageGraph(
        vertices=vertices,
        edges=[(vertices[a], vertices[b]) for a, b in sorted(edges)],
        components=components,
    )


def cage_mask(table: PointTable) -> np.ndarray:
    """Points lying on at least one connected fiber."""
    mask = np.zeros(len(table), dtype=bool)
    for axis in AXES:
        mask |= connected_fiber_mask(table, axis)[table.codes[:, axis - 1]]
    return mask


def cage_points(W: Surface, ctx: PrimeFieldCtx, table: PointTable | None = None) -> list[P1Triple]:
    table = _table(W, ctx, table)
    return [table.point(int(i)) for i in np.flatnonzero(cage_mask(table))]


def cage_to_dot(W: Surface, ctx: PrimeFieldCtx, graph: CageGraph | None = None, title: str | None = None) -> str:
    from .report.generator import render_cage_dot

    graph = graph or cage_graph(W, ctx)
    return render_cage_dot(ctx, graph, title or str(W))


# -- linking sets and linking curves -----------------------------------------------------


def linking_set(
    W: Surface,
    ctx: PrimeFieldCtx,
    axis: int,
    t1: P1Elem,
    t2: P1Elem,
    table: PointTable | None = None,
) -> set[P1Elem]:
    """Bases u of *axis*-fibers meeting both given fibers.

    *t1* and *t2* are the bases on the two other axes, in increasing axis
    order: ``linking_set(W, ctx, 3, x0, y0)`` is L⁽³⁾ of the fibers x = x0
    and y = y0.
    """
    table = _table(W, ctx, table)
    j, l = _others(axis)
    hits = table.pair_matrix(axis, j)[:, encode(ctx, t1)] & table.pair_matrix(axis, l)[:, encode(ctx, t2)]
    return {decode(ctx, int(u)) for u in np.flatnonzero(hits)}


def _roots_over(table: PointTable, scan: int, solve: int, fixed: int, base: P1Elem) -> dict[int, list[int]]:
    rows = table.codes[table.codes[:, fixed - 1] == encode(table.ctx, base)]
    out: dict[int, list[int]] = defaultdict(list)
    for u, v in zip(rows[:, scan - 1].tolist(), rows[:, solve - 1].tolist()):
        out[u].append(v)
    return out


def c_curve_points(
    W: Surface,
    ctx: PrimeFieldCtx,
    variant: int,
    bases: tuple[P1Elem, P1Elem],
    table: PointTable | None = None,
) -> set[P1Triple]:
    """F_p-points of the linking curve C⁽ⁱ⁾ for the given pair of bases.

    For variant 1 and bases (y0, z0) these are the (x, y, z) with
    F(x, y0, z) = F(x, y, z0) = 0; the other variants permute roles.
    """
    table = _table(W, ctx, table)
    i = variant
    j, l = _others(i)
    bj, bl = bases
    j_roots = _roots_over(table, i, j, l, bl)
    l_roots = _roots_over(table, i, l, j, bj)
    out: set[P1Triple] = set()
    for u in j_roots.keys() & l_roots.keys():
        for vj, vl in itertools.product(j_roots[u], l_roots[u]):
            P: list[P1Elem] = [INF, INF, INF]
            P[i - 1], P[j - 1], P[l - 1] = (decode(ctx, c) for c in (u, vj, vl))
            out.add(tuple(P))
    return out


def c_curve_fiber_sizes(
    W: Surface,
    ctx: PrimeFieldCtx,
    variant: int,
    bases: tuple[P1Elem, P1Elem],
    table: PointTable | None = None,
) -> dict[P1Elem, int]:
    """Number of F_p-points of C⁽ⁱ⁾ over each scanned value (0, 1, 2 or 4)."""
    counts: dict[P1Elem, int] = {v: 0 for v in [*range(ctx.p), INF]}
    for P in c_curve_points(W, ctx, variant, bases, table):
        counts[P[variant - 1]] += 1
    return counts


# -- genus bound ingredients -------------------------------------------------------------


@dataclass(frozen=True)
class GenusBound:
    A: int
    B: int

    @property
    def bound(self) -> Fraction:
        return Fraction(-3 + self.A) + Fraction(3 * self.B, 2)


def _discriminant_form(W: Surface, ctx: PrimeFieldCtx, scan: int, solve: int, fixed: int, base: P1Elem) -> list[int]:
    """Disc of F in the *solve* coordinate with *fixed* set to *base*: a binary quartic in *scan*."""
    p = ctx.p
    b1, b2 = (1, 0) if base is INF else (int(base) % p, 1)
    q = [[0, 0, 0] for _ in range(3)]  # q[solve exponent][scan exponent]
    for exps, c in as_form(W).coeffs:
        w = int(c) * pow(b1, exps[fixed - 1], p) * pow(b2, 2 - exps[fixed - 1], p)
        q[exps[solve - 1]][exps[scan - 1]] += w

    def pmul(f: list[int], g: list[int]) -> list[int]:
        out = [0] * (len(f) + len(g) - 1)
        for a, fa in enumerate(f):
            for b, gb in enumerate(g):
                out[a + b] += fa * gb
        return out

    sq = pmul(q[1], q[1])
    prod = pmul(q[2], q[0])
    return [(s - 4 * t) % p for s, t in zip(sq, prod)]


def _distinct_roots(ctx: PrimeFieldCtx, form: list[int]) -> tuple[sympy.Poly, bool]:
    """Squarefree part of the affine polynomial and whether ∞ is a root."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(form)), x, modulus=ctx.p)
    return poly.sqf_part(), poly.degree() < len(form) - 1


def genus_bound_data(
    W: Surface,
    ctx: PrimeFieldCtx,
    y0: P1Elem,
    z0: P1Elem,
    variant: int = 1,
) -> GenusBound:
    """Counts of scanned values over the algebraic closure where one or both discriminants vanish.

    A counts values where exactly one of the two fibral discriminants vanishes,
    B those where both do; the linking curve then has geometric genus at most
    ``-3 + A + 3B/2``.
    """
    i = variant
    j, l = _others(i)
    d_j = _discriminant_form(W, ctx, i, j, l, z0)
    d_l = _discriminant_form(W, ctx, i, l, j, y0)
    if not any(d_j) or not any(d_l):
        raise GeometryError(f"fibral discriminant vanishes identically for bases ({y0}, {z0})")
    sqf_j, inf_j = _distinct_roots(ctx, d_j)
    sqf_l, inf_l = _distinct_roots(ctx, d_l)
    n_j = sqf_j.degree() + inf_j
    n_l = sqf_l.degree() + inf_l
    B = sympy.gcd(sqf_j, sqf_l).degree() + (inf_j and inf_l)
    return GenusBound(A=n_j + n_l - 2 * B, B=B)


# -- singular linking curves --------------------------------------------------------------


def c1_singular_flag(W: WkSurface, y0: P1Elem, z0: P1Elem) -> bool:
    """Whether the bases fall in the list that can make C⁽¹⁾_{y0,z0} singular.

    The ``(±k ± √(k² ± 16))/4`` values only count when the square root
    exists in the working field.
    """
    F = W.field
    if y0 is INF or z0 is INF or F.is_zero(y0) or F.is_zero(z0):
        return True
    y2, z2 = F.square(y0), F.square(z0)
    if F.eq(y2, z2) or F.eq(F.mul(y2, z2), F.one):
        return True
    k = W.k
    k2 = F.square(k)
    sixteen = F.from_int(16)
    four = F.from_int(4)
    for r2 in (F.add(k2, sixteen), F.sub(k2, sixteen)):
        r = F.sqrt(r2)
        if r is None:
            continue
        for s1, s2 in itertools.product((1, -1), repeat=2):
            v = F.div(F.add(F.mul(F.from_int(s1), k), F.mul(F.from_int(s2), r)), four)
            if F.eq(v, y0) or F.eq(v, z0):
                return True
    return False


@dataclass(frozen=True)
class CSingularCount:
    count: int
    bound: int
    total: int

    @property
    def within_bound(self) -> bool:
        return self.count <= self.bound


def count_c_singular_points(W: WkSurface, ctx: PrimeFieldCtx, table: PointTable | None = None) -> CSingularCount:
    """Points P with one of C⁽¹⁾_{y,z}, C⁽²⁾_{x,z}, C⁽³⁾_{x,y} flagged, against 144q."""
    table = _table(W, ctx, table)
    line = [*range(ctx.p), INF]
    flag = np.array([[c1_singular_flag(W, a, b) for b in line] for a in line], dtype=bool)
    x, y, z = table.codes[:, 0], table.codes[:, 1], table.codes[:, 2]
    hit = flag[y, z] | flag[x, z] | flag[x, y]
    return CSingularCount(count=int(hit.sum()), bound=C_SINGULAR_CONSTANT * ctx.p, total=len(table))


# -- fiber jumping ------------------------------------------------------------------------


@dataclass
class FiberJumpReport:
    p: int
    mode: str
    pairs_tested: int
    failures: list[tuple[FiberId, FiberId]]
    restricted_pairs_tested: int
    restricted_failures: list[tuple[FiberId, FiberId]]
    cage_orbit_count: int

    @property
    def guaranteed(self) -> bool:
        """Whether q is large enough for linking to be unconditional."""
        return self.p >= LINKING_GUARANTEE_Q

    @property
    def restricted_holds(self) -> bool:
        return not self.restricted_failures

    @property
    def single_orbit_consistent(self) -> bool:
        """Restricted jumping must force the whole cage into one orbit."""
        return not self.restricted_holds or self.cage_orbit_count <= 1

    def to_dict(self, ctx: PrimeFieldCtx) -> dict[str, Any]:
        pairs = lambda fs: [{"f1": a.to_dict(ctx), "f2": b.to_dict(ctx)} for a, b in fs]  # noqa: E731
        return {
            "p": self.p,
            "mode": self.mode,
            "pairs_tested": self.pairs_tested,
            "failures": pairs(self.failures),
            "restricted_pairs_tested": self.restricted_pairs_tested,
            "restricted_failures": pairs(self.restricted_failures),
            "cage_orbit_count": self.cage_orbit_count,
            "single_orbit_consistent": self.single_orbit_consistent,
        }


def fiber_incidence(table: PointTable) -> np.ndarray:
    """``I[f, g]``: fibers f and g (indexed ``(axis-1)(p+1) + code``) share a point."""
    p1 = table.p + 1
    inc = np.zeros((3 * p1, 3 * p1), dtype=bool)
    for a, b in itertools.permutations(AXES, 2):
        inc[(a - 1) * p1 : a * p1, (b - 1) * p1 : b * p1] = table.pair_matrix(a, b)
    for a in AXES:
        nonempty = np.bincount(table.codes[:, a - 1], minlength=p1) > 0
        idx = (a - 1) * p1 + np.arange(p1)
        inc[idx, idx] = nonempty
    return inc


def _fiber_id(ctx: PrimeFieldCtx, n: int) -> FiberId:
    p1 = ctx.p + 1
    return FiberId(axis=n // p1 + 1, base=decode(ctx, n % p1))


def verify_fiber_jumping(
    W: Surface,
    ctx: PrimeFieldCtx,
    mode: str = "exhaustive",
    samples: int = 1000,
    seed: int = 0,
    table: PointTable | None = None,
) -> FiberJumpReport:
    """Test that every pair of nonempty fibers is linked through a third fiber.

    The restricted check takes pairs of connected fibers and asks for a
    connected fiber meeting both. A fiber meeting the other directly counts
    as its own link.
    """
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"mode must be 'exhaustive' or 'sampled', got '{mode}'")
    table = _table(W, ctx, table)
    inc = fiber_incidence(table)
    nonempty = np.diag(inc).copy()
    conn = np.concatenate([connected_fiber_mask(table, a) for a in AXES])

    as_int = inc.astype(np.int64)
    linked = (as_int @ as_int.T) > 0
    conn_cols = as_int[:, conn]
    linked_conn = (conn_cols @ conn_cols.T) > 0

    candidates = np.flatnonzero(nonempty)
    if mode == "exhaustive":
        pairs = list(itertools.combinations(candidates.tolist(), 2))
    else:
        rng = np.random.default_rng(seed)
        drawn = rng.choice(candidates, size=(samples, 2)) if len(candidates) > 1 else np.empty((0, 2), int)
        pairs = [(int(a), int(b)) for a, b in drawn if a != b]

    failures = [(a, b) for a, b in pairs if not linked[a, b]]
    restricted = [(a, b) for a, b in pairs if conn[a] and conn[b]]
    restricted_failures = [(a, b) for a, b in restricted if not linked_conn[a, b]]

    labels = table.components(group_generators())
    cage_orbits = len(np.unique(labels[cage_mask(table)]))

    ident = lambda fs: [(_fiber_id(ctx, a), _fiber_id(ctx, b)) for a, b in fs]  # noqa: E731
    report = FiberJumpReport(
        p=ctx.p,
        mode=mode,
        pairs_tested=len(pairs),
        failures=ident(failures),
        restricted_pairs_tested=len(restricted),
        restricted_failures=ident(restricted_failures),
        cage_orbit_count=cage_orbits,
    )
    logger.info(
        "fiber jumping over F_%d: %d/%d failures, %d/%d restricted failures",
        ctx.p, len(failures), len(pairs), len(restricted_failures), len(restricted),
    )  # fmt: skip
    return report
