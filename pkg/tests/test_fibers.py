from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest

from mk3_orbits.fibers import (
    FiberId,
    GenusBound,
    c1_singular_flag,
    c_curve_fiber_sizes,
    c_curve_points,
    cage_graph,
    cage_points,
    cage_table,
    cage_to_dot,
    count_c_singular_points,
    fiber_incidence,
    fiber_points,
    flatten,
    genus_bound_data,
    is_connected_fiber,
    linking_set,
    pi_connfib,
    verify_fiber_jumping,
)
from mk3_orbits.errors import GeometryError
from mk3_orbits.fields import fp_make
from mk3_orbits.geometry import INF, contains, enumerate_points, p1_elements, wk
from mk3_orbits.kernel import PointTable


def _w1(p: int):
    ctx = fp_make(p)
    return ctx, wk(ctx, 1)


def _pm(p: int, *values: int) -> set[int]:
    return {v % p for a in values for v in (a, -a)}


def test_fiber_points_over_zero() -> None:
    ctx, W = _w1(5)
    pts = set(fiber_points(W, ctx, FiberId(1, 0)))
    expected = {(0, 0, 0), (0, INF, INF)}
    expected |= {(0, y, 2 * y % 5) for y in range(1, 5)}
    expected |= {(0, y, 3 * y % 5) for y in range(1, 5)}
    assert pts == expected


def test_fiber_id_validation() -> None:
    with pytest.raises(ValueError, match="axis"):
        FiberId(0, 1)


def test_fiber_over_zero_is_not_connected() -> None:
    ctx, W = _w1(5)
    assert not is_connected_fiber(W, ctx, FiberId(1, 0))


def test_connected_fibers_of_w1_over_f53() -> None:
    ctx, W = _w1(53)
    assert pi_connfib(W, ctx) == _pm(53, 2, 4, 6, 13, 20, 24, 26)


def test_connected_fibers_are_symmetric_in_the_axis() -> None:
    ctx, W = _w1(29)
    table = PointTable.build(W, ctx)
    base = pi_connfib(W, ctx, 1, table)
    assert pi_connfib(W, ctx, 2, table) == base
    assert pi_connfib(W, ctx, 3, table) == base


def test_flatten() -> None:
    pts = [(1, 2, 3), (4, INF, 1)]
    assert flatten(pts) == {1, 2, 3, 4, INF}
    assert flatten(pts, skip_axis=1) == {2, 3, INF, 1}


def test_cage_of_w1_over_f53() -> None:
    ctx, W = _w1(53)
    graph = cage_graph(W, ctx)
    assert set(graph.vertices) == _pm(53, 2, 4, 6, 13, 20, 24, 26)
    assert graph.component_count == 2
    comps = sorted((set(c) for c in graph.components), key=len)
    assert comps == [_pm(53, 4, 13, 24), _pm(53, 2, 6, 20, 26)]


def test_cage_table_rows_are_connected_bases() -> None:
    ctx, W = _w1(53)
    rows = cage_table(W, ctx)
    conn = pi_connfib(W, ctx)
    assert set(rows) == conn
    assert all(row <= conn for row in rows.values())


def test_cage_table_of_w1_over_f53() -> None:
    ctx, W = _w1(53)
    rows = cage_table(W, ctx)
    expected = {
        2: _pm(53, 6, 20),
        4: _pm(53, 24),
        6: _pm(53, 2, 20, 26),
        13: _pm(53, 24),
        20: _pm(53, 2, 6, 20, 26),
        24: _pm(53, 4, 13, 24),
        26: _pm(53, 6, 20),
    }
    for t, row in expected.items():
        assert rows[t] == row
        assert rows[53 - t] == row


def test_cage_points_lie_on_connected_fibers() -> None:
    ctx, W = _w1(53)
    conn = pi_connfib(W, ctx)
    pts = cage_points(W, ctx)
    assert pts
    assert all(any(v in conn for v in P) for P in pts)


def test_cage_dot_output() -> None:
    ctx, W = _w1(53)
    dot = cage_to_dot(W, ctx)
    assert dot.startswith("graph cage {")
    assert "subgraph cluster_1" in dot
    assert 't2 [label="2"];' in dot
    assert " -- " in dot


def test_linking_set_matches_brute_force() -> None:
    ctx, W = _w1(11)
    pts = enumerate_points(W, ctx)
    for x0, y0 in [(2, 3), (0, 5), (INF, 4)]:
        on_x = {P[2] for P in pts if P[0] == x0}
        on_y = {P[2] for P in pts if P[1] == y0}
        assert linking_set(W, ctx, 3, x0, y0) == on_x & on_y


def test_c_curve_points_match_brute_force() -> None:
    ctx, W = _w1(7)
    y0, z0 = 2, 3
    line = p1_elements(ctx)
    expected = {
        (x, y, z)
        for x, y, z in itertools.product(line, repeat=3)
        if contains(W, (x, y0, z)) and contains(W, (x, y, z0))
    }
    assert c_curve_points(W, ctx, 1, (y0, z0)) == expected


def _check_linking_sets_are_curve_projections(p: int) -> None:
    ctx, W = _w1(p)
    table = PointTable.build(W, ctx)
    line = p1_elements(ctx)
    for variant in (1, 2, 3):
        for b1, b2 in itertools.product(line, repeat=2):
            curve = c_curve_points(W, ctx, variant, (b1, b2), table)
            projected = {P[variant - 1] for P in curve}
            assert linking_set(W, ctx, variant, b1, b2, table) == projected, (variant, b1, b2)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_linking_sets_are_curve_projections(p: int) -> None:
    _check_linking_sets_are_curve_projections(p)


@pytest.mark.slow
@pytest.mark.parametrize("p", [13, 17, 19, 23, 29, 31])
def test_linking_sets_are_curve_projections_up_to_31(p: int) -> None:
    _check_linking_sets_are_curve_projections(p)


def test_c_curve_fiber_sizes() -> None:
    ctx, W = _w1(53)
    sizes = c_curve_fiber_sizes(W, ctx, 1, (3, 5))
    assert len(sizes) == 54
    assert set(sizes.values()) <= {0, 1, 2, 4}
    assert sum(sizes.values()) == len(c_curve_points(W, ctx, 1, (3, 5)))


def test_genus_bound() -> None:
    assert GenusBound(A=4, B=2).bound == 4
    assert GenusBound(A=3, B=1).bound == Fraction(3, 2)
    ctx, W = _w1(53)
    data = genus_bound_data(W, ctx, 3, 5)
    assert data.A >= 0
    assert data.A + 2 * data.B <= 8


def _genus_bounds(p: int) -> list[Fraction]:
    ctx, W = _w1(p)
    bounds = []
    for y0, z0 in itertools.product(p1_elements(ctx), repeat=2):
        try:
            bounds.append(genus_bound_data(W, ctx, y0, z0).bound)
        except GeometryError:
            continue
    return bounds


def test_genus_bound_is_at_most_five() -> None:
    bounds = _genus_bounds(7)
    assert bounds
    assert max(bounds) <= 5


@pytest.mark.slow
@pytest.mark.parametrize("p", [11, 13, 17, 19, 23, 29, 31])
def test_genus_bound_is_at_most_five_up_to_31(p: int) -> None:
    assert max(_genus_bounds(p)) <= 5


def test_c1_singular_flags() -> None:
    ctx, W = _w1(13)
    assert not c1_singular_flag(W, 2, 5)
    assert c1_singular_flag(W, 0, 7)
    assert c1_singular_flag(W, INF, 7)
    assert c1_singular_flag(W, 3, 3)
    assert c1_singular_flag(W, 3, 10)


def test_c_singular_count_is_within_bound() -> None:
    ctx, W = _w1(53)
    count = count_c_singular_points(W, ctx)
    assert 0 < count.count <= count.total
    assert count.bound == 144 * 53
    assert count.within_bound


def _check_c_singular_bound(p: int) -> None:
    ctx = fp_make(p)
    for k in range(1, p):
        count = count_c_singular_points(wk(ctx, k), ctx)
        assert count.bound == 144 * p
        assert count.within_bound, (p, k, count.count)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_c_singular_bound_for_every_k(p: int) -> None:
    _check_c_singular_bound(p)


@pytest.mark.slow
@pytest.mark.parametrize("p", [17, 19, 23, 29, 31])
def test_c_singular_bound_for_every_k_up_to_31(p: int) -> None:
    _check_c_singular_bound(p)


def test_fiber_incidence_is_symmetric() -> None:
    ctx, W = _w1(13)
    inc = fiber_incidence(PointTable.build(W, ctx))
    assert inc.shape == (42, 42)
    assert np.array_equal(inc, inc.T)


def test_fiber_jumping_over_f53() -> None:
    ctx, W = _w1(53)
    report = verify_fiber_jumping(W, ctx)
    assert not report.guaranteed
    assert report.pairs_tested > 0
    assert report.restricted_pairs_tested > 0
    assert report.restricted_failures
    assert report.single_orbit_consistent


def test_sampled_fiber_jumping_is_reproducible() -> None:
    ctx, W = _w1(29)
    a = verify_fiber_jumping(W, ctx, mode="sampled", samples=200, seed=7)
    b = verify_fiber_jumping(W, ctx, mode="sampled", samples=200, seed=7)
    assert a.pairs_tested == b.pairs_tested
    assert a.failures == b.failures
    assert a.to_dict(ctx)["mode"] == "sampled"


def test_fiber_jumping_rejects_unknown_mode() -> None:
    ctx, W = _w1(7)
    with pytest.raises(ValueError, match="mode"):
        verify_fiber_jumping(W, ctx, mode="random")


@pytest.mark.slow
def test_fiber_jumping_holds_from_101_on() -> None:
    ctx, W = _w1(101)
    report = verify_fiber_jumping(W, ctx)
    assert report.guaranteed
    assert not report.failures
