from __future__ import annotations

from fractions import Fraction

import pytest

from mk3_orbits.errors import GeometryError, IdenticallyZero, ParseError
from mk3_orbits.fields import QQ, fp_make
from mk3_orbits.geometry import (
    INF,
    Mk3Surface,
    brute_force_points,
    contains,
    coord_quadratic,
    enumerate_points,
    fourth_roots_of_unity,
    mk3_nondegenerate,
    mk3_to_form,
    parse_point,
    point_to_text,
    singular_fibers,
    singular_points,
    wk,
)


def _mk3(*coeffs: int) -> Mk3Surface:
    F = fp_make(7)
    return Mk3Surface(F, *(F.from_int(c) for c in coeffs))


@pytest.mark.parametrize(("p", "k", "count"), [(3, 1, 8), (7, 1, 68), (17, 4, 496)])
def test_point_counts(p: int, k: int, count: int) -> None:
    ctx = fp_make(p)
    assert len(enumerate_points(wk(ctx, k), ctx)) == count


@pytest.mark.parametrize(("p", "k"), [(p, k) for p in (3, 5, 7, 11, 13) for k in range(1, p)])
def test_enumeration_matches_brute_force(p: int, k: int) -> None:
    ctx = fp_make(p)
    W = wk(ctx, k)
    assert set(enumerate_points(W, ctx)) == set(brute_force_points(W, ctx))


def test_enumeration_of_general_mk3_surface() -> None:
    ctx = fp_make(7)
    s = _mk3(2, 1, 3, 1, 5)
    assert set(enumerate_points(s, ctx)) == set(brute_force_points(s, ctx))


def test_enumeration_is_sorted_with_infinity_last() -> None:
    ctx = fp_make(5)
    pts = enumerate_points(wk(ctx, 1), ctx)
    code = lambda v: 5 if v is INF else v  # noqa: E731
    keys = [tuple(code(v) for v in P) for P in pts]
    assert keys == sorted(keys)
    assert len(set(pts)) == len(pts)


def test_contains_distinguished_points() -> None:
    ctx = fp_make(11)
    W = wk(ctx, 3)
    assert contains(W, (0, 0, 0))
    assert contains(W, (0, INF, INF))
    assert contains(W, (INF, 0, INF))
    assert not contains(W, (INF, INF, INF))


def test_wk_form_support() -> None:
    ctx = fp_make(7)
    form = mk3_to_form(wk(ctx, 3).mk3)
    assert set(form.as_dict()) == {(2, 2, 2), (1, 1, 1), (2, 0, 0), (0, 2, 0), (0, 0, 2)}


def test_wk_rejects_zero_k() -> None:
    with pytest.raises(GeometryError, match="k != 0"):
        wk(fp_make(7), 7)


def test_coord_quadratic_in_z() -> None:
    ctx = fp_make(13)
    W = wk(ctx, 5)
    x, y = 2, 3
    q = coord_quadratic(W, (x, y, 0), 3)
    assert q.q20 == (1 + x * x * y * y) % 13
    assert q.q11 == 5 * x * y % 13
    assert q.q02 == (x * x + y * y) % 13


def test_coord_quadratic_double_root_at_origin() -> None:
    ctx = fp_make(13)
    assert tuple(coord_quadratic(wk(ctx, 5), (0, 0, 0), 3)) == (1, 0, 0)


def test_coord_quadratic_identically_zero() -> None:
    F = fp_make(7)
    s = Mk3Surface(F, 1, 0, 0, 0, 0)
    with pytest.raises(IdenticallyZero):
        coord_quadratic(s, (0, 1, 0), 3)


def test_nondegeneracy() -> None:
    assert mk3_nondegenerate(_mk3(1, 0, 2, 1, 0))
    assert not mk3_nondegenerate(_mk3(0, 0, -3, 1, 0))
    assert not mk3_nondegenerate(_mk3(1, 1, 0, 1, 1))


def test_generic_singular_points() -> None:
    ctx = fp_make(7)
    assert singular_points(wk(ctx, 1)) == {(0, 0, 0), (0, INF, INF), (INF, 0, INF), (INF, INF, 0)}


def test_singular_points_at_k4_over_rationals() -> None:
    W = wk(QQ, 4)
    one, neg = Fraction(1), Fraction(-1)
    extra = {(one, one, neg), (one, neg, one), (neg, one, one), (neg, neg, neg)}
    assert extra <= singular_points(W)
    assert len(singular_points(W)) == 8


def test_singular_points_at_k4_over_f17() -> None:
    ctx = fp_make(17)
    assert len(singular_points(wk(ctx, 4))) == 8


def test_singular_fibers_over_zero_and_infinity() -> None:
    ctx = fp_make(13)
    W = wk(ctx, 1)
    assert singular_fibers(W, 1, 0) == {(0, 0, 0), (0, INF, INF)}
    assert singular_fibers(W, 1, INF) == {(INF, INF, 0), (INF, 0, INF)}


def test_singular_fiber_for_special_k() -> None:
    # k = -2(ξ + 1/ξ) with ξ = 2 in F_13 gives k = 8
    ctx = fp_make(13)
    assert singular_fibers(wk(ctx, 8), 1, 2) == {(2, 1, 1), (2, 12, 12)}


def test_smooth_fiber() -> None:
    ctx = fp_make(13)
    assert singular_fibers(wk(ctx, 1), 1, 2) is None


def test_point_text_round_trip() -> None:
    ctx = fp_make(53)
    P = parse_point(ctx, "(38,-38,1)")
    assert P == (38, 15, 1)
    assert point_to_text(ctx, (0, INF, INF)) == "(0,inf,inf)"
    assert parse_point(ctx, "(0,inf,inf)") == (0, INF, INF)


def test_parse_point_errors() -> None:
    ctx = fp_make(7)
    with pytest.raises(ParseError, match="three coordinates"):
        parse_point(ctx, "(1,2)")
    with pytest.raises(ParseError, match="must look like"):
        parse_point(ctx, "1,2,3")


def test_fourth_roots_of_unity() -> None:
    assert sorted(fourth_roots_of_unity(fp_make(13))) == [1, 5, 8, 12]
    assert sorted(fourth_roots_of_unity(fp_make(11))) == [1, 10]
