from __future__ import annotations

import pytest

from mk3_orbits.autos import (
    D12,
    E12,
    E13,
    E23,
    IDENTITY,
    LAMBDA,
    S1,
    S2,
    S3,
    T12,
    T13,
    T23,
    apply_circ,
    apply_delta,
    apply_sigma,
    apply_word,
    circ_elements,
    compose_circ,
    fibral_generators,
    parse_word,
    word_to_text,
    wk_twist,
)
from mk3_orbits.errors import BadTwist, NotOnSurface, ParseError
from mk3_orbits.fields import fp_make
from mk3_orbits.geometry import INF, contains, enumerate_points, wk
from mk3_orbits.orbits import nontrivial_sizes, orbit_decomposition


def test_sigma_moves_to_the_other_root() -> None:
    ctx = fp_make(53)
    W = wk(ctx, 11)
    assert apply_sigma(W, (15, 11, 12), 3) == (15, 11, 12)
    assert apply_sigma(W, (15, 11, 12), 1) == (0, 11, 12)


def test_sigma_is_an_involution_on_every_point() -> None:
    ctx = fp_make(11)
    W = wk(ctx, 2)
    for P in enumerate_points(W, ctx):
        for axis in (1, 2, 3):
            Q = apply_sigma(W, P, axis)
            assert contains(W, Q)
            assert apply_sigma(W, Q, axis) == P


# (transposition, the axes it swaps)
_TRANSPOSITIONS = ((T12, (1, 2)), (T13, (1, 3)), (T23, (2, 3)))


def _check_conjugation_identities(p: int) -> None:
    ctx = fp_make(p)
    for k in range(1, p):
        W = wk(ctx, k)
        for P in enumerate_points(W, ctx):
            for axis in (1, 2, 3):
                for tau, (i, j) in _TRANSPOSITIONS:
                    moved = {i: j, j: i}.get(axis, axis)
                    conjugated = apply_circ(ctx, tau, apply_sigma(W, apply_circ(ctx, tau, P), axis))
                    assert conjugated == apply_sigma(W, P, moved), (k, P, axis, tau)
                for eps in (E12, E13, E23):
                    conjugated = apply_circ(ctx, eps, apply_sigma(W, apply_circ(ctx, eps, P), axis))
                    assert conjugated == apply_sigma(W, P, axis), (k, P, axis, eps)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_conjugation_by_transpositions_and_sign_changes(p: int) -> None:
    _check_conjugation_identities(p)


@pytest.mark.slow
@pytest.mark.parametrize("p", [13, 17, 19])
def test_conjugation_identities_up_to_19(p: int) -> None:
    _check_conjugation_identities(p)


def test_sigma_rejects_points_off_the_surface() -> None:
    ctx = fp_make(7)
    with pytest.raises(NotOnSurface):
        apply_sigma(wk(ctx, 1), (1, 1, 1), 1)


def test_circ_elements() -> None:
    ctx = fp_make(7)
    assert apply_circ(ctx, IDENTITY, (1, 2, 3)) == (1, 2, 3)
    assert apply_circ(ctx, T23, (0, INF, INF)) == (0, INF, INF)
    assert apply_circ(ctx, LAMBDA, (1, 2, 3)) == (1, 4, 5)
    assert apply_circ(ctx, E12, (1, 2, INF)) == (6, 5, INF)


def test_group_of_24() -> None:
    elems = circ_elements()
    assert len(set(elems)) == 24
    assert compose_circ(T12, T12) == IDENTITY
    assert all(compose_circ(g, h) in elems for g in elems for h in elems)


def test_circ_validation() -> None:
    from mk3_orbits.autos import Circ

    with pytest.raises(ValueError, match="sign product"):
        Circ(signs=(-1, 1, 1))


def test_delta_is_an_involution() -> None:
    ctx = fp_make(7)
    P = (2, 0, INF)
    assert apply_delta(ctx, D12, P) == (4, INF, INF)
    assert apply_delta(ctx, D12, apply_delta(ctx, D12, P)) == P


def test_fibral_generators() -> None:
    assert fibral_generators(1) == [S2, S3, T23, E23]
    assert fibral_generators(3) == [S1, S2, T12, E12]
    with pytest.raises(ValueError):
        fibral_generators(4)


def test_words() -> None:
    word = parse_word("s3 s2 e12")
    assert word == (S3, S2, E12)
    assert word_to_text(word) == "s3 s2 e12"
    with pytest.raises(ParseError, match="unknown generator 'x9'"):
        parse_word("s1 x9")


def test_word_is_applied_left_to_right() -> None:
    ctx = fp_make(53)
    W = wk(ctx, 11)
    P = (38, 15, 1)
    assert apply_word(W, parse_word("s3 s2"), P) == apply_sigma(W, apply_sigma(W, P, 3), 2)


def test_twist_identity_and_validation() -> None:
    ctx = fp_make(13)
    W = wk(ctx, 1)
    Q, target = wk_twist(W, (0, INF, INF), 1)
    assert Q == (0, INF, INF)
    assert target == W
    with pytest.raises(BadTwist):
        wk_twist(W, (0, 0, 0), 2)


def test_twist_preserves_orbit_sizes() -> None:
    ctx = fp_make(13)
    W = wk(ctx, 1)
    zeta = 5  # 5^4 = 1 mod 13
    _, target = wk_twist(W, (0, 0, 0), zeta)
    assert target.k == 8
    for P in enumerate_points(W, ctx):
        Q, _ = wk_twist(W, P, zeta)
        assert contains(target, Q)
    assert nontrivial_sizes(orbit_decomposition(W, ctx)) == nontrivial_sizes(
        orbit_decomposition(target, ctx)
    )


def test_sigma_on_the_288_family_point() -> None:
    ctx = fp_make(47)
    assert apply_sigma(wk(ctx, 11), (3, 6, 11), 3) == (3, 6, 15)


def test_delta_swaps_zero_and_infinity() -> None:
    ctx = fp_make(7)
    assert apply_delta(ctx, D12, (0, INF, 5)) == (INF, 0, 5)
