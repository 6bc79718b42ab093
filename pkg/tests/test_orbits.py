from __future__ import annotations

from fractions import Fraction

import pytest

from mk3_orbits.autos import full_group_generators, group_generators, sigma_generators
from mk3_orbits.errors import NotOnSurface, OrbitCapExceeded
from mk3_orbits.fields import QQ, fp_make
from mk3_orbits.geometry import INF, enumerate_points, wk
from mk3_orbits.golden import diff_census, load_census, load_fibral_w1, load_w4_mod8
from mk3_orbits.orbits import (
    CensusOptions,
    CensusRow,
    census,
    census_task,
    decomposition_for,
    fibral_orbit_decomposition,
    fibral_table,
    format_sizes,
    k_class_representatives,
    nontrivial_sizes,
    orbit_closure,
    orbit_decomposition,
    orbit_of,
    parse_sizes,
    suborbit_sizes,
)


def _sizes(p: int, k: int) -> list[int]:
    ctx = fp_make(p)
    return orbit_decomposition(wk(ctx, k), ctx).sizes()


def test_small_decompositions() -> None:
    assert _sizes(7, 1) == [1, 3, 64]
    assert _sizes(53, 1) == [1, 3, 24, 24, 48, 3456]


def test_decomposition_partitions_the_points() -> None:
    ctx = fp_make(13)
    W = wk(ctx, 2)
    d = orbit_decomposition(W, ctx)
    assert d.total == len(enumerate_points(W, ctx))
    seen = [P for i in range(len(d.orbits)) for P in d.orbit_points(i)]
    assert len(seen) == len(set(seen)) == d.total


@pytest.mark.parametrize(
    ("p", "k", "expected"),
    [(3, 1, [4]), (11, 4, [4, 128]), (19, 9, [48, 64, 144, 144]), (17, 6, [24, 48, 160, 192])],
)
def test_nontrivial_sizes(p: int, k: int, expected: list[int]) -> None:
    ctx = fp_make(p)
    assert nontrivial_sizes(orbit_decomposition(wk(ctx, k), ctx)) == expected


@pytest.mark.parametrize("p", [17, 41, 73])
def test_w4_over_primes_one_mod_eight(p: int) -> None:
    ctx = fp_make(p)
    d = orbit_decomposition(wk(ctx, 4), ctx)
    assert tuple(nontrivial_sizes(d)) == load_w4_mod8()[p]


@pytest.mark.slow
@pytest.mark.parametrize("p", [89, 97, 113])
def test_w4_over_larger_primes_one_mod_eight(p: int) -> None:
    ctx = fp_make(p)
    d = orbit_decomposition(wk(ctx, 4), ctx)
    assert tuple(nontrivial_sizes(d)) == load_w4_mod8()[p]


def test_full_generating_set_gives_same_orbits() -> None:
    ctx = fp_make(17)
    W = wk(ctx, 3)
    small = orbit_decomposition(W, ctx, group_generators())
    full = orbit_decomposition(W, ctx, full_group_generators())
    assert small.labels.tolist() == full.labels.tolist()


def test_sigma_only_orbits_refine_the_full_ones() -> None:
    ctx = fp_make(13)
    W = wk(ctx, 1)
    fine = orbit_decomposition(W, ctx, sigma_generators())
    coarse = orbit_decomposition(W, ctx)
    assert len(fine.orbits) >= len(coarse.orbits)
    for o in fine.orbits:
        assert len({int(coarse.labels[i]) for i in o.members}) == 1


def test_with_delta_merges_orbits() -> None:
    _, _, plain = decomposition_for(29, 1)
    _, _, merged = decomposition_for(29, 1, with_delta=True)
    assert len(merged.orbits) <= len(plain.orbits)
    assert merged.total == plain.total


def test_orbit_closure_matches_table_orbit() -> None:
    ctx = fp_make(53)
    W = wk(ctx, 11)
    P = (38, 15, 1)
    closure = orbit_closure(W, [P], group_generators())
    assert closure == set(orbit_of(W, ctx, P))


def test_orbit_closure_over_rationals() -> None:
    W = wk(QQ, 1)
    zero = Fraction(0)
    assert orbit_closure(W, [(zero, zero, zero)], group_generators()) == {(0, 0, 0)}
    assert len(orbit_closure(W, [(zero, INF, INF)], group_generators())) == 3


def test_orbit_closure_errors() -> None:
    ctx = fp_make(53)
    W = wk(ctx, 1)
    with pytest.raises(NotOnSurface):
        orbit_closure(W, [(1, 1, 1)], group_generators())
    assert orbit_of(W, ctx, (0, 0, 0)) == [(0, 0, 0)]
    big = orbit_decomposition(W, ctx)
    rep = max(big.orbits, key=lambda o: o.size).representative
    with pytest.raises(OrbitCapExceeded):
        orbit_closure(W, [rep], group_generators(), cap=100)


def test_suborbit_sizes() -> None:
    ctx = fp_make(7)
    W = wk(ctx, 1)
    pts = [(0, 0, 0), (0, INF, INF), (INF, 0, INF)]
    assert suborbit_sizes(W, pts, group_generators()) == [1, 3]


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41])
def test_fibral_table_matches_reference(p: int) -> None:
    ctx = fp_make(p)
    assert fibral_table(wk(ctx, 1), ctx) == load_fibral_w1()[p]


def test_fibral_decomposition_of_one_fiber() -> None:
    ctx = fp_make(5)
    d = fibral_orbit_decomposition(wk(ctx, 1), ctx, 1, 0)
    assert d.total == 10
    assert d.sizes() == [1, 1, 8]


def test_k_class_representatives() -> None:
    assert k_class_representatives(fp_make(5)) == [1]
    assert k_class_representatives(fp_make(7)) == [1, 2, 3]
    assert k_class_representatives(fp_make(13)) == [1, 2, 4]


def test_census_rows_match_reference() -> None:
    rows = census([5, 7, 11, 13])
    reference = load_census()
    assert [(r.p, r.k) for r in rows] == sorted((r.p, r.k) for r in rows)
    for row in rows:
        assert row.sizes == reference[(row.p, row.k)]


@pytest.mark.slow
def test_census_matches_reference_across_the_bundled_range() -> None:
    reference = load_census()
    primes = sorted({p for p, _ in reference})
    rows = census(primes)
    assert diff_census(rows, reference) == []
    assert sum((r.p, r.k) in reference for r in rows) > len(reference) // 2


def test_census_explicit_k_values() -> None:
    rows = census([17], CensusOptions(k_values=[6, 23]))
    assert rows == [CensusRow(17, 6, (24, 48, 160, 192))]


def test_census_parallel_equals_serial() -> None:
    serial = census([7, 11, 13])
    parallel = census([7, 11, 13], CensusOptions(jobs=2))
    assert parallel == serial


def test_census_progress_callback() -> None:
    seen: list[CensusRow] = []
    rows = census([7], progress=seen.append)
    assert sorted(seen, key=lambda r: r.k) == rows


def test_census_task_reduces_k() -> None:
    assert census_task(7, 8) == CensusRow(7, 1, (64,))


def test_group_keys() -> None:
    assert CensusOptions().group_key() == "G"
    assert CensusOptions(with_delta=True).group_key() == "G+delta"
    assert CensusOptions(sigma_only=True).group_key() == "sigma"


def test_size_shorthand() -> None:
    assert format_sizes([48, 24, 3456, 24]) == "24^2, 48, 3456"
    assert parse_sizes("24^2, 48, 3456") == (24, 24, 48, 3456)
    assert parse_sizes("48,24") == (24, 48)
    assert format_sizes([]) == ""
    with pytest.raises(ValueError, match="bad orbit size"):
        parse_sizes("24^x")


def test_empty_fiber_has_no_fibral_orbits() -> None:
    ctx = fp_make(19)
    W = wk(ctx, 1)
    assert fibral_table(W, ctx)[3] == 0
    assert fibral_orbit_decomposition(W, ctx, 1, 3).orbits == []
