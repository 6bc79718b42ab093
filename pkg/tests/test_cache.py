from __future__ import annotations

from pathlib import Path

import pytest

import mk3_orbits.orbits
from mk3_orbits.cache import CACHE_ENV_VAR, RunCache, cache_key, resolve_cache_dir
from mk3_orbits.orbits import CensusOptions, CensusRow, census


def test_keys_depend_on_group() -> None:
    assert cache_key(7, 1, "G") == cache_key(7, 1, "G")
    assert cache_key(7, 1, "G") != cache_key(7, 1, "sigma")
    assert cache_key(7, 1, "G") != cache_key(7, 2, "G")


def test_environment_overrides_directory(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(CACHE_ENV_VAR, str(tmp_path / "env"))
    assert resolve_cache_dir("configured") == tmp_path / "env"
    monkeypatch.delenv(CACHE_ENV_VAR)
    assert resolve_cache_dir("configured") == Path("configured")


def test_put_and_get(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(CACHE_ENV_VAR, raising=False)
    cache = RunCache(tmp_path)
    row = CensusRow(17, 6, (24, 48, 160, 192))
    assert cache.get_row(17, 6, "G") is None
    cache.put_row(row, "G")
    assert cache.get_row(17, 6, "G") == row
    assert cache.get_row(17, 6, "sigma") is None
    assert cache.clear() == 1


def test_unreadable_entry_is_ignored(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(CACHE_ENV_VAR, raising=False)
    cache = RunCache(tmp_path)
    path = cache.path_for(7, 1, "G")
    path.parent.mkdir(parents=True)
    path.write_text("{not json")
    assert cache.get_row(7, 1, "G") is None


def test_census_resumes_from_cache(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(CACHE_ENV_VAR, raising=False)
    options = CensusOptions(cache=RunCache(tmp_path))
    first = census([7, 11], options)

    def boom(*args: object, **kwargs: object) -> CensusRow:
        raise AssertionError("census task ran although every row is cached")

    monkeypatch.setattr(mk3_orbits.orbits, "census_task", boom)
    assert census([7, 11], options) == first


def test_parallel_census_caches_every_row(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(CACHE_ENV_VAR, raising=False)
    cache = RunCache(tmp_path)
    seen: list[CensusRow] = []
    rows = census([7, 11, 13], CensusOptions(jobs=2, cache=cache), progress=seen.append)
    assert sorted(seen, key=lambda r: (r.p, r.k)) == rows
    for row in rows:
        assert cache.get_row(row.p, row.k, "G") == row
