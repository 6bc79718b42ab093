"""Load and save RunConfig from/to mk3-orbits.toml."""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib  # type: ignore[import-not-found]

from .models import CacheConfig, CensusConfig, Char0Config, GroupMode, RunConfig

CONFIG_FILENAME = "mk3-orbits.toml"


def _toml_escape(value: str) -> str:
    """Escape a string value for safe inclusion in TOML double quotes."""
    return value.replace("\\", "\\\\").replace('"', '\\"')


def _toml_bool(value: bool) -> str:
    return "true" if value else "false"


def find_config(start: Path | None = None) -> Path:
    """Walk up from *start* (default: cwd) to find ``mk3-orbits.toml``."""
    current = (start or Path.cwd()).resolve()
    while True:
        candidate = current / CONFIG_FILENAME
        if candidate.is_file():
            return candidate
        parent = current.parent
        if parent == current:
            raise FileNotFoundError(
                f"Could not find {CONFIG_FILENAME} in {start or Path.cwd()} "
                f"or any parent directory"
            )
        current = parent


def load_config(path: Path | None = None) -> RunConfig:
    """Parse ``mk3-orbits.toml`` into a ``RunConfig``."""
    config_path = path or find_config()
    with open(config_path, "rb") as f:
        raw = tomllib.load(f)

    return _parse_run(raw)


def load_config_or_default(start: Path | None = None) -> RunConfig:
    """Like :func:`load_config`, but a missing file means defaults."""
    try:
        return load_config(find_config(start))
    except FileNotFoundError:
        return RunConfig()


def _parse_run(raw: dict[str, Any]) -> RunConfig:
    return RunConfig(
        census=_parse_census(raw.get("census", {})),
        cache=_parse_cache(raw.get("cache", {})),
        char0=_parse_char0(raw.get("char0", {})),
    )


def _parse_census(raw: dict[str, Any]) -> CensusConfig:
    group_raw = raw.get("group", GroupMode.FULL.value)
    try:
        group = GroupMode(group_raw)
    except ValueError as exc:
        raise ValueError(
            f"census group must be one of {', '.join(m.value for m in GroupMode)}, got '{group_raw}'"
        ) from exc
    return CensusConfig(
        primes=str(raw.get("primes", "3..53")),
        jobs=int(raw.get("jobs", 1)),
        all_k=bool(raw.get("all_k", False)),
        with_delta=bool(raw.get("with_delta", False)),
        group=group,
    )


def _parse_cache(raw: dict[str, Any]) -> CacheConfig:
    return CacheConfig(
        enabled=bool(raw.get("enabled", False)),
        directory=str(raw.get("directory", ".mk3-orbits-cache")),
    )


def _parse_char0(raw: dict[str, Any]) -> Char0Config:
    return Char0Config(orbit_cap=int(raw.get("orbit_cap", 10**6)))


def dump_config(config: RunConfig) -> str:
    """Serialize a ``RunConfig`` to TOML string."""
    lines: list[str] = []

    lines.append("# mk3-orbits config")
    lines.append("#")
    lines.append("# Defaults for census sweeps, the result cache and exact-field closures.")
    lines.append("# The MK3_ORBITS_CACHE_DIR environment variable overrides cache.directory.")
    lines.append("")
    lines.append("[census]")
    lines.append(f'primes = "{_toml_escape(config.census.primes)}"')
    lines.append(f"jobs = {config.census.jobs}")
    lines.append(f"all_k = {_toml_bool(config.census.all_k)}")
    lines.append(f"with_delta = {_toml_bool(config.census.with_delta)}")
    lines.append(f'group = "{config.census.group.value}"')
    lines.append("")
    lines.append("[cache]")
    lines.append(f"enabled = {_toml_bool(config.cache.enabled)}")
    lines.append(f'directory = "{_toml_escape(config.cache.directory)}"')
    lines.append("")
    lines.append("[char0]")
    lines.append(f"orbit_cap = {config.char0.orbit_cap}")
    lines.append("")
    return "\n".join(lines)
