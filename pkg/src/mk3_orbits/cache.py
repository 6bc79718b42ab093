"""On-disk cache of census rows, keyed by content hash."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any

from . import __version__
from .orbits import CensusRow

logger = logging.getLogger(__name__)

CACHE_ENV_VAR = "MK3_ORBITS_CACHE_DIR"
DEFAULT_CACHE_DIR = Path(".mk3-orbits-cache")


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def cache_key(p: int, k: int, group: str) -> str:
    payload = {"version": __version__, "p": p, "k": k, "group": group}
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def resolve_cache_dir(configured: str | Path | None = None) -> Path:
    """The environment variable wins over the configured directory."""
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path(configured) if configured else DEFAULT_CACHE_DIR


class RunCache:
    """One JSON file per (version, p, k, group options)."""

    def __init__(self, directory: str | Path | None = None) -> None:
        self.directory = resolve_cache_dir(directory)

    def path_for(self, p: int, k: int, group: str) -> Path:
        key = cache_key(p, k, group)
        return self.directory / key[:2] / f"{key}.json"

    def get_row(self, p: int, k: int, group: str) -> CensusRow | None:
        path = self.path_for(p, k, group)
        if not path.is_file():
            return None
        try:
            data = json.loads(path.read_text())
            row = CensusRow(int(data["p"]), int(data["k"]), tuple(int(s) for s in data["sizes"]))
        except (ValueError, KeyError, TypeError) as exc:
            logger.warning("ignoring unreadable cache entry %s: %s", path, exc)
            return None
        logger.debug("cache hit p=%d k=%d", p, k)
        return row

    def put_row(self, row: CensusRow, group: str) -> Path:
        path = self.path_for(row.p, row.k, group)
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {"p": row.p, "k": row.k, "group": group, "sizes": list(row.sizes)}
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(canonical_json(payload) + "\n")
        os.replace(tmp, path)
        return path

    def clear(self) -> int:
        removed = 0
        for path in self.directory.glob("*/*.json"):
            path.unlink()
            removed += 1
        return removed
