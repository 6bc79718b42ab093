"""Strongly-typed run configuration for mk3-orbits."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

import sympy

_RANGE_RE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")


class GroupMode(str, Enum):
    """Which automorphisms act in orbit computations."""

    FULL = "full"
    SIGMA = "sigma"


def parse_prime_range(text: str) -> list[int]:
    """``"3..53"`` → odd primes in the closed range; ``"7,11,13"`` → those primes.

    Every listed value must be an odd prime; ranges silently skip 2.
    """
    m = _RANGE_RE.match(text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise ValueError(f"empty prime range '{text}'")
        return [p for p in sympy.primerange(max(lo, 3), hi + 1)]
    primes = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if not part.isdigit() or int(part) == 2 or not sympy.isprime(int(part)):
            raise ValueError(f"'{part}' is not an odd prime")
        primes.append(int(part))
    if not primes:
        raise ValueError("no primes given")
    return sorted(set(primes))


@dataclass
class CensusConfig:
    """Attributes:
    primes: Range text such as ``"3..53"`` or a comma list.
    jobs: Worker processes for census sweeps.
    all_k: Disable collapsing k into ζ³k classes.
    with_delta: Add the δ-inversions to the acting group.
    group: Full 𝒢 or the σ-subgroup only.
    """

    primes: str = "3..53"
    jobs: int = 1
    all_k: bool = False
    with_delta: bool = False
    group: GroupMode = GroupMode.FULL

    def __post_init__(self) -> None:
        if self.jobs < 1:
            raise ValueError("census jobs must be >= 1")
        parse_prime_range(self.primes)

    @property
    def prime_list(self) -> list[int]:
        return parse_prime_range(self.primes)


@dataclass
class CacheConfig:
    enabled: bool = False
    directory: str = ".mk3-orbits-cache"


@dataclass
class Char0Config:
    orbit_cap: int = 10**6

    def __post_init__(self) -> None:
        if self.orbit_cap < 1:
            raise ValueError("char0 orbit_cap must be positive")


@dataclass
class RunConfig:
    """Top-level configuration. Written to / read from ``mk3-orbits.toml``."""

    census: CensusConfig = field(default_factory=CensusConfig)
    cache: CacheConfig = field(default_factory=CacheConfig)
    char0: Char0Config = field(default_factory=Char0Config)
