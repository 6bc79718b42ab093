"""Prime fields F_p with Tonelli-Shanks square roots."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sympy import isprime

from ..errors import CharacteristicTwo, DivisionByZero, NotPrime
from .base import Field


@dataclass(frozen=True, eq=False)
class PrimeFieldCtx(Field):
    """Context for F_p; elements are canonical residues ``0 <= a < p``."""

    p: int
    # p - 1 = 2^s * q with q odd
    s: int = field(init=False)
    q: int = field(init=False)
    nonresidue: int = field(init=False)

    def __post_init__(self) -> None:
        q, s = self.p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (self.p - 1) // 2, self.p) != self.p - 1:
            z += 1
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "nonresidue", z)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeFieldCtx) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("F", self.p))

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"GF({self.p})"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise DivisionByZero(f"residue mod {self.p}")
        return pow(a, -1, self.p)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def sqrt(self, a: int) -> int | None:
        return fp_sqrt(self, a)

    def is_square(self, a: int) -> bool:
        a %= self.p
        return a == 0 or pow(a, (self.p - 1) // 2, self.p) == 1

    def format(self, a: int) -> str:
        return str(a % self.p)

    def elements(self) -> range:
        return range(self.p)

    # numpy lookup tables for the vectorised kernel -------------------------

    @cached_property
    def sqrt_table(self) -> np.ndarray:
        """Canonical square root of every residue, ``-1`` for non-residues."""
        tab = np.full(self.p, -1, dtype=np.int64)
        half = np.arange((self.p + 1) // 2, dtype=np.int64)
        tab[half * half % self.p] = half
        return tab

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Inverse of every nonzero residue; entry 0 is unused and set to 0."""
        tab = np.zeros(self.p, dtype=np.int64)
        for a in range(1, self.p):
            tab[a] = pow(a, -1, self.p)
        return tab


def fp_make(p: int) -> PrimeFieldCtx:
    """Validate *p* and build its field context."""
    if p == 2:
        raise CharacteristicTwo()
    if p < 3 or not isprime(p):
        raise NotPrime(p)
    return PrimeFieldCtx(p)


def fp_sqrt(ctx: PrimeFieldCtx, a: int) -> int | None:
    """Canonical square root ``r <= p - r`` of *a*, or ``None`` for non-residues."""
    p = ctx.p
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None

    # Tonelli-Shanks
    m = ctx.s
    c = pow(ctx.nonresidue, ctx.q, p)
    x = pow(a, (ctx.q + 1) // 2, p)
    t = pow(a, ctx.q, p)
    while t != 1:
        i, temp = 0, t
        while temp != 1:
            temp = temp * temp % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        t = t * b * b % p
        c = b * b % p
        m = i
    return min(x, p - x)
