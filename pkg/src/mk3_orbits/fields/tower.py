"""Exact characteristic-0 fields: Q, quotient extensions and rational function fields."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sympy import divisors

from ..errors import DivisionByZero, FieldError, ReducibleModulus
from . import polys
from .base import Elem, Field


class Rationals(Field):
    """Q with :class:`fractions.Fraction` elements."""

    name = "Q"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("Q")

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, q: Fraction | int) -> Fraction:
        return Fraction(q)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise DivisionByZero("rational")
        return 1 / Fraction(a)

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def sqrt(self, a: Fraction) -> Fraction | None:
        a = Fraction(a)
        if a < 0:
            return None
        n, d = math.isqrt(a.numerator), math.isqrt(a.denominator)
        if n * n == a.numerator and d * d == a.denominator:
            return Fraction(n, d)
        return None

    def format(self, a: Fraction) -> str:
        return str(Fraction(a))


QQ = Rationals()


def _rational_root(coeffs: Sequence[Fraction]) -> Fraction | None:
    """A rational root of the polynomial, if any (rational root theorem)."""
    if coeffs[0] == 0:
        return Fraction(0)
    scale_by = math.lcm(*(Fraction(c).denominator for c in coeffs))
    ints = [int(Fraction(c) * scale_by) for c in coeffs]
    for num in divisors(abs(ints[0])):
        for den in divisors(abs(ints[-1])):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if polys.evaluate(QQ, tuple(Fraction(c) for c in coeffs), cand) == 0:
                    return cand
    return None


@dataclass(frozen=True, eq=True)
class QuotientExtension(Field):
    """``base[gen]/(modulus)`` with elements stored as coefficient tuples.

    The modulus is made monic on construction. Irreducibility is only
    checked by a rational-root test over Q; any later inversion that hits
    a nontrivial gcd raises :class:`ReducibleModulus`.
    """

    base: Field
    modulus: tuple
    gen: str
    degree: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        m = polys.trim(self.base, self.modulus)
        if polys.degree(m) < 2:
            raise FieldError(
                f"modulus of {self.gen} must have degree >= 2, got {polys.degree(m)}"
            )
        m = polys.monic(self.base, m)
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "degree", polys.degree(m))
        if isinstance(self.base, Rationals):
            root = _rational_root(m)
            if root is not None:
                raise ReducibleModulus(f"{self.gen} - {root}", self.name)

    @property
    def name(self) -> str:  # type: ignore[override]
        return (
            f"{self.base.name}[{self.gen}]/"
            f"({polys.format_poly(self.base, self.modulus, self.gen)})"
        )

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    def _pad(self, f: Sequence[Elem]) -> tuple:
        return tuple(f) + (self.base.zero,) * (self.degree - len(f))

    @property
    def zero(self) -> tuple:
        return (self.base.zero,) * self.degree

    @property
    def one(self) -> tuple:
        return self.embed(self.base.one)

    def embed(self, b: Elem) -> tuple:
        return (b,) + (self.base.zero,) * (self.degree - 1)

    def lift(self, a: Elem, source: Field) -> Elem:
        if source == self:
            return a
        return self.embed(self.base.lift(a, source))

    def generator(self, name: str) -> tuple | None:
        if name == self.gen:
            return self._pad((self.base.zero, self.base.one))
        lower = self.base.generator(name)
        return None if lower is None else self.embed(lower)

    def from_int(self, n: int) -> tuple:
        return self.embed(self.base.from_int(n))

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a: tuple) -> tuple:
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a: tuple, b: tuple) -> tuple:
        B = self.base
        prod = polys.mul(B, polys.trim(B, a), polys.trim(B, b))
        return self._pad(polys.mod(B, prod, self.modulus))

    def is_zero(self, a: tuple) -> bool:
        return all(self.base.is_zero(x) for x in a)

    def inv(self, a: tuple) -> tuple:
        B = self.base
        f = polys.trim(B, a)
        if not f:
            raise DivisionByZero(f"element of {self.name}")
        d, s, _ = polys.xgcd(B, f, self.modulus)
        if polys.degree(d) > 0:
            raise ReducibleModulus(polys.format_poly(B, d, self.gen), self.name)
        return self._pad(polys.mod(B, s, self.modulus))

    def in_base(self, a: tuple) -> bool:
        return all(self.base.is_zero(x) for x in a[1:])

    def sqrt(self, a: tuple) -> tuple | None:
        # monomial candidates c * gen^j with c in the base
        if self.is_zero(a):
            return self.zero
        g = self.generator(self.gen)
        g_inv2 = self.inv(self.mul(g, g))
        shifted = a
        for j in range(2 * self.degree):
            if self.in_base(shifted):
                c = self.base.sqrt(shifted[0])
                if c is not None:
                    root = self.mul(self.embed(c), self.pow(g, j))
                    if self.mul(root, root) == a:
                        return root
            shifted = self.mul(shifted, g_inv2)
        return None

    def format(self, a: tuple) -> str:
        return polys.format_poly(self.base, polys.trim(self.base, a), self.gen)


@dataclass(frozen=True, eq=True)
class RationalFunctions(Field):
    """``base(var)``; elements are reduced ``(num, den)`` pairs with ``den`` monic."""

    base: Field
    var: str

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"{self.base.name}({self.var})"

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    def normalize(self, num: tuple, den: tuple) -> tuple[tuple, tuple]:
        B = self.base
        num, den = polys.trim(B, num), polys.trim(B, den)
        if not den:
            raise DivisionByZero(f"denominator in {self.name}")
        if not num:
            return self.zero
        g = polys.gcd(B, num, den)
        if polys.degree(g) > 0:
            num = polys.divmod_(B, num, g)[0]
            den = polys.divmod_(B, den, g)[0]
        c = B.inv(den[-1])
        return polys.scale(B, num, c), polys.scale(B, den, c)

    @property
    def zero(self) -> tuple[tuple, tuple]:
        return (), (self.base.one,)

    @property
    def one(self) -> tuple[tuple, tuple]:
        return (self.base.one,), (self.base.one,)

    def embed(self, b: Elem) -> tuple[tuple, tuple]:
        return polys.const(self.base, b), (self.base.one,)

    def lift(self, a: Elem, source: Field) -> Elem:
        if source == self:
            return a
        return self.embed(self.base.lift(a, source))

    def generator(self, name: str) -> tuple | None:
        if name == self.var:
            return (self.base.zero, self.base.one), (self.base.one,)
        lower = self.base.generator(name)
        return None if lower is None else self.embed(lower)

    def from_int(self, n: int) -> tuple[tuple, tuple]:
        return self.embed(self.base.from_int(n))

    def add(self, a: tuple, b: tuple) -> tuple[tuple, tuple]:
        B = self.base
        (n1, d1), (n2, d2) = a, b
        if d1 == d2:
            return self.normalize(polys.add(B, n1, n2), d1)
        return self.normalize(
            polys.add(B, polys.mul(B, n1, d2), polys.mul(B, n2, d1)),
            polys.mul(B, d1, d2),
        )

    def neg(self, a: tuple) -> tuple[tuple, tuple]:
        return polys.neg(self.base, a[0]), a[1]

    def mul(self, a: tuple, b: tuple) -> tuple[tuple, tuple]:
        B = self.base
        return self.normalize(polys.mul(B, a[0], b[0]), polys.mul(B, a[1], b[1]))

    def inv(self, a: tuple) -> tuple[tuple, tuple]:
        if not a[0]:
            raise DivisionByZero(f"element of {self.name}")
        return self.normalize(a[1], a[0])

    def is_zero(self, a: tuple) -> bool:
        return not a[0]

    def sqrt(self, a: tuple) -> tuple | None:
        num, den = a
        if not num:
            return self.zero
        if polys.degree(num) == 0 and den == (self.base.one,):
            c = self.base.sqrt(num[0])
            return None if c is None else self.embed(c)
        return None

    def format(self, a: tuple) -> str:
        num, den = a
        top = polys.format_poly(self.base, num, self.var)
        if den == (self.base.one,):
            return top
        bottom = polys.format_poly(self.base, den, self.var)
        return f"({top})/({bottom})"
