"""The field-operations contract consumed by geometry, autos and orbits."""

from __future__ import annotations

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Callable, NamedTuple

from ..errors import DivisionByZero, FieldError

Elem = Any


class Field(ABC):
    """Exact arithmetic on canonical element representations.

    Elements are plain immutable Python values (``int``, ``Fraction``,
    tuples) whose equality is canonical, so they can be hashed and used
    as orbit keys directly.
    """

    #: descriptor text, e.g. ``Q[i]/(i^2+1)``
    name: str = ""

    @property
    @abstractmethod
    def characteristic(self) -> int: ...

    @property
    @abstractmethod
    def zero(self) -> Elem: ...

    @property
    @abstractmethod
    def one(self) -> Elem: ...

    @abstractmethod
    def from_int(self, n: int) -> Elem: ...

    @abstractmethod
    def add(self, a: Elem, b: Elem) -> Elem: ...

    @abstractmethod
    def neg(self, a: Elem) -> Elem: ...

    @abstractmethod
    def mul(self, a: Elem, b: Elem) -> Elem: ...

    @abstractmethod
    def inv(self, a: Elem) -> Elem: ...

    @abstractmethod
    def format(self, a: Elem) -> str: ...

    def sqrt(self, a: Elem) -> Elem | None:
        """Return some square root of *a* in this field, or ``None``."""
        return None

    def generator(self, name: str) -> Elem | None:
        """Element named *name* somewhere in this field, lifted to it."""
        return None

    def lift(self, a: Elem, source: Field) -> Elem:
        """Embed an element of the subfield *source* into this field."""
        if source == self:
            return a
        raise FieldError(f"{source.name} is not a subfield of {self.name}")

    # derived operations ---------------------------------------------------

    def eq(self, a: Elem, b: Elem) -> bool:
        return a == b

    def is_zero(self, a: Elem) -> bool:
        return a == self.zero

    def sub(self, a: Elem, b: Elem) -> Elem:
        return self.add(a, self.neg(b))

    def div(self, a: Elem, b: Elem) -> Elem:
        return self.mul(a, self.inv(b))

    def from_fraction(self, q: Fraction | int) -> Elem:
        q = Fraction(q)
        num = self.from_int(q.numerator)
        if q.denominator == 1:
            return num
        den = self.from_int(q.denominator)
        if self.is_zero(den):
            raise DivisionByZero("denominator")
        return self.div(num, den)

    def pow(self, a: Elem, n: int) -> Elem:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def square(self, a: Elem) -> Elem:
        return self.mul(a, a)

    def sum(self, *terms: Elem) -> Elem:
        total = self.zero
        for t in terms:
            total = self.add(total, t)
        return total

    def prod(self, *factors: Elem) -> Elem:
        total = self.one
        for f in factors:
            total = self.mul(total, f)
        return total

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


class FieldOps(NamedTuple):
    """Bound-method bundle handed out by :func:`field_arith`."""

    field: Field
    add: Callable[[Elem, Elem], Elem]
    neg: Callable[[Elem], Elem]
    mul: Callable[[Elem, Elem], Elem]
    inv: Callable[[Elem], Elem]
    eq: Callable[[Elem, Elem], bool]
    is_zero: Callable[[Elem], bool]
    from_integer: Callable[[int], Elem]


def field_arith(descriptor: Field | str) -> FieldOps:
    """Return the arithmetic bundle for a field object or descriptor text."""
    if isinstance(descriptor, str):
        from .parse import parse_field

        descriptor = parse_field(descriptor)
    f = descriptor
    return FieldOps(
        field=f,
        add=f.add,
        neg=f.neg,
        mul=f.mul,
        inv=f.inv,
        eq=f.eq,
        is_zero=f.is_zero,
        from_integer=f.from_int,
    )
