"""Exception hierarchy shared by every mk3-orbits module."""

from __future__ import annotations

from typing import Any


class Mk3Error(Exception):
    """Base class for all errors raised by mk3-orbits."""


# -- fields -------------------------------------------------------------------


class FieldError(Mk3Error):
    """Invalid field construction or arithmetic."""


class NotPrime(FieldError):
    def __init__(self, p: int) -> None:
        super().__init__(f"{p} is not prime")
        self.p = p


class CharacteristicTwo(FieldError):
    def __init__(self) -> None:
        super().__init__("characteristic 2 is not supported (char(K) != 2 required)")


class DivisionByZero(FieldError, ZeroDivisionError):
    def __init__(self, what: str = "element") -> None:
        super().__init__(f"cannot invert zero {what}")


class ReducibleModulus(FieldError):
    """An extension modulus turned out to have a nontrivial factor."""

    def __init__(self, witness: Any, modulus: str = "") -> None:
        detail = f" {modulus}" if modulus else ""
        super().__init__(f"modulus{detail} is reducible; factor witness {witness}")
        self.witness = witness


class ParseError(FieldError, ValueError):
    """Malformed field descriptor, element or point text."""


# -- geometry / automorphisms -----------------------------------------------


class GeometryError(Mk3Error):
    """Point or surface inconsistency."""


class NotOnSurface(GeometryError):
    def __init__(self, point: object) -> None:
        super().__init__(f"point {point} is not on the surface")
        self.point = point


class DegenerateFiber(GeometryError):
    def __init__(self, axis: int, point: object) -> None:
        super().__init__(
            f"fibral quadratic along axis {axis} vanishes identically at {point}"
        )
        self.axis = axis
        self.point = point


class IdenticallyZero(DegenerateFiber):
    """Raised by coord_quadratic when the binary quadratic is the zero form."""


class BadTwist(GeometryError):
    def __init__(self, zeta: object) -> None:
        super().__init__(f"twist factor {zeta} does not satisfy zeta^4 = 1")
        self.zeta = zeta


# -- orbits -------------------------------------------------------------------


class OrbitCapExceeded(Mk3Error):
    def __init__(self, cap: int) -> None:
        super().__init__(f"orbit closure exceeded the cap of {cap} points")
        self.cap = cap


# -- families / verification --------------------------------------------------


class FamilyError(Mk3Error):
    """Characteristic-0 family construction or verification failure."""


class UnknownFamily(FamilyError, KeyError):
    def __init__(self, name: str) -> None:
        super().__init__(f"unknown family '{name}'")
        self.name = name

    def __str__(self) -> str:
        return str(self.args[0])


class NoRootModP(FamilyError):
    def __init__(self, p: int, relation: str) -> None:
        super().__init__(f"assignment is not a root of {relation} modulo {p}")
        self.p = p
        self.relation = relation


class RelationFailure(FamilyError):
    def __init__(self, relation: str) -> None:
        super().__init__(f"relation {relation} does not vanish")
        self.relation = relation


class SizeMismatch(FamilyError):
    def __init__(self, found: int, expected: int, what: str = "orbit") -> None:
        super().__init__(f"{what} size {found} != expected {expected}")
        self.found = found
        self.expected = expected


class CheckFailure(FamilyError):
    def __init__(self, which: str, detail: str = "") -> None:
        msg = f"check '{which}' failed"
        super().__init__(f"{msg}: {detail}" if detail else msg)
        self.which = which
