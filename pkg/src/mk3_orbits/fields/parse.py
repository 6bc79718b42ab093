"""Text syntax for field descriptors and elements.

Descriptors: ``Q``, ``GF(53)`` / ``F_53``, ``Q[x]/(x^3+x^2+x-1)``, ``Q(t)``,
nestable left to right as in ``Q[i]/(i^2+1)(t)``. Elements are polynomial
expressions in the declared generators with rational coefficients; negative
integer powers mean inverses.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Callable, Mapping

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from ..errors import FieldError, ParseError
from . import polys
from .base import Elem, Field
from .primefield import fp_make
from .tower import QQ, QuotientExtension, RationalFunctions

_TRANSFORMS = standard_transformations + (convert_xor,)
_PRIME_RE = re.compile(r"^(?:GF\((\d+)\)|F_?(\d+))")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _matching_paren(text: str, start: int) -> int:
    depth = 0
    for i in range(start, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise ParseError(f"unbalanced parentheses in '{text}'")


def parse_field(text: str) -> Field:
    """Build a field from its descriptor text."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty field descriptor")
    m = _PRIME_RE.match(s)
    if m:
        current: Field = fp_make(int(m.group(1) or m.group(2)))
        pos = m.end()
    elif s.startswith("Q"):
        current = QQ
        pos = 1
    else:
        raise ParseError(f"field descriptor must start with Q or GF(p): '{text}'")

    while pos < len(s):
        if s[pos] == "[":
            close = s.find("]", pos)
            name = s[pos + 1 : close] if close > 0 else ""
            if not _NAME_RE.fullmatch(name) or s[close + 1 : close + 3] != "/(":
                raise ParseError(f"expected [name]/(modulus) at '{s[pos:]}'")
            end = _matching_paren(s, close + 2)
            modulus = parse_polynomial(current, s[close + 3 : end], name)
            current = QuotientExtension(current, modulus, name)
            pos = end + 1
        elif s[pos] == "(":
            end = _matching_paren(s, pos)
            name = s[pos + 1 : end]
            if not _NAME_RE.fullmatch(name):
                raise ParseError(f"expected (variable) at '{s[pos:]}'")
            current = RationalFunctions(current, name)
            pos = end + 1
        else:
            raise ParseError(f"unexpected '{s[pos:]}' in field descriptor")
    return current


def _sympify(text: str, names: list[str]) -> sympy.Expr:
    local = {n: sympy.Symbol(n) for n in names}
    try:
        return parse_expr(text, local_dict=local, transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, sympy.SympifyError) as exc:
        raise ParseError(f"cannot parse '{text}': {exc}") from exc


def evaluate(expr: sympy.Expr, ops: Any, resolve: Callable[[str], Elem]) -> Elem:
    """Walk a sympy expression tree with the arithmetic of *ops*."""
    if expr.is_Rational:
        return ops.from_fraction(Fraction(int(expr.p), int(expr.q)))
    if expr.is_Symbol:
        return resolve(expr.name)
    if expr.is_Add:
        total = ops.zero
        for arg in expr.args:
            total = ops.add(total, evaluate(arg, ops, resolve))
        return total
    if expr.is_Mul:
        total = ops.one
        for arg in expr.args:
            total = ops.mul(total, evaluate(arg, ops, resolve))
        return total
    if expr.is_Pow and expr.exp.is_Integer:
        return ops.pow(evaluate(expr.base, ops, resolve), int(expr.exp))
    raise ParseError(f"unsupported term '{expr}' (only +, -, *, / and integer powers)")


def generator_names(F: Field) -> list[str]:
    names: list[str] = []
    while True:
        if isinstance(F, QuotientExtension):
            names.append(F.gen)
        elif isinstance(F, RationalFunctions):
            names.append(F.var)
        else:
            return names
        F = F.base


def parse_element(
    F: Field, text: str, bindings: Mapping[str, Elem] | None = None
) -> Elem:
    """Parse *text* as an element of *F*.

    *bindings* maps names to elements of *F*; they take precedence over
    the generators of *F*, which lets the same expression be evaluated
    after specialising generators to residues.
    """
    bindings = dict(bindings or {})
    names = generator_names(F) + list(bindings)

    def resolve(name: str) -> Elem:
        if name in bindings:
            return bindings[name]
        g = F.generator(name)
        if g is None:
            raise ParseError(f"unknown name '{name}' in {F.name}")
        return g

    return evaluate(_sympify(text, names), F, resolve)


class _PolyRing:
    """Just enough ring structure to evaluate a modulus in ``base[gen]``."""

    def __init__(self, base: Field, gen: str) -> None:
        self.base = base
        self.gen = gen
        self.zero: polys.Poly = ()
        self.one = polys.const(base, base.one)

    def from_fraction(self, q: Fraction) -> polys.Poly:
        return polys.const(self.base, self.base.from_fraction(q))

    def add(self, f: polys.Poly, g: polys.Poly) -> polys.Poly:
        return polys.add(self.base, f, g)

    def mul(self, f: polys.Poly, g: polys.Poly) -> polys.Poly:
        return polys.mul(self.base, f, g)

    def pow(self, f: polys.Poly, n: int) -> polys.Poly:
        if n < 0:
            if polys.degree(f) != 0:
                raise ParseError(
                    f"modulus must be a polynomial in {self.gen}; negative power of "
                    f"{polys.format_poly(self.base, f, self.gen)}"
                )
            return polys.const(self.base, self.base.pow(f[0], n))
        return polys.pow_(self.base, f, n)


def parse_polynomial(base: Field, text: str, gen: str) -> polys.Poly:
    """Parse *text* as a polynomial in *gen* with coefficients in *base*."""
    ring = _PolyRing(base, gen)
    names = generator_names(base) + [gen]

    def resolve(name: str) -> polys.Poly:
        if name == gen:
            return (base.zero, base.one)
        g = base.generator(name)
        if g is None:
            raise ParseError(f"unknown name '{name}' in modulus over {base.name}")
        return polys.const(base, g)

    try:
        return evaluate(_sympify(text, names), ring, resolve)
    except FieldError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc
