"""Univariate polynomials over a :class:`Field`, resultants and minimal polynomials.

Polynomials are tuples of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy

from ..errors import DivisionByZero, FieldError
from .base import Elem, Field

Poly = tuple


def trim(F: Field, coeffs: Sequence[Elem]) -> Poly:
    n = len(coeffs)
    while n and F.is_zero(coeffs[n - 1]):
        n -= 1
    return tuple(coeffs[:n])


def degree(f: Poly) -> int:
    return len(f) - 1


def lead(F: Field, f: Poly) -> Elem:
    return f[-1] if f else F.zero


def const(F: Field, c: Elem) -> Poly:
    return trim(F, (c,))


def add(F: Field, f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return trim(F, out)


def neg(F: Field, f: Poly) -> Poly:
    return tuple(F.neg(c) for c in f)


def sub(F: Field, f: Poly, g: Poly) -> Poly:
    return add(F, f, neg(F, g))


def scale(F: Field, f: Poly, c: Elem) -> Poly:
    if F.is_zero(c):
        return ()
    return trim(F, [F.mul(a, c) for a in f])


def mul(F: Field, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(F, out)


def divmod_(F: Field, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise DivisionByZero("polynomial")
    inv_lead = F.inv(g[-1])
    rem = list(f)
    dg = degree(g)
    quot = [F.zero] * max(len(f) - dg, 0)
    for i in range(len(f) - 1 - dg, -1, -1):
        c = F.mul(rem[i + dg], inv_lead)
        if F.is_zero(c):
            continue
        quot[i] = c
        for j, b in enumerate(g):
            rem[i + j] = F.sub(rem[i + j], F.mul(c, b))
    return trim(F, quot), trim(F, rem[:dg] if dg > 0 else [])


def mod(F: Field, f: Poly, g: Poly) -> Poly:
    return divmod_(F, f, g)[1]


def monic(F: Field, f: Poly) -> Poly:
    if not f:
        return f
    return scale(F, f, F.inv(f[-1]))


def gcd(F: Field, f: Poly, g: Poly) -> Poly:
    """Monic gcd (``()`` when both inputs vanish)."""
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def xgcd(F: Field, f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(d, s, t)`` with ``s*f + t*g = d`` and ``d`` monic."""
    r0, r1 = f, g
    s0, s1 = const(F, F.one), ()
    t0, t1 = (), const(F, F.one)
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return (), s0, t0
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def evaluate(F: Field, f: Poly, x: Elem) -> Elem:
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pow_(F: Field, f: Poly, n: int) -> Poly:
    result = const(F, F.one)
    while n:
        if n & 1:
            result = mul(F, result, f)
        f = mul(F, f, f)
        n >>= 1
    return result


def format_poly(F: Field, f: Poly, var: str) -> str:
    if not f:
        return "0"
    terms: list[str] = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if F.is_zero(c):
            continue
        text = F.format(c)
        compound = any(ch in text[1:] for ch in "+- ")
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if not mono:
            term = text
        elif text == "1":
            term = mono
        elif text == "-1":
            term = f"-{mono}"
        elif compound:
            term = f"({text})*{mono}"
        else:
            term = f"{text}*{mono}"
        terms.append(term)
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


# -- integer resultants -------------------------------------------------------


def poly_resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Res(f, g) = lc(f)^deg(g) * prod g(root_i(f)) for integer coefficient lists.

    Coefficients are lowest degree first.
    """
    x = sympy.Symbol("x")
    pf = sympy.Poly(list(reversed([int(c) for c in f])), x, domain="ZZ")
    pg = sympy.Poly(list(reversed([int(c) for c in g])), x, domain="ZZ")
    if pf.is_zero or pg.is_zero:
        raise FieldError("resultant of the zero polynomial is undefined")
    return int(pf.resultant(pg))


# -- minimal polynomials in finite towers over Q -------------------------------


def to_rational_vector(F: Field, a: Elem) -> list[Fraction]:
    """Coordinates of *a* in the power basis of a finite tower over Q."""
    from .tower import QuotientExtension, Rationals

    if isinstance(F, Rationals):
        return [Fraction(a)]
    if isinstance(F, QuotientExtension):
        out: list[Fraction] = []
        for c in a:
            out.extend(to_rational_vector(F.base, c))
        return out
    raise FieldError(f"{F.name} is not a finite extension of Q")


def minimal_polynomial(F: Field, a: Elem) -> tuple[Fraction, ...]:
    """Monic minimal polynomial of *a* over Q, lowest degree first.

    Powers of *a* are written in the tower basis and the first linear
    dependence is read off an exact nullspace.
    """
    powers = [to_rational_vector(F, F.one)]
    current = F.one
    while True:
        current = F.mul(current, a)
        powers.append(to_rational_vector(F, current))
        matrix = sympy.Matrix(
            [[sympy.Rational(v.numerator, v.denominator) for v in col] for col in powers]
        ).T
        null = matrix.nullspace()
        if null:
            vec = null[0]
            top = vec[len(powers) - 1]
            coeffs = [sympy.Rational(c / top) for c in vec]
            return tuple(Fraction(int(c.p), int(c.q)) for c in coeffs)
