"""Points of (P¹)³, (2,2,2)-forms, the MK3 family and the W_k surfaces."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Union

from .errors import GeometryError, IdenticallyZero, ParseError
from .fields.base import Elem, Field
from .fields.parse import parse_element
from .fields.primefield import PrimeFieldCtx

logger = logging.getLogger(__name__)


class _Infinity:
    """The point at infinity of P¹; a process-wide singleton."""

    _instance: _Infinity | None = None

    def __new__(cls) -> _Infinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"

    def __reduce__(self) -> str:
        return "INF"


INF = _Infinity()

P1Elem = Union[Elem, _Infinity]
P1Triple = tuple

AXES = (1, 2, 3)


def is_inf(v: P1Elem) -> bool:
    return v is INF


def p1_neg(F: Field, v: P1Elem) -> P1Elem:
    return INF if v is INF else F.neg(v)


def p1_inv(F: Field, v: P1Elem) -> P1Elem:
    """Inverse on P¹ with 0⁻¹ = ∞ and ∞⁻¹ = 0."""
    if v is INF:
        return F.zero
    if F.is_zero(v):
        return INF
    return F.inv(v)


def p1_mul(F: Field, c: Elem, v: P1Elem) -> P1Elem:
    """Scale by a nonzero constant; ∞ is fixed."""
    return INF if v is INF else F.mul(c, v)


def homogeneous(F: Field, v: P1Elem) -> tuple[Elem, Elem]:
    """``[v : 1]`` for finite values, ``[1 : 0]`` for ∞."""
    if v is INF:
        return F.one, F.zero
    return v, F.one


def p1_elements(ctx: PrimeFieldCtx) -> list[P1Elem]:
    """P¹(F_p) with ∞ ordered after every finite value."""
    return [*range(ctx.p), INF]


# -- forms and surfaces ---------------------------------------------------------


class BinaryQuadratic(NamedTuple):
    """``q20·Z1² + q11·Z1Z2 + q02·Z2²``."""

    q20: Elem
    q11: Elem
    q02: Elem


@dataclass(frozen=True)
class Form222:
    """A (2,2,2)-form; ``coeffs[(i, j, k)]`` multiplies X1^i X2^(2-i) Y1^j Y2^(2-j) Z1^k Z2^(2-k)."""

    field: Field
    coeffs: tuple[tuple[tuple[int, int, int], Elem], ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise GeometryError("a (2,2,2)-form must not be identically zero")
        for (i, j, k), _ in self.coeffs:
            if not all(0 <= e <= 2 for e in (i, j, k)):
                raise GeometryError(f"exponent {(i, j, k)} out of range")

    @classmethod
    def from_dict(cls, F: Field, coeffs: dict[tuple[int, int, int], Elem]) -> Form222:
        items = tuple(sorted((e, c) for e, c in coeffs.items() if not F.is_zero(c)))
        return cls(F, items)

    def as_dict(self) -> dict[tuple[int, int, int], Elem]:
        return dict(self.coeffs)


@dataclass(frozen=True)
class Mk3Surface:
    """``a x²y²z² + b(x²y²+x²z²+y²z²) + c xyz + d(x²+y²+z²) + e``."""

    field: Field
    a: Elem
    b: Elem
    c: Elem
    d: Elem
    e: Elem

    @property
    def form(self) -> Form222:
        return mk3_to_form(self)

    @property
    def delta_invariant(self) -> bool:
        """Whether the δ-inversions are automorphisms (a = d and b = e)."""
        F = self.field
        return F.eq(self.a, self.d) and F.eq(self.b, self.e)


@dataclass(frozen=True)
class WkSurface:
    """``x² + y² + z² + x²y²z² + kxyz = 0``."""

    field: Field
    k: Elem

    def __post_init__(self) -> None:
        if self.field.is_zero(self.k):
            raise GeometryError("W_k requires k != 0")

    @property
    def mk3(self) -> Mk3Surface:
        F = self.field
        return Mk3Surface(F, F.one, F.zero, self.k, F.one, F.zero)

    @property
    def form(self) -> Form222:
        return mk3_to_form(self.mk3)

    def __str__(self) -> str:
        return f"W_{self.field.format(self.k)} over {self.field.name}"


Surface = Union[WkSurface, Mk3Surface, Form222]


def as_form(W: Surface) -> Form222:
    return W if isinstance(W, Form222) else W.form


def wk(F: Field, k: int | Elem) -> WkSurface:
    """Convenience constructor accepting plain integers for k."""
    return WkSurface(F, F.from_int(k) if isinstance(k, int) else k)


def mk3_to_form(s: Mk3Surface) -> Form222:
    coeffs: dict[tuple[int, int, int], Elem] = {(2, 2, 2): s.a, (1, 1, 1): s.c, (0, 0, 0): s.e}
    for e in ((2, 2, 0), (2, 0, 2), (0, 2, 2)):
        coeffs[e] = s.b
    for e in ((2, 0, 0), (0, 2, 0), (0, 0, 2)):
        coeffs[e] = s.d
    return Form222.from_dict(s.field, coeffs)


def mk3_nondegenerate(s: Mk3Surface) -> bool:
    F = s.field
    return not F.eq(F.mul(s.b, s.e), F.mul(s.d, s.d)) and not F.eq(
        F.mul(s.a, s.d), F.mul(s.b, s.b)
    )


def _monomial(F: Field, hom: tuple[Elem, Elem], e: int) -> Elem:
    v1, v2 = hom
    return F.mul(F.pow(v1, e), F.pow(v2, 2 - e))


def form_value(form: Form222, P: P1Triple) -> Elem:
    """Value of the form at the homogeneous coordinates of *P*."""
    F = form.field
    homs = [homogeneous(F, v) for v in P]
    total = F.zero
    for (i, j, k), c in form.coeffs:
        term = F.prod(
            c,
            _monomial(F, homs[0], i),
            _monomial(F, homs[1], j),
            _monomial(F, homs[2], k),
        )
        total = F.add(total, term)
    return total


def contains(W: Surface, P: P1Triple) -> bool:
    form = as_form(W)
    return form.field.is_zero(form_value(form, P))


def coord_quadratic(W: Surface, P: P1Triple, axis: int) -> BinaryQuadratic:
    """The binary quadratic in the *axis* coordinate after fixing the other two."""
    form = as_form(W)
    F = form.field
    others = [i for i in range(3) if i != axis - 1]
    homs = {i: homogeneous(F, P[i]) for i in others}
    q = [F.zero, F.zero, F.zero]  # indexed by the axis exponent
    for exps, c in form.coeffs:
        term = c
        for i in others:
            term = F.mul(term, _monomial(F, homs[i], exps[i]))
        q[exps[axis - 1]] = F.add(q[exps[axis - 1]], term)
    quad = BinaryQuadratic(q20=q[2], q11=q[1], q02=q[0])
    if all(F.is_zero(c) for c in quad):
        raise IdenticallyZero(axis, P)
    return quad


# -- points over F_p ------------------------------------------------------------


def enumerate_points(W: Surface, ctx: PrimeFieldCtx) -> list[P1Triple]:
    """Every point of W(F_p) once, lexicographic in (x, y, z) with ∞ last."""
    from .kernel import PointTable

    table = PointTable.build(W, ctx)
    return table.points()


def brute_force_points(W: Surface, ctx: PrimeFieldCtx) -> list[P1Triple]:
    """O(p³) membership scan over (P¹)³; the oracle for :func:`enumerate_points`."""
    form = as_form(W)
    line = p1_elements(ctx)
    return [P for P in itertools.product(line, repeat=3) if contains(form, P)]


# -- singular locus ---------------------------------------------------------------

_DELTA_PATTERNS = ((1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1))


def _affine_chart(F: Field, P: P1Triple) -> tuple[Elem, Elem, Elem] | None:
    """Image of *P* under a δ-inversion that makes every coordinate finite."""
    for pattern in _DELTA_PATTERNS:
        image = tuple(p1_inv(F, v) if e < 0 else v for v, e in zip(P, pattern))
        if not any(v is INF for v in image):
            return image  # type: ignore[return-value]
    return None


def _wk_gradient_vanishes(F: Field, k: Elem, x: Elem, y: Elem, z: Elem) -> bool:
    two = F.from_int(2)
    x2, y2, z2 = F.square(x), F.square(y), F.square(z)
    value = F.sum(x2, y2, z2, F.prod(x2, y2, z2), F.prod(k, x, y, z))
    fx = F.add(F.prod(two, x, F.add(F.one, F.mul(y2, z2))), F.prod(k, y, z))
    fy = F.add(F.prod(two, y, F.add(F.one, F.mul(x2, z2))), F.prod(k, x, z))
    fz = F.add(F.prod(two, z, F.add(F.one, F.mul(x2, y2))), F.prod(k, x, y))
    return all(F.is_zero(v) for v in (value, fx, fy, fz))


def _base_singular_points(F: Field) -> set[P1Triple]:
    return {(F.zero, F.zero, F.zero), (F.zero, INF, INF), (INF, F.zero, INF), (INF, INF, F.zero)}


def singular_points(W: WkSurface) -> set[P1Triple]:
    """Singular locus of W_k: exhaustive over F_p, closed form otherwise."""
    F = W.field
    if isinstance(F, PrimeFieldCtx):
        found: set[P1Triple] = set()
        for P in enumerate_points(W, F):
            chart = _affine_chart(F, P)
            if chart is not None and _wk_gradient_vanishes(F, W.k, *chart):
                found.add(P)
        return found
    return closed_form_singular_points(W)


def closed_form_singular_points(W: WkSurface) -> set[P1Triple]:
    """The closed-form classification, valid in every characteristic other than 2."""
    F = W.field
    found = _base_singular_points(F)
    if F.eq(F.pow(W.k, 4), F.from_int(256)):
        zeta = F.div(F.from_int(4), W.k)
        one, neg = F.one, F.neg(F.one)
        for signs in ((one, one, neg), (one, neg, one), (neg, one, one), (neg, neg, neg)):
            found.add(tuple(F.mul(zeta, s) for s in signs))
    return found


def _place(axis: int, base: P1Elem, u: P1Elem, v: P1Elem) -> P1Triple:
    coords = [u, v]
    coords.insert(axis - 1, base)
    return tuple(coords)


def fourth_roots_of_unity(F: Field) -> list[Elem]:
    roots = [F.one, F.neg(F.one)]
    i = F.sqrt(F.neg(F.one))
    if i is not None and not F.eq(i, F.one) and not F.eq(i, F.neg(F.one)):
        roots += [i, F.neg(i)]
    return roots


def singular_fibers(W: WkSurface, axis: int, xi: P1Elem) -> set[P1Triple] | None:
    """Singular points of the fiber over *xi*, or ``None`` when it is smooth."""
    F = W.field
    if xi is INF:
        return {_place(axis, INF, INF, F.zero), _place(axis, INF, F.zero, INF)}
    if F.is_zero(xi):
        return {_place(axis, F.zero, F.zero, F.zero), _place(axis, F.zero, INF, INF)}

    found: set[P1Triple] = set()
    xi_inv = F.inv(xi)
    two = F.from_int(2)
    for eps in (F.one, F.neg(F.one)):
        for v in fourth_roots_of_unity(F):
            # k = -2ε(ξv² + ξ⁻¹)
            k = F.neg(F.prod(two, eps, F.add(F.mul(xi, F.square(v)), xi_inv)))
            if F.eq(k, W.k):
                found.add(_place(axis, xi, v, F.mul(eps, v)))
    return found or None


# -- text format -------------------------------------------------------------------


def format_p1(F: Field, v: P1Elem) -> str:
    return "inf" if v is INF else F.format(v)


def point_to_text(F: Field, P: P1Triple) -> str:
    return "(" + ",".join(format_p1(F, v) for v in P) + ")"


def _split_top_level(text: str) -> list[str]:
    parts, depth, current = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            parts.append(current)
            current = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        current += ch
    parts.append(current)
    return parts


def parse_point(F: Field, text: str) -> P1Triple:
    """Parse ``(x,y,z)`` with ``inf`` for ∞ and field-element syntax otherwise."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError(f"point must look like (x,y,z): '{text}'")
    parts = _split_top_level(s[1:-1])
    if len(parts) != 3:
        raise ParseError(f"point needs three coordinates: '{text}'")
    return tuple(
        INF if part.strip() in {"inf", "oo", "∞"} else parse_element(F, part)
        for part in parts
    )


def iter_fiber(points: list[P1Triple], axis: int, base: P1Elem) -> Iterator[P1Triple]:
    for P in points:
        if P[axis - 1] == base:
            yield P
