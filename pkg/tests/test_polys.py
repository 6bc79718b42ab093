from __future__ import annotations

from fractions import Fraction

import pytest

from mk3_orbits.char0 import F12, F18
from mk3_orbits.errors import FieldError
from mk3_orbits.fields import QQ, minimal_polynomial, parse_element, parse_field, poly_resultant
from mk3_orbits.fields import polys


def test_resultant_of_linear_factors() -> None:
    # Res(x - a, x - b) = a - b
    assert poly_resultant((-3, 1), (-5, 1)) == -2
    assert poly_resultant((-5, 1), (-3, 1)) == 2


def test_resultant_of_the_chain_conditions() -> None:
    assert poly_resultant(F18, F12) == 2**80 * 53**2


def test_resultant_of_zero_polynomial() -> None:
    with pytest.raises(FieldError):
        poly_resultant((0,), (1, 1))


def test_minimal_polynomial_of_generator() -> None:
    F = parse_field("Q[i]/(i^2+1)")
    assert minimal_polynomial(F, F.generator("i")) == (1, 0, 1)


def test_minimal_polynomial_of_rational() -> None:
    assert minimal_polynomial(QQ, Fraction(3, 2)) == (Fraction(-3, 2), 1)


def test_minimal_polynomial_of_beta_plus_inverse_is_cubic() -> None:
    F = parse_field("Q[b]/(b^3+b^2+b-1)")
    elem = parse_element(F, "b + 1/b")
    mp = minimal_polynomial(F, elem)
    assert len(mp) == 4
    assert mp[-1] == 1
    assert polys.evaluate(F, tuple(F.from_fraction(c) for c in mp), elem) == F.zero


def test_gcd_and_division() -> None:
    ctx = parse_field("GF(7)")
    f = polys.mul(ctx, (1, 1), (2, 1))  # (x + 1)(x + 2)
    g = polys.mul(ctx, (1, 1), (3, 1))  # (x + 1)(x + 3)
    assert polys.gcd(ctx, f, g) == (1, 1)
    q, r = polys.divmod_(ctx, f, (1, 1))
    assert q == (2, 1)
    assert r == ()
