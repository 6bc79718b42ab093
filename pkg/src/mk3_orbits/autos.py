"""Automorphism generators: sheet swaps σ_i, the order-24 group 𝒢°, δ-inversions.

Words are applied left to right: ``"s3 s2"`` means σ₃ first, then σ₂.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import BadTwist, NotOnSurface, ParseError
from .fields.base import Elem, Field
from .geometry import (
    INF,
    P1Triple,
    Surface,
    WkSurface,
    as_form,
    coord_quadratic,
    homogeneous,
    p1_inv,
    p1_mul,
    p1_neg,
)

_IDENTITY = (0, 1, 2)


@dataclass(frozen=True)
class Sigma:
    """Sheet swap of the projection that forgets coordinate *axis*."""

    axis: int

    def __post_init__(self) -> None:
        if self.axis not in (1, 2, 3):
            raise ValueError(f"sigma axis must be 1, 2 or 3, got {self.axis}")

    def __str__(self) -> str:
        return f"s{self.axis}"


@dataclass(frozen=True)
class Circ:
    """Element of 𝒢°: ``Q_i = signs[i] * P[perm[i]]`` (0-based perm)."""

    perm: tuple[int, int, int] = _IDENTITY
    signs: tuple[int, int, int] = (1, 1, 1)

    def __post_init__(self) -> None:
        if sorted(self.perm) != [0, 1, 2]:
            raise ValueError(f"perm must be a permutation of (0, 1, 2), got {self.perm}")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"signs must be +1/-1, got {self.signs}")
        if self.signs[0] * self.signs[1] * self.signs[2] != 1:
            raise ValueError(f"sign product must be 1, got {self.signs}")

    def __str__(self) -> str:
        return _CIRC_NAMES.get(self, f"c{''.join(map(str, self.perm))}{_sign_text(self.signs)}")


@dataclass(frozen=True)
class Delta:
    """Inversion of the coordinates where *pattern* is -1 (0⁻¹ = ∞)."""

    pattern: tuple[int, int, int]

    def __post_init__(self) -> None:
        if any(e not in (1, -1) for e in self.pattern):
            raise ValueError(f"pattern must be +1/-1, got {self.pattern}")
        if self.pattern[0] * self.pattern[1] * self.pattern[2] != 1:
            raise ValueError(f"pattern product must be 1, got {self.pattern}")

    def __str__(self) -> str:
        return _DELTA_NAMES.get(self.pattern, f"d{_sign_text(self.pattern)}")


Generator = Union[Sigma, Circ, Delta]
GroupWord = tuple[Generator, ...]


def _sign_text(signs: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


S1, S2, S3 = Sigma(1), Sigma(2), Sigma(3)
T12 = Circ((1, 0, 2))
T13 = Circ((2, 1, 0))
T23 = Circ((0, 2, 1))
E12 = Circ(signs=(-1, -1, 1))
E13 = Circ(signs=(-1, 1, -1))
E23 = Circ(signs=(1, -1, -1))
D12 = Delta((-1, -1, 1))
D13 = Delta((-1, 1, -1))
D23 = Delta((1, -1, -1))
IDENTITY = Circ()
# λ(x, y, z) = (x, -z, -y)
LAMBDA = Circ((0, 2, 1), (1, -1, -1))

_TOKENS: dict[str, Generator] = {
    "s1": S1, "s2": S2, "s3": S3,
    "t12": T12, "t13": T13, "t23": T23,
    "e12": E12, "e13": E13, "e23": E23,
    "d12": D12, "d13": D13, "d23": D23,
    "id": IDENTITY,
}  # fmt: skip
_CIRC_NAMES = {g: name for name, g in _TOKENS.items() if isinstance(g, Circ)}
_DELTA_NAMES = {g.pattern: name for name, g in _TOKENS.items() if isinstance(g, Delta)}


# -- applying generators ------------------------------------------------------------


def apply_sigma(W: Surface, P: P1Triple, axis: int) -> P1Triple:
    """The other root of the fibral quadratic along *axis* (Vieta, no square roots)."""
    form = as_form(W)
    F = form.field
    q20, q11, q02 = coord_quadratic(form, P, axis)
    v = P[axis - 1]
    z1, z2 = homogeneous(F, v)
    value = F.sum(F.mul(q20, F.square(z1)), F.prod(q11, z1, z2), F.mul(q02, F.square(z2)))
    if not F.is_zero(value):
        raise NotOnSurface(P)

    image: Elem
    if not F.is_zero(q20):
        # v is finite here: an infinite root forces q20 = 0
        image = F.sub(F.neg(F.div(q11, q20)), v)
    elif not F.is_zero(q11):
        image = F.neg(F.div(q02, q11)) if v is INF else INF
    else:
        image = v
    out = list(P)
    out[axis - 1] = image
    return tuple(out)


def apply_circ(F: Field, g: Circ, P: P1Triple) -> P1Triple:
    return tuple(
        P[src] if s > 0 else p1_neg(F, P[src]) for src, s in zip(g.perm, g.signs)
    )


def apply_delta(F: Field, d: Delta, P: P1Triple) -> P1Triple:
    return tuple(p1_inv(F, v) if e < 0 else v for v, e in zip(P, d.pattern))


def apply_generator(W: Surface, g: Generator, P: P1Triple) -> P1Triple:
    if isinstance(g, Sigma):
        return apply_sigma(W, P, g.axis)
    F = as_form(W).field
    if isinstance(g, Circ):
        return apply_circ(F, g, P)
    return apply_delta(F, g, P)


def apply_word(W: Surface, word: Iterable[Generator], P: P1Triple) -> P1Triple:
    for g in word:
        P = apply_generator(W, g, P)
    return P


def compose_circ(g: Circ, h: Circ) -> Circ:
    """The element "g then h"."""
    perm = tuple(g.perm[h.perm[j]] for j in range(3))
    signs = tuple(h.signs[j] * g.signs[h.perm[j]] for j in range(3))
    return Circ(perm, signs)  # type: ignore[arg-type]


def circ_elements() -> list[Circ]:
    """All 24 elements of 𝒢° = (μ₂³)₁ ⋊ S₃."""
    signs = [s for s in itertools.product((1, -1), repeat=3) if s[0] * s[1] * s[2] == 1]
    return [Circ(perm, sgn) for perm in itertools.permutations(range(3)) for sgn in signs]  # type: ignore[arg-type]


def delta_elements() -> list[Delta]:
    return [D12, D13, D23]


# -- generator sets -----------------------------------------------------------------


def sigma_generators() -> list[Generator]:
    return [S1, S2, S3]


def gcirc_generators(with_delta: bool = False) -> list[Generator]:
    """Generators of 𝒢° (or of 𝒢̂° = ⟨𝒢°, δ⟩)."""
    gens: list[Generator] = [T12, T23, E12]
    return gens + [D12] if with_delta else gens


def group_generators(with_delta: bool = False) -> list[Generator]:
    """A small generating set of 𝒢 = ⟨σ₁, σ₂, σ₃, 𝒢°⟩, optionally with δ."""
    return sigma_generators() + gcirc_generators(with_delta)


def full_group_generators(with_delta: bool = False) -> list[Generator]:
    """σ₁, σ₂, σ₃ and all 24 elements of 𝒢° (plus the δ-inversions)."""
    gens: list[Generator] = [*sigma_generators(), *circ_elements()]
    return gens + list(delta_elements()) if with_delta else gens


def fibral_generators(axis: int) -> list[Generator]:
    """Generators of the fibral group 𝒢⁽ⁱ⁾, which preserves coordinate *axis*."""
    table: dict[int, list[Generator]] = {
        1: [S2, S3, T23, E23],
        2: [S1, S3, T13, E13],
        3: [S1, S2, T12, E12],
    }
    if axis not in table:
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    return table[axis]


# -- twists ----------------------------------------------------------------------------


def wk_twist(W: WkSurface, P: P1Triple, zeta: Elem) -> tuple[P1Triple, WkSurface]:
    """``(x, y, z) ↦ (ζx, ζy, ζz)``, a bijection W_k → W_{ζ³k} for ζ⁴ = 1."""
    F = W.field
    if not F.eq(F.pow(zeta, 4), F.one):
        raise BadTwist(F.format(zeta))
    target = WkSurface(F, F.mul(F.pow(zeta, 3), W.k))
    return tuple(p1_mul(F, zeta, v) for v in P), target


# -- text syntax --------------------------------------------------------------------------


def parse_word(text: str) -> GroupWord:
    """Parse whitespace-separated generator tokens (``s1 t23 e12 d13``)."""
    word = []
    for token in text.replace(",", " ").split():
        g = _TOKENS.get(token.lower())
        if g is None:
            raise ParseError(
                f"unknown generator '{token}'; expected one of {', '.join(_TOKENS)}"
            )
        word.append(g)
    return tuple(word)


def word_to_text(word: Iterable[Generator]) -> str:
    return " ".join(str(g) for g in word)
