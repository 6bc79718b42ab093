"""Vectorised point tables of W(F_p) and generator image arrays.

Coordinates are encoded as integer codes ``0..p`` where ``p`` stands for ∞.
A point's key is ``(cx·(p+1) + cy)·(p+1) + cz``; tables keep points sorted by
key, which is the lexicographic order with ∞ after every finite value.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .autos import Circ, Delta, Generator, Sigma
from .errors import DegenerateFiber, GeometryError, NotOnSurface
from .fields.primefield import PrimeFieldCtx
from .geometry import INF, P1Elem, P1Triple, Surface, as_form

logger = logging.getLogger(__name__)


def encode(ctx: PrimeFieldCtx, v: P1Elem) -> int:
    return ctx.p if v is INF else int(v) % ctx.p


def decode(ctx: PrimeFieldCtx, code: int) -> P1Elem:
    return INF if code == ctx.p else int(code)


def _homogeneous_codes(p: int, codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    at_inf = codes == p
    return np.where(at_inf, 1, codes), np.where(at_inf, 0, 1)


class UnionFind:
    """Disjoint sets over ``range(n)`` with path halving and union by size."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]

    def union_images(self, images: np.ndarray) -> None:
        for x, y in enumerate(images.tolist()):
            if x != y:
                self.union(x, y)

    def labels(self) -> np.ndarray:
        """Representative per element: the least index of its set."""
        roots = np.fromiter((self.find(i) for i in range(len(self.parent))), dtype=np.int64)
        uniq, first = np.unique(roots, return_index=True)
        return first[np.searchsorted(uniq, roots)]


def components(n: int, image_arrays: list[np.ndarray]) -> np.ndarray:
    uf = UnionFind(n)
    for images in image_arrays:
        uf.union_images(images)
    return uf.labels()


@dataclass
class PointTable:
    """All points of one surface over F_p, with cached generator images."""

    ctx: PrimeFieldCtx
    codes: np.ndarray  # (n, 3) int64
    keys: np.ndarray  # (n,) sorted
    _images: dict[Generator, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def p(self) -> int:
        return self.ctx.p

    def __len__(self) -> int:
        return len(self.keys)

    @classmethod
    def build(cls, W: Surface, ctx: PrimeFieldCtx) -> PointTable:
        form = as_form(W)
        if form.field != ctx:
            raise GeometryError(f"surface is defined over {form.field.name}, not {ctx.name}")
        p = ctx.p
        line = np.arange(p + 1, dtype=np.int64)
        cx, cy = (a.ravel() for a in np.meshgrid(line, line, indexing="ij"))
        x1, x2 = _homogeneous_codes(p, cx)
        y1, y2 = _homogeneous_codes(p, cy)
        xs = [np.ones_like(cx), x1 % p, x1 * x1 % p]
        xt = [np.ones_like(cx), x2, x2 * x2]
        ys = [np.ones_like(cy), y1 % p, y1 * y1 % p]
        yt = [np.ones_like(cy), y2, y2 * y2]

        q = [np.zeros_like(cx) for _ in range(3)]  # indexed by the z exponent
        for (i, j, k), c in form.coeffs:
            mono = xs[i] * xt[2 - i] % p * ys[j] % p * yt[2 - j] % p
            q[k] = (q[k] + int(c) * mono) % p
        a, b, c = q[2], q[1], q[0]

        degenerate = (a == 0) & (b == 0) & (c == 0)
        if degenerate.any():
            at = int(np.flatnonzero(degenerate)[0])
            raise DegenerateFiber(3, (decode(ctx, cx[at]), decode(ctx, cy[at]), "*"))

        finite = a != 0
        disc = (b * b - 4 * a * c) % p
        root = ctx.sqrt_table[disc]
        inv2a = ctx.inv_table[2 * a % p]
        first = np.where(finite, (-b + root) * inv2a % p, p)
        second = np.where(finite, (-b - root) * inv2a % p, p)
        linear = ~finite & (b != 0)
        second = np.where(linear, (-c * ctx.inv_table[b % p]) % p, second)

        has_first = (finite & (root >= 0)) | ~finite
        has_second = (finite & (root > 0)) | linear

        xs_all = np.concatenate([cx[has_first], cx[has_second]])
        ys_all = np.concatenate([cy[has_first], cy[has_second]])
        zs_all = np.concatenate([first[has_first], second[has_second]])
        codes = np.stack([xs_all, ys_all, zs_all], axis=1)
        keys = (codes[:, 0] * (p + 1) + codes[:, 1]) * (p + 1) + codes[:, 2]
        order = np.argsort(keys, kind="stable")
        logger.debug("enumerated %d points over F_%d", len(keys), p)
        return cls(ctx=ctx, codes=codes[order], keys=keys[order])

    # -- lookup ---------------------------------------------------------------------

    def key_of(self, P: P1Triple) -> int:
        p1 = self.p + 1
        cx, cy, cz = (encode(self.ctx, v) for v in P)
        return (cx * p1 + cy) * p1 + cz

    def index_of(self, P: P1Triple) -> int:
        key = self.key_of(P)
        idx = int(np.searchsorted(self.keys, key))
        if idx >= len(self.keys) or self.keys[idx] != key:
            raise NotOnSurface(P)
        return idx

    def point(self, idx: int) -> P1Triple:
        return tuple(decode(self.ctx, int(c)) for c in self.codes[idx])

    def points(self) -> list[P1Triple]:
        return [self.point(i) for i in range(len(self))]

    def _index_codes(self, codes: np.ndarray) -> np.ndarray:
        p1 = self.p + 1
        keys = (codes[:, 0] * p1 + codes[:, 1]) * p1 + codes[:, 2]
        idx = np.searchsorted(self.keys, keys)
        idx = np.minimum(idx, len(self.keys) - 1)
        if not np.array_equal(self.keys[idx], keys):
            raise GeometryError("generator does not preserve the point set")
        return idx

    # -- generator images ----------------------------------------------------------

    def sigma_images(self, axis: int) -> np.ndarray:
        """σ_axis swaps the (at most two) points sharing the other two coordinates."""
        p1 = self.p + 1
        u, v = (i for i in range(3) if i != axis - 1)
        group = self.codes[:, u] * p1 + self.codes[:, v]
        order = np.argsort(group, kind="stable")
        g = group[order]
        same = g[1:] == g[:-1]
        if (same[1:] & same[:-1]).any():
            at = int(order[np.flatnonzero(same[1:] & same[:-1])[0]])
            raise DegenerateFiber(axis, self.point(at))
        images = np.arange(len(self), dtype=np.int64)
        pos = np.flatnonzero(same)
        images[order[pos]] = order[pos + 1]
        images[order[pos + 1]] = order[pos]
        return images

    def circ_images(self, g: Circ) -> np.ndarray:
        p = self.p
        out = np.empty_like(self.codes)
        for i, (src, s) in enumerate(zip(g.perm, g.signs)):
            col = self.codes[:, src]
            out[:, i] = col if s > 0 else np.where(col == p, p, (p - col) % p)
        return self._index_codes(out)

    def delta_images(self, d: Delta) -> np.ndarray:
        p = self.p
        inv_code = np.concatenate([[p], self.ctx.inv_table[1:], [0]])
        out = self.codes.copy()
        for i, e in enumerate(d.pattern):
            if e < 0:
                out[:, i] = inv_code[self.codes[:, i]]
        return self._index_codes(out)

    def images(self, g: Generator) -> np.ndarray:
        cached = self._images.get(g)
        if cached is None:
            if isinstance(g, Sigma):
                cached = self.sigma_images(g.axis)
            elif isinstance(g, Circ):
                cached = self.circ_images(g)
            else:
                cached = self.delta_images(g)
            self._images[g] = cached
        return cached

    def components(self, generators: list[Generator]) -> np.ndarray:
        """Orbit label (least member index) of every point."""
        return components(len(self), [self.images(g) for g in generators])

    # -- projections ---------------------------------------------------------------

    def fiber_mask(self, axis: int, base: P1Elem) -> np.ndarray:
        return self.codes[:, axis - 1] == encode(self.ctx, base)

    def pair_matrix(self, i: int = 1, j: int = 2) -> np.ndarray:
        """``M[a, b]`` is true iff some point has coordinate i = a and coordinate j = b."""
        p1 = self.p + 1
        M = np.zeros((p1, p1), dtype=bool)
        M[self.codes[:, i - 1], self.codes[:, j - 1]] = True
        return M
