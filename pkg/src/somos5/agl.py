"""The affine group AGL_2(Z/2^k) and the image groups H_3 and I_k.

An element is a pair ``(v, M)``: a row vector ``v = (e, f)`` and a matrix
``M = [[a, b], [c, d]]``, multiplied as

    (v1, M1) * (v2, M2) = (v1 + v2 M1, M2 M1).

This is the 3x3 matrix ``[[a, b, 0], [c, d, 0], [e, f, 1]]`` with the
factors taken in reverse order.  For enumeration the six residues are packed
``k`` bits apiece into one int64 (``a`` in the low bits, ``f`` in the high
bits) and whole groups are held as sorted numpy arrays of codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class AffineGroupElement:
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int
    k: int

    def __post_init__(self):
        mod = 1 << self.k
        for name in "abcdef":
            object.__setattr__(self, name, getattr(self, name) % mod)

    @classmethod
    def from_pair(cls, v, M, k: int) -> "AffineGroupElement":
        (a, b), (c, d) = M
        e, f = v
        return cls(a, b, c, d, e, f, k)

    @classmethod
    def identity(cls, k: int) -> "AffineGroupElement":
        return cls(1, 0, 0, 1, 0, 0, k)

    @property
    def v(self):
        return (self.e, self.f)

    @property
    def M(self):
        return ((self.a, self.b), (self.c, self.d))

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % (1 << self.k)

    def as_matrix3(self):
        return ((self.a, self.b, 0), (self.c, self.d, 0), (self.e, self.f, 1))

    def reduce(self, k: int) -> "AffineGroupElement":
        if k > self.k:
            raise ValueError("can only reduce to a lower level")
        return AffineGroupElement(self.a, self.b, self.c, self.d, self.e, self.f, k)

    def encode(self) -> int:
        k = self.k
        return (self.a | self.b << k | self.c << 2 * k | self.d << 3 * k
                | self.e << 4 * k | self.f << 5 * k)

    @classmethod
    def decode(cls, code: int, k: int) -> "AffineGroupElement":
        mask = (1 << k) - 1
        return cls(*((int(code) >> (i * k)) & mask for i in range(6)), k)

    def __mul__(self, other: "AffineGroupElement") -> "AffineGroupElement":
        return agl_mul(self, other)

    def inverse(self) -> "AffineGroupElement":
        mod = 1 << self.k
        dinv = pow(self.det, -1, mod)
        ia, ib, ic, id_ = self.d * dinv, -self.b * dinv, -self.c * dinv, self.a * dinv
        # (v, M)^-1 = (-v M^-1, M^-1)
        e = -(self.e * ia + self.f * ic)
        f = -(self.e * ib + self.f * id_)
        return AffineGroupElement(ia, ib, ic, id_, e, f, self.k)


def agl_mul(g1: AffineGroupElement, g2: AffineGroupElement) -> AffineGroupElement:
    if g1.k != g2.k:
        raise ValueError(f"level mismatch: {g1.k} vs {g2.k}")
    a1, b1, c1, d1 = g1.a, g1.b, g1.c, g1.d
    a2, b2, c2, d2 = g2.a, g2.b, g2.c, g2.d
    return AffineGroupElement(
        a2 * a1 + b2 * c1, a2 * b1 + b2 * d1,
        c2 * a1 + d2 * c1, c2 * b1 + d2 * d1,
        g1.e + g2.e * a1 + g2.f * c1, g1.f + g2.e * b1 + g2.f * d1,
        g1.k,
    )


# -- vectorised arithmetic on packed codes --------------------------------

def unpack(codes: np.ndarray, k: int):
    codes = np.asarray(codes, dtype=np.int64)
    mask = (1 << k) - 1
    return tuple((codes >> (i * k)) & mask for i in range(6))


def pack(parts, k: int) -> np.ndarray:
    mask = (1 << k) - 1
    out = np.zeros(np.shape(parts[0]), dtype=np.int64)
    for i, x in enumerate(parts):
        out |= (np.asarray(x, dtype=np.int64) & mask) << (i * k)
    return out


def mul_codes(x: np.ndarray, y: np.ndarray, k: int) -> np.ndarray:
    """Elementwise product of packed elements (broadcasting)."""
    a1, b1, c1, d1, e1, f1 = unpack(x, k)
    a2, b2, c2, d2, e2, f2 = unpack(y, k)
    return pack((
        a2 * a1 + b2 * c1, a2 * b1 + b2 * d1,
        c2 * a1 + d2 * c1, c2 * b1 + d2 * d1,
        e1 + e2 * a1 + f2 * c1, f1 + e2 * b1 + f2 * d1,
    ), k)


def reduce_codes(codes: np.ndarray, k: int, j: int) -> np.ndarray:
    return pack(unpack(codes, k), j)


@dataclass
class GroupTable:
    k: int
    codes: np.ndarray
    generators: list = field(default_factory=list)

    def __len__(self):
        return len(self.codes)

    def __contains__(self, g) -> bool:
        code = g.encode() if isinstance(g, AffineGroupElement) else int(g)
        i = np.searchsorted(self.codes, code)
        return bool(i < len(self.codes) and self.codes[i] == code)

    def contains_codes(self, codes) -> np.ndarray:
        return np.isin(codes, self.codes, assume_unique=False)

    def elements(self) -> Iterable[AffineGroupElement]:
        for code in self.codes:
            yield AffineGroupElement.decode(code, self.k)

    def columns(self):
        return unpack(self.codes, self.k)


def _as_codes(gens, k: int) -> np.ndarray:
    out = []
    for g in gens:
        if isinstance(g, AffineGroupElement):
            if g.k != k:
                raise ValueError("generators must share a level")
            out.append(g.encode())
        else:
            out.append(int(g))
    return np.array(out, dtype=np.int64)


def close_subgroup(generators: Sequence, k: int | None = None) -> GroupTable:
    """Subgroup generated by ``generators`` (breadth-first closure)."""
    gens = list(generators)
    if k is None:
        if not gens or not isinstance(gens[0], AffineGroupElement):
            raise ValueError("level k is required for packed generators")
        k = gens[0].k
    gcodes = _as_codes(gens, k)
    identity = AffineGroupElement.identity(k).encode()
    group = np.array([identity], dtype=np.int64)
    frontier = group
    while len(frontier):
        new = np.unique(mul_codes(frontier[:, None], gcodes[None, :], k).ravel())
        new = np.setdiff1d(new, group, assume_unique=True)
        group = np.union1d(group, new)
        frontier = new
    return GroupTable(k, group, gens)


# -- the image groups ------------------------------------------------------

H3_GENERATORS = (((1, 1), (0, 1)), ((7, 0), (2, 1)), ((5, 0), (2, 1)))

# generators of I_4 as given by the 3x3 matrices; the last has e = 1
I4_GENERATORS = (
    ((0, 0), ((1, 1), (0, 1))),
    ((0, 0), ((7, 0), (2, 1))),
    ((1, 0), ((5, 0), (2, 1))),
)


@lru_cache(maxsize=None)
def build_H3() -> GroupTable:
    """The index-6 subgroup of GL_2(Z/8) as pure matrices (v = 0)."""
    gens = [AffineGroupElement.from_pair((0, 0), M, 3) for M in H3_GENERATORS]
    return close_subgroup(gens)


def _h3_matrix_keys() -> np.ndarray:
    a, b, c, d, _, _ = build_H3().columns()
    return np.sort(a | b << 3 | c << 6 | d << 9)


@lru_cache(maxsize=None)
def build_Ik(k: int) -> GroupTable:
    """All (v, M) mod 2^k with M mod 8 in H_3 and e even iff det M = 1, 7 mod 8."""
    if k < 3:
        raise ValueError("I_k is defined for k >= 3")
    mod = 1 << k
    r = np.arange(mod, dtype=np.int64)
    a, b, c, d = (x.ravel() for x in np.meshgrid(r, r, r, r, indexing="ij"))
    keys = (a & 7) | (b & 7) << 3 | (c & 7) << 6 | (d & 7) << 9
    keep = np.isin(keys, _h3_matrix_keys())
    a, b, c, d = a[keep], b[keep], c[keep], d[keep]
    det8 = (a * d - b * c) & 7
    e_even = (det8 == 1) | (det8 == 7)

    e, f = (x.ravel() for x in np.meshgrid(r, r, indexing="ij"))
    ev = (e & 1) == 0
    parts = []
    for want_even in (True, False):
        mats = e_even == want_even
        vecs = ev == want_even
        ma, mb, mc, md = (x[mats][:, None] for x in (a, b, c, d))
        ve, vf = e[vecs][None, :], f[vecs][None, :]
        shape = (ma.shape[0], ve.shape[1])
        parts.append(pack(tuple(np.broadcast_to(x, shape) for x in (ma, mb, mc, md, ve, vf)), k).ravel())
    codes = np.sort(np.concatenate(parts))
    gens = [AffineGroupElement.from_pair(v, M, k) for v, M in I4_GENERATORS]
    return GroupTable(k, codes, gens)


def is_closed(table: GroupTable, sample: np.ndarray | None = None) -> bool:
    """Check ``g * h`` stays in the table for g in ``sample`` and every h."""
    left = table.codes if sample is None else sample
    for g in left:
        prod = mul_codes(np.int64(g), table.codes, table.k)
        if not table.contains_codes(prod).all():
            return False
    return True


def frattini_2group(G: GroupTable) -> GroupTable:
    """Frattini subgroup of a 2-group: the subgroup generated by squares."""
    squares = np.unique(mul_codes(G.codes, G.codes, G.k))
    gens = []
    current = np.array([AffineGroupElement.identity(G.k).encode()], dtype=np.int64)
    while True:
        outside = squares[~np.isin(squares, current)]
        if not len(outside):
            break
        gens.append(int(outside[0]))
        current = close_subgroup(gens, G.k).codes
    return GroupTable(G.k, current, gens)


def image_order(g: AffineGroupElement) -> int:
    """Least o >= 0 with 2^o v in the row space x(I - M) over Z/2^k.

    Always exists: at o = k the target is zero.
    """
    k = g.k
    mod = 1 << k
    al, be, ga, de = (1 - g.a) % mod, -g.b % mod, -g.c % mod, (1 - g.d) % mod
    image = {((x * al + y * ga) % mod, (x * be + y * de) % mod)
             for x in range(mod) for y in range(mod)}
    for o in range(k + 1):
        t = ((g.e << o) % mod, (g.f << o) % mod)
        if t in image:
            return o
    raise AssertionError("unreachable: the zero vector is always in the image")
