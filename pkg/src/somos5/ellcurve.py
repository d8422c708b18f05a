"""Long-Weierstrass elliptic curves over Q and over prime fields.

A curve is ``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6``.  With
``p = None`` coordinates are :class:`~fractions.Fraction`; otherwise they are
ints reduced mod ``p``.  The point at infinity is ``None`` and affine points
are plain ``(x, y)`` tuples, so equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Tuple

from .arith import prime_divisors

Point = Optional[Tuple]
INF: Point = None


class BadReduction(ValueError):
    pass


class InternalError(RuntimeError):
    """An invariant that the mathematics guarantees was violated."""


@dataclass(frozen=True)
class WeierstrassCurve:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            for name in ("a1", "a2", "a3", "a4", "a6"):
                object.__setattr__(self, name, getattr(self, name) % self.p)

    # -- invariants -------------------------------------------------------
    @property
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        d = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        return d % self.p if self.p is not None else d

    @property
    def c_invariants(self):
        b2, b4, b6, _ = self.b_invariants
        return b2 * b2 - 24 * b4, -b2 ** 3 + 36 * b2 * b4 - 216 * b6

    def reduce(self, p: int) -> "WeierstrassCurve":
        return reduce_curve(self, p)

    # -- field helpers ----------------------------------------------------
    def _coerce(self, v):
        if self.p is None:
            return Fraction(v)
        return v % self.p

    def _div(self, num, den):
        if self.p is None:
            return Fraction(num) / den
        return num * pow(den, -1, self.p) % self.p

    def point(self, x, y) -> Tuple:
        pt = (self._coerce(x), self._coerce(y))
        if not self.on_curve(pt):
            raise ValueError(f"{pt} is not on {self}")
        return pt

    # -- group law --------------------------------------------------------
    def on_curve(self, pt: Point) -> bool:
        if pt is None:
            return True
        x, y = pt
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x * x * x + self.a2 * x * x + self.a4 * x + self.a6
        if self.p is None:
            return lhs == rhs
        return (lhs - rhs) % self.p == 0

    def neg(self, pt: Point) -> Point:
        if pt is None:
            return None
        x, y = pt
        ny = -y - self.a1 * x - self.a3
        return (x, ny % self.p if self.p is not None else ny)

    def add(self, P1: Point, P2: Point) -> Point:
        if P1 is None:
            return P2
        if P2 is None:
            return P1
        a1, a2, a3, a4, a6, p = self.a1, self.a2, self.a3, self.a4, self.a6, self.p
        x1, y1 = P1
        x2, y2 = P2
        if p is None:
            if x1 == x2:
                den = 2 * y1 + a1 * x1 + a3
                if y1 + y2 + a1 * x2 + a3 == 0:
                    return None
                lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
                nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / den
            else:
                lam = (y2 - y1) / (x2 - x1)
                nu = (y1 * x2 - y2 * x1) / (x2 - x1)
            x3 = lam * lam + a1 * lam - a2 - x1 - x2
            return (x3, -(lam + a1) * x3 - nu - a3)
        if x1 == x2:
            if (y1 + y2 + a1 * x2 + a3) % p == 0:
                return None
            inv = pow(2 * y1 + a1 * x1 + a3, -1, p)
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * inv % p
        else:
            lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
        x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
        # y3 via the line through P1 rather than the intercept
        y3 = (-(lam + a1) * x3 - (y1 - lam * x1) - a3) % p
        return (x3, y3)

    def mul(self, n: int, pt: Point) -> Point:
        if n < 0:
            return self.mul(-n, self.neg(pt))
        acc = None
        base = pt
        while n:
            if n & 1:
                acc = self.add(acc, base)
            n >>= 1
            if n:
                base = self.add(base, base)
        return acc

    def __str__(self):
        s = f"[{self.a1},{self.a2},{self.a3},{self.a4},{self.a6}]"
        return s if self.p is None else f"{s} mod {self.p}"


def on_curve(curve: WeierstrassCurve, pt: Point) -> bool:
    return curve.on_curve(pt)


def add(curve: WeierstrassCurve, P1: Point, P2: Point) -> Point:
    return curve.add(P1, P2)


def scalar_mul(curve: WeierstrassCurve, n: int, pt: Point) -> Point:
    return curve.mul(n, pt)


def reduce_curve(curve: WeierstrassCurve, p: int) -> WeierstrassCurve:
    if curve.p is not None:
        raise ValueError("curve is already defined over a finite field")
    if curve.discriminant % p == 0:
        raise BadReduction(f"{curve} has bad reduction at {p}")
    return WeierstrassCurve(curve.a1, curve.a2, curve.a3, curve.a4, curve.a6, p)


def reduce_point(pt: Point, p: int) -> Point:
    """Reduce a rational point with p-integral coordinates mod p."""
    if pt is None:
        return None
    out = []
    for c in pt:
        c = Fraction(c)
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return tuple(out)


def hasse_window(p: int) -> tuple[int, int]:
    """Integer interval guaranteed to contain #E(F_p)."""
    r = isqrt(4 * p)  # floor(2 sqrt p)
    hi = p + 1 + (r if r * r == 4 * p else r + 1)
    return max(1, p + 1 - r), hi


def _reduce_annihilator(curve, pt, m: int) -> int:
    for q in prime_divisors(m):
        while m % q == 0 and curve.mul(m // q, pt) is None:
            m //= q
    return m


def point_order(curve: WeierstrassCurve, pt: Point) -> int:
    """Exact order of ``pt`` in E(F_p).

    Baby-step/giant-step finds some multiple of the order inside the Hasse
    window, which is then stripped prime by prime.
    """
    if curve.p is None:
        raise ValueError("point_order needs a curve over F_p")
    if pt is None:
        return 1
    lo, hi = hasse_window(curve.p)
    s = isqrt((hi - lo + 1) // 2) + 1

    # baby steps j*pt for 1 <= j <= s, indexed by x (which -j*pt shares)
    baby = {}
    cur = None
    for j in range(1, s + 1):
        cur = curve.add(cur, pt)
        if cur is None:
            return _reduce_annihilator(curve, pt, j)
        baby.setdefault(cur[0], (j, cur[1]))

    stride = 2 * s + 1
    step = curve.mul(stride, pt)
    c = lo + s
    giant = curve.mul(c, pt)
    while c - s <= hi:
        if giant is None:
            return _reduce_annihilator(curve, pt, c)
        hit = baby.get(giant[0])
        if hit is not None:
            j, y = hit
            # giant = c*pt equals +j*pt or -j*pt
            m = c - j if giant[1] == y else c + j
            return _reduce_annihilator(curve, pt, m)
        giant = curve.add(giant, step)
        c += stride
    raise InternalError(f"no multiple of the order of {pt} in the Hasse window of {curve}")


def count_points_naive(curve: WeierstrassCurve) -> int:
    """#E(F_p) by enumerating x (p <= 10**4)."""
    p = curve.p
    if p is None:
        raise ValueError("count_points_naive needs a curve over F_p")
    if p > 10 ** 4:
        raise ValueError("count_points_naive is limited to p <= 10**4")
    a1, a2, a3, a4, a6 = curve.a1, curve.a2, curve.a3, curve.a4, curve.a6
    total = 1
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        lin = (a1 * x + a3) % p
        if p == 2:
            total += sum(1 for y in range(2) if (y * y + lin * y - rhs) % 2 == 0)
            continue
        # y^2 + lin*y - rhs = 0 has 1 + legendre(disc) roots
        disc = (lin * lin + 4 * rhs) % p
        if disc == 0:
            total += 1
        elif pow(disc, (p - 1) // 2, p) == 1:
            total += 2
    return total


# -- the curves and points of the Somos-5 correspondence ------------------

E = WeierstrassCurve(1, 1, 0, -2, 0)
E_PRIME = WeierstrassCurve(1, 1, 0, 8, 10)
E2 = WeierstrassCurve(0, 0, 0, -3267, 45630)

P = (Fraction(2), Fraction(2))
Q = (Fraction(0), Fraction(0))
R = (Fraction(1), Fraction(4))
P2 = (Fraction(87), Fraction(648))


def isogeny_phi(pt: Point, p: Optional[int] = None) -> Point:
    """The 2-isogeny E -> E' with kernel {O, (0,0)}.

    ``p=None`` evaluates over Q, otherwise ``pt`` holds residues mod p.
    """
    if pt is None:
        return None
    x, y = pt
    if p is None:
        if x == 0:
            return None
        return ((x * x - 2) / x, (x * x * y + 2 * x + 2 * y) / (x * x))
    x %= p
    if x == 0:
        return None
    ix = pow(x, -1, p)
    return ((x * x - 2) * ix % p, (x * x * y + 2 * x + 2 * y) * ix * ix % p)


def to_short_weierstrass(curve: WeierstrassCurve, pt: Point) -> Point:
    """Map a point to the model y^2 = x^3 - 27 c4 x - 54 c6 (over Q)."""
    if pt is None:
        return None
    x, y = pt
    b2 = curve.a1 * curve.a1 + 4 * curve.a2
    return (36 * x + 3 * b2, 108 * (2 * y + curve.a1 * x + curve.a3))
