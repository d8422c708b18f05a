"""Division polynomials of y^2 = x^3 + A x + B.

Elements of Z[x, y]/(y^2 - x^3 - A x - B) are kept as ``XYPoly(p, q)``,
meaning ``p(x) + y q(x)``, with dense integer coefficient lists (constant
term first).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .ellcurve import E2, INF, P2, InternalError, WeierstrassCurve

E2_A, E2_B = -3267, 45630


# -- dense univariate polynomials ----------------------------------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def padd(f, g):
    n = max(len(f), len(g))
    return _trim((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n))


def pneg(f):
    return [-c for c in f]


def psub(f, g):
    return padd(f, pneg(g))


def pmul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim(out)


def pscale(f, s):
    return _trim(c * s for c in f)


def pdivmod(f, g):
    """Quotient and remainder for a monic divisor ``g``."""
    if not g or g[-1] != 1:
        raise ValueError("divisor must be monic")
    f = list(f)
    dg = len(g) - 1
    if len(f) <= dg:
        return [], _trim(f)
    q = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                f[i - dg + j] -= c * g[j]
    return _trim(q), _trim(f[:dg])


def pdeg(f) -> int:
    return len(f) - 1


def peval(f, x, p: Optional[int] = None):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
        if p is not None:
            acc %= p
    return acc


@dataclass(frozen=True)
class XYPoly:
    """``p(x) + y q(x)``; coefficients in Z, or in F_mod when ``mod`` is set."""

    p: tuple
    q: tuple
    A: int
    B: int
    mod: Optional[int] = None

    @property
    def cubic(self):
        return [self.B, self.A, 0, 1]

    @classmethod
    def make(cls, p, q, A, B, mod=None):
        if mod is not None:
            p, q = (c % mod for c in p), (c % mod for c in q)
        return cls(tuple(_trim(p)), tuple(_trim(q)), A, B, mod)

    def _like(self, p, q):
        return XYPoly.make(p, q, self.A, self.B, self.mod)

    def __add__(self, o):
        return self._like(padd(self.p, o.p), padd(self.q, o.q))

    def __sub__(self, o):
        return self._like(psub(self.p, o.p), psub(self.q, o.q))

    def __neg__(self):
        return self._like(pneg(self.p), pneg(self.q))

    def __mul__(self, o):
        if isinstance(o, int):
            return self._like(pscale(self.p, o), pscale(self.q, o))
        # (p1 + y q1)(p2 + y q2) with y^2 = cubic
        p = padd(pmul(self.p, o.p), pmul(pmul(self.q, o.q), self.cubic))
        q = padd(pmul(self.p, o.q), pmul(self.q, o.p))
        return self._like(p, q)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self._like([1], [])
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.p and not self.q

    def div_y(self) -> "XYPoly":
        """Exact division by y: (p + y q) / y = q + y (p / cubic)."""
        quo, rem = pdivmod(list(self.p), self.cubic)
        if self.mod is not None:
            rem = _trim(c % self.mod for c in rem)
        if rem:
            raise InternalError("division by y is not exact")
        return self._like(list(self.q), quo)

    def div_int(self, n: int) -> "XYPoly":
        if self.mod is not None:
            inv = pow(n, -1, self.mod)
            return self._like([c * inv for c in self.p], [c * inv for c in self.q])
        if any(c % n for c in self.p + self.q):
            raise InternalError(f"division by {n} is not exact")
        return self._like([c // n for c in self.p], [c // n for c in self.q])

    def x_only(self) -> list:
        if self.q:
            raise ValueError("polynomial still involves y")
        return list(self.p)

    def evaluate(self, x, y, p: Optional[int] = None):
        val = peval(self.p, x, p) + y * peval(self.q, x, p)
        return val % p if p is not None else val


# -- the division polynomials --------------------------------------------

@lru_cache(maxsize=None)
def psi(m: int, A: int = E2_A, B: int = E2_B, mod: Optional[int] = None) -> XYPoly:
    """The m-th division polynomial, over Z or (with ``mod``) over F_mod."""
    mk = lambda p, q=(): XYPoly.make(list(p), list(q), A, B, mod)
    if m < -1:
        raise ValueError("psi is defined for m >= -1")
    if m == -1:
        return mk([-1])
    if m == 0:
        return mk([])
    if m == 1:
        return mk([1])
    if m == 2:
        return mk([], [2])
    if m == 3:
        return mk([-A * A, 12 * B, 6 * A, 0, 3])
    if m == 4:
        return mk([], [4 * (-8 * B * B - A ** 3), 4 * (-4 * A * B), 4 * (-5 * A * A),
                       4 * 20 * B, 4 * 5 * A, 0, 4])
    n, odd = divmod(m, 2)
    ps = lambda i: psi(i, A, B, mod)
    if odd:
        return ps(n + 2) * ps(n) ** 3 - ps(n - 1) * ps(n + 1) ** 3
    inner = ps(n + 2) * ps(n - 1) ** 2 - ps(n - 2) * ps(n + 1) ** 2
    return (ps(n) * inner).div_y().div_int(2)


@lru_cache(maxsize=None)
def phi_omega(m: int, A: int = E2_A, B: int = E2_B,
              mod: Optional[int] = None) -> tuple[XYPoly, XYPoly]:
    if m < 1:
        raise ValueError("phi_omega is defined for m >= 1")
    ps = lambda i: psi(i, A, B, mod)
    x = XYPoly.make([0, 1], [], A, B, mod)
    phi = x * ps(m) ** 2 - ps(m + 1) * ps(m - 1)
    four_y_omega = ps(m + 2) * ps(m - 1) ** 2 - ps(m - 2) * ps(m + 1) ** 2
    omega = four_y_omega.div_y().div_int(4)
    return phi, omega


def mul_via_divpoly(curve: WeierstrassCurve, pt, m: int):
    """[m]pt from the division polynomials of a short-form curve."""
    if curve.a1 or curve.a2 or curve.a3:
        raise ValueError("curve must be in the form y^2 = x^3 + A x + B")
    if pt is None:
        return INF
    A, B, p = curve.a4, curve.a6, curve.p
    if m < 0:
        return curve.neg(mul_via_divpoly(curve, pt, -m))
    if m == 0:
        return INF
    x0, y0 = pt
    phi, omega = phi_omega(m, A, B, p)
    ps = psi(m, A, B, p).evaluate(x0, y0, p)
    if ps == 0:
        return INF
    ph = phi.evaluate(x0, y0, p)
    om = omega.evaluate(x0, y0, p)
    if p is None:
        return (Fraction(ph) / ps ** 2, Fraction(om) / ps ** 3)
    inv = pow(ps, -1, p)
    return (ph * inv * inv % p, om * inv * inv * inv % p)


@lru_cache(maxsize=None)
def build_f8() -> tuple:
    """phi_8(x) - 87 psi_8(x)^2 on E_2; its roots are x(beta) with 8 beta = +-P_2."""
    phi, _ = phi_omega(8)
    psi8_sq = psi(8) ** 2
    x87 = int(P2[0])
    return tuple(psub(phi.x_only(), pscale(psi8_sq.x_only(), x87)))


# -- a minimal F_{p^2} for lifting roots whose y is not in F_p --------------

class Fp2:
    """a + b w with w^2 = n, n a non-residue mod p."""

    __slots__ = ("a", "b", "p", "n")

    def __init__(self, a, b, p, n):
        self.a, self.b, self.p, self.n = a % p, b % p, p, n % p

    def _lift(self, o):
        if isinstance(o, Fp2):
            return o
        return Fp2(int(o), 0, self.p, self.n)

    def __add__(self, o):
        o = self._lift(o)
        return Fp2(self.a + o.a, self.b + o.b, self.p, self.n)

    __radd__ = __add__

    def __neg__(self):
        return Fp2(-self.a, -self.b, self.p, self.n)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return Fp2(self.a * o.a + self.n * self.b * o.b, self.a * o.b + self.b * o.a,
                   self.p, self.n)

    __rmul__ = __mul__

    def inverse(self):
        norm = (self.a * self.a - self.n * self.b * self.b) % self.p
        inv = pow(norm, -1, self.p)
        return Fp2(self.a * inv, -self.b * inv, self.p, self.n)

    def __truediv__(self, o):
        return self * self._lift(o).inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def __pow__(self, e: int):
        out = Fp2(1, 0, self.p, self.n)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, o):
        if isinstance(o, (int, Fp2)):
            o = self._lift(o)
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.p))

    def __repr__(self):
        return f"{self.a}+{self.b}w"


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """A square root of ``a`` mod an odd prime p (small p), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    return next(y for y in range(1, p) if y * y % p == a)


def lift_x(x0: int, p: int, A: int = E2_A, B: int = E2_B):
    """A point with x-coordinate x0 over F_p or F_{p^2}, as Fp2 coordinates."""
    rhs = (x0 ** 3 + A * x0 + B) % p
    y = sqrt_mod(rhs, p)
    if y is not None:
        n = _nonresidue(p)
        return (Fp2(x0, 0, p, n), Fp2(y, 0, p, n))
    # y = w with w^2 = rhs
    return (Fp2(x0, 0, p, rhs), Fp2(0, 1, p, rhs))


def _nonresidue(p: int) -> int:
    return next(n for n in range(2, p) if pow(n, (p - 1) // 2, p) == p - 1)


def roots_mod_p(coeffs, p: int) -> list[int]:
    red = [c % p for c in coeffs]
    return [x for x in range(p) if peval(red, x, p) == 0]


def check_f8_roots(p: int) -> tuple[int, bool]:
    """Lift every F_p-root of f to beta on E_2 and test 8 beta = +-P_2.

    Returns (number of roots, all lifted correctly).
    """
    roots = roots_mod_p(build_f8(), p)
    ok = True
    curve = WeierstrassCurve(0, 0, 0, E2_A, E2_B)  # over Q: generic arithmetic
    for x0 in roots:
        beta = lift_x(x0, p)
        if not curve.on_curve(beta):
            return len(roots), False
        img = curve.mul(8, beta)
        ok = ok and img is not None and img[0] == int(P2[0]) and img[1] in (
            Fp2(int(P2[1]), 0, p, 1), Fp2(-int(P2[1]), 0, p, 1))
    return len(roots), ok
