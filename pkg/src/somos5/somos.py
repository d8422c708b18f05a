"""Somos sequences, exactly and modulo a prime."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .arith import NotInvertible, mod_inverse
from .ellcurve import E, P, Q


class IntegralityViolation(ArithmeticError):
    pass


def somosk_terms(k: int, n: int) -> list[int]:
    """First ``n`` terms of Somos-k, checking every division is exact."""
    if not 4 <= k <= 7:
        raise ValueError("Somos-k is integral only for 4 <= k <= 7")
    if n < 0:
        raise ValueError("n must be non-negative")
    c = [1] * min(n, k)
    for m in range(k, n):
        num = sum(c[m - i] * c[m - (k - i)] for i in range(1, k // 2 + 1))
        q, rem = divmod(num, c[m - k])
        if rem:
            raise IntegralityViolation(f"Somos-{k} term {m} is not an integer")
        c.append(q)
    return c


def somos5_terms(n: int) -> list[int]:
    return somosk_terms(5, n)


def window_holds(a: list[int], m: int, p: Optional[int] = None) -> bool:
    """a[m+5] a[m] == a[m+4] a[m+1] + a[m+3] a[m+2] (mod p if given)."""
    lhs = a[m + 5] * a[m]
    rhs = a[m + 4] * a[m + 1] + a[m + 3] * a[m + 2]
    return lhs == rhs if p is None else (lhs - rhs) % p == 0


def F(a, c, e, g):
    return a * a * g * g - 7 * a * c * e * g + a * e ** 3 + c ** 3 * g + 8 * c * c * e * e


def verify_F_identity(n: int, terms: Optional[list[int]] = None) -> bool:
    a = terms if terms is not None else somos5_terms(n + 7)
    return F(a[n], a[n + 2], a[n + 4], a[n + 6]) == 0


def point_from_terms(m: int, terms: list[int]):
    """The (x, y) that the Somos-5 terms predict for mP + Q."""
    a, c, e, g = terms[m], terms[m + 2], terms[m + 4], terms[m + 6]
    return (Fraction(c * c - a * e, c * c), Fraction(4 * a * c * e - a * a * g - c ** 3, c ** 3))


def verify_point_identity(m: int, terms: Optional[list[int]] = None) -> bool:
    """Compare mP + Q from the group law with the Somos-5 prediction."""
    a = terms if terms is not None else somos5_terms(m + 7)
    return E.add(E.mul(m, P), Q) == point_from_terms(m, a)


def verify_point_identities(upto: int) -> bool:
    """Check every m in [0, upto], walking mP + Q by repeated addition."""
    a = somos5_terms(upto + 7)
    cur = Q
    for m in range(upto + 1):
        if cur != point_from_terms(m, a):
            return False
        cur = E.add(cur, P)
    return True


def somos5_mod(p: int, n: int) -> list[int]:
    """First ``n`` terms mod p, stopping after the first zero."""
    out = [1 % p] * min(n, 5)
    if 0 in out:
        return out
    for m in range(5, n):
        num = out[m - 1] * out[m - 4] + out[m - 2] * out[m - 3]
        out.append(num * mod_inverse(out[m - 5], p) % p)
        if out[-1] == 0:
            break
    return out


def scan_divides(p: int, max_index: Optional[int] = None) -> bool:
    """Does some Somos-5 term vanish mod p?

    With ``max_index`` the terms a_0..a_max_index are scanned.  Without it the
    scan runs until the 5-term state repeats, which always happens because
    the state space is finite.
    """
    if p < 2:
        raise ValueError("p must be prime")
    w = (1 % p,) * 5
    if 0 in w:
        return True
    seen = None if max_index is not None else {w}
    m = 5
    while max_index is None or m <= max_index:
        a0, a1, a2, a3, a4 = w
        try:
            nxt = (a4 * a1 + a3 * a2) * mod_inverse(a0, p) % p
        except NotInvertible:
            # a window entry is already zero: that term is a witness
            return True
        if nxt == 0:
            return True
        w = (a1, a2, a3, a4, nxt)
        if seen is not None:
            if w in seen:
                return False
            seen.add(w)
        m += 1
    return False
