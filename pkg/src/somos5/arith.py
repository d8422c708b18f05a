"""Exact integer helpers shared by the rest of the package.

Python ints and :class:`fractions.Fraction` already give unbounded exact
arithmetic, so the big-number types are just those.  What lives here is the
small number-theory toolkit: a prime sieve, modular inverses, trial-division
factoring and a 2-adic valuation that knows about residues that are zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import isqrt

BigInt = int
BigRational = Fraction


class NotInvertible(ZeroDivisionError):
    """Raised when a residue has no inverse modulo p."""

    def __init__(self, a: int, p: int) -> None:
        super().__init__(f"{a} is not invertible modulo {p}")
        self.a = a
        self.p = p


def sieve_primes(limit: int) -> list[int]:
    """Primes <= limit in ascending order (empty for limit < 2)."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for q in range(2, isqrt(limit) + 1):
        if flags[q]:
            flags[q * q :: q] = bytes(len(range(q * q, limit + 1, q)))
    return [n for n, bit in enumerate(flags) if bit]


def mod_inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise NotInvertible(a, p)
    try:
        return pow(a, -1, p)
    except ValueError:
        raise NotInvertible(a, p) from None


def factor_small(n: int) -> list[int]:
    """Prime factors of ``n`` with multiplicity, by trial division."""
    if n <= 0:
        raise ValueError("factor_small needs a positive integer")
    out = []
    while n % 2 == 0:
        out.append(2)
        n //= 2
    q = 3
    while q * q <= n:
        while n % q == 0:
            out.append(q)
            n //= q
        q += 2
    if n > 1:
        out.append(n)
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(set(factor_small(n)))


@total_ordering
@dataclass(frozen=True)
class Val2:
    """2-adic valuation of a residue mod 2**level.

    ``exact`` is True for a nonzero residue.  A zero residue only tells us
    the valuation is at least ``level``; such a value compares greater than
    every exact valuation below ``level``.
    """

    value: int
    exact: bool = True

    @classmethod
    def at_least(cls, k: int) -> "Val2":
        return cls(k, exact=False)

    @property
    def finite(self) -> bool:
        return self.exact

    def __lt__(self, other):
        if isinstance(other, int):
            other = Val2(other)
        if not isinstance(other, Val2):
            return NotImplemented
        if self.exact and other.exact:
            return self.value < other.value
        if self.exact:
            # v < AtLeast(k) whenever v < k
            return self.value < other.value
        if other.exact:
            return False
        return self.value < other.value

    def __eq__(self, other):
        if isinstance(other, int):
            return self.exact and self.value == other
        if not isinstance(other, Val2):
            return NotImplemented
        return self.value == other.value and self.exact == other.exact

    def __hash__(self):
        return hash((self.value, self.exact))

    def __repr__(self):
        return str(self.value) if self.exact else f"AtLeast({self.value})"


def ord2(r: int, k: int) -> Val2:
    """Valuation of ``r`` viewed as a residue mod 2**k."""
    r %= 1 << k
    if r == 0:
        return Val2.at_least(k)
    return Val2((r & -r).bit_length() - 1)


def ord2_int(n: int) -> int:
    """Valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("ord2 of zero is undefined")
    return (n & -n).bit_length() - 1
