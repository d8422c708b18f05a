import random
from fractions import Fraction
from math import gcd, prod

import pytest
from hypothesis import given, strategies as st

from somos5.arith import (NotInvertible, Val2, factor_small, mod_inverse, ord2,
                          sieve_primes)


def count_primes_trial_division(n):
    def is_prime(m):
        if m < 2:
            return False
        d = 2
        while d * d <= m:
            if m % d == 0:
                return False
            d += 1
        return True
    return sum(is_prime(m) for m in range(n + 1))


def test_sieve_small():
    assert sieve_primes(10) == [2, 3, 5, 7]
    assert sieve_primes(1) == []
    assert sieve_primes(2) == [2]


def test_sieve_matches_trial_division():
    assert len(sieve_primes(10 ** 4)) == count_primes_trial_division(10 ** 4)


@given(st.integers(0, 3000), st.integers(0, 3000))
def test_sieve_prefix_property(n, m):
    assert set(sieve_primes(n)) & set(sieve_primes(m)) == set(sieve_primes(min(n, m)))


def test_mod_inverse():
    assert mod_inverse(3, 7) == 5
    assert mod_inverse(1, 101) == 1
    rng = random.Random(1)
    primes = sieve_primes(10 ** 5)[1:]
    for _ in range(100):
        p = rng.choice(primes)
        a = rng.randrange(1, p)
        assert a * mod_inverse(a, p) % p == 1
    with pytest.raises(NotInvertible):
        mod_inverse(14, 7)


def test_factor_small():
    assert sorted(factor_small(10)) == [2, 5]
    assert factor_small(1) == []
    with pytest.raises(ValueError):
        factor_small(0)
    rng = random.Random(2)
    for _ in range(200):
        n = rng.randrange(1, 10 ** 6)
        fs = factor_small(n)
        assert prod(fs) == n
        assert all(len(factor_small(q)) == 1 for q in fs)


def test_ord2_examples():
    assert ord2(12, 5) == 2
    assert ord2(8, 4) == 3
    z = ord2(0, 3)
    assert z == Val2.at_least(3) and not z.finite
    assert Val2(2) < z and not z < Val2(2)
    assert repr(z) == "AtLeast(3)"


@given(st.integers(1, 8), st.data())
def test_ord2_never_decreases_on_lifting(k, data):
    r = data.draw(st.integers(0, 2 ** k - 1))
    lift = r + data.draw(st.integers(0, 1)) * 2 ** k
    v, w = ord2(r, k), ord2(lift, k + 1)
    assert not (w < v)
    if v.finite:
        assert w == v


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(1, 10 ** 6),
       st.integers(-10 ** 6, 10 ** 6), st.integers(1, 10 ** 6))
def test_rational_sum_two_ways(a, b, c, d):
    cross = Fraction(a * d + c * b, b * d)
    g = gcd(b, d)
    l = b // g * d
    reduced = Fraction(a * (l // b) + c * (l // d), l)
    assert cross == reduced == Fraction(a, b) + Fraction(c, d)
    assert gcd(abs(cross.numerator), cross.denominator) == 1 and cross.denominator > 0
