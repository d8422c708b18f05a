import random
from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from somos5.arith import ord2_int
from somos5.density import (TARGET_DENSITY, ReducedMatrix as N, Verdict, bracket_density,
                            classify, good_mass, minors, mu, mu_montecarlo,
                            total_density, zero_class_mu)


def test_minors_example():
    m = minors(N(1, 2, 3, 4, 5, 6, 4))
    assert (m.A, m.B, m.C) == ((3 * 6 - 4 * 5) % 16, (6 - 10) % 16, (4 - 6) % 16)


def test_classify_examples():
    assert classify(N(1, 0, 0, 0, 0, 1, 1)) is Verdict.GOOD      # B=1, A=C=0
    assert classify(N(0, 0, 0, 0, 0, 1, 1)) is Verdict.INCONCLUSIVE
    assert classify(N(1, 0, 0, 0, 0, 1, 2)) is Verdict.GOOD      # B=1, A=0, C=0
    assert classify(N(1, 0, 0, 1, 0, 0, 1)) is Verdict.BAD       # C=1, B=0
    assert classify(N.zero(3)) is Verdict.INCONCLUSIVE


def test_mod2_census():
    c = Counter()
    for entries in product(range(2), repeat=6):
        R = N(*entries, 1)
        v = classify(R)
        if R.is_zero():
            c["zero"] += 1
        elif v is Verdict.INCONCLUSIVE:
            c["odd" if R.gamma or R.delta else "even"] += 1
        else:
            c[v.value] += 1
    assert c["zero"] == 1
    assert sum(c.values()) == 64
    assert (c["good"], c["bad"], c["odd"], c["even"]) == (6, 36, 12, 9)


def test_mu_values():
    assert zero_class_mu() == Fraction(1, 14)
    assert mu(N.zero(3)) == Fraction(1, 57344)
    assert good_mass(3) == Fraction(1, 8192)
    assert mu(N(1, 0, 0, 0, 0, 0, 3)) == Fraction(1, 24576)
    assert mu(N(0, 0, 1, 0, 0, 0, 3)) == 0
    with pytest.raises(ValueError):
        mu(N.zero(1), 0)


def test_mu_bounded_by_class_measure():
    for entries in product(range(2), repeat=6):
        assert 0 <= mu(N(*entries, 1)) <= 2 * good_mass(1)


def test_zero_class_fixed_point():
    rest = sum(mu(N(*e, 1)) for e in product(range(2), repeat=6) if any(e))
    z = zero_class_mu()
    assert z == (z + rest) / 64


@pytest.mark.parametrize("r", [1, 2])
def test_lift_stability(r):
    # the measure of a class is the sum over its 64 lifts
    rng = random.Random(r)
    classes = list(product(range(2), repeat=6)) if r == 1 else \
        [tuple(rng.randrange(4) for _ in range(6)) for _ in range(40)]
    for entries in classes:
        base = N(*entries, r)
        lifts = sum(mu(N(*(x + (t << r) for x, t in zip(entries, ts)), r + 1))
                    for ts in product(range(2), repeat=6))
        assert lifts == mu(base), entries


def test_montecarlo():
    even = mu_montecarlo(N(1, 0, 0, 0, 0, 0, 1), k=12, trials=100_000, rng=1)
    zero = mu_montecarlo(N.zero(1), k=12, trials=100_000, rng=2)
    assert abs(even - 1 / 3) < 0.01
    assert abs(zero - 1 / 7) < 0.01
    assert mu_montecarlo(N(1, 0, 0, 0, 0, 1, 1), trials=2000, rng=3) == 1.0
    assert mu_montecarlo(N(1, 0, 0, 1, 0, 0, 1), trials=2000, rng=3) == 0.0


def test_total_density():
    res = total_density()
    assert (res.good, res.bad, res.inconclusive_even, res.inconclusive_odd) == (3754, 4036, 365, 36)
    assert res.good + res.bad + res.inconclusive_even + res.inconclusive_odd + 1 == 8192
    assert res.identity_mu == Fraction(1, 57344)
    assert res.total == TARGET_DENSITY
    # the closed form of the sum
    assert 3754 * Fraction(1, 8192) + 365 * Fraction(1, 24576) + Fraction(1, 57344) == TARGET_DENSITY


def test_brackets():
    lo3, hi3 = bracket_density(3)
    lo4, hi4 = bracket_density(4)
    assert (lo3, hi3) == (Fraction(1877, 4096), Fraction(515, 1024))
    assert lo3 <= TARGET_DENSITY <= hi3
    assert lo3 <= lo4 <= TARGET_DENSITY <= hi4 <= hi3
    assert hi4 - lo4 < hi3 - lo3


def count_pairs(a, k):
    mod = 1 << k
    return sum(1 for x in range(mod) for y in range(mod) if x * y % mod == a)


@pytest.mark.parametrize("k", range(1, 7))
def test_pair_count_formula(k):
    mod = 1 << k
    for a in range(mod):
        v = k + 1 if a == 0 else ord2_int(a)
        assert count_pairs(a, k) == (v + 1) << (k - 1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_singular_matrix_count(k):
    mod = 1 << k
    n = sum(1 for a, b, c, d in product(range(mod), repeat=4) if (a * d - b * c) % mod == 0)
    assert n == 3 * 2 ** (3 * k - 1) - 2 ** (2 * k - 1)
    if k == 1:
        assert n == 10
