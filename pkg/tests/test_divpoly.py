import random
from fractions import Fraction

import pytest

from somos5.arith import sieve_primes
from somos5.divpoly import (E2_A, E2_B, Fp2, XYPoly, build_f8, check_f8_roots,
                            lift_x, mul_via_divpoly, pdeg, peval, phi_omega, psi,
                            roots_mod_p)
from somos5.ellcurve import E2, INF, P2, WeierstrassCurve, reduce_point

A, B = E2_A, E2_B
GOOD = [p for p in sieve_primes(3000) if p > 3 and E2.discriminant % p]


def test_small_psi():
    assert psi(2).q == (2,) and psi(2).p == ()
    assert psi(3).p == (-A * A, 12 * B, 6 * A, 0, 3)
    assert psi(0).is_zero()
    assert psi(1).p == (1,)


def test_even_psi_carry_y():
    for m in range(2, 13, 2):
        assert psi(m).p == ()
    for m in range(1, 13, 2):
        assert psi(m).q == ()


def test_degrees():
    for m in range(1, 9):
        phi, _ = phi_omega(m)
        assert pdeg(phi.x_only()) == m * m
        assert pdeg((psi(m) ** 2).x_only()) == m * m - 1
    assert phi_omega(1)[0].x_only() == [0, 1]


def test_generic_curve_psi():
    # y^2 = x^3 + x + 1 has its own psi_3
    assert psi(3, 1, 1).p == (-1, 12, 6, 0, 3)


def test_mul_over_q():
    assert mul_via_divpoly(E2, P2, 1) == P2
    for m in range(2, 21):
        assert mul_via_divpoly(E2, P2, m) == E2.mul(m, P2)
    assert mul_via_divpoly(E2, P2, -3) == E2.mul(-3, P2)


def test_mul_over_random_primes():
    rng = random.Random(11)
    for p in rng.sample(GOOD, 50):
        c = E2.reduce(p)
        pt = reduce_point(P2, p)
        for m in range(1, 21):
            assert mul_via_divpoly(c, pt, m) == c.mul(m, pt), (p, m)


def test_phi_psi_coprime_mod_p():
    rng = random.Random(5)
    for p in rng.sample([q for q in GOOD if q < 400], 6):
        for m in range(1, 9):
            phi = [c % p for c in phi_omega(m)[0].x_only()]
            psq = [c % p for c in (psi(m) ** 2).x_only()]
            for x in range(p):
                assert peval(phi, x, p) or peval(psq, x, p)


@pytest.mark.parametrize("p", [q for q in GOOD if q < 200][:12])
def test_psi_zero_iff_torsion(p):
    curve = WeierstrassCurve(0, 0, 0, A, B)
    for m in range(2, 9):
        pol = psi(m, A, B, p)
        for x0 in range(p):
            beta = lift_x(x0, p)
            val = pol.evaluate(x0, beta[1])
            assert (val == 0) == (curve.mul(m, beta) is None), (p, m, x0)


def test_f8_shape():
    f = build_f8()
    assert len(f) - 1 == 64
    assert f[-1] != 0 and any(f)


def test_f8_roots_lift():
    rng = random.Random(0)
    seen = 0
    for p in rng.sample([q for q in GOOD if q < 2000], 20):
        n, ok = check_f8_roots(p)
        assert ok, p
        seen += n
    assert seen > 0


@pytest.mark.parametrize("p", [7, 23, 41, 601])
def test_f8_roots_are_exactly_the_preimage_x(p):
    # brute force every x in F_p against the group law
    curve = WeierstrassCurve(0, 0, 0, A, B)
    expected = []
    for x0 in range(p):
        img = curve.mul(8, lift_x(x0, p))
        if img is not None and img[0] == 87:
            expected.append(x0)
    assert roots_mod_p(build_f8(), p) == expected
    assert expected


def test_fp2_arithmetic():
    p, n = 7, 3
    a, b = Fp2(2, 5, p, n), Fp2(4, 1, p, n)
    assert (a * b) / b == a
    assert a - a == 0
    assert Fp2(0, 1, p, n) * Fp2(0, 1, p, n) == n
