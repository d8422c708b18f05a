"""Self-check suites run by ``somos5 verify``.

Each check returns (name, passed, detail).  They re-derive the headline
facts from scratch rather than reading anything cached on disk.
"""

from __future__ import annotations

import random
from itertools import product
from typing import Callable

import numpy as np

from . import agl, divpoly, ellcurve, somos
from .arith import sieve_primes
from .census import RAMIFIED
from .ellcurve import E, E2, E_PRIME, P2, point_order

Check = tuple[str, bool, str]


def _somos_checks() -> list[Check]:
    out = []
    try:
        terms = somos.somos5_terms(1000)
        out.append(("Somos-5 integral to 1000 terms", len(terms) == 1000, f"a_999 has {terms[-1].bit_length()} bits"))
    except somos.IntegralityViolation as exc:
        out.append(("Somos-5 integral to 1000 terms", False, str(exc)))
    for k in (4, 6, 7):
        try:
            somos.somosk_terms(k, 300)
            out.append((f"Somos-{k} integral to 300 terms", True, ""))
        except somos.IntegralityViolation as exc:
            out.append((f"Somos-{k} integral to 300 terms", False, str(exc)))
    out.append(("mP + Q from Somos terms, m <= 100", somos.verify_point_identities(100), ""))
    terms = somos.somos5_terms(207)
    bad = [n for n in range(201) if not somos.verify_F_identity(n, terms)]
    out.append(("F(a_n, a_n+2, a_n+4, a_n+6) = 0, n <= 200", not bad, f"failures: {bad[:5]}"))
    return out


def order_dichotomy(p: int) -> tuple[bool, str]:
    """ord P / ord R in {1, 2}, and ratio 2 iff scan hits iff Q in <P>."""
    Ep, Epp = E.reduce(p), E_PRIME.reduce(p)
    oP = point_order(Ep, (2, 2))
    oR = point_order(Epp, (1, 4))
    if oP not in (oR, 2 * oR):
        return False, f"p={p}: ord P={oP}, ord R={oR}"
    by_ratio = oP == 2 * oR
    by_scan = somos.scan_divides(p, oP + 3)
    by_subgroup = oP % 2 == 0 and Ep.mul(oP // 2, (2, 2)) == (0, 0)
    if not by_ratio == by_scan == by_subgroup:
        return False, f"p={p}: ratio={by_ratio} scan={by_scan} Q in <P>={by_subgroup}"
    return True, ""


def _curve_checks(limit: int = 10 ** 4) -> list[Check]:
    out = []
    bad_primes = sorted({q for q in sieve_primes(100) if E.discriminant % q == 0})
    out.append(("bad primes of E are 2, 3, 17", bad_primes == list(RAMIFIED), str(bad_primes)))
    failures = []
    for p in sieve_primes(limit - 1):
        if p in RAMIFIED:
            continue
        ok, detail = order_dichotomy(p)
        if not ok:
            failures.append(detail)
    out.append((f"order dichotomy and scan agreement, p < {limit}", not failures, "; ".join(failures[:3])))
    return out


def _divpoly_checks(seed: int = 0) -> list[Check]:
    out = []
    ok_q = all(divpoly.mul_via_divpoly(E2, P2, m) == E2.mul(m, P2) for m in range(2, 21))
    out.append(("[m]P2 by division polynomials over Q, 2 <= m <= 20", ok_q, ""))

    rng = random.Random(seed)
    good = [p for p in sieve_primes(5000) if p > 5 and E2.discriminant % p]
    mismatches = []
    for p in rng.sample(good, 50):
        curve = E2.reduce(p)
        pt = ellcurve.reduce_point(P2, p)
        for m in range(2, 21):
            if divpoly.mul_via_divpoly(curve, pt, m) != curve.mul(m, pt):
                mismatches.append((p, m))
    out.append(("[m]P2 by division polynomials over 50 primes", not mismatches, str(mismatches[:3])))

    f = divpoly.build_f8()
    out.append(("deg f = 64", len(f) - 1 == 64, f"deg {len(f) - 1}"))
    lifted, total_roots = True, 0
    for p in rng.sample([p for p in good if p < 2000], 20):
        n, ok = divpoly.check_f8_roots(p)
        total_roots += n
        lifted = lifted and ok
    out.append(("roots of f mod 20 primes lift to 8 beta = +-P2", lifted, f"{total_roots} roots"))
    return out


def _group_checks() -> list[Check]:
    out = []
    out.append(("|H3| = 256", len(agl.build_H3()) == 256, ""))
    I3 = agl.build_Ik(3)
    out.append(("|I3| = 8192", len(I3) == 8192, ""))
    I4 = agl.build_Ik(4)
    out.append(("|I4| = 524288", len(I4) == 2 ** 19, ""))
    gen = agl.close_subgroup(I4.generators)
    out.append(("I4 generated by its three listed elements", np.array_equal(gen.codes, I4.codes), ""))
    phi = agl.frattini_2group(I4)
    a, b, c, d, e, f = phi.columns()
    claim = agl.pack(_claimed_frattini_part(), 4)
    out.append(("Frattini(I4) contains v = 0 mod 4, M = I mod 8",
                bool(np.isin(claim, phi.codes).all()), f"|Frattini| = {len(phi)}"))
    kernel = ((a & 7) == 1) & ((b & 7) == 0) & ((c & 7) == 0) & ((d & 7) == 1) & ((e & 7) == 0) & ((f & 7) == 0)
    out.append(("ker order 64", int(kernel.sum()) == 64, f"{int(kernel.sum())}"))
    return out


def _claimed_frattini_part():
    """The 256 elements mod 16 with v = 0 mod 4 and M = I mod 8."""
    rows = list(product((1, 9), (0, 8), (0, 8), (1, 9), range(0, 16, 4), range(0, 16, 4)))
    return tuple(np.array(col) for col in zip(*rows))


SUITES: dict[str, Callable[[], list[Check]]] = {
    "somos": _somos_checks,
    "curve": _curve_checks,
    "divpoly": _divpoly_checks,
    "group": _group_checks,
}


def verify_suites(suite: str) -> list[Check]:
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise KeyError(suite)
    results = []
    for name in names:
        results.extend(SUITES[name]())
    return results
