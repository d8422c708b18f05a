"""Exact density of primes dividing a Somos-5 term.

Elements of I_3 are turned into ``I - M``: a 3x3 matrix with zero third
column, stored as the six residues ``(alpha, beta, gamma, delta, e, f)`` mod
2^r.  Its minors

    A = gamma f - delta e,   B = alpha f - beta e,   C = alpha delta - beta gamma

decide the outcome.  ``mu(N, r)`` is the limiting proportion (normalised to
|I_3|) of 2-adic lifts of N for which ord2(B) < ord2(A), ord2(C).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .agl import GroupTable, build_Ik, unpack
from .arith import ord2

TARGET_DENSITY = Fraction(5087, 10752)


class Verdict(enum.Enum):
    GOOD = "good"
    BAD = "bad"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ReducedMatrix:
    alpha: int
    beta: int
    gamma: int
    delta: int
    e: int
    f: int
    r: int

    def __post_init__(self):
        mod = 1 << self.r
        for name in ("alpha", "beta", "gamma", "delta", "e", "f"):
            object.__setattr__(self, name, getattr(self, name) % mod)

    @classmethod
    def from_entries(cls, entries, r: int) -> "ReducedMatrix":
        return cls(*entries, r)

    @classmethod
    def zero(cls, r: int) -> "ReducedMatrix":
        return cls(0, 0, 0, 0, 0, 0, r)

    @property
    def entries(self):
        return (self.alpha, self.beta, self.gamma, self.delta, self.e, self.f)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def all_even(self) -> bool:
        return all(x % 2 == 0 for x in self.entries)

    def halve(self) -> "ReducedMatrix":
        """Divide an all-even matrix by 2, dropping to level r - 1."""
        if not self.all_even():
            raise ValueError("only an all-even matrix can be halved")
        return ReducedMatrix(*(x // 2 for x in self.entries), self.r - 1)


@dataclass(frozen=True)
class MinorTriple:
    A: int
    B: int
    C: int


def minors(N: ReducedMatrix) -> MinorTriple:
    al, be, ga, de, e, f = N.entries
    mod = 1 << N.r
    return MinorTriple((ga * f - de * e) % mod, (al * f - be * e) % mod,
                       (al * de - be * ga) % mod)


def classify(N: ReducedMatrix) -> Verdict:
    m = minors(N)
    va, vb, vc = ord2(m.A, N.r), ord2(m.B, N.r), ord2(m.C, N.r)
    if not (va.finite or vb.finite or vc.finite):
        return Verdict.INCONCLUSIVE
    if vb.finite and vb < va and vb < vc:
        return Verdict.GOOD
    return Verdict.BAD


def good_mass(r: int) -> Fraction:
    """Measure of a single residue class mod 2^r that is entirely good."""
    return Fraction(1, 2 * 64 ** (r - 1))


@lru_cache(maxsize=None)
def zero_class_mu() -> Fraction:
    """mu of the zero class mod 2, from its self-similarity.

    Halving the zero class returns the whole space, so
    mu(0, 1) = (1/64) (mu(0, 1) + sum of mu over the 63 nonzero classes).
    """
    rest = sum((mu(N, 1) for N in _all_classes(1) if not N.is_zero()), Fraction(0))
    # x = (x + rest) / 64
    return rest / 63


def _all_classes(r: int):
    for entries in product(range(1 << r), repeat=6):
        yield ReducedMatrix(*entries, r)


def mu(N: ReducedMatrix, r: int | None = None) -> Fraction:
    if r is None:
        r = N.r
    if r != N.r:
        N = ReducedMatrix(*N.entries, r)
    if r < 1:
        raise ValueError("mu is defined for r >= 1")
    verdict = classify(N)
    if verdict is Verdict.GOOD:
        return good_mass(r)
    if verdict is Verdict.BAD:
        return Fraction(0)
    if N.all_even():
        if r == 1:
            return zero_class_mu()
        return mu(N.halve()) / 64
    if N.gamma % 2 or N.delta % 2:
        return Fraction(0)
    return good_mass(r) / 3


def i_minus(codes: np.ndarray, k: int):
    """Columns (alpha, beta, gamma, delta, e, f) of I - M for packed elements."""
    a, b, c, d, e, f = unpack(codes, k)
    mod = (1 << k) - 1
    return tuple(x & mod for x in (1 - a, -b, -c, 1 - d, -e, -f))


@dataclass
class DensityResult:
    total: Fraction
    good: int
    bad: int
    inconclusive_even: int
    inconclusive_odd: int
    identity_mu: Fraction
    class_values: dict


def _common_twopower(entries) -> int:
    nz = [x for x in entries if x]
    return min((x & -x).bit_length() - 1 for x in nz)


def total_density(group: GroupTable | None = None) -> DensityResult:
    """Sum of mu(I - M, 3) over I_3, with the case counts of the proof.

    Each non-identity element is first divided by the largest power of 2
    common to its entries and classified at the lower level; mu is then also
    recomputed from the undivided matrix, and the two must agree.
    """
    G = build_Ik(3) if group is None else group
    if G.k != 3:
        raise ValueError("total_density works on I_3")
    cols = i_minus(G.codes, 3)
    counts = {"good": 0, "bad": 0, "even": 0, "odd": 0}
    values = {}
    total = Fraction(0)
    identity_mu = None
    for entries in zip(*(map(int, c) for c in cols)):
        N = ReducedMatrix(*entries, 3)
        direct = mu(N)
        if N.is_zero():
            identity_mu = direct
            total += direct
            continue
        s = _common_twopower(entries)
        D = ReducedMatrix(*(x >> s for x in entries), 3 - s)
        verdict = classify(D)
        if verdict is Verdict.GOOD:
            case, expected = "good", good_mass(3)
        elif verdict is Verdict.BAD:
            case, expected = "bad", Fraction(0)
        elif D.gamma % 2 or D.delta % 2:
            case, expected = "odd", Fraction(0)
        else:
            case, expected = "even", good_mass(3) / 3
        if direct != expected:
            raise AssertionError(f"mu mismatch for I - M = {entries}: {direct} != {expected}")
        counts[case] += 1
        values.setdefault(case, expected)
        total += direct
    values["identity"] = identity_mu
    return DensityResult(total, counts["good"], counts["bad"], counts["even"],
                         counts["odd"], identity_mu, values)


def _ord2_array(x: np.ndarray, r) -> np.ndarray:
    # zero residues get valuation r, which sits above every exact one
    low = x & -x
    v = np.log2(np.maximum(low, 1)).round().astype(np.int64)
    return np.where(low != 0, v, r)


def verdict_arrays(cols, r):
    """Vectorised :func:`classify`; ``r`` may be a per-column array of levels.

    Returns boolean arrays (good, inconclusive); everything else is bad.
    """
    al, be, ga, de, e, f = (np.asarray(c, dtype=np.int64) for c in cols)
    mask = (np.int64(1) << r) - 1
    A = (ga * f - de * e) & mask
    B = (al * f - be * e) & mask
    C = (al * de - be * ga) & mask
    va, vb, vc = (_ord2_array(x, r) for x in (A, B, C))
    inconclusive = (A == 0) & (B == 0) & (C == 0)
    good = (B != 0) & (vb < va) & (vb < vc)
    return good, inconclusive


def bracket_density(k: int) -> tuple[Fraction, Fraction]:
    """Certain lower and upper bounds on the density from I_k alone.

    I - M is divided by the largest power of 2 common to its entries and
    classified at the reduced level.  Good classes count towards both
    bounds.  Bad classes and inconclusive classes with gamma or delta odd
    have no good lifts at all, so they count towards neither.
    """
    G = build_Ik(k)
    ent = np.stack([np.asarray(c, dtype=np.int64) for c in i_minus(G.codes, k)])
    vals = _ord2_array(ent, k)
    shift = vals.min(axis=0)
    zero = shift == k
    shift[zero] = 0
    red = ent >> shift
    good, incon = verdict_arrays(red, k - shift)
    gd_odd = incon & (((red[2] | red[3]) & 1) == 1)
    n = len(G)
    lower = int(good.sum())
    upper = lower + int((incon & ~gd_odd).sum())
    return Fraction(lower, n), Fraction(upper, n)


def mu_montecarlo(N: ReducedMatrix, r: int | None = None, k: int = 12,
                  trials: int = 100_000, rng=None) -> float:
    """Fraction of uniform lifts of N to level k that are good at level k."""
    if r is None:
        r = N.r
    if k <= r:
        raise ValueError("lift level must exceed r")
    rng = np.random.default_rng(rng)
    base = np.array(ReducedMatrix(*N.entries, r).entries, dtype=np.int64)
    lifts = base[:, None] + (rng.integers(0, 1 << (k - r), size=(6, trials)) << r)
    good, _ = verdict_arrays(lifts, k)
    return float(good.mean())
