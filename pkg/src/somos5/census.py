"""Per-prime classification and the prime census pi'(x)."""

from __future__ import annotations

import enum
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .arith import sieve_primes
from .ellcurve import E, E_PRIME, point_order
from .somos import scan_divides

RAMIFIED = (2, 3, 17)
DEFAULT_CAP = 10 ** 7


class Method(enum.Enum):
    CURVE_ORDER = "curve"
    DIRECT_SCAN = "scan"


@dataclass(frozen=True)
class PrimeClassification:
    p: int
    method: Method
    ord_P: Optional[int]
    ord_R: Optional[int]
    divides: bool


@dataclass(frozen=True)
class DensityRow:
    x: int
    pi: int
    pi_prime: int

    @property
    def ratio(self) -> float:
        return self.pi_prime / self.pi if self.pi else 0.0

    @property
    def ratio_str(self) -> str:
        return f"{self.ratio:.6f}"


def classify_prime(p: int) -> PrimeClassification:
    """Does p divide a Somos-5 term?  Compares ord P on E with ord R on E'."""
    if p in RAMIFIED:
        return PrimeClassification(p, Method.DIRECT_SCAN, None, None, scan_divides(p))
    ord_P = point_order(E.reduce(p), (2, 2))
    ord_R = point_order(E_PRIME.reduce(p), (1, 4))
    if ord_P == 2 * ord_R:
        divides = True
    elif ord_P == ord_R:
        divides = False
    else:
        raise AssertionError(f"p={p}: ord P = {ord_P}, ord R = {ord_R}; ratio not 1 or 2")
    return PrimeClassification(p, Method.CURVE_ORDER, ord_P, ord_R, divides)


def _divides_block(primes: Sequence[int]) -> list[bool]:
    return [classify_prime(p).divides for p in primes]


def _blocks(seq, size):
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def census(limit: int, jobs: int = 1, block: int = 4096) -> tuple[list[int], list[bool]]:
    """All primes <= limit with their verdicts, in ascending order."""
    primes = sieve_primes(limit)
    if jobs <= 1:
        return primes, _divides_block(primes)
    verdicts: list[bool] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map() yields in submission order, so the output is deterministic
        for part in pool.map(_divides_block, _blocks(primes, block)):
            verdicts.extend(part)
    return primes, verdicts


def default_checkpoints(limit: int) -> list[int]:
    xs, x = [], 10
    while x <= limit:
        xs.append(x)
        x *= 10
    if not xs or xs[-1] != limit:
        xs.append(limit)
    return xs


def density_table(thresholds: Sequence[int], jobs: int = 1,
                  cap: int = DEFAULT_CAP) -> list[DensityRow]:
    xs = sorted(set(thresholds))
    if not xs:
        return []
    if xs[-1] > cap:
        raise ValueError(f"threshold {xs[-1]} exceeds the census cap {cap}")
    primes, verdicts = census(xs[-1], jobs=jobs)
    running = []
    acc = 0
    for v in verdicts:
        acc += v
        running.append(acc)
    rows = []
    for x in xs:
        n = bisect_right(primes, x)
        rows.append(DensityRow(x, n, running[n - 1] if n else 0))
    return rows
