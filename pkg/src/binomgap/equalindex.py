"""Complete solver for binom(n,k) = binom(m,k) + d and the collision search.

For k >= 3 the equation with equal lower index is finite and fully solvable:
any solution has n - m != 0 dividing d*k!, and for a fixed shift d1 = n - m
the equation collapses to a one-variable polynomial of degree k-1 whose
integer roots are found by divisor enumeration.  For k = 2 the equation is a
difference of squares, (2n-1)^2 - (2m-1)^2 = 8d, solved by factoring 8d.

The collision search tabulates the differences binom(n,k) - binom(m,k) over
k < m < n <= N exactly and reports every difference attained by at least
`min_multiplicity` distinct pairs.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Set, Tuple

from .binomials import binom, falling_factorial
from .intmath import divisors
from .polynomials import UniPoly, integer_roots


def residual_poly(k: int, d1: int, target: int) -> UniPoly:
    """ff(m + d1, k) - ff(m, k) - target as a polynomial in m.

    The m^k terms cancel, leaving degree k-1 with leading coefficient k*d1.
    """
    x = UniPoly.x()
    shifted = UniPoly.const(1)
    plain = UniPoly.const(1)
    for i in range(k):
        shifted = shifted * (x + UniPoly.const(d1 - i))
        plain = plain * (x - UniPoly.const(i))
    return shifted - plain - UniPoly.const(target)


@dataclass(frozen=True)
class DivisorSplit:
    """One branch of the divisor method: a candidate shift d1 = n - m."""

    k: int
    d1: int
    target: int  # d * k!

    def __post_init__(self) -> None:
        if self.d1 == 0 or self.target % self.d1 != 0:
            raise ValueError(f"d1={self.d1} does not divide target={self.target}")

    def residual(self) -> UniPoly:
        p = residual_poly(self.k, self.d1, self.target)
        assert p.degree == self.k - 1
        assert p[self.k - 1] == self.k * self.d1
        return p


def solve_equal_index(k: int, d: int, canonical: bool = False) -> Set[Tuple[int, int]]:
    """All integer pairs (n, m) with binom(n,k) = binom(m,k) + d, k >= 3.

    Completeness: n = m is impossible for d != 0, and subtracting the two
    falling factorials shows (n - m) | d*k!, so scanning every divisor
    (both signs) of d*k! and rooting the residual polynomial misses nothing.
    With canonical=True only pairs with n > m >= k are kept.
    """
    if k < 3:
        raise ValueError("k must be >= 3 (use solve_equal_index_k2 for k = 2)")
    if d == 0:
        raise ValueError("d = 0 has infinitely many solutions (n = m)")
    target = d * math.factorial(k)
    solutions: Set[Tuple[int, int]] = set()
    for e in divisors(abs(target)):
        for d1 in (e, -e):
            split = DivisorSplit(k=k, d1=d1, target=target)
            for m in integer_roots(split.residual()):
                n = m + d1
                if binom(n, k) - binom(m, k) != d:
                    raise AssertionError(f"root ({n},{m}) failed verification")
                solutions.add((n, m))
    if canonical:
        solutions = {(n, m) for n, m in solutions if n > m >= k}
    return solutions


def solve_equal_index_k2(d: int) -> Set[Tuple[int, int]]:
    """All integer pairs (n, m) with binom(n,2) = binom(m,2) + d.

    Writing u = 2n-1, v = 2m-1 turns the equation into u^2 - v^2 = 8d.
    Factorizations 8d = d1*d2 with d1 <= d2, d1+d2 == 2 (mod 4) and
    d2-d1 == 2 (mod 4) are exactly the ones giving odd u, v; then
    u = (d1+d2)/2, v = (d2-d1)/2 and (n, m) = ((u+1)/2, (v+1)/2).  The sign
    branches cover both of n and 1-n; the reflection m -> 1-m of the right
    side (which fixes binom(m,2)) is added explicitly.
    """
    if d == 0:
        raise ValueError("d = 0 has infinitely many solutions (n = m)")
    t = 8 * d
    solutions: Set[Tuple[int, int]] = set()
    for e in divisors(abs(t)):
        for d1 in (e, -e):
            d2 = t // d1
            if d1 > d2:
                continue
            if (d1 + d2) % 4 != 2 or (d2 - d1) % 4 != 2:
                continue
            u = (d1 + d2) // 2
            v = (d2 - d1) // 2
            n, m = (u + 1) // 2, (v + 1) // 2
            if binom(n, 2) - binom(m, 2) != d:
                raise AssertionError(f"split ({d1},{d2}) failed verification")
            solutions.add((n, m))
            solutions.add((n, 1 - m))
    return solutions


@dataclass(frozen=True)
class CollisionReport:
    """Differences binom(n,k) - binom(m,k), k < m < n <= bound, attained by
    at least min_multiplicity pairs; entries[d] is the ascending pair list."""

    k: int
    bound: int
    min_multiplicity: int
    entries: Tuple[Tuple[int, Tuple[Tuple[int, int], ...]], ...]

    def total_pairs(self) -> int:
        return sum(len(pairs) for _, pairs in self.entries)

    def as_dict(self) -> Dict[int, Tuple[Tuple[int, int], ...]]:
        return dict(self.entries)


def _collision_stripe(args: Tuple[int, int, int, int]) -> Dict[int, List[Tuple[int, int]]]:
    """Differences for outer indices n == offset (mod stride)."""
    k, bound, stride, offset = args
    values = [binom(x, k) for x in range(k + 1, bound + 1)]
    diffs: Dict[int, List[Tuple[int, int]]] = {}
    for n in range(k + 2 + (offset - k - 2) % stride, bound + 1, stride):
        b_n = values[n - k - 1]
        for m in range(k + 1, n):
            diffs.setdefault(b_n - values[m - k - 1], []).append((n, m))
    return diffs


def collision_search(k: int, N: int, min_multiplicity: int,
                     workers: int = 1) -> CollisionReport:
    """Exact multiset of differences over k < m < n <= N, reported where the
    multiplicity reaches the threshold.  Deterministic for any worker count:
    stripes of the outer index are merged and sorted by (difference, pair)."""
    if k < 3:
        raise ValueError("k must be >= 3")
    if N < k + 2:
        raise ValueError("N must be >= k + 2 to admit a pair")
    if min_multiplicity < 1:
        raise ValueError("min_multiplicity must be >= 1")
    stride = max(1, workers)
    jobs = [(k, N, stride, off) for off in range(stride)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_collision_stripe, jobs))
    else:
        parts = [_collision_stripe(j) for j in jobs]
    merged: Dict[int, List[Tuple[int, int]]] = {}
    for part in parts:
        for d, pairs in part.items():
            merged.setdefault(d, []).extend(pairs)
    entries = tuple(
        (d, tuple(sorted(merged[d])))
        for d in sorted(merged)
        if len(merged[d]) >= min_multiplicity
    )
    return CollisionReport(k=k, bound=N, min_multiplicity=min_multiplicity,
                           entries=entries)
