"""Generalized binomial coefficients over the integers, and their inverses."""
from __future__ import annotations

import math
from typing import Optional

from .intmath import is_perfect_square


def falling_factorial(n: int, k: int) -> int:
    """n(n-1)...(n-k+1); the empty product (k=0) is 1.  n may be negative."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = 1
    for i in range(k):
        out *= n - i
    return out


def binom(n: int, k: int) -> int:
    """Binomial coefficient for any integer n and k >= 0, via the falling
    factorial; always an exact integer (k! divides the product)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if n >= 0:
        if k > n:
            return 0
        return math.comb(n, k)
    ff = falling_factorial(n, k)
    q, r = divmod(ff, math.factorial(k))
    assert r == 0
    return q


def binom_inverse(v: int, k: int) -> Optional[int]:
    """The unique n >= k with binom(n,k) = v, if any (binary search on the
    strictly increasing branch); None when v is not attained."""
    if k < 1:
        raise ValueError("k must be positive")
    if v <= 0:
        raise ValueError("v must be positive")
    lo = k
    hi = k + 1
    while binom(hi, k) < v:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if binom(mid, k) < v:
            lo = mid + 1
        else:
            hi = mid
    return lo if binom(lo, k) == v else None


def triangular_index(v: int) -> Optional[int]:
    """n >= 2 with binom(n,2) = v, via the square test 8v+1 = (2n-1)^2;
    None when v is not of that form.  Faster than binary search for the
    heavily-used k=2 case."""
    if v <= 0:
        return None
    s = is_perfect_square(8 * v + 1)
    if s is None:
        return None
    # s is odd here since s^2 = 8v+1 is odd
    return (s + 1) // 2
