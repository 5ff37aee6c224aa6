"""Exact integer arithmetic helpers: squares, valuations, residues, factoring."""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

# Re-exported so the rest of the package has a single import point for
# exact integer square roots.
isqrt = math.isqrt


def is_perfect_square(n: int) -> Optional[int]:
    """Return the nonnegative square root of ``n`` if ``n`` is a perfect
    square, else None.  Negative inputs are never squares."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def padic_valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n.  Raises on n == 0 (valuation infinite)."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    if p < 2:
        raise ValueError("p must be >= 2")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def inverse_mod(a: int, m: int) -> int:
    """Multiplicative inverse of a mod m; a and m must be coprime."""
    return pow(a, -1, m)


def is_quadratic_residue(a: int, p: int) -> bool:
    """True iff a is a nonzero square modulo the odd prime p (Euler's criterion)."""
    a %= p
    if a == 0:
        return False
    return pow(a, (p - 1) // 2, p) == 1


# --- primality -------------------------------------------------------------

# With this base set Miller-Rabin is deterministic for all n < 3.3 * 10**24,
# which comfortably covers every constant the solvers produce.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def trial_division_is_prime(n: int) -> bool:
    """Plain trial-division primality; fine for the small moduli the sieve uses."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(limit: int) -> List[int]:
    """All primes <= limit, by sieve of Eratosthenes."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [i for i, f in enumerate(flags) if f]


def _pollard_rho(n: int, rng: random.Random) -> int:
    """A nontrivial factor of composite odd n, by Brent's cycle variant."""
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization {p: e} of |n|; n must be nonzero.  Small primes are
    stripped by trial division, the rest handled by Miller-Rabin + Pollard rho."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: Dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    rng = random.Random(0xB10B)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.append(d)
        stack.append(m // d)
    return out


def divisors(n: int) -> List[int]:
    """Sorted positive divisors of |n| (n nonzero)."""
    fac = factorize(n)
    divs = [1]
    for p, e in fac.items():
        pk = 1
        block = []
        for _ in range(e):
            pk *= p
            block.extend(d * pk for d in divs)
        divs.extend(block)
    return sorted(divs)


def sigma0(n: int) -> int:
    """Number of positive divisors of |n|."""
    out = 1
    for e in factorize(n).values():
        out *= e + 1
    return out


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> Tuple[int, int]:
    """Combine x = r1 (mod m1), x = r2 (mod m2) for coprime moduli."""
    g, u, _ = ext_gcd(m1, m2)
    if g != 1:
        raise ValueError("moduli must be coprime")
    m = m1 * m2
    return (r1 + m1 * (u * (r2 - r1) % m2)) % m, m


def to_fraction(x) -> Fraction:
    """Coerce int / Fraction / (num, den) pair to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, tuple) and len(x) == 2:
        return Fraction(x[0], x[1])
    raise TypeError(f"cannot interpret {x!r} as a rational")
