"""Congruence obstructions: modular solvability, a Pell-form criterion for
(k,l) = (2,4), and the scan for unsolvable residue classes."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Optional, Tuple

from .binomials import binom, falling_factorial
from .intmath import (factorize, inverse_mod, is_quadratic_residue,
                      padic_valuation, trial_division_is_prime)
from .polynomials import MultiPoly


def _prime_power_base(modulus: int) -> int:
    """The prime p of a prime-power modulus p^e; rejects other moduli."""
    fac = factorize(modulus)
    if len(fac) != 1:
        raise ValueError(f"modulus {modulus} is not a prime power")
    return next(iter(fac))


@dataclass(frozen=True)
class SieveQuery:
    """Solvability question for binom(n,k) = binom(m,l) + d modulo a prime
    power p^e with p > max(k,l), so k! and l! are units."""
    k: int
    l: int
    d: int
    modulus: int

    def __post_init__(self):
        if self.k < 1 or self.l < 1:
            raise ValueError("k and l must be positive")
        p = _prime_power_base(self.modulus)
        if p <= max(self.k, self.l):
            raise ValueError(f"prime {p} must exceed max(k,l)={max(self.k, self.l)}")


@dataclass(frozen=True)
class SieveReport:
    """Rows (k, l, p, unsolvable d residues mod p), sorted."""
    entries: Tuple[Tuple[int, int, int, Tuple[int, ...]], ...]


def binom_mod(n_res: int, k: int, modulus: int) -> int:
    """binom(n,k) mod p^e as a function of the residue n mod p^e; requires
    p > k so that k! is invertible.  Well defined because the falling
    factorial is a polynomial in n."""
    p = _prime_power_base(modulus)
    if p <= k:
        raise ValueError(f"k! is not a unit: p={p} <= k={k}")
    kfact = 1
    for i in range(2, k + 1):
        kfact = kfact * i % modulus
    return falling_factorial(n_res, k) * inverse_mod(kfact, modulus) % modulus


def binom_value_set(k: int, modulus: int) -> FrozenSet[int]:
    """All values binom(n,k) mod p^e over a complete residue system."""
    p = _prime_power_base(modulus)
    if p <= k:
        raise ValueError(f"k! is not a unit: p={p} <= k={k}")
    kfact = 1
    for i in range(2, k + 1):
        kfact = kfact * i % modulus
    inv = inverse_mod(kfact, modulus)
    vals = set()
    for r in range(modulus):
        ff = 1
        for i in range(k):
            ff = ff * (r - i) % modulus
        vals.add(ff * inv % modulus)
    return frozenset(vals)


def congruence_solvable(q: SieveQuery) -> bool:
    """True iff residues n, m mod the modulus exist with
    binom(n,k) = binom(m,l) + d.  Enumerating value sets of both sides is
    equivalent to enumerating all pairs (both range over complete residue
    systems) and needs only O(modulus) space."""
    a = binom_value_set(q.k, q.modulus)
    b = binom_value_set(q.l, q.modulus)
    return any((v + q.d) % q.modulus in a for v in b)


def congruence_witness(q: SieveQuery) -> Optional[Tuple[int, int]]:
    """A pair (n, m) of residues solving the congruence, or None."""
    vals_m: Dict[int, int] = {}
    for m in range(q.modulus):
        vals_m.setdefault(binom_mod(m, q.l, q.modulus), m)
    for n in range(q.modulus):
        lhs = binom_mod(n, q.k, q.modulus)
        m = vals_m.get((lhs - q.d) % q.modulus)
        if m is not None:
            return (n, m)
    return None


# --- Pell-form obstruction for (k,l) = (2,4) -------------------------------
#
# binom(n,2) = binom(m,4) + d transforms to X^2 - 3Y^2 = -2(12d+1) with
# X = m^2 - 3m + 1 and Y = 2n - 1.  When 3 is a quadratic non-residue mod p
# and the p-adic valuation v of 12d+1 is odd, the form has no solutions, so
# the equation is unsolvable — realized as a congruence obstruction at
# modulus p^(v+1) (not necessarily at p itself).


def pell_obstruction_applies(d: int, p: int) -> bool:
    """True iff p > 4 is prime, 3 is a quadratic non-residue mod p, and the
    p-adic valuation of 12d+1 is odd; then the (2,4) equation at this d has
    no integer solutions."""
    if p <= 4 or not trial_division_is_prime(p):
        return False
    if is_quadratic_residue(3, p):
        return False
    return padic_valuation(12 * d + 1, p) % 2 == 1


def pell_obstruction_modulus(d: int, p: int) -> int:
    """The prime-power modulus p^(v+1) at which the obstruction is realized."""
    if not pell_obstruction_applies(d, p):
        raise ValueError("obstruction does not apply")
    v = padic_valuation(12 * d + 1, p)
    return p ** (v + 1)


def pell_identity_check(x: int, y: int) -> bool:
    """Asserts the defining identity at integer points: with
    d = binom(y,2) - binom(x,4), X = x^2-3x+1, Y = 2y-1, it holds that
    X^2 - 3Y^2 = -2(12d+1).  A False return is a defect."""
    d = binom(y, 2) - binom(x, 4)
    big_x = x * x - 3 * x + 1
    big_y = 2 * y - 1
    return big_x * big_x - 3 * big_y * big_y == -2 * (12 * d + 1)


def pell_identity_symbolic() -> bool:
    """The same identity as a polynomial identity in (x, y)."""
    x = MultiPoly.var("x")
    y = MultiPoly.var("y")
    binom_x4 = x * (x - 1) * (x - 2) * (x - 3) * Fraction(1, 24)
    binom_y2 = y * (y - 1) * Fraction(1, 2)
    d = binom_y2 - binom_x4
    big_x = x * x - 3 * x + 1
    big_y = 2 * y - 1
    lhs = big_x * big_x - 3 * big_y * big_y
    rhs = (12 * d + 1) * (-2)
    return (lhs - rhs).is_zero()


# --- Table scan ------------------------------------------------------------


def _scan_cell(args: Tuple[int, int, int]) -> Tuple[int, int, int, Tuple[int, ...]]:
    k, l, p = args
    a = binom_value_set(k, p)
    b = binom_value_set(l, p)
    bad = tuple(
        d for d in range(p)
        if not any((v + d) % p in a for v in b)
    )
    return (k, l, p, bad)


def scan_unsolvable(k_max: int, l_max: int, p_max: int,
                    workers: int = 1) -> SieveReport:
    """For every pair 2 <= k <= l <= l_max (k <= k_max), every prime
    max(k,l) < p <= p_max and every d in 0..p-1, record d iff the congruence
    has no solutions mod p.  Output sorted by (k, l, p)."""
    if p_max < 5:
        raise ValueError("p_max must be at least 5")
    primes = [p for p in range(3, p_max + 1) if trial_division_is_prime(p)]
    cells = [
        (k, l, p)
        for k in range(2, k_max + 1)
        for l in range(k, l_max + 1)
        for p in primes
        if p > max(k, l)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_scan_cell, cells, chunksize=16))
    else:
        rows = [_scan_cell(c) for c in cells]
    entries = tuple(sorted(r for r in rows if r[3]))
    return SieveReport(entries=entries)
