"""Polynomial solutions of binom(f1, k) + binom(f0, j) = binom(f2, 2).

For odd k and quadratic f1 = a2*x^2 + a1*x + a0, matching the top
coefficient forces a2 = (k!/2) t^2 and lead(f2) = (k!/2)^((k-1)/2) t^k for a
nonzero rational t.  The next k coefficient equations are triangular in the
remaining coefficients of f2 — each pivot is the leading coefficient of f2,
a rational multiple of t^k — so b_{k-1}, ..., b_0 eliminate one by one as
rational functions whose denominators are pure powers of t.  What is left is
a system of k polynomial conditions on (t, a0, a1); its rational zeros with
t != 0 are exactly the solutions, and a pure power of t inside the ideal is
a certificate that none exist.

`triangular_reduce` performs the elimination, `solve_k22` enumerates the
rational zeros through a Groebner basis and returns verified solutions up to
the x -> 1-x symmetry (or the t-power certificate).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import GroebnerBasis, groebner_basis
from .polynomials import GREVLEX, LEX, MultiPoly, UniPoly, rational_roots

__all__ = [
    "binom_poly",
    "PolySolution",
    "verify_poly_identity",
    "K22System",
    "triangular_reduce",
    "TPowerCertificate",
    "SolveResult",
    "solve_k22",
    "KNOWN_IDENTITIES",
    "verify_cubic_pair_identity",
]

CORE_VARS = ("t", "a0", "a1")


def binom_poly(f: UniPoly, k: int) -> UniPoly:
    """binom(f, k) = f (f-1) ... (f-k+1) / k! as an exact polynomial."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = UniPoly.const(1)
    for j in range(k):
        out = out * (f - j)
    return out * Fraction(1, factorial(k))


@dataclass(frozen=True)
class PolySolution:
    """One identity binom(f1, k) + sign*binom(f0, mid_k) = binom(f2, 2).

    f0 = None means the middle argument is x itself.
    """

    k: int
    f1: UniPoly
    f2: UniPoly
    f0: Optional[UniPoly] = None
    mid_k: int = 2
    sign: int = 1

    def middle(self) -> UniPoly:
        return self.f0 if self.f0 is not None else UniPoly.x()

    def defect(self) -> UniPoly:
        """Left side minus right side; the zero polynomial iff the identity
        holds."""
        return (binom_poly(self.f1, self.k)
                + self.sign * binom_poly(self.middle(), self.mid_k)
                - binom_poly(self.f2, 2))

    def transformed(self) -> "PolySolution":
        """Image under x -> 1-x, which preserves the identity."""
        flip = UniPoly([1, -1])
        return PolySolution(
            k=self.k,
            f1=self.f1.compose(flip),
            f2=self.f2.compose(flip),
            f0=None if self.f0 is None else self.f0.compose(flip),
            mid_k=self.mid_k,
            sign=self.sign,
        )

    def canonical(self) -> "PolySolution":
        """Orbit representative under x -> 1-x: the member whose f2 has a
        positive leading coefficient (f2 has odd degree throughout, so the
        map flips that sign and exactly one member qualifies)."""
        if self.f2[self.f2.degree] < 0:
            return self.transformed()
        return self


def verify_poly_identity(sol: PolySolution) -> bool:
    return sol.defect().is_zero()


@dataclass(frozen=True)
class K22System:
    """Result of eliminating the coefficients of f2.

    eliminated[i] = (numerator, e) encodes b_i = numerator / t^e; residual
    holds the cleared numerators of the surviving k conditions in ascending
    coefficient order.
    """

    k: int
    sign: int
    vars: Tuple[str, ...]
    a2: MultiPoly
    bk: MultiPoly
    eliminated: Tuple[Tuple[MultiPoly, int], ...]
    residual: Tuple[MultiPoly, ...]
    f0_degree: Optional[int] = None


TPair = Tuple[MultiPoly, int]


def _make_vars(extra: Sequence[str] = ()) -> Tuple[str, ...]:
    return CORE_VARS + tuple(extra)


def _pzero(vars: Tuple[str, ...]) -> TPair:
    return (MultiPoly.const(0, vars, LEX), 0)


def _tpow(vars: Tuple[str, ...], e: int) -> MultiPoly:
    exp = [0] * len(vars)
    exp[vars.index("t")] = e
    return MultiPoly(vars, {tuple(exp): Fraction(1)}, LEX)


def _pnorm(num: MultiPoly, e: int) -> TPair:
    if num.is_zero():
        return (num, 0)
    if e == 0:
        return (num, 0)
    tpos = num.vars.index("t")
    m = min(exp[tpos] for exp in num.terms)
    m = min(m, e)
    if m == 0:
        return (num, e)
    terms = {}
    for exp, c in num.terms.items():
        lowered = list(exp)
        lowered[tpos] -= m
        terms[tuple(lowered)] = c
    return (MultiPoly(num.vars, terms, num.order), e - m)


def _padd(p: TPair, q: TPair) -> TPair:
    n1, e1 = p
    n2, e2 = q
    e = max(e1, e2)
    n = n1 * _tpow(n1.vars, e - e1) + n2 * _tpow(n2.vars, e - e2)
    return _pnorm(n, e)


def _pmul(p: TPair, q: TPair) -> TPair:
    return _pnorm(p[0] * q[0], p[1] + q[1])


def _pscale(p: TPair, c) -> TPair:
    return (p[0] * c, p[1])


def _conv(a: List[MultiPoly], b: List[MultiPoly],
          zero: MultiPoly) -> List[MultiPoly]:
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b):
            if bj.is_zero():
                continue
            out[i + j] = out[i + j] + ai * bj
    return out


def _pconv(a: List[TPair], b: List[TPair], zero: TPair) -> List[TPair]:
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai[0].is_zero():
            continue
        for j, bj in enumerate(b):
            if bj[0].is_zero():
                continue
            out[i + j] = _padd(out[i + j], _pmul(ai, bj))
    return out


def triangular_reduce(k: int, sign: int = 1,
                      f0_degree: Optional[int] = None) -> K22System:
    """Eliminate b_0..b_{k-1} and return the residual system on (t, a0, a1).

    sign selects binom(f1,k) + sign*binom(x,2) = binom(f2,2).  f0_degree=2
    keeps a symbolic quadratic middle argument c2*x^2 + c1*x + c0, adding its
    coefficients to the residual ring.
    """
    if k < 3 or k % 2 == 0:
        raise ValueError("k must be odd and at least 3")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if f0_degree not in (None, 2):
        raise ValueError("only the quadratic middle variant is supported")

    extra = ("c0", "c1", "c2") if f0_degree == 2 else ()
    V = _make_vars(extra)
    one = MultiPoly.const(1, V, LEX)
    zero = MultiPoly.const(0, V, LEX)
    t = MultiPoly.var("t").embed(V)
    a0 = MultiPoly.var("a0").embed(V)
    a1 = MultiPoly.var("a1").embed(V)

    half_fact = Fraction(factorial(k), 2)
    a2 = t * t * half_fact
    bk_scale = half_fact ** ((k - 1) // 2)
    bk = _tpow(V, k) * bk_scale

    # binom(f1, k) as coefficients in x
    H = [one]
    for j in range(k):
        H = _conv(H, [a0 - j, a1, a2], zero)
    H = [h * Fraction(1, factorial(k)) for h in H]
    assert len(H) == 2 * k + 1

    # middle term sign*binom(f0, 2) as coefficients in x
    if f0_degree == 2:
        f0_list = [MultiPoly.var(n).embed(V) for n in ("c0", "c1", "c2")]
    else:
        f0_list = [zero, one]
    f0_sq = _conv(f0_list, f0_list, zero)
    M = [zero] * (2 * k + 1)
    for j in range(len(f0_sq)):
        m = f0_sq[j] - (f0_list[j] if j < len(f0_list) else zero)
        M[j] = m * Fraction(sign, 2)

    # pivot: the coefficient of b_i in the x^{k+i} condition is always bk,
    # a single-term rational multiple of t^k
    assert len(bk.terms) == 1
    (pivot_exp, pivot_coeff), = bk.terms.items()
    assert all(e == 0 for v, e in zip(V, pivot_exp) if v != "t")
    assert pivot_exp[V.index("t")] == k and pivot_coeff != 0

    b: Dict[int, TPair] = {}
    for i in range(k - 1, -1, -1):
        rest = _pzero(V)
        for a in range(i + 1, k):
            c = k + i - a
            if c < a or c >= k:
                continue
            w = 1 if a == c else 2
            rest = _padd(rest, _pscale(_pmul(b[a], b[c]), w))
        num: TPair = (H[k + i] + M[k + i], 0)
        if i == 0:
            num = _padd(num, _pscale((bk, 0), Fraction(1, 2)))
        num = _padd(num, _pscale(rest, Fraction(-1, 2)))
        b[i] = _pnorm(num[0] * Fraction(1, pivot_coeff), num[1] + k)

    # full recomputation of every coefficient of the defect: indices
    # k..2k must vanish identically, 0..k-1 become the residual system
    f2_pairs = [b[i] for i in range(k)] + [(bk, 0)]
    f2_sq = _pconv(f2_pairs, f2_pairs, _pzero(V))
    residual: List[MultiPoly] = []
    for j in range(2 * k + 1):
        aj: TPair = (H[j] + M[j], 0)
        if j <= k:
            aj = _padd(aj, _pscale(f2_pairs[j], Fraction(1, 2)))
        aj = _padd(aj, _pscale(f2_sq[j], Fraction(-1, 2)))
        if j >= k:
            assert aj[0].is_zero(), f"coefficient {j} failed to eliminate"
        else:
            residual.append(aj[0])

    return K22System(
        k=k,
        sign=sign,
        vars=V,
        a2=a2,
        bk=bk,
        eliminated=tuple(b[i] for i in range(k)),
        residual=tuple(residual),
        f0_degree=f0_degree,
    )


@dataclass(frozen=True)
class TPowerCertificate:
    """A pure power of t inside the residual ideal: every zero of the system
    has t = 0, which contradicts deg f1 = 2, so no solutions exist."""

    k: int
    sign: int
    exponent: int
    basis_size: int


@dataclass(frozen=True)
class SolveResult:
    k: int
    sign: int
    solutions: Tuple[PolySolution, ...]
    certificate: Optional[TPowerCertificate]
    basis_size: int
    discarded: Tuple[str, ...]
    orders: Tuple[str, ...] = ()


def find_t_power(basis: GroebnerBasis) -> Optional[int]:
    """Exponent u if some basis element is exactly a scalar multiple of t^u
    (u = 0 meaning the ideal is the whole ring)."""
    best: Optional[int] = None
    for g in basis:
        if len(g.terms) != 1:
            continue
        (exp, _), = g.terms.items()
        if all(e == 0 for v, e in zip(basis.vars, exp) if v != "t"):
            u = exp[basis.vars.index("t")]
            if best is None or u < best:
                best = u
    return best


def _rational_points(polys: Sequence[MultiPoly], precedence: Tuple[str, ...],
                     fixed: Dict[str, Fraction],
                     log: List[str]) -> List[Dict[str, Fraction]]:
    """All rational zeros of the system, branching on the least remaining
    variable that admits a univariate generator; t = 0 branches are dropped."""
    live = [p for p in polys if not p.is_zero()]
    if any(p.is_constant() for p in live):
        return []
    present: List[str] = []
    for p in live:
        for v in p.variables_present():
            if v not in present:
                present.append(v)
    if not live or not present:
        raise ArithmeticError("underdetermined branch: "
                              f"fixed={fixed}, free variables remain")
    gb = groebner_basis(live, LEX, vars=[v for v in precedence
                                         if v in present])
    if any(g.is_constant() for g in gb):
        return []
    target = None
    univ: List[MultiPoly] = []
    for v in reversed([v for v in precedence if v in present]):
        univ = [g for g in gb.generators if g.variables_present() == (v,)]
        if univ:
            target = v
            break
    if target is None:
        raise ArithmeticError("no univariate generator on branch "
                              f"fixed={fixed}")
    roots = set(rational_roots(univ[0].univariate_coeffs(target)))
    for g in univ[1:]:
        roots &= set(rational_roots(g.univariate_coeffs(target)))
    out: List[Dict[str, Fraction]] = []
    for r in sorted(roots):
        if target == "t" and r == 0:
            log.append("discarded t=0 branch (f1 would not be quadratic)")
            continue
        sub = [g.substitute(target, r) for g in gb.generators]
        sub = [p for p in sub if not p.is_zero()]
        here = dict(fixed)
        here[target] = r
        remaining = [v for v in present if v != target]
        if not remaining:
            if any(not (p.is_constant() and p.constant() == 0) for p in sub):
                continue
            out.append(here)
        elif not sub:
            raise ArithmeticError("underdetermined branch: "
                                  f"fixed={here}, free={remaining}")
        else:
            out.extend(_rational_points(sub, precedence, here, log))
    return out


def _solution_from_point(system: K22System, t: Fraction, a0: Fraction,
                         a1: Fraction) -> PolySolution:
    k = system.k
    point = {"t": t, "a0": a0, "a1": a1}
    a2 = system.a2.evaluate(point)
    coeffs: List[Fraction] = []
    for num, e in system.eliminated:
        coeffs.append(num.evaluate(point) / t ** e)
    coeffs.append(system.bk.evaluate(point))
    sol = PolySolution(k=k, f1=UniPoly([a0, a1, a2]), f2=UniPoly(coeffs),
                       sign=system.sign)
    if not verify_poly_identity(sol):
        raise AssertionError(f"candidate point {point} fails the identity")
    return sol


def solve_k22(k: int, sign: int = 1) -> SolveResult:
    """Solve for quadratic f1: verified solutions up to x -> 1-x, or a
    t-power certificate of nonexistence.

    The ideal-theoretic contract (which solutions exist, whether a pure
    t-power lies in the ideal) does not depend on the monomial order, so the
    computation runs in the cheap graded order first; the elimination order
    needed for root extraction is then rebuilt from that small basis.  The
    orders actually used are recorded on the result.
    """
    system = triangular_reduce(k, sign=sign)
    graded = groebner_basis(system.residual, GREVLEX, vars=system.vars)
    u = find_t_power(graded)
    if u is not None:
        return SolveResult(k=k, sign=sign, solutions=(),
                           certificate=TPowerCertificate(
                               k=k, sign=sign, exponent=u,
                               basis_size=len(graded)),
                           basis_size=len(graded), discarded=(),
                           orders=(GREVLEX,))
    gb = groebner_basis(graded.generators, LEX, vars=system.vars)
    u = find_t_power(gb)
    if u is not None:
        return SolveResult(k=k, sign=sign, solutions=(),
                           certificate=TPowerCertificate(
                               k=k, sign=sign, exponent=u,
                               basis_size=len(gb)),
                           basis_size=len(gb), discarded=(),
                           orders=(GREVLEX, LEX))
    log: List[str] = []
    points = _rational_points(list(gb.generators), CORE_VARS, {}, log)
    for p in points:
        if set(p) != set(CORE_VARS):
            raise ArithmeticError(f"incomplete point {p}")
    # solutions come in x -> 1-x pairs with opposite signs of t; keep t > 0
    by_key = {(p["t"], p["a0"], p["a1"]): p for p in points}
    reps: List[PolySolution] = []
    for (t, a0, a1) in sorted(by_key):
        if t < 0:
            a2 = Fraction(factorial(k), 2) * t * t
            partner = (-t, a0 + a1 + a2, -a1 - 2 * a2)
            if partner not in by_key:
                raise AssertionError(
                    f"missing mirror of point t={t}, a0={a0}, a1={a1}")
            continue
        reps.append(_solution_from_point(system, t, a0, a1))
    return SolveResult(k=k, sign=sign, solutions=tuple(reps),
                       certificate=None, basis_size=len(gb),
                       discarded=tuple(log), orders=(GREVLEX, LEX))


def _u(coeffs: Sequence) -> UniPoly:
    return UniPoly([Fraction(c) for c in coeffs])


# Closed-form identities verified directly (coefficients ascending).
KNOWN_IDENTITIES: Tuple[Tuple[str, PolySolution], ...] = (
    (
        "cube-of-quadratic",
        PolySolution(k=3, f1=_u([3, -12, 12]),
                     f2=_u([-1, 15, -36, 24])),
    ),
    (
        "paired-cubics",
        PolySolution(k=3, f1=_u([1, 2]) * _u([2, 3]),
                     f0=_u([0, 1]) * _u([2, 3]), mid_k=3,
                     f2=_u([1, 6, 15, 9])),
    ),
    (
        "cubic-middle-k5",
        PolySolution(k=5, f1=_u([0, 0, 15]),
                     f0=_u([Fraction(1, 2), Fraction(-5, 2), 0, 15]),
                     f2=_u([Fraction(1, 2), Fraction(7, 2), 0,
                            Fraction(-75, 2), 0, Fraction(225, 2)])),
    ),
    (
        "cubic-middle-k7",
        PolySolution(k=7, f1=_u([1, 0, 2520]),
                     f0=_u([Fraction(1, 2), Fraction(-23, 2), 0, 8820]),
                     f2=_u([Fraction(1, 2), Fraction(7, 2), 0, 26460, 0,
                            -44452800, 0, 16003008000])),
    ),
)


def verify_cubic_pair_identity() -> bool:
    """Certify binom(x(3x+2), 3) + binom((2x+1)(3x+2), 3) =
    binom(9x^3 + 15x^2 + 6x + 1, 2) as an exact identity."""
    named = dict(KNOWN_IDENTITIES)
    return verify_poly_identity(named["paired-cubics"])
