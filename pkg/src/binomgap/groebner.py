"""Buchberger's algorithm over the rationals.

The kernel works on content-stripped integer coefficient dictionaries
(exponent tuple -> int) so every reduction is fraction-free; rational
normalization happens only at the boundary.  Pair selection is by smallest
lcm (normal strategy) and both classic redundant-pair skips are applied:
the coprime-leading-monomial criterion and the chain criterion.  The output
basis is reduced (no generator's monomial is divisible by another's leading
monomial, tails fully reduced) and monic, which makes it unique for a given
ideal and monomial order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .polynomials import GREVLEX, GRLEX, LEX, MultiPoly

Monomial = Tuple[int, ...]
IntPoly = Dict[Monomial, int]


def _order_key(order: str):
    if order == LEX:
        return lambda e: e
    if order == GRLEX:
        return lambda e: (sum(e), e)
    if order == GREVLEX:
        return lambda e: (sum(e), tuple(-x for x in reversed(e)))
    raise ValueError(f"unknown monomial order {order!r}")


def _content_strip(p: IntPoly) -> IntPoly:
    """Divide out the integer content; empty polynomial passes through."""
    if not p:
        return p
    c = 0
    for v in p.values():
        c = gcd(c, v)
        if c == 1:
            return dict(p)
    return {e: v // c for e, v in p.items()}


def _to_int_poly(p: MultiPoly, vars: Sequence[str]) -> IntPoly:
    """Embed into the common variable tuple, clear denominators, strip."""
    idx = {v: i for i, v in enumerate(vars)}
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    out: IntPoly = {}
    for exp, c in p.terms.items():
        new = [0] * len(vars)
        for v, e in zip(p.vars, exp):
            if e:
                new[idx[v]] = e
        scaled = c * den
        assert scaled.denominator == 1
        out[tuple(new)] = out.get(tuple(new), 0) + scaled.numerator
    return _content_strip({e: v for e, v in out.items() if v})


def _lm(p: IntPoly, key) -> Monomial:
    return max(p, key=key)


def _mono_mul(e: Monomial, f: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(e, f))


def _divides(e: Monomial, f: Monomial) -> bool:
    return all(a <= b for a, b in zip(e, f))


def _lcm(e: Monomial, f: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(e, f))


def _scale_shift(p: IntPoly, c: int, shift: Monomial) -> IntPoly:
    return {_mono_mul(e, shift): c * v for e, v in p.items()}


def _add(p: IntPoly, q: IntPoly) -> IntPoly:
    out = dict(p)
    for e, v in q.items():
        w = out.get(e, 0) + v
        if w:
            out[e] = w
        else:
            out.pop(e, None)
    return out


def _reduce(p: IntPoly, basis: Sequence[IntPoly], key,
            lms: Optional[Sequence[Tuple[Monomial, int]]] = None) -> IntPoly:
    """Full normal form of p modulo basis, up to a positive rational factor.

    Fraction-free: whenever a term is cancelled the whole work polynomial is
    scaled by an integer, so the result is exact; content is stripped at the
    end.  Zero output means exact ideal membership of p.
    """
    if lms is None:
        lms = [(_lm(g, key), g[_lm(g, key)]) for g in basis]
    remainder: IntPoly = {}
    work = dict(p)
    while work:
        mono = _lm(work, key)
        coeff = work[mono]
        hit = -1
        for i, (glm, _) in enumerate(lms):
            if _divides(glm, mono):
                hit = i
                break
        if hit < 0:
            remainder[mono] = coeff
            del work[mono]
            continue
        glm, glc = lms[hit]
        g = basis[hit]
        q = gcd(coeff, glc)
        scale = abs(glc // q)
        sign = 1 if glc > 0 else -1
        if scale != 1:
            work = {e: scale * v for e, v in work.items()}
            if remainder:
                remainder = {e: scale * v for e, v in remainder.items()}
            coeff = work[mono]
        shift = tuple(a - b for a, b in zip(mono, glm))
        work = _add(work, _scale_shift(g, -sign * (coeff // abs(glc)), shift))
        assert mono not in work
    return _content_strip(remainder)


def _spoly(f: IntPoly, g: IntPoly, key) -> IntPoly:
    lf, lg = _lm(f, key), _lm(g, key)
    cf, cg = f[lf], g[lg]
    q = gcd(cf, cg)
    l = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(l, lf))
    sg = tuple(a - b for a, b in zip(l, lg))
    s = _add(_scale_shift(f, cg // q, sf), _scale_shift(g, -(cf // q), sg))
    return _content_strip(s)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced monic basis; generators sorted by decreasing leading monomial."""

    generators: Tuple[MultiPoly, ...]
    vars: Tuple[str, ...]
    order: str

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)


def _common_vars(polys: Sequence[MultiPoly]) -> Tuple[str, ...]:
    seen: List[str] = []
    for p in polys:
        for v in p.vars:
            if v not in seen:
                seen.append(v)
    return tuple(seen)


def groebner_basis(polys: Sequence[MultiPoly], order: str = LEX,
                   vars: Optional[Sequence[str]] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `polys`.

    The variable precedence is the order in which names first appear across
    the inputs unless `vars` overrides it.  Deterministic for fixed input.
    """
    if not polys:
        raise ValueError("empty generating set")
    names = tuple(vars) if vars is not None else _common_vars(polys)
    key = _order_key(order)
    basis: List[IntPoly] = []
    for p in polys:
        ip = _to_int_poly(p, names)
        if ip:
            basis.append(ip)
    if not basis:
        raise ValueError("all generators are zero")

    lms: List[Monomial] = [_lm(g, key) for g in basis]
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def pair_rank(ij: Tuple[int, int]):
        l = _lcm(lms[ij[0]], lms[ij[1]])
        return (sum(l), key(l), ij)

    while pairs:
        i, j = min(pairs, key=pair_rank)
        pairs.remove((i, j))
        li, lj = lms[i], lms[j]
        l = _lcm(li, lj)
        # product criterion: coprime leading monomials
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(lms[k], l):
                continue
            p1 = (min(i, k), max(i, k))
            p2 = (min(j, k), max(j, k))
            if p1 not in pairs and p2 not in pairs:
                skip = True
                break
        if skip:
            continue
        s = _spoly(basis[i], basis[j], key)
        if not s:
            continue
        lmdata = [(m, g[m]) for m, g in zip(lms, basis)]
        r = _reduce(s, basis, key, lmdata)
        if not r:
            continue
        basis.append(r)
        lms.append(_lm(r, key))
        t = len(basis) - 1
        pairs.update((u, t) for u in range(t))

    # minimalize: drop generators whose leading monomial is divisible by a
    # surviving generator's leading monomial; processing by increasing
    # monomial rank keeps every divisor before anything it divides
    ranked = sorted(range(len(basis)),
                    key=lambda i: (sum(lms[i]), key(lms[i]), i))
    keep: List[int] = []
    for i in ranked:
        if not any(_divides(lms[j], lms[i]) for j in keep):
            keep.append(i)
    minimal = [basis[i] for i in keep]
    # inter-reduce tails
    reduced: List[IntPoly] = []
    for i, g in enumerate(minimal):
        others = [h for j, h in enumerate(minimal) if j != i]
        if others:
            g = _reduce(g, others, key)
        if g:
            reduced.append(g)

    def to_multipoly(ip: IntPoly) -> MultiPoly:
        lc = ip[_lm(ip, key)]
        return MultiPoly(names, {e: Fraction(v, lc) for e, v in ip.items()},
                         order)

    gens = [to_multipoly(g) for g in reduced]
    gens.sort(key=lambda g: key(g.leading_term()[0]), reverse=True)
    return GroebnerBasis(generators=tuple(gens), vars=names, order=order)


def normal_form(p: MultiPoly, basis: GroebnerBasis) -> MultiPoly:
    """Exact remainder of p on division by the (reduced, monic) basis.

    p - normal_form(p) lies in the ideal, so a zero result certifies ideal
    membership of p.
    """
    key = _order_key(basis.order)
    ints = [_to_int_poly(g, basis.vars) for g in basis.generators]
    remainder: Dict[Monomial, Fraction] = {}
    work: Dict[Monomial, Fraction] = {}
    idx = {v: i for i, v in enumerate(basis.vars)}
    for exp, c in p.terms.items():
        new = [0] * len(basis.vars)
        for v, e in zip(p.vars, exp):
            if e and v not in idx:
                raise ValueError(f"variable {v!r} not in basis ring")
            if e:
                new[idx[v]] = e
        work[tuple(new)] = work.get(tuple(new), Fraction(0)) + c
    work = {e: v for e, v in work.items() if v}
    lmdata = [(_lm(g, key), g[_lm(g, key)]) for g in ints]
    while work:
        mono = max(work, key=key)
        coeff = work[mono]
        hit = -1
        for i, (glm, _) in enumerate(lmdata):
            if _divides(glm, mono):
                hit = i
                break
        if hit < 0:
            remainder[mono] = coeff
            del work[mono]
            continue
        glm, glc = lmdata[hit]
        shift = tuple(a - b for a, b in zip(mono, glm))
        factor = coeff / glc
        for e, v in ints[hit].items():
            tgt = _mono_mul(e, shift)
            w = work.get(tgt, Fraction(0)) - factor * v
            if w:
                work[tgt] = w
            else:
                work.pop(tgt, None)
    return MultiPoly(basis.vars, remainder, basis.order)
