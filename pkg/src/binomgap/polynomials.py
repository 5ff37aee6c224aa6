"""Dense univariate and sparse multivariate polynomials over exact rationals."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from .intmath import divisors, to_fraction

LEX = "lex"
GRLEX = "grlex"
GREVLEX = "grevlex"

_ORDERS = (LEX, GRLEX, GREVLEX)

Scalar = Union[int, Fraction]

_ZERO = Fraction(0)


class UniPoly:
    """Univariate polynomial, dense rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: Scalar) -> "UniPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _ZERO

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly((to_fraction(other),))

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "UniPoly":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative power")
        out = UniPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly((other,))
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x: Scalar) -> Fraction:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """Polynomial composition self(inner(x))."""
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly.const(c)
        return acc

    def int_coeffs(self) -> List[int]:
        """Coefficients as integers; raises if any is non-integral."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c}")
            out.append(c.numerator)
        return out

    def primitive(self) -> Tuple[Fraction, List[int]]:
        """Write self = content * P with P primitive integer coefficients,
        positive leading coefficient.  Returns (content, P's coefficients)."""
        if self.is_zero():
            raise ValueError("zero polynomial has no primitive part")
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [v // g for v in ints]

    def __repr__(self):
        if self.is_zero():
            return "UniPoly[0]"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}*x^{i}" if i else f"{c}")
        return "UniPoly[" + " + ".join(parts) + "]"


def _int_eval(coeffs: List[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _frac_rem(f: List[Fraction], g: List[Fraction]) -> List[Fraction]:
    """Remainder of f by g (coefficient lists, ascending, g nonzero)."""
    r = list(f)
    dg = len(g) - 1
    inv = 1 / g[-1]
    while len(r) - 1 >= dg and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dg:
            break
        q = r[-1] * inv
        shift = len(r) - 1 - dg
        for i, c in enumerate(g):
            r[shift + i] -= q * c
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r


def _content_stripped(f: List[Fraction]) -> List[int]:
    """Scale by a positive rational to primitive integer coefficients."""
    scale = 1
    for c in f:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    ints = [int(c * scale) for c in f]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints]


def _squarefree_int(ints: List[int]) -> List[int]:
    """The squarefree part p / gcd(p, p'), primitive with the same sign."""
    f = [Fraction(c) for c in ints]
    g = [Fraction(i * c) for i, c in enumerate(ints)][1:]
    while any(g):
        f, g = g, _frac_rem(f, g)
    if len(f) == 1:  # gcd is constant: already squarefree
        return ints
    quo: List[Fraction] = []
    r = [Fraction(c) for c in ints]
    dg = len(f) - 1
    inv = 1 / f[-1]
    for shift in range(len(r) - 1 - dg, -1, -1):
        q = r[shift + dg] * inv
        quo.append(q)
        for i, c in enumerate(f):
            r[shift + i] -= q * c
    assert not any(r), "squarefree division left a remainder"
    out = _content_stripped(list(reversed(quo)))
    return out if out[-1] * ints[-1] > 0 else [-c for c in out]


def _sturm_chain(sf: List[int]) -> List[List[int]]:
    chain = [sf, [i * c for i, c in enumerate(sf)][1:]]
    while len(chain[-1]) > 1:
        rem = _frac_rem([Fraction(c) for c in chain[-2]],
                        [Fraction(c) for c in chain[-1]])
        assert rem, "chain of a squarefree polynomial ended early"
        chain.append(_content_stripped([-c for c in rem]))
    return chain


def _variations(chain: List[List[int]], x: int) -> int:
    signs = [s for s in ((_int_eval(c, x) > 0) - (_int_eval(c, x) < 0)
                         for c in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def integer_roots(p: UniPoly) -> List[int]:
    """All integer roots of a nonzero polynomial, found exactly: strip the
    power of x, pass to the primitive squarefree part, and bisect a Sturm
    chain down to unit intervals inside the Cauchy root bound.  No
    factorization is involved, so huge constant terms cost nothing."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    coeffs = list(p.coeffs)
    roots = set()
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        roots.add(0)
    if len(coeffs) <= 1:
        return sorted(roots)
    _, ints = UniPoly(coeffs).primitive()
    sf = _squarefree_int(ints)
    if len(sf) == 2:
        num, den = -sf[0], sf[1]
        if num % den == 0:
            roots.add(num // den)
        return sorted(roots)
    bound = 2 + max(abs(c) for c in sf[:-1]) // abs(sf[-1])
    chain = _sturm_chain(sf)
    cache = {}

    def var(x: int) -> int:
        if x not in cache:
            cache[x] = _variations(chain, x)
        return cache[x]

    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        if var(a) == var(b):
            continue
        if b - a == 1:
            if _int_eval(sf, b) == 0:
                roots.add(b)
            continue
        mid = (a + b) // 2
        stack.append((a, mid))
        stack.append((mid, b))
    return sorted(roots)


def rational_roots(p: UniPoly) -> List[Fraction]:
    """All rational roots: candidates num/den with num | constant term and
    den | leading coefficient of the primitive part."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    coeffs = list(p.coeffs)
    roots = set()
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        roots.add(Fraction(0))
    if len(coeffs) <= 1:
        return sorted(roots)
    q = UniPoly(coeffs)
    _, ints = q.primitive()
    c0, lead = ints[0], ints[-1]
    for num in divisors(c0):
        for den in divisors(lead):
            if gcd(num, den) != 1:
                continue
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if q(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


class MultiPoly:
    """Sparse multivariate polynomial.

    Variables are an ordered name tuple (first name has greatest precedence
    in the monomial order); terms map exponent tuples to nonzero rational
    coefficients; the monomial order tag (lex, grlex, or grevlex) travels
    with the polynomial so leading terms are reproducible.
    """

    __slots__ = ("vars", "terms", "order")

    def __init__(self, vars: Sequence[str], terms: Dict[Tuple[int, ...], Scalar],
                 order: str = LEX):
        if order not in _ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        clean: Dict[Tuple[int, ...], Fraction] = {}
        nv = len(vars)
        for exp, c in terms.items():
            c = to_fraction(c)
            if c:
                exp = tuple(exp)
                if len(exp) != nv:
                    raise ValueError("exponent tuple length mismatch")
                clean[exp] = c
        self.vars = tuple(vars)
        self.terms = clean
        self.order = order

    # -- construction -----------------------------------------------------

    @classmethod
    def const(cls, c: Scalar, vars: Sequence[str] = (), order: str = LEX) -> "MultiPoly":
        c = to_fraction(c)
        if not c:
            return cls(vars, {}, order)
        return cls(vars, {(0,) * len(vars): c}, order)

    @classmethod
    def var(cls, name: str, order: str = LEX) -> "MultiPoly":
        return cls((name,), {(1,): 1}, order)

    @classmethod
    def from_unipoly(cls, p: UniPoly, name: str, order: str = LEX) -> "MultiPoly":
        return cls((name,), {(i,): c for i, c in enumerate(p.coeffs)}, order)

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant(self) -> Fraction:
        """The value of a constant polynomial."""
        if self.is_zero():
            return _ZERO
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def variables_present(self) -> Tuple[str, ...]:
        """Names that actually occur with positive exponent."""
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, ei in enumerate(e):
                if ei:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def _key(self, exp: Tuple[int, ...]):
        if self.order == GRLEX:
            return (sum(exp), exp)
        if self.order == GREVLEX:
            return (sum(exp), tuple(-e for e in reversed(exp)))
        return exp

    def leading_term(self) -> Tuple[Tuple[int, ...], Fraction]:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=self._key)
        return exp, self.terms[exp]

    # -- variable unification --------------------------------------------

    def embed(self, newvars: Sequence[str]) -> "MultiPoly":
        """Re-express over a superset of variables (same order tag)."""
        newvars = tuple(newvars)
        if newvars == self.vars:
            return self
        idx = {v: i for i, v in enumerate(newvars)}
        pos = []
        for v in self.vars:
            if v not in idx:
                raise ValueError(f"variable {v} missing from target universe")
            pos.append(idx[v])
        terms: Dict[Tuple[int, ...], Fraction] = {}
        nv = len(newvars)
        for exp, c in self.terms.items():
            ne = [0] * nv
            for p, e in zip(pos, exp):
                ne[p] = e
            terms[tuple(ne)] = c
        return MultiPoly(newvars, terms, self.order)

    def unified(self, other: "MultiPoly") -> Tuple["MultiPoly", "MultiPoly"]:
        """Common variable universe: self's names, then other's new names
        appended at lower precedence."""
        if self.vars == other.vars:
            return self, other
        merged = list(self.vars) + [v for v in other.vars if v not in self.vars]
        return self.embed(merged), other.embed(merged)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(to_fraction(other), self.vars, self.order)

    def __add__(self, other) -> "MultiPoly":
        a, b = self.unified(self._coerce(other))
        terms = dict(a.terms)
        for exp, c in b.terms.items():
            s = terms.get(exp, _ZERO) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return MultiPoly(a.vars, terms, a.order)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "MultiPoly":
        a, b = self.unified(self._coerce(other))
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e, _ZERO) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return MultiPoly(a.vars, terms, a.order)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(1, self.vars, self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self.unified(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- substitution -----------------------------------------------------

    def substitute(self, name: str, value) -> "MultiPoly":
        """Replace a variable by a scalar or polynomial; the variable is
        eliminated from the result's universe."""
        if name not in self.vars:
            raise ValueError(f"unknown variable {name}")
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1 :]
        if not isinstance(value, MultiPoly):
            value = MultiPoly.const(to_fraction(value), rest, self.order)
        out = MultiPoly.const(0, rest, self.order)
        powers: Dict[int, MultiPoly] = {0: MultiPoly.const(1, rest, self.order)}

        def vpow(e: int) -> MultiPoly:
            if e not in powers:
                powers[e] = vpow(e - 1) * value
            return powers[e]

        for exp, c in self.terms.items():
            mono = MultiPoly(rest, {exp[:i] + exp[i + 1 :]: c}, self.order)
            out = out + mono * vpow(exp[i])
        return out

    def evaluate(self, assignment: Dict[str, Scalar]) -> Fraction:
        """Full evaluation; every present variable must be assigned."""
        p = self
        for name in self.variables_present():
            p = p.substitute(name, to_fraction(assignment[name]))
        return p.constant()

    # -- normalization ----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self = c * (primitive integer polynomial);
        sign chosen so the primitive part has positive leading coefficient."""
        if self.is_zero():
            raise ValueError("zero polynomial has no content")
        den = lcm(*(c.denominator for c in self.terms.values()))
        g = 0
        for c in self.terms.values():
            g = gcd(g, c.numerator * (den // c.denominator))
        if self.leading_term()[1] < 0:
            g = -g
        return Fraction(g, den)

    def primitive(self) -> "MultiPoly":
        c = self.content()
        return MultiPoly(self.vars, {e: v / c for e, v in self.terms.items()}, self.order)

    def monic(self) -> "MultiPoly":
        lc = self.leading_term()[1]
        return MultiPoly(self.vars, {e: v / lc for e, v in self.terms.items()}, self.order)

    def univariate_coeffs(self, name: str) -> UniPoly:
        """View as univariate in `name`; raises if other variables occur."""
        present = self.variables_present()
        if any(v != name for v in present):
            raise ValueError(f"polynomial involves {present}, not only {name}")
        if name not in self.vars:
            raise ValueError(f"unknown variable {name}")
        i = self.vars.index(name)
        out: Dict[int, Fraction] = {}
        for exp, c in self.terms.items():
            out[exp[i]] = out.get(exp[i], _ZERO) + c
        deg = max(out, default=0)
        return UniPoly([out.get(j, _ZERO) for j in range(deg + 1)])

    def sorted_terms(self) -> List[Tuple[Tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: self._key(t[0]), reverse=True)

    def __repr__(self):
        if self.is_zero():
            return "MultiPoly[0]"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.vars, exp) if e
            )
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return "MultiPoly[" + " + ".join(parts) + "]"
