"""Exact polynomial arithmetic cross-checked against sympy."""

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from binomgap.polynomials import (
    GREVLEX,
    GRLEX,
    LEX,
    MultiPoly,
    UniPoly,
    integer_roots,
    rational_roots,
)

X, Y, Z = sympy.symbols("x y z")


def _to_sympy_uni(p: UniPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * X**i
                for i, c in enumerate(p.coeffs)), sympy.Integer(0))


def _random_unipoly(rng, degree, coeff_bound=20):
    coeffs = [Fraction(rng.randint(-coeff_bound, coeff_bound),
                       rng.randint(1, 6)) for _ in range(degree + 1)]
    return UniPoly(coeffs)


def test_unipoly_basic():
    x = UniPoly.x()
    p = (x - 1) * (x + 1)
    assert p.coeffs == (Fraction(-1), Fraction(0), Fraction(1))
    assert p.degree == 2
    assert p(3) == 8
    assert UniPoly([]).is_zero()
    assert UniPoly([0, 0]).is_zero()
    assert UniPoly.const(5).degree == 0


def test_unipoly_compose():
    x = UniPoly.x()
    inner = UniPoly([1, -1])  # 1 - x
    outer = x * x + x  # x^2 + x
    composed = outer.compose(inner)
    # (1-x)^2 + (1-x) = 2 - 3x + x^2
    assert composed.coeffs == (Fraction(2), Fraction(-3), Fraction(1))


def test_unipoly_arithmetic_matches_sympy():
    rng = random.Random(20260822)
    for _ in range(500):
        a = _random_unipoly(rng, rng.randint(0, 6))
        b = _random_unipoly(rng, rng.randint(0, 6))
        sa, sb = _to_sympy_uni(a), _to_sympy_uni(b)
        assert sympy.expand(_to_sympy_uni(a + b) - (sa + sb)) == 0
        assert sympy.expand(_to_sympy_uni(a * b) - sa * sb) == 0
        assert sympy.expand(_to_sympy_uni(a - b) - (sa - sb)) == 0


def test_unipoly_evaluation_matches_sympy():
    rng = random.Random(7)
    for _ in range(500):
        p = _random_unipoly(rng, rng.randint(0, 8))
        at = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
        expected = _to_sympy_uni(p).subs(X, sympy.Rational(at.numerator, at.denominator))
        got = p(at)
        assert sympy.Rational(got.numerator, got.denominator) == expected


def _to_sympy_multi(p: MultiPoly):
    syms = sympy.symbols(p.vars) if len(p.vars) > 1 else (sympy.Symbol(p.vars[0]),)
    total = sympy.Integer(0)
    for exps, coeff in p.terms.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for s, e in zip(syms, exps):
            term *= s**e
        total += term
    return total, syms


def _random_multipoly(rng, names, n_terms, order=LEX):
    poly = MultiPoly.const(0, names, order)
    for _ in range(n_terms):
        term = MultiPoly.const(
            Fraction(rng.randint(-15, 15), rng.randint(1, 4)), names, order)
        for name in names:
            term = term * MultiPoly.var(name, order).embed(names) ** rng.randint(0, 3)
        poly = poly + term
    return poly


def test_multipoly_arithmetic_matches_sympy():
    rng = random.Random(99)
    names = ("x", "y", "z")
    for _ in range(250):
        a = _random_multipoly(rng, names, rng.randint(1, 4))
        b = _random_multipoly(rng, names, rng.randint(1, 4))
        sa, _ = _to_sympy_multi(a)
        sb, _ = _to_sympy_multi(b)
        sp, _ = _to_sympy_multi(a * b)
        ss, _ = _to_sympy_multi(a + b)
        assert sympy.expand(sp - sa * sb) == 0
        assert sympy.expand(ss - (sa + sb)) == 0


def test_multipoly_substitute_matches_sympy():
    rng = random.Random(3)
    names = ("x", "y")
    for _ in range(250):
        p = _random_multipoly(rng, names, rng.randint(1, 4))
        inner = _random_unipoly(rng, 2)
        q = p.substitute("y", MultiPoly.from_unipoly(inner, "x"))
        sp, _ = _to_sympy_multi(p)
        sq, _ = _to_sympy_multi(q)
        expected = sp.subs(Y, _to_sympy_uni(inner))
        assert sympy.expand(sq - expected) == 0


def test_multipoly_orders_match_sympy():
    # leading terms under lex / grlex / grevlex agree with sympy's orderings
    rng = random.Random(41)
    names = ("x", "y", "z")
    for my_order, sympy_order in ((LEX, "lex"), (GRLEX, "grlex"), (GREVLEX, "grevlex")):
        for _ in range(170):
            p = _random_multipoly(rng, names, rng.randint(2, 5), order=my_order)
            if p.is_zero():
                continue
            expr, syms = _to_sympy_multi(p)
            sp = sympy.Poly(expr, *syms)
            monoms = sorted(sp.monoms(),
                            key=sympy.polys.orderings.monomial_key(sympy_order))
            assert p.leading_term()[0] == tuple(monoms[-1])


def test_embed_and_unified():
    p = MultiPoly.var("x")
    q = MultiPoly.var("y")
    s = p + q
    assert set(s.vars) == {"x", "y"}
    widened = p.embed(("x", "y", "z"))
    assert widened.vars == ("x", "y", "z")
    assert widened.substitute("z", 7).substitute("y", 1).evaluate({"x": 2}) == 2


def test_multipoly_evaluate():
    p = MultiPoly.var("x") ** 2 + MultiPoly.var("y") * 3
    assert p.evaluate({"x": 4, "y": 1}) == 19
    assert p.evaluate({"x": Fraction(1, 2), "y": 0}) == Fraction(1, 4)


def test_rational_roots_cases():
    x = UniPoly.x()
    # (2x - 1)(3x + 2)(x - 5)
    p = (x * 2 - 1) * (x * 3 + 2) * (x - 5)
    assert sorted(rational_roots(p)) == [Fraction(-2, 3), Fraction(1, 2), Fraction(5)]
    assert integer_roots(p) == [5]
    assert rational_roots(x * x + 1) == []


def test_rational_roots_match_sympy():
    rng = random.Random(17)
    for _ in range(300):
        p = _random_unipoly(rng, rng.randint(1, 6))
        if p.is_zero():
            continue
        expected = set()
        for root in sympy.roots(_to_sympy_uni(p), X):
            if root.is_rational:
                expected.add(Fraction(int(root.p), int(root.q)))
        assert set(rational_roots(p)) == expected


@settings(max_examples=500, derandomize=True)
@given(st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=7),
       st.integers(min_value=-10, max_value=10))
def test_unipoly_horner_evaluation(coeffs, at):
    p = UniPoly(coeffs)
    assert p(at) == sum(c * at**i for i, c in enumerate(coeffs))


def test_int_coeffs_exactness():
    p = UniPoly([Fraction(1, 2), Fraction(3, 2)])
    with pytest.raises(ValueError):
        p.int_coeffs()
    assert (p * 2).int_coeffs() == [1, 3]
