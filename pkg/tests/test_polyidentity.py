"""Polynomial-solution machinery: elimination, solver, certificates."""

import math
import random
from fractions import Fraction

import pytest

from binomgap.groebner import groebner_basis, normal_form
from binomgap.polyidentity import (
    CORE_VARS,
    KNOWN_IDENTITIES,
    PolySolution,
    binom_poly,
    solve_k22,
    triangular_reduce,
    verify_cubic_pair_identity,
    verify_poly_identity,
)
from binomgap.polynomials import GREVLEX, LEX, MultiPoly, UniPoly


def _poly(coeffs):
    return UniPoly([Fraction(c) for c in coeffs])


def _coeffs(p):
    return tuple(p.coeffs)


def _lex_basis(k, sign=1):
    system = triangular_reduce(k, sign=sign)
    graded = groebner_basis(system.residual, GREVLEX, vars=system.vars)
    return groebner_basis(graded.generators, LEX, vars=system.vars)


def test_binom_poly_small_cases():
    x = UniPoly.x()
    assert binom_poly(x, 0) == UniPoly.const(1)
    assert binom_poly(x, 1) == x
    assert binom_poly(x, 2) == _poly([0, Fraction(-1, 2)]) + \
        _poly([0, 0, Fraction(1, 2)])
    with pytest.raises(ValueError):
        binom_poly(x, -1)


def test_binom_poly_matches_product_formula():
    rng = random.Random(61441)
    for _ in range(500):
        deg = rng.randint(0, 3)
        f = _poly([Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                   for _ in range(deg + 1)])
        k = rng.randint(0, 4)
        x = Fraction(rng.randint(-12, 12), rng.randint(1, 3))
        v = f(x)
        expected = Fraction(math.prod(
            (v - j for j in range(k)), start=Fraction(1)),
        ) / math.factorial(k)
        assert binom_poly(f, k)(x) == expected


def test_cube_of_quadratic_identity():
    # binom(3(2x-1)^2, 3) + binom(x, 2) is a triangular number identically
    f1 = _poly([3, -12, 12])
    f2 = _poly([2, -15, 36, -24])
    combo = binom_poly(f1, 3) + binom_poly(UniPoly.x(), 2) - binom_poly(f2, 2)
    assert combo.is_zero()


def test_known_identities_verify():
    names = tuple(name for name, _ in KNOWN_IDENTITIES)
    assert names == ("cube-of-quadratic", "paired-cubics",
                     "cubic-middle-k5", "cubic-middle-k7")
    for _, sol in KNOWN_IDENTITIES:
        assert verify_poly_identity(sol)
        assert verify_poly_identity(sol.transformed())
    assert verify_cubic_pair_identity()


def test_transform_is_an_involution():
    for _, sol in KNOWN_IDENTITIES:
        back = sol.transformed().transformed()
        assert back.f1 == sol.f1 and back.f2 == sol.f2
        assert back.middle() == sol.middle()
    rep = KNOWN_IDENTITIES[0][1].canonical()
    assert rep.f2[rep.f2.degree] > 0


def test_triangular_reduce_k3_exact_shape():
    system = triangular_reduce(3)
    assert system.vars == CORE_VARS
    t = MultiPoly.var("t").embed(CORE_VARS)
    a0 = MultiPoly.var("a0").embed(CORE_VARS)
    a1 = MultiPoly.var("a1").embed(CORE_VARS)
    assert system.a2 == 3 * t * t
    assert system.bk == 3 * t**3
    # eliminated[i] = (numerator, e) encodes b_i = numerator / t^e
    (num0, e0), (num1, e1), (num2, e2) = system.eliminated
    assert (e2, num2) == (0, Fraction(3, 2) * t * a1)
    assert e1 == 1
    assert num1 * 8 == 12 * t * t * a0 + a1 * a1 - 12 * t * t
    assert e0 == 3
    assert num0 * 144 == (36 * t**2 * a0 * a1 - 36 * t**2 * a1
                          - a1**3 + 72 * t**3)
    assert len(system.residual) == 3


def test_triangular_reduce_shapes_for_larger_k():
    for k in (5, 7, 9):
        system = triangular_reduce(k)
        assert len(system.eliminated) == k
        assert len(system.residual) == k
        assert system.bk == MultiPoly.var("t").embed(CORE_VARS) ** k \
            * Fraction(math.factorial(k), 2) ** ((k - 1) // 2)


def test_triangular_reduce_quadratic_middle_variant():
    system = triangular_reduce(3, f0_degree=2)
    assert system.vars == CORE_VARS + ("c0", "c1", "c2")
    assert system.f0_degree == 2
    assert len(system.residual) == 3


def test_triangular_reduce_validation():
    with pytest.raises(ValueError):
        triangular_reduce(4)
    with pytest.raises(ValueError):
        triangular_reduce(1)
    with pytest.raises(ValueError):
        triangular_reduce(3, sign=2)
    with pytest.raises(ValueError):
        triangular_reduce(3, f0_degree=3)


def test_solve_k3_exact_solutions():
    res = solve_k22(3)
    assert res.orders == (GREVLEX, LEX)
    assert res.certificate is None
    assert len(res.discarded) == 1 and "t=0" in res.discarded[0]
    got = [( _coeffs(s.f1), _coeffs(s.f2)) for s in res.solutions]
    assert got == [
        ((Fraction(7, 4), -3, 3), (Fraction(1, 8), Fraction(9, 4),
                                   Fraction(-9, 2), 3)),
        ((3, -12, 12), (-1, 15, -36, 24)),
        ((5, -12, 12), (-4, 21, -36, 24)),
    ]
    for s in res.solutions:
        assert verify_poly_identity(s)
        assert s.canonical() == s


def test_solve_k3_covers_both_printed_forms():
    # tables print one member of each x -> 1-x orbit; both of the orbit of
    # the third solution appear in circulation
    res = solve_k22(3)
    third = res.solutions[2]
    assert _coeffs(third.transformed().f2) == (5, -21, 36, -24)
    assert verify_poly_identity(third.transformed())


def test_solve_k5_exact_solutions():
    res = solve_k22(5)
    f1s = [_coeffs(s.f1) for s in res.solutions]
    assert f1s == [
        (Fraction(26, 3), Fraction(-80, 3), Fraction(80, 3)),
        (15, -60, 60),
        (19, -60, 60),
    ]
    assert _coeffs(res.solutions[0].f2) == (
        Fraction(-364, 27), Fraction(3955, 27), Fraction(-16000, 27),
        Fraction(32000, 27), Fraction(-32000, 27), Fraction(12800, 27))
    for s in res.solutions:
        assert verify_poly_identity(s)


def test_solve_k7_exact_solution():
    res = solve_k22(7)
    assert len(res.solutions) == 1
    sol = res.solutions[0]
    assert _coeffs(sol.f1) == (Fraction(41, 2), -70, 70)
    assert sol.f1 * 2 == _poly([41, -140, 140])
    assert verify_poly_identity(sol)


def test_solution_degree_audit():
    for k in (3, 5, 7):
        for s in solve_k22(k).solutions:
            assert s.f1.degree == 2
            assert s.f2.degree == k
            assert s.f2[k] > 0
            assert s.sign == 1 and s.mid_k == 2 and s.f0 is None


def test_minus_sign_k3_has_no_solutions():
    res = solve_k22(3, -1)
    assert res.solutions == ()
    assert res.certificate is None  # ruled out by exhausting rational points


def test_minus_sign_k5_certificate():
    res = solve_k22(5, -1)
    assert res.solutions == ()
    assert res.certificate is not None
    assert res.certificate.exponent == 8
    assert res.certificate.sign == -1


def test_lex_basis_k3_univariate_element():
    gb = _lex_basis(3)
    a1 = MultiPoly.var("a1").embed(CORE_VARS)
    univ = [g for g in gb if g.variables_present() == ("a1",)]
    assert len(univ) == 1
    assert univ[0] == a1**5 * (a1 + 3) * (a1 + 12)


def test_lex_basis_k7_contains_printed_elements():
    gb = _lex_basis(7)
    a0 = MultiPoly.var("a0").embed(CORE_VARS)
    a1 = MultiPoly.var("a1").embed(CORE_VARS)
    assert normal_form(a1**12 * (a1 + 70), gb).is_zero()
    assert normal_form(a1**12 * (2 * a0 - 41), gb).is_zero()
    univ = [g for g in gb if g.variables_present() == ("a1",)]
    assert univ and univ[0] == a1**12 * (a1 + 70)


@pytest.mark.slow
@pytest.mark.parametrize("k,sign,exponent", [
    (9, 1, 14), (9, -1, 14),
    (11, 1, 18), (11, -1, 18),
    (13, 1, 20), (13, -1, 20),
])
def test_t_power_certificates(k, sign, exponent):
    res = solve_k22(k, sign)
    assert res.solutions == ()
    assert res.certificate is not None
    assert res.certificate.exponent == exponent


def test_minus_sign_k7_certificate():
    res = solve_k22(7, -1)
    assert res.certificate is not None and res.certificate.exponent == 10
