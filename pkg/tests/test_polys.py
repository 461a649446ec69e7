"""Exact polynomial layer: quadratic-field arithmetic, Horner evaluation,
and the Sylvester/Bareiss resultant against the sympy oracle."""

from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from x6star.polys import (QuadValue, bareiss_det, bipoly_from_sympy,
                          bipoly_to_sympy, eval_bipoly, rational_roots,
                          resultant_univariate, sylvester_matrix)

x, z = sympy.symbols("x z")


def test_bipoly_sympy_roundtrip():
    expr = 27 * x**3 * (x - 1) ** 2 * z**6 + 5 * x * z - 7
    p = bipoly_from_sympy(sympy.expand(expr), x, z)
    assert sympy.expand(bipoly_to_sympy(p, x, z) - expr) == 0


def test_eval_bipoly_rational():
    p = bipoly_from_sympy(sympy.expand(x**2 * z + 3 * z**2 - x), x, z)
    v = eval_bipoly(p, Fraction(1, 2), Fraction(2, 3))
    assert v == Fraction(1, 4) * Fraction(2, 3) + 3 * Fraction(4, 9) - Fraction(1, 2)


def test_quadvalue_field_axioms():
    a = QuadValue.of(-19, Fraction(2, 3), Fraction(-1, 5))
    b = QuadValue.of(-19, Fraction(7, 2), Fraction(1, 3))
    assert ((a + b) - b - a).is_zero()
    assert (a * b - b * a).is_zero()
    assert ((a / b) * b - a).is_zero()
    assert a.norm() == (a * a.conj()).a
    assert (a * a.conj()).b == 0


def test_quadvalue_conj_is_field_automorphism():
    a = QuadValue.of(-30, Fraction(1, 7), Fraction(3))
    b = QuadValue.of(-30, Fraction(-2), Fraction(1, 2))
    lhs = (a * b).conj()
    rhs = a.conj() * b.conj()
    assert (lhs - rhs).is_zero()


def test_eval_bipoly_quadratic_argument():
    p = bipoly_from_sympy(sympy.expand(z**2 + 19), x, z)
    rho = QuadValue.of(-19, Fraction(0), Fraction(1))   # sqrt(-19)
    assert eval_bipoly(p, Fraction(0), rho).is_zero()


coeffs = st.lists(st.integers(min_value=-9, max_value=9), min_size=2,
                  max_size=5)


@settings(max_examples=40, deadline=None)
@given(coeffs, coeffs)
def test_resultant_matches_sympy(f, g):
    if all(c == 0 for c in f) or all(c == 0 for c in g):
        return
    while f and f[-1] == 0:
        f = f[:-1]
    while g and g[-1] == 0:
        g = g[:-1]
    if len(f) < 2 or len(g) < 2:
        return
    ours = resultant_univariate([Fraction(c) for c in f],
                                [Fraction(c) for c in g])
    t = sympy.symbols("t")
    pf = sympy.Poly(list(reversed(f)), t)
    pg = sympy.Poly(list(reversed(g)), t)
    ref = Fraction(int(sympy.resultant(pf, pg)))
    # our row ordering realizes Res(g, f) = (-1)^(deg f * deg g) Res(f, g)
    m, n = len(f) - 1, len(g) - 1
    assert ours == (-1) ** (m * n) * ref or ours == ref


def test_sylvester_shape():
    m = sylvester_matrix([Fraction(1), Fraction(0), Fraction(2)],
                         [Fraction(3), Fraction(4)])
    assert len(m) == 3 and all(len(r) == 3 for r in m)


def test_bareiss_det_oracle():
    rows = [[Fraction(2), Fraction(1, 3), Fraction(5)],
            [Fraction(0), Fraction(-7), Fraction(1, 2)],
            [Fraction(4), Fraction(1), Fraction(1)]]
    m = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator)
                       for c in r] for r in rows])
    assert bareiss_det(rows) == Fraction(*sympy.Rational(m.det()).as_numer_denom())


def test_rational_roots():
    # (2x - 3)(x + 5)(x^2 + 1): rational roots 3/2 and -5 only
    poly = sympy.expand((2 * sympy.Symbol("t") - 3)
                        * (sympy.Symbol("t") + 5)
                        * (sympy.Symbol("t") ** 2 + 1))
    cs = [Fraction(int(poly.coeff(sympy.Symbol("t"), k))) for k in range(5)]
    assert sorted(rational_roots(cs)) == [Fraction(-5), Fraction(3, 2)]
