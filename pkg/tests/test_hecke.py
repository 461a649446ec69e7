"""Derivation chain for the level-5 certificate: eigen polynomials, Newton's
identities, the degree-6 orbit polynomial, and the elimination step."""

from fractions import Fraction

import sympy

from x6star.hecke import (eigen_polynomial, eliminate, newton_elementary,
                          orbit_polynomial, power_sum_polys,
                          reconstruction_report)

t, x, y, z = sympy.symbols("t x y z")


def test_eigen_polynomial_weights():
    # weight 8 is a one-dimensional block: a constant scalar action
    assert eigen_polynomial(1) == -114
    # weight 48 is three-dimensional: last row reaches u^-2, i.e. degree 2
    assert sympy.degree(eigen_polynomial(6), t) == 2


def test_newton_identities_roundtrip():
    # random symmetric data: e_k from p_k must satisfy prod (1 - r_i y)
    rs = [sympy.Rational(v, 7) for v in (1, -2, 3, 5)]
    ps = [sum(r**k for r in rs) for k in range(1, 5)]
    es = newton_elementary(ps)
    prod = sympy.expand(sympy.prod([1 - r * y for r in rs]))
    rebuilt = sum((-1) ** k * es[k] * y**k for k in range(5))
    assert sympy.expand(prod - rebuilt) == 0


def test_power_sums_have_polynomial_entries():
    for p in power_sum_polys():
        poly = sympy.Poly(p, t)
        assert poly.degree() <= 36


DISPLAYED_Q = {
    0: "1",
    1: "114/125",
    2: "-6333/78125",
    3: "55296*x/78125 - 20711812/48828125",
    4: "8128512*x/9765625 + 5412060291/30517578125",
    5: "4355721216*x/6103515625 - 2542129801926/95367431640625",
    6: "764411904*x**2/6103515625 + 809588736*x/30517578125"
       " + 214358881/152587890625",
}


def test_orbit_polynomial_matches_displayed_coefficients():
    Q = orbit_polynomial()
    for k, s in DISPLAYED_Q.items():
        got = sympy.expand(Q.coeff(y, k))
        want = sympy.expand(sympy.sympify(s))
        assert sympy.expand(got - want) == 0, k


def test_elimination_divisible_by_certificate_with_square_cofactor():
    rep = reconstruction_report()
    assert rep["certificate_divides"]
    cof = sympy.factor(rep["cofactor"])
    expect = sympy.expand(
        (138240 * x + 14641)
        * (24027099609375 * x**2 - 57826410468750 * x + 23241333747247) ** 2)
    assert sympy.expand(sympy.expand(cof) - expect) == 0
    assert rep["spot_check_ok"]


def test_eliminate_normalization_integer_primitive():
    import math
    p = eliminate()
    nums = [c.numerator for c in p.values()]
    assert all(c.denominator == 1 for c in p.values())
    assert math.gcd(*nums) == 1


def test_mutated_hecke_entry_breaks_reconstruction(monkeypatch):
    import x6star.hecke as hecke
    orig = hecke.load_hecke_t5()
    mutated = {k: [row[:] for row in m] for k, m in orig.items()}
    mutated[8][0][0] += 1
    monkeypatch.setattr(hecke, "load_hecke_t5", lambda: mutated)
    Q = hecke.orbit_polynomial()
    got = sympy.expand(Q.coeff(y, 1))
    assert sympy.expand(got - sympy.Rational(114, 125)) != 0
