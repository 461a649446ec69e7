"""Gamma evaluator: mpmath oracle, classical functional identities, and the
closed-form constants (including their Chowla-Selberg expressions)."""

from fractions import Fraction

import pytest
from mpmath import mp

from x6star.gammafn import (chowla_selberg_period, constant_set, gamma_rat,
                            lgamma_rat)
from x6star.numkernel import (DEFAULT_PRECISION, Precision, const_pi, pow_rat,
                              residual_exponent, sin_pi_rat)

P450 = DEFAULT_PRECISION
BAR = -400          # acceptance bar: relative residual below 2**-400


@pytest.mark.parametrize("r", [Fraction(1, 4), Fraction(3, 4), Fraction(1, 3),
                               Fraction(2, 3), Fraction(19, 24), Fraction(7, 2),
                               Fraction(1, 97)])
def test_gamma_against_mpmath_oracle(r):
    v = gamma_rat(r, Precision(256))
    with mp.workprec(320):
        ref = mp.gamma(mp.mpf(r.numerator) / r.denominator)
        assert abs(v.value - ref) / ref < mp.ldexp(1, -240)


def test_gamma_rejects_nonpositive():
    with pytest.raises(ValueError):
        gamma_rat(Fraction(-1, 2), P450)
    with pytest.raises(ValueError):
        gamma_rat(0, P450)


@pytest.mark.parametrize("r", [Fraction(1, 5), Fraction(3, 7), Fraction(11, 24)])
def test_reflection(r):
    lhs = gamma_rat(r, P450) * gamma_rat(1 - r, P450)
    rhs = const_pi(P450) / sin_pi_rat(r, P450)
    assert residual_exponent(lhs, rhs) <= BAR


@pytest.mark.parametrize("r", [Fraction(1, 4), Fraction(5, 6), Fraction(13, 24)])
def test_functional_equation(r):
    lhs = gamma_rat(r + 1, P450)
    rhs = gamma_rat(r, P450) * Fraction(r)
    assert residual_exponent(lhs, rhs) <= BAR


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_gauss_multiplication(k):
    # Gamma(kx) = (2 pi)^((1-k)/2) k^(kx - 1/2) prod_j Gamma(x + j/k)
    x = Fraction(1, 7)
    lhs = gamma_rat(k * x, P450)
    prod = gamma_rat(x, P450)
    for j in range(1, k):
        prod = prod * gamma_rat(x + Fraction(j, k), P450)
    two_pi = 2 * const_pi(P450)
    rhs = prod * pow_rat(k, k * x - Fraction(1, 2), P450) \
        * (two_pi.log() * Fraction(1 - k, 2)).exp()
    assert residual_exponent(lhs, rhs) <= BAR


def test_lgamma_consistency():
    r = Fraction(5, 12)
    assert residual_exponent(lgamma_rat(r, P450).exp(),
                             gamma_rat(r, P450)) <= BAR


def test_uniformizer_constant_is_minus_c1():
    cs = constant_set(P450)
    assert residual_exponent(cs.C_unif, -cs.C1) <= BAR


def test_chowla_selberg_c1():
    cs = constant_set(P450)
    pi = const_pi(P450)
    rhs = 4 * pow_rat(Fraction(1, 12), Fraction(1, 4), P450) * pi \
        / (cs.Omega_m4 * cs.Omega_m4)
    assert residual_exponent(cs.C1, rhs) <= BAR


def test_chowla_selberg_c2():
    cs = constant_set(P450)
    pi = const_pi(P450)
    rhs = 3 * pow_rat(Fraction(1, 2), Fraction(1, 6), P450) * pi \
        / (cs.Omega_m3 * cs.Omega_m3)
    assert residual_exponent(cs.C2, rhs) <= BAR


def test_period_m4_closed_form():
    # Omega(-4) = sqrt(pi) Gamma(1/4)/Gamma(3/4) (w = 4, h = 1)
    om = chowla_selberg_period(-4, P450)
    rhs = const_pi(P450).sqrt() * gamma_rat(Fraction(1, 4), P450) \
        / gamma_rat(Fraction(3, 4), P450)
    assert residual_exponent(om, rhs) <= BAR


def test_period_requires_fundamental():
    with pytest.raises(ValueError):
        chowla_selberg_period(-12, P450)
