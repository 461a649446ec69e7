"""Gamma at positive rational arguments, Chowla-Selberg periods, and the
closed-form constants used on the right-hand sides of the identity tables.

The core evaluator shifts the argument until Stirling's series applies with a
rigorous tail bound; Bernoulli numbers are taken exactly.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp
from sympy import bernoulli as _sym_bernoulli

from .arith import Discriminant, class_number, kronecker, unit_count
from .numkernel import BigReal, Precision, _ulp_exp, pow_rat


@functools.lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    return Fraction(*_sym_bernoulli(n).as_numer_denom())


def _lgamma_mpf(r: Fraction, work_bits: int):
    """ln Gamma(r) as an mpf at work_bits precision, r > 0 rational.

    Shift r upward until the Stirling tail (first omitted term) drops below
    2**-(work_bits + 8), then subtract the logs of the shifted-out factors.
    """
    # Stirling term ~ exp(-2 pi z) at its minimum; z >= this makes the
    # achievable tail small enough.
    zmin = int(work_bits * math.log(2) / (2 * math.pi)) + 4
    m = max(0, zmin - math.floor(r))
    with mp.workprec(work_bits + 24):
        z = mp.mpf(r.numerator) / r.denominator + m
        lz = mp.log(z)
        total = (z - mp.mpf(1) / 2) * lz - z + mp.log(2 * mp.pi) / 2
        zpow = z  # z^(2n-1)
        z2 = z * z
        tol = mp.ldexp(1, -(work_bits + 8))
        n = 1
        while True:
            b = _bernoulli(2 * n)
            term = (mp.mpf(b.numerator) / b.denominator) / ((2 * n) * (2 * n - 1) * zpow)
            total += term
            if abs(term) < tol:
                break
            zpow *= z2
            n += 1
            if n > 4 * zmin:  # unreachable for z >= zmin; hard stop
                raise ArithmeticError("Stirling series failed to converge")
        # Gamma(r) = Gamma(r + m) / (r (r+1) ... (r+m-1))
        for j in range(m):
            total -= mp.log(mp.mpf(r.numerator + j * r.denominator) / r.denominator)
        return total


def lgamma_rat(r, prec: Precision) -> BigReal:
    """ln Gamma(r) for rational r > 0."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("lgamma_rat requires r > 0")
    with mp.workprec(prec.work_bits):
        v = +_lgamma_mpf(r, prec.work_bits)
    return BigReal(v, prec, _ulp_exp(v, prec) + 4)


def gamma_rat(r, prec: Precision) -> BigReal:
    """Gamma(r) for rational r > 0 (poles and the negative axis are rejected)."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("gamma_rat requires r > 0")
    with mp.workprec(prec.work_bits):
        v = mp.exp(_lgamma_mpf(r, prec.work_bits))
    return BigReal(v, prec, _ulp_exp(v, prec) + 4)


def chowla_selberg_period(d, prec: Precision) -> BigReal:
    """The CM period: sqrt(pi) * prod Gamma(a/|d|)^(w chi(a) / 4h).

    The character-weighted exponents are kept as one exact rational w/(4h)
    applied to the grouped Gamma product, evaluated through logs.
    """
    d = d if isinstance(d, Discriminant) else Discriminant(d)
    if not d.is_fundamental:
        raise ValueError("chowla_selberg_period needs a fundamental discriminant")
    n = abs(d.d)
    w = unit_count(d)
    h = class_number(d)
    expo = Fraction(w, 4 * h)
    with mp.workprec(prec.work_bits):
        s = mp.mpf(0)
        for a in range(1, n):
            chi = kronecker(d, a)
            if chi:
                s += chi * _lgamma_mpf(Fraction(a, n), prec.work_bits)
        v = mp.exp(mp.log(mp.pi) / 2 +
                   s * mp.mpf(expo.numerator) / expo.denominator)
    return BigReal(v, prec, _ulp_exp(v, prec) + 6)


def uniformizer_constant(prec: Precision) -> BigReal:
    """The six-Gamma product (sqrt2 - sqrt3) * G(3/4)G(19/24)G(23/24) /
    (G(5/4)G(13/24)G(17/24)); equals the negative of the first table constant.
    """
    with mp.workprec(prec.work_bits):
        num = (_lgamma_mpf(Fraction(3, 4), prec.work_bits)
               + _lgamma_mpf(Fraction(19, 24), prec.work_bits)
               + _lgamma_mpf(Fraction(23, 24), prec.work_bits))
        den = (_lgamma_mpf(Fraction(5, 4), prec.work_bits)
               + _lgamma_mpf(Fraction(13, 24), prec.work_bits)
               + _lgamma_mpf(Fraction(17, 24), prec.work_bits))
        v = (mp.sqrt(2) - mp.sqrt(3)) * mp.exp(num - den)
    return BigReal(v, prec, _ulp_exp(v, prec) + 6)


@dataclass(frozen=True)
class GammaConstantSet:
    """The archimedean right-hand-side constants, all at one precision."""

    C1: BigReal
    C2: BigReal
    C_unif: BigReal
    Omega_m3: BigReal
    Omega_m4: BigReal
    prec: Precision


@functools.lru_cache(maxsize=8)
def constant_set(prec: Precision) -> GammaConstantSet:
    g14 = gamma_rat(Fraction(1, 4), prec)
    g34 = gamma_rat(Fraction(3, 4), prec)
    g13 = gamma_rat(Fraction(1, 3), prec)
    g23 = gamma_rat(Fraction(2, 3), prec)
    ratio1 = g34 / g14
    ratio2 = g23 / g13
    c1 = 4 * pow_rat(Fraction(1, 12), Fraction(1, 4), prec) * ratio1 * ratio1
    c2 = 3 * pow_rat(Fraction(1, 2), Fraction(1, 6), prec) * ratio2 * ratio2 * ratio2
    return GammaConstantSet(
        C1=c1,
        C2=c2,
        C_unif=uniformizer_constant(prec),
        Omega_m3=chowla_selberg_period(-3, prec),
        Omega_m4=chowla_selberg_period(-4, prec),
        prec=prec,
    )
