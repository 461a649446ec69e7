"""Pochhammer-quotient series engine.

Covers the four coefficient families of the identity tables, generic 2F1/3F2
evaluation with a certified geometric tail bound, the Clausen-identity
residual, and the hypergeometric uniformization map t -> tau together with the
weight-8 form built from its two Frobenius solutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .gammafn import constant_set
from .numkernel import BigComplex, BigReal, Precision, _ulp_exp, pow_rat


@dataclass(frozen=True)
class PochFamily:
    """Coefficients term(n) = prod (a_i)_n / prod (b_j)_n / n!."""

    numerator_params: tuple[Fraction, ...]
    denominator_params: tuple[Fraction, ...]

    def ratio(self, n: int) -> Fraction:
        """term(n+1) / term(n), exactly."""
        r = Fraction(1)
        for a in self.numerator_params:
            r *= a + n
        for b in self.denominator_params:
            r /= b + n
        return r / (n + 1)

    def term(self, n: int) -> Fraction:
        t = Fraction(1)
        for k in range(n):
            t *= self.ratio(k)
        return t

    def terms(self):
        """Generator of (n, term(n)) with exact rational values."""
        t = Fraction(1)
        n = 0
        while True:
            yield n, t
            t *= self.ratio(n)
            n += 1


def _fam(nums, dens) -> PochFamily:
    return PochFamily(tuple(Fraction(*x) for x in nums),
                      tuple(Fraction(*x) for x in dens))


FAMILY_A = _fam([(1, 12), (1, 4), (5, 12)], [(1, 2), (3, 4)])
FAMILY_A_PRIME = _fam([(7, 12), (3, 4), (11, 12)], [(3, 2), (5, 4)])
FAMILY_B = _fam([(1, 12), (1, 3), (7, 12)], [(2, 3), (5, 6)])
FAMILY_B_PRIME = _fam([(5, 12), (2, 3), (11, 12)], [(4, 3), (7, 6)])


@dataclass(frozen=True)
class SeriesSpec:
    """sum_n (R1*n + R1*shift + R2) * term(n) * argument**n."""

    family: PochFamily
    R1: Fraction
    R2: Fraction
    shift: Fraction
    argument: Fraction


class DivergenceError(ValueError):
    pass


def sum_linear_ex(spec: SeriesSpec, prec: Precision) -> tuple[BigReal, int]:
    """Evaluate the weighted series; returns (value, terms_used).

    The truncation point is certified: past it the summand ratio is bounded by
    q = (1+|x|)/2 < 1, so the tail is below |last summand| * q / (1 - q).
    """
    x = Fraction(spec.argument)
    if abs(x) >= 1:
        raise DivergenceError(f"|argument| = {abs(x)} >= 1")
    wb = prec.work_bits
    q_num = (1 + abs(x)) / 2
    with mp.workprec(wb + 16):
        xf = mp.mpf(x.numerator) / x.denominator
        q = (1 + abs(xf)) / 2
        total = mp.mpf(0)
        coeff = mp.mpf(1)          # term(n) * x^n
        scale = mp.mpf(0)          # largest |summand| seen; sets the abs target
        n = 0
        while True:
            w = spec.R1 * n + spec.R1 * spec.shift + spec.R2
            summand = coeff * mp.mpf(w.numerator) / w.denominator
            total += summand
            scale = max(scale, abs(summand))
            tol = mp.ldexp(max(scale, abs(total)), -(wb + 8))
            # certified stop: summand small AND the next weighted ratio <= q
            if n >= 1 and scale > 0 and abs(summand) < tol and w != 0:
                r = abs(spec.family.ratio(n) * x)
                wnext = spec.R1 * (n + 1) + spec.R1 * spec.shift + spec.R2
                if r * abs(Fraction(wnext, w)) <= q_num:
                    tail = abs(summand) * q / (1 - q)
                    if tail < tol:
                        break
            rat = spec.family.ratio(n) * x
            coeff *= mp.mpf(rat.numerator) / rat.denominator
            n += 1
            if n > 200000:
                raise ArithmeticError("series did not reach its tail bound")
        value = +total
    return BigReal(value, prec, _ulp_exp(value, prec) + 6), n + 1


def sum_linear(spec: SeriesSpec, prec: Precision) -> BigReal:
    return sum_linear_ex(spec, prec)[0]


def hyper(nums, dens, x, prec: Precision) -> BigReal:
    """Generalized hypergeometric pFq with certified tail, |x| < 1."""
    fam = PochFamily(tuple(Fraction(a) for a in nums),
                     tuple(Fraction(b) for b in dens))
    for b in fam.denominator_params:
        if b <= 0 and b.denominator == 1:
            raise ValueError(f"lower parameter {b} is a non-positive integer")
    spec = SeriesSpec(fam, Fraction(0), Fraction(1), Fraction(0), Fraction(x))
    return sum_linear(spec, prec)


def hyper2f1(a, b, c, x, prec: Precision) -> BigReal:
    return hyper([a, b], [c], x, prec)


def clausen_residual(alpha, beta, x, prec: Precision) -> BigReal:
    """| 2F1(a,b;a+b+1/2;x)^2 - 3F2(2a,a+b,2b;2a+2b,a+b+1/2;x) |."""
    alpha, beta, x = Fraction(alpha), Fraction(beta), Fraction(x)
    f = hyper2f1(alpha, beta, alpha + beta + Fraction(1, 2), x, prec)
    g = hyper([2 * alpha, alpha + beta, 2 * beta],
              [2 * (alpha + beta), alpha + beta + Fraction(1, 2)], x, prec)
    return abs(f * f - g)


# ---------------------------------------------------------------------------
# the uniformization map and the weight-8 form
# ---------------------------------------------------------------------------

_F1_PARAMS = (Fraction(1, 24), Fraction(5, 24), Fraction(3, 4))
_F2_PARAMS = (Fraction(7, 24), Fraction(11, 24), Fraction(5, 4))


def frobenius_solutions(t, prec: Precision) -> tuple[BigReal, BigReal]:
    """(F1(t), F2(t)) for 0 <= t < 1; F2 carries the real branch of t^(1/4)."""
    t = Fraction(t)
    if not 0 <= t < 1:
        raise ValueError("frobenius_solutions needs 0 <= t < 1")
    f1 = hyper2f1(*_F1_PARAMS, t, prec)
    if t == 0:
        return f1, BigReal.from_int(0, prec)
    f2 = pow_rat(t, Fraction(1, 4), prec) * hyper2f1(*_F2_PARAMS, t, prec)
    return f1, f2


def tau_of_t(t, prec: Precision) -> BigComplex:
    """The upper-half-plane point above t in (0,1): tau = i (1+w)/(1-w) with
    w = C * F2/F1; pure imaginary on the open segment."""
    t = Fraction(t)
    if not 0 < t < 1:
        raise ValueError("tau_of_t needs 0 < t < 1")
    c = constant_set(prec).C_unif
    f1, f2 = frobenius_solutions(t, prec)
    w = c * f2 / f1
    im = (1 + w) / (1 - w)
    return BigComplex(BigReal.from_int(0, prec), im)


def t_derivative(t, prec: Precision) -> BigComplex:
    """dt/dtau at the point above t in (0,1): pure imaginary,
    2 t^(3/4) (1-t)^(1/2) (F1 - C F2)^2 / (C i)."""
    t = Fraction(t)
    if not 0 < t < 1:
        raise ValueError("t_derivative needs 0 < t < 1")
    c = constant_set(prec).C_unif
    f1, f2 = frobenius_solutions(t, prec)
    g = f1 - c * f2
    mag = 2 * pow_rat(t, Fraction(3, 4), prec) \
        * pow_rat(1 - t, Fraction(1, 2), prec) * g * g / c
    # division by i rotates the real magnitude onto the negative imaginary axis
    return BigComplex(BigReal.from_int(0, prec), -mag)


def eval_F(t, prec: Precision) -> BigReal:
    """The weight-8 form (F1 - C F2)^8 for 0 <= t < 1 (real branch)."""
    t = Fraction(t)
    c = constant_set(prec).C_unif
    f1, f2 = frobenius_solutions(t, prec)
    return (f1 - c * f2) ** 8


def eval_F_complex(t, prec: Precision) -> BigComplex:
    """The weight-8 form for -1 < t < 1.

    For t < 0 the quarter-power branch is t^(1/4) = e^(-i pi/4) |t|^(1/4),
    continuing the positive real branch through the fundamental domain.
    """
    t = Fraction(t)
    if t >= 0:
        return BigComplex(eval_F(t, prec), BigReal.from_int(0, prec))
    c = constant_set(prec).C_unif
    f1 = hyper2f1(*_F1_PARAMS, t, prec)
    r = pow_rat(-t, Fraction(1, 4), prec) * hyper2f1(*_F2_PARAMS, t, prec)
    half = pow_rat(Fraction(1, 2), Fraction(1, 2), prec)
    # t^(1/4) = |t|^(1/4) (sqrt2/2)(1 - i)
    f2 = BigComplex(r * half, -(r * half))
    base = BigComplex(f1 - c * f2.re, -(c * f2.im))
    out = BigComplex(BigReal.from_int(1, prec), BigReal.from_int(0, prec))
    for _ in range(8):
        out = out * base
    return out
