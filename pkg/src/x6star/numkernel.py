"""Arbitrary-precision real/complex arithmetic with conservative error tracking.

All archimedean computation in the package goes through :class:`BigReal` /
:class:`BigComplex`.  Values are immutable; every operation is a pure function
of its inputs and a :class:`Precision`.  Error tracking is by exponent
bookkeeping (an upper bound ``2**error_exponent`` on the absolute error), not
interval arithmetic; suite-wide precision-escalation checks back this up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import mpmath
from mpmath import mp

Rational = Fraction

# Sentinel error exponent for values known exactly (dyadic rationals).
EXACT = -(1 << 62)

#: Default precision for acceptance-grade runs: ~135 decimal digits.
ACCEPTANCE_BITS = 450
ACCEPTANCE_GUARD = 50


@dataclass(frozen=True)
class Precision:
    """Working mantissa size plus guard bits for acceptance-grade results."""

    bits: int
    guard_bits: int = 32

    def __post_init__(self) -> None:
        if self.bits < 64:
            raise ValueError("precision below 64 bits is unsupported")
        if self.guard_bits < 0:
            raise ValueError("guard_bits must be non-negative")

    @property
    def work_bits(self) -> int:
        return self.bits + self.guard_bits

    def escalate(self, extra: int = 64) -> "Precision":
        return Precision(self.bits + extra, self.guard_bits)


DEFAULT_PRECISION = Precision(ACCEPTANCE_BITS, ACCEPTANCE_GUARD)


def _mag(x) -> int:
    """Exponent e with |x| < 2**e (0 maps to EXACT)."""
    if x == 0:
        return EXACT
    return int(mp.mag(x))


@dataclass(frozen=True)
class BigReal:
    """A real value at a given precision with an absolute-error bound 2**e."""

    value: mpmath.mpf
    prec: Precision
    error_exponent: int = EXACT

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_rational(r, prec: Precision) -> "BigReal":
        r = Fraction(r)
        with mp.workprec(prec.work_bits):
            v = mp.mpf(r.numerator) / r.denominator
        # Power-of-two denominators are exactly representable (when they fit
        # in the working mantissa, which the table rationals always do).
        if (r.denominator & (r.denominator - 1)) == 0 \
                and r.numerator.bit_length() <= prec.work_bits:
            err = EXACT
        else:
            err = _ulp_exp(v, prec)
        return BigReal(v, prec, err)

    @staticmethod
    def from_int(n: int, prec: Precision) -> "BigReal":
        with mp.workprec(prec.work_bits):
            return BigReal(mp.mpf(n), prec, EXACT)

    # -- arithmetic --------------------------------------------------------

    def _binop(self, other, op, err) -> "BigReal":
        other = _coerce(other, self.prec)
        if other.prec != self.prec:
            raise ValueError("mixed-precision arithmetic is not allowed")
        with mp.workprec(self.prec.work_bits):
            v = op(self.value, other.value)
        return BigReal(v, self.prec, err(self, other, v))

    def __add__(self, other) -> "BigReal":
        return self._binop(other, lambda a, b: a + b, _err_add)

    __radd__ = __add__

    def __sub__(self, other) -> "BigReal":
        return self._binop(other, lambda a, b: a - b, _err_add)

    def __rsub__(self, other) -> "BigReal":
        return _coerce(other, self.prec) - self

    def __mul__(self, other) -> "BigReal":
        return self._binop(other, lambda a, b: a * b, _err_mul)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BigReal":
        return self._binop(other, lambda a, b: a / b, _err_mul)

    def __rtruediv__(self, other) -> "BigReal":
        return _coerce(other, self.prec) / self

    def __neg__(self) -> "BigReal":
        # mpmath rounds unary ops at the ambient context precision, so even
        # sign flips must run under workprec.
        with mp.workprec(self.prec.work_bits):
            v = -self.value
        return BigReal(v, self.prec, self.error_exponent)

    def __abs__(self) -> "BigReal":
        with mp.workprec(self.prec.work_bits):
            v = abs(self.value)
        return BigReal(v, self.prec, self.error_exponent)

    def __pow__(self, k: int) -> "BigReal":
        if not isinstance(k, int):
            return NotImplemented
        out = BigReal.from_int(1, self.prec)
        base = self
        n = abs(k)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out if k >= 0 else BigReal.from_int(1, self.prec) / out

    def sqrt(self) -> "BigReal":
        with mp.workprec(self.prec.work_bits):
            v = mp.sqrt(self.value)
        return BigReal(v, self.prec, _fn_err(self, v))

    def exp(self) -> "BigReal":
        with mp.workprec(self.prec.work_bits):
            v = mp.exp(self.value)
        return BigReal(v, self.prec, _fn_err(self, v))

    def log(self) -> "BigReal":
        if self.value <= 0:
            raise ValueError("log of non-positive BigReal")
        with mp.workprec(self.prec.work_bits):
            v = mp.log(self.value)
        return BigReal(v, self.prec, _fn_err(self, v))

    # -- comparison / export ----------------------------------------------

    def __float__(self) -> float:
        return float(self.value)

    def sign(self) -> int:
        return (self.value > 0) - (self.value < 0)

    def mag(self) -> int:
        return _mag(self.value)

    def __repr__(self) -> str:  # pragma: no cover
        return f"BigReal({mp.nstr(self.value, 20)}, bits={self.prec.bits})"


def _coerce(x, prec: Precision) -> BigReal:
    if isinstance(x, BigReal):
        return x
    if isinstance(x, int):
        return BigReal.from_int(x, prec)
    if isinstance(x, Fraction):
        return BigReal.from_rational(x, prec)
    raise TypeError(f"cannot coerce {type(x)} to BigReal")


def _ulp_exp(v, prec: Precision) -> int:
    m = _mag(v)
    if m == EXACT:
        return -prec.work_bits
    return m - prec.work_bits


def _err_add(a: BigReal, b: BigReal, v) -> int:
    return max(a.error_exponent, b.error_exponent, _ulp_exp(v, a.prec)) + 1


def _err_mul(a: BigReal, b: BigReal, v) -> int:
    cand = [_ulp_exp(v, a.prec)]
    if a.error_exponent != EXACT:
        cand.append(a.error_exponent + max(_mag(b.value), -a.prec.work_bits))
    if b.error_exponent != EXACT:
        cand.append(b.error_exponent + max(_mag(a.value), -a.prec.work_bits))
    return max(cand) + 1


def _fn_err(a: BigReal, v) -> int:
    # Elementary functions here have derivative magnitude O(result/input);
    # one extra bit over the propagated ulp is a safe ceiling at desk scale.
    return max(a.error_exponent, _ulp_exp(v, a.prec)) + 2


@dataclass(frozen=True)
class BigComplex:
    re: BigReal
    im: BigReal

    @staticmethod
    def make(re, im, prec: Precision) -> "BigComplex":
        return BigComplex(_coerce(re, prec), _coerce(im, prec))

    @property
    def prec(self) -> Precision:
        return self.re.prec

    def __add__(self, other: "BigComplex") -> "BigComplex":
        return BigComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "BigComplex") -> "BigComplex":
        return BigComplex(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "BigComplex") -> "BigComplex":
        return BigComplex(self.re * other.re - self.im * other.im,
                          self.re * other.im + self.im * other.re)

    def __truediv__(self, other: "BigComplex") -> "BigComplex":
        d = other.re * other.re + other.im * other.im
        n = self * other.conj()
        return BigComplex(n.re / d, n.im / d)

    def conj(self) -> "BigComplex":
        return BigComplex(self.re, -self.im)

    def abs2(self) -> BigReal:
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


# ---------------------------------------------------------------------------
# kernel operations
# ---------------------------------------------------------------------------


def const_pi(prec: Precision) -> BigReal:
    """pi at the requested precision."""
    with mp.workprec(prec.work_bits):
        v = +mp.pi
    return BigReal(v, prec, _ulp_exp(v, prec) + 1)


def pow_rat(base, exponent, prec: Precision) -> BigReal:
    """``base ** exponent`` for a positive rational base and rational exponent.

    Perfect powers are extracted exactly first (the identity tables are built
    from smooth integers, so radicals frequently simplify); otherwise the value
    is computed through exp/log at working precision.
    """
    base = Fraction(base)
    exponent = Fraction(exponent)
    if base <= 0:
        raise ValueError("pow_rat requires a positive base")
    q = exponent.denominator
    rn, exact_n = gmpy2.iroot(gmpy2.mpz(base.numerator), q)
    rd, exact_d = gmpy2.iroot(gmpy2.mpz(base.denominator), q)
    if exact_n and exact_d:
        r = Fraction(int(rn), int(rd)) ** exponent.numerator
        return BigReal.from_rational(r, prec)
    with mp.workprec(prec.work_bits):
        num = mp.mpf(base.numerator)
        den = mp.mpf(base.denominator)
        v = mp.exp((mp.log(num) - mp.log(den)) *
                   mp.mpf(exponent.numerator) / exponent.denominator)
    return BigReal(v, prec, _ulp_exp(v, prec) + 3)


def sin_pi_rat(r, prec: Precision) -> BigReal:
    """sin(pi*r) with the argument reduced exactly on the rational r mod 2."""
    r = Fraction(r) % 2                      # [0, 2)
    sign = 1
    if r > 1:
        r, sign = r - 1, -1
    if r > Fraction(1, 2):
        r = 1 - r
    # exact special points
    if r == 0:
        return BigReal.from_int(0, prec) if sign == 1 else -BigReal.from_int(0, prec)
    if r == Fraction(1, 2):
        return BigReal.from_int(sign, prec)
    if r == Fraction(1, 6):
        return BigReal.from_rational(Fraction(sign, 2), prec)
    with mp.workprec(prec.work_bits):
        v = sign * mp.sinpi(mp.mpf(r.numerator) / r.denominator)
    return BigReal(v, prec, _ulp_exp(v, prec) + 2)


def agree_to(a: BigReal, b: BigReal, rel_exp: int) -> bool:
    """True iff |a - b| <= 2**rel_exp * max(|a|, |b|)."""
    with mp.workprec(a.prec.work_bits):
        scale = max(abs(a.value), abs(b.value))
        if scale == 0:
            return True
        return abs(a.value - b.value) <= mp.ldexp(scale, rel_exp)


def residual_exponent(a: BigReal, b: BigReal) -> int:
    """mag of the relative difference between a and b (EXACT when equal)."""
    with mp.workprec(a.prec.work_bits):
        scale = max(abs(a.value), abs(b.value))
        if scale == 0:
            return EXACT
        d = abs(a.value - b.value) / scale
        return _mag(d)
