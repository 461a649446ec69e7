"""Fixed-precision Z_p arithmetic, Morita's p-adic Gamma function, and the
p-adic summation of the identity-table series.

Gamma_p at non-integral points is evaluated through its Mahler expansion
sum_k a_k * binom(x, k); the a_k are finite differences of the integer values
given directly by the defining product, so no external formula enters the
computation.  Coefficient valuations are monitored and the expansion length is
grown until the certified tail target is met.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction


def _vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicInt:
    """p^valuation * unit with the unit known modulo p^K (K relative digits).

    Zero is represented with ``valuation=None``.
    """

    p: int
    K: int
    unit: int
    valuation: int | None

    # -- construction ------------------------------------------------------

    @staticmethod
    def zero(p: int, K: int) -> "PadicInt":
        return PadicInt(p, K, 0, None)

    @staticmethod
    def from_int(n: int, p: int, K: int) -> "PadicInt":
        if n == 0:
            return PadicInt.zero(p, K)
        v = _vp(n, p)
        return PadicInt(p, K, (n // p**v) % p**K, v)

    @staticmethod
    def from_rational(r, p: int, K: int) -> "PadicInt":
        r = Fraction(r)
        if r == 0:
            return PadicInt.zero(p, K)
        v = _vp(r.numerator, p) - (_vp(r.denominator, p) if r.denominator % p == 0 else 0)
        num = r.numerator // p**max(v, 0) if v > 0 else r.numerator
        den = r.denominator // p**max(-v, 0) if v < 0 else r.denominator
        if den % p == 0 or num % p == 0:
            raise ArithmeticError("unit extraction failed")
        m = p**K
        return PadicInt(p, K, num * pow(den, -1, m) % m, v)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.valuation is None

    def lift(self) -> int:
        """The canonical representative p^v * unit (0 for zero)."""
        return 0 if self.is_zero() else self.p**self.valuation * self.unit

    def abs_prec(self) -> int:
        """Known modulo p^abs_prec."""
        return 10**9 if self.is_zero() else self.valuation + self.K

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "PadicInt") -> None:
        if self.p != other.p:
            raise ValueError("mixed primes")

    def __mul__(self, other) -> "PadicInt":
        if isinstance(other, (int, Fraction)):
            other = PadicInt.from_rational(Fraction(other), self.p, self.K)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return PadicInt.zero(self.p, min(self.K, other.K))
        K = min(self.K, other.K)
        return PadicInt(self.p, K, self.unit * other.unit % self.p**K,
                        self.valuation + other.valuation)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PadicInt":
        if isinstance(other, (int, Fraction)):
            other = PadicInt.from_rational(Fraction(other), self.p, self.K)
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError
        if self.is_zero():
            return PadicInt.zero(self.p, min(self.K, other.K))
        K = min(self.K, other.K)
        m = self.p**K
        return PadicInt(self.p, K, self.unit * pow(other.unit, -1, m) % m,
                        self.valuation - other.valuation)

    def __add__(self, other) -> "PadicInt":
        if isinstance(other, (int, Fraction)):
            other = PadicInt.from_rational(Fraction(other), self.p, self.K)
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        ap = min(self.abs_prec(), other.abs_prec())
        v0 = min(self.valuation, other.valuation)
        if ap <= v0:
            return PadicInt.zero(self.p, 0)
        m = self.p**(ap - v0)
        s = (self.unit * self.p**(self.valuation - v0)
             + other.unit * self.p**(other.valuation - v0)) % m
        if s == 0:
            # indistinguishable from zero at this precision
            return PadicInt.zero(self.p, ap - v0)
        dv = _vp(s, self.p)
        return PadicInt(self.p, ap - v0 - dv, s // self.p**dv, v0 + dv)

    __radd__ = __add__

    def __neg__(self) -> "PadicInt":
        if self.is_zero():
            return self
        return PadicInt(self.p, self.K, -self.unit % self.p**self.K, self.valuation)

    def __sub__(self, other) -> "PadicInt":
        if isinstance(other, (int, Fraction)):
            other = PadicInt.from_rational(Fraction(other), self.p, self.K)
        return self + (-other)

    def __pow__(self, e: int) -> "PadicInt":
        if e < 0:
            return PadicInt.from_int(1, self.p, self.K) / self**(-e)
        out = PadicInt.from_int(1, self.p, self.K)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def congruent(self, other: "PadicInt", digits: int) -> bool:
        """True iff self == other (mod p^digits)."""
        d = self - other
        if d.is_zero():
            return True
        return d.valuation >= digits


# ---------------------------------------------------------------------------
# Morita Gamma
# ---------------------------------------------------------------------------


def gamma_p_int(p: int, n: int, K: int) -> PadicInt:
    """Gamma_p(n) = (-1)^n * prod_{0<j<n, p∤j} j, for 0 <= n <= 10**6."""
    if not 0 <= n <= 10**6:
        raise ValueError("n out of direct-product range")
    m = p**K
    acc = 1
    for j in range(1, n):
        if j % p:
            acc = acc * j % m
    if n % 2:
        acc = -acc % m
    return PadicInt(p, K, acc, 0)


class MahlerTable:
    """Mahler coefficients of Gamma_p, shared read-only per (p, target digits)."""

    def __init__(self, p: int, target: int, guard: int = 6):
        self.p = p
        self.target = target + guard
        n = self._length_for(self.target)
        while True:
            ok = self._build(n)
            if ok:
                break
            n *= 2
            if n > 10**6:
                raise ArithmeticError("Mahler tail bound not reached")

    def _length_for(self, t: int) -> int:
        # empirical growth v_p(a_k) ~ k (p-1)/p^2; 30% headroom
        return int(t * self.p * self.p / (self.p - 1) * 1.3) + 4 * self.p

    def _build(self, n: int) -> bool:
        p, t = self.p, self.target
        self.fact_val = _vp_factorial(n, p)
        self.work = t + self.fact_val + 4
        mod = p**self.work
        f = [1, -1 % mod]
        for j in range(1, n):
            f.append(f[-1] * (-j if j % p else -1) % mod)
        # forward differences in place: after pass k, f[0] == a_k
        coeffs = []
        for k in range(n):
            coeffs.append(f[0])
            for j in range(len(f) - 1):
                f[j] = (f[j + 1] - f[j]) % mod
            f.pop()
        # verify the tail: a run of 2p trailing coefficients with v_p >= target
        run = 0
        for c in coeffs[::-1]:
            if c == 0 or _vp(c, p) >= t:
                run += 1
                if run >= 2 * p:
                    self.coeffs = coeffs
                    return True
            else:
                return False
        return False

    def evaluate(self, x: Fraction) -> PadicInt:
        """Gamma_p(x) for x in Z_p, to the table's target precision."""
        p = self.p
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ValueError("argument is not a p-adic integer")
        mod = p**self.work
        X = x.numerator * pow(x.denominator, -1, mod) % mod
        total = 0
        b = 1                    # binom(X, k) scaled: numerator/(k!) handled below
        num = 1                  # X (X-1) ... (X-k+1) mod p^work
        kfact_v = 0
        kfact_u_inv = 1
        for k, a in enumerate(self.coeffs):
            if k > 0:
                num = num * ((X - (k - 1)) % mod) % mod
                kv = _vp(k, p)
                kfact_v += kv
                kfact_u_inv = kfact_u_inv * pow(k // p**kv, -1, mod) % mod
            # binom(x,k) = num / k!; the division by p^kfact_v is exact
            # because binom(x,k) lies in Z_p for x in Z_p
            q = num * kfact_u_inv % mod
            if kfact_v:
                if q % p**kfact_v:
                    raise ArithmeticError("non-integral Mahler term")
                q //= p**kfact_v
            total = (total + a * q) % p**(self.work - self.fact_val)
        m = p**self.target
        return PadicInt.from_int(total % m, p, self.target) if total % m else \
            PadicInt.zero(p, self.target)


@functools.lru_cache(maxsize=8)
def _mahler(p: int, target: int) -> MahlerTable:
    return MahlerTable(p, target)


def gamma_p(p: int, x, K: int) -> PadicInt:
    """Morita Gamma_p at a rational x in Z_p, to K digits."""
    x = Fraction(x)
    if x.denominator == 1 and 0 <= x.numerator <= 10**4:
        g = gamma_p_int(p, int(x), K)
        return g
    tab = _mahler(p, K)
    out = tab.evaluate(x)
    # reduce to the requested precision
    if out.is_zero():
        return PadicInt.zero(p, K)
    return PadicInt(p, K, out.unit % p**K, out.valuation)


def c_p_constant(p: int, K: int) -> PadicInt:
    """3^6 Gamma_p(2/3)^9 / (2 Gamma_p(1/3)^9)."""
    g23 = gamma_p(p, Fraction(2, 3), K)
    g13 = gamma_p(p, Fraction(1, 3), K)
    return (g23 ** 9) * (3 ** 6) / (g13 ** 9) / 2


def _vp_factorial(n: int, p: int) -> int:
    v, q = 0, p
    while q <= n:
        v += n // q
        q *= p
    return v


# ---------------------------------------------------------------------------
# p-adic series summation
# ---------------------------------------------------------------------------


def padic_sum_linear(spec, p: int, K: int) -> PadicInt:
    """p-adic limit of the weighted series; see padic_sum_linear_ex."""
    return padic_sum_linear_ex(spec, p, K)[0]


def padic_sum_linear_ex(spec, p: int, K: int) -> tuple[PadicInt, int]:
    """p-adic limit of sum_n (R1 n + R1 shift + R2) term(n) x^n to K digits,
    together with the number of terms consumed.

    Terms are generated from the same exact rational recurrence as the
    archimedean evaluator.  Stops once 16 consecutive terms have valuation
    >= K + 8 and the a-priori valuation bound has cleared the target.
    """
    x = Fraction(spec.argument)
    vx = _vp(x.numerator, p)
    if p in (2, 3) or x.denominator % p == 0:
        raise ValueError("series does not converge p-adically for this input")
    if vx < 1:
        raise ValueError("argument valuation too small for convergence")
    work = K + 16
    nden = len(spec.family.denominator_params) + 1   # pochhammers + n!
    total = PadicInt.zero(p, work)
    coeff = Fraction(1)          # term(n) * x^n, exact
    run = 0
    n = 0

    def floor_bound(m: int) -> int:
        # v_p(term_m) >= m*vx - (denominator pochhammer + factorial losses);
        # each of the nden products over m consecutive AP terms holds at most
        # m/(p-1) + log_p(p m) + 1 factors of p.
        log_term = int(math.log(p * (m + 1), p)) + 1
        return m * vx - nden * (m // (p - 1) + log_term)

    while True:
        w = spec.R1 * n + spec.R1 * spec.shift + spec.R2
        t = w * coeff
        if t != 0:
            tv = _vp(t.numerator, p) - (_vp(t.denominator, p) if t.denominator % p == 0 else 0)
            if tv < floor_bound(n):
                raise ArithmeticError("term valuation fell below the a-priori floor")
            total = total + PadicInt.from_rational(t, p, work)
        else:
            tv = 10**9
        run = run + 1 if tv >= K + 8 else 0
        if run >= 16 and floor_bound(n) > K + 8:
            break
        coeff *= spec.family.ratio(n) * x
        n += 1
        if n > 100000:
            raise ArithmeticError("p-adic series did not stabilize")
    if total.is_zero():
        return PadicInt.zero(p, K), n + 1
    return PadicInt(p, K, total.unit % p**K, total.valuation), n + 1


def sixth_power_check(L: PadicInt, target: PadicInt, guard: int) -> tuple[bool, dict]:
    """Check L^6 == target (mod p^(K-guard)); sidesteps sixth-root selection."""
    if L.p != target.p:
        raise ValueError("precision/prime mismatch")
    if L.K != target.K:
        raise ValueError("operands must share a precision")
    digits = L.K - guard
    L6 = L ** 6
    ok = L6.congruent(target, digits)
    diff = L6 - target
    agreement = 10**9 if diff.is_zero() else diff.valuation
    return ok, {
        "digits_checked": digits,
        "agreement_valuation": agreement,
        "lhs_valuation": None if L6.is_zero() else L6.valuation,
        "rhs_valuation": None if target.is_zero() else target.valuation,
    }


def hensel_sixth_root(c: PadicInt, seed: int) -> PadicInt:
    """Diagnostic-only: lift seed to z with z^6 = c when the unit part allows.

    Roots of z^6 = c are not unique (gcd(6, p-1) > 1), so nothing in the
    verification chain depends on this.
    """
    p, K = c.p, c.K
    if c.is_zero() or c.valuation % 6:
        raise ValueError("no sixth root at this precision")
    m = p**K
    z = seed % p
    if pow(z, 6, p) != c.unit % p:
        raise ValueError("seed is not a sixth root mod p")
    pk = p
    while pk < m:
        pk = min(pk * pk, m)
        # Newton step for z^6 - u = 0
        z = (z - (pow(z, 6, pk) - c.unit) * pow(6 * pow(z, 5, pk), -1, pk)) % pk
    return PadicInt(p, K, z % m, c.valuation // 6)
