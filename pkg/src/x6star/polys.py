"""Exact polynomial utilities: sparse bivariate rational polynomials, values
in quadratic fields, a Bareiss/Sylvester resultant (used as an independent
cross-check of the sympy resultant), and rational root extraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

#: sparse bivariate polynomial: {(i, j): coeff} meaning sum c * x**i * z**j
BiPoly = dict[tuple[int, int], Fraction]


def bipoly_degree(p: BiPoly, axis: int) -> int:
    return max((k[axis] for k, c in p.items() if c), default=-1)


def bipoly_from_sympy(expr, x, z) -> BiPoly:
    poly = sympy.Poly(sympy.expand(expr), x, z, domain="QQ")
    out: BiPoly = {}
    for (i, j), c in poly.terms():
        out[(i, j)] = Fraction(*sympy.Rational(c).as_numer_denom())
    return out


def bipoly_to_sympy(p: BiPoly, x, z):
    return sympy.Add(*[sympy.Rational(c.numerator, c.denominator)
                       * x**i * z**j for (i, j), c in p.items()])


@dataclass(frozen=True)
class QuadValue:
    """a + b*sqrt(d) with rational a, b and a fixed non-square integer d."""

    d: int
    a: Fraction
    b: Fraction

    @staticmethod
    def of(d: int, a, b=0) -> "QuadValue":
        return QuadValue(d, Fraction(a), Fraction(b))

    def _check(self, o: "QuadValue") -> None:
        if self.d != o.d:
            raise ValueError("mixed quadratic fields")

    def __add__(self, o):
        if isinstance(o, (int, Fraction)):
            return QuadValue(self.d, self.a + o, self.b)
        self._check(o)
        return QuadValue(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        return self + (-o if isinstance(o, QuadValue) else -Fraction(o))

    def __neg__(self):
        return QuadValue(self.d, -self.a, -self.b)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return QuadValue(self.d, self.a * o, self.b * o)
        self._check(o)
        return QuadValue(self.d,
                         self.a * o.a + self.d * self.b * o.b,
                         self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conj(self) -> "QuadValue":
        return QuadValue(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return QuadValue(self.d, self.a / o, self.b / o)
        self._check(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError
        return (self * o.conj()) / n

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0


def eval_bipoly(p: BiPoly, x: Fraction, z):
    """Evaluate at rational x and rational or QuadValue z (exact Horner in z)."""
    x = Fraction(x)
    dz = bipoly_degree(p, 1)
    # collect coefficients of z^j as rationals
    zc = [Fraction(0)] * (dz + 1)
    for (i, j), c in p.items():
        zc[j] += c * x**i
    acc = zc[dz] if not isinstance(z, QuadValue) else QuadValue.of(z.d, zc[dz])
    for j in range(dz - 1, -1, -1):
        acc = acc * z + zc[j]
    return acc


# ---------------------------------------------------------------------------
# resultants: Bareiss determinant of the Sylvester matrix (exact, independent
# of sympy's subresultant machinery; used to cross-check it at sample points)
# ---------------------------------------------------------------------------


def bareiss_det(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(v) for v in row] for row in rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def sylvester_matrix(f: list[Fraction], g: list[Fraction]) -> list[list[Fraction]]:
    """Sylvester matrix of two univariate polynomials given by ascending
    coefficient lists (f[0] is the constant term)."""
    df = len(f) - 1
    dg = len(g) - 1
    if df < 0 or dg < 0 or f[df] == 0 or g[dg] == 0:
        raise ValueError("leading coefficients must be nonzero")
    n = df + dg
    rows = []
    fdesc = list(reversed(f))
    gdesc = list(reversed(g))
    for r in range(dg):
        rows.append([Fraction(0)] * r + fdesc + [Fraction(0)] * (n - df - 1 - r))
    for r in range(df):
        rows.append([Fraction(0)] * r + gdesc + [Fraction(0)] * (n - dg - 1 - r))
    return rows


def resultant_univariate(f: list[Fraction], g: list[Fraction]) -> Fraction:
    """Resultant of two univariate rational polynomials (ascending coeffs)."""
    while f and f[-1] == 0:
        f = f[:-1]
    while g and g[-1] == 0:
        g = g[:-1]
    if not f or not g:
        return Fraction(0)
    if len(f) == 1:
        return f[0] ** (len(g) - 1)
    if len(g) == 1:
        return g[0] ** (len(f) - 1)
    return bareiss_det(sylvester_matrix(f, g))


def rational_roots(coeffs: list[Fraction], var=None) -> list[Fraction]:
    """All rational roots of the univariate polynomial with ascending
    rational coefficients, each listed once."""
    z = var if var is not None else sympy.Symbol("z")
    expr = sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * z**i
                       for i, c in enumerate(coeffs)])
    poly = sympy.Poly(expr, z, domain="QQ")
    roots = poly.ground_roots()
    return sorted(Fraction(*sympy.Rational(r).as_numer_denom()) for r in roots)
