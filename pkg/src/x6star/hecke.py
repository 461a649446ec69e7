"""Exact derivation chain for the level-5 certificate polynomial.

Starting from the bundled T5 matrices on the weight-k bases, the chain builds
the power sums of the normalized slash-orbit ratios, converts them to
elementary symmetric functions by Newton's identities, forms the degree-6
orbit polynomial Q(x, y), and eliminates y against the differentiated relation
Q_x + y z Q_y to recover the certificate polynomial P_5(x, z).
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .polys import BiPoly, bipoly_from_sympy, bipoly_to_sympy, resultant_univariate
from .quaternion import dim_Sk
from .tables import load_certificate, load_hecke_t5

t, x, y, z = sympy.symbols("t x y z")

#: the hauptmodul with a pole at the order-4 point, u = -540/t; inverse powers
#: of u are polynomials in t
_U_INV = -t / 540


def eigen_polynomial(ell: int):
    """T5 acts on the ell-th power of the weight-8 form by multiplication with
    this polynomial in t (read off the last row of the weight-8*ell matrix)."""
    table = load_hecke_t5()
    k = 8 * ell
    if k not in table:
        raise KeyError(f"no T5 block for weight {k}")
    m = table[k]
    d = len(m)
    if d != dim_Sk(k):
        raise ValueError(f"T5 block k={k} has size {d}, expected {dim_Sk(k)}")
    expr = sympy.Integer(0)
    for j, entry in enumerate(m[d - 1]):
        power = (d - 1) - j          # coefficient multiplies u**(j - (d-1))
        if power < 0:
            raise ValueError("positive powers of u must not occur")
        expr += sympy.Rational(entry.numerator, entry.denominator) * _U_INV**power
    return sympy.expand(expr)


def power_sum_polys() -> list:
    """p_ell(t) = 5**(1-4*ell) * eigen_polynomial(ell), ell = 1..6: the power
    sums of the six normalized slash-orbit ratios."""
    out = []
    for ell in range(1, 7):
        out.append(sympy.expand(sympy.Rational(1, 5**(4 * ell - 1))
                                * eigen_polynomial(ell)))
    return out


def newton_elementary(power_sums: list) -> list:
    """Elementary symmetric functions e_0..e_n from power sums p_1..p_n via
    k*e_k = sum_{i=1}^{k} (-1)**(i-1) e_{k-i} p_i."""
    n = len(power_sums)
    e = [sympy.Integer(1)]
    for k in range(1, n + 1):
        acc = sympy.Integer(0)
        for i in range(1, k + 1):
            acc += (-1)**(i - 1) * e[k - i] * power_sums[i - 1]
        e.append(sympy.expand(acc / k))
    return e


def orbit_polynomial():
    """Q(x, y) = prod_j (1 - r_j y) = sum_k (-1)**k e_k y**k, with the
    symmetric functions taken in x."""
    e = newton_elementary(power_sum_polys())
    expr = sympy.Integer(0)
    for k, ek in enumerate(e):
        expr += (-1)**k * ek.subs(t, x) * y**k
    return sympy.expand(expr)


def eliminate(Q=None):
    """Resultant_y of (Q, Q_x + y z Q_y), returned as an integer-primitive
    sparse polynomial in (x, z) with positive constant term."""
    if Q is None:
        Q = orbit_polynomial()
    G = sympy.expand(sympy.diff(Q, x) + y * z * sympy.diff(Q, y))
    res = sympy.resultant(sympy.Poly(Q, y), sympy.Poly(G, y))
    poly = sympy.Poly(sympy.expand(res), x, z, domain="QQ")
    prim = _primitive_normalized(poly)
    return prim


def _primitive_normalized(poly) -> BiPoly:
    coeffs = {k: Fraction(*sympy.Rational(c).as_numer_denom())
              for k, c in poly.terms()}
    if not coeffs:
        return {}
    import math
    num_gcd = 0
    den_lcm = 1
    for c in coeffs.values():
        num_gcd = math.gcd(num_gcd, c.numerator)
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    scale = Fraction(den_lcm, num_gcd)
    out = {k: c * scale for k, c in coeffs.items()}
    # sign: make the lexicographically smallest monomial positive
    anchor = min(out)
    if out[anchor] < 0:
        out = {k: -c for k, c in out.items()}
    return out


def resultant_spot_check(Q, G, value: BiPoly, samples) -> bool:
    """Independent Bareiss/Sylvester check: at each rational sample point
    (x0, z0) the univariate resultant must match value(x0, z0) up to the
    constant removed by primitivization (checked as exact proportionality)."""
    from .polys import eval_bipoly
    ratios = []
    for x0, z0 in samples:
        qc = sympy.Poly(Q.subs(x, sympy.Rational(x0.numerator, x0.denominator)),
                        y, domain="QQ")
        gc = sympy.Poly(G.subs({x: sympy.Rational(x0.numerator, x0.denominator),
                                z: sympy.Rational(z0.numerator, z0.denominator)}),
                        y, domain="QQ")
        f = [Fraction(*sympy.Rational(c).as_numer_denom())
             for c in reversed(qc.all_coeffs())]
        g = [Fraction(*sympy.Rational(c).as_numer_denom())
             for c in reversed(gc.all_coeffs())]
        r = resultant_univariate(f, g)
        v = eval_bipoly(value, x0, z0)
        if v == 0 or r == 0:
            if (v == 0) != (r == 0):
                return False
            continue
        ratios.append(r / v)
    return len(set(ratios)) <= 1


def reconstruction_report() -> dict:
    """Run the whole chain and compare against the bundled level-5 certificate.

    Returns a dict with the orbit polynomial, the eliminated polynomial, the
    exact-divisibility verdict against the bundled certificate, and the
    cofactor.
    """
    Q = orbit_polynomial()
    G = sympy.expand(sympy.diff(Q, x) + y * z * sympy.diff(Q, y))
    eliminated = eliminate(Q)
    cert = load_certificate(5)
    elim_expr = bipoly_to_sympy(eliminated, x, z)
    cert_expr = bipoly_to_sympy(cert, x, z)
    quo, rem = sympy.div(elim_expr, cert_expr, z)
    divisible = sympy.expand(rem) == 0
    cofactor = sympy.factor(quo) if divisible else None
    samples = [(Fraction(2, 7), Fraction(3, 5)), (Fraction(-1, 3), Fraction(1, 2)),
               (Fraction(5, 2), Fraction(-4, 9))]
    spot_ok = resultant_spot_check(Q, G, eliminated, samples)
    return {
        "orbit_polynomial": Q,
        "eliminated": eliminated,
        "certificate_divides": divisible,
        "cofactor": cofactor,
        "spot_check_ok": spot_ok,
    }
