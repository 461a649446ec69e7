"""Exact arithmetic in the rational quaternion algebra (-1, 3), its fixed
maximal order, the 2x2 matrix embedding over Q(sqrt3), CM fixed points, the
boundary classification of CM elements, and the weight-k dimension formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import Discriminant
from .numkernel import BigComplex, BigReal, Precision, pow_rat


@dataclass(frozen=True)
class QuadElem3:
    """a + b*sqrt(3) with rational a, b."""

    a: Fraction
    b: Fraction

    @staticmethod
    def of(a, b=0) -> "QuadElem3":
        return QuadElem3(Fraction(a), Fraction(b))

    def __add__(self, o: "QuadElem3") -> "QuadElem3":
        return QuadElem3(self.a + o.a, self.b + o.b)

    def __sub__(self, o: "QuadElem3") -> "QuadElem3":
        return QuadElem3(self.a - o.a, self.b - o.b)

    def __mul__(self, o) -> "QuadElem3":
        if isinstance(o, (int, Fraction)):
            return QuadElem3(self.a * o, self.b * o)
        return QuadElem3(self.a * o.a + 3 * self.b * o.b,
                         self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __neg__(self) -> "QuadElem3":
        return QuadElem3(-self.a, -self.b)

    def conj(self) -> "QuadElem3":
        return QuadElem3(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 3 * self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def to_real(self, prec: Precision) -> BigReal:
        s3 = pow_rat(3, Fraction(1, 2), prec)
        return BigReal.from_rational(self.a, prec) + s3 * self.b

    def sign(self) -> int:
        """Sign of a + b*sqrt(3) as a real number, decided exactly."""
        if self.is_zero():
            return 0
        if self.a >= 0 and self.b >= 0:
            return 1
        if self.a <= 0 and self.b <= 0:
            return -1
        n = self.a * self.a - 3 * self.b * self.b  # (a - b s3)(a + b s3)
        s = 1 if n > 0 else -1
        return s * (1 if self.a > 0 else -1) if self.a != 0 else \
            (1 if self.b > 0 else -1)


@dataclass(frozen=True)
class QuatQ:
    """x0 + x1 I + x2 J + x3 IJ with I^2 = -1, J^2 = 3, IJ = -JI."""

    x0: Fraction
    x1: Fraction
    x2: Fraction
    x3: Fraction

    @staticmethod
    def of(x0, x1=0, x2=0, x3=0) -> "QuatQ":
        return QuatQ(Fraction(x0), Fraction(x1), Fraction(x2), Fraction(x3))

    def __add__(self, o: "QuatQ") -> "QuatQ":
        return QuatQ(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)

    def __sub__(self, o: "QuatQ") -> "QuatQ":
        return QuatQ(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return QuatQ(self.x0 * o, self.x1 * o, self.x2 * o, self.x3 * o)
        a0, a1, a2, a3 = self.x0, self.x1, self.x2, self.x3
        b0, b1, b2, b3 = o.x0, o.x1, o.x2, o.x3
        # basis products from I^2=-1, J^2=3, IJ=-JI, (IJ)^2=3
        return QuatQ(
            a0 * b0 - a1 * b1 + 3 * a2 * b2 + 3 * a3 * b3,
            a0 * b1 + a1 * b0 - 3 * a2 * b3 + 3 * a3 * b2,
            a0 * b2 + a2 * b0 - a1 * b3 + a3 * b1,
            a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
        )

    __rmul__ = __mul__

    def __neg__(self) -> "QuatQ":
        return QuatQ(-self.x0, -self.x1, -self.x2, -self.x3)

    def conj(self) -> "QuatQ":
        return QuatQ(self.x0, -self.x1, -self.x2, -self.x3)

    def trace(self) -> Fraction:
        return 2 * self.x0

    def norm(self) -> Fraction:
        return (self.x0 * self.x0 + self.x1 * self.x1
                - 3 * self.x2 * self.x2 - 3 * self.x3 * self.x3)

    def __truediv__(self, c) -> "QuatQ":
        c = Fraction(c)
        return QuatQ(self.x0 / c, self.x1 / c, self.x2 / c, self.x3 / c)


def in_maximal_order(q: QuatQ) -> bool:
    """Membership in Z + ZI + ZJ + Z(1+I+J+IJ)/2."""
    xs = (q.x0, q.x1, q.x2, q.x3)
    if any((2 * x).denominator != 1 for x in xs):
        return False
    doubled = [(2 * x) % 2 for x in xs]
    return len(set(doubled)) == 1


# ---------------------------------------------------------------------------
# matrix embedding
# ---------------------------------------------------------------------------

_SQUAREFREE = {1: (1, 1), 2: (1, 2), 3: (1, 3), 4: (2, 1), 6: (1, 6),
               9: (3, 1), 12: (2, 3), 18: (3, 2), 36: (6, 1)}


def _split_sqrt(e: int) -> tuple[int, int]:
    """e = s^2 * f with f squarefree; returns (s, f)."""
    if e in _SQUAREFREE:
        return _SQUAREFREE[e]
    s = 1
    f = e
    d = 2
    while d * d <= f:
        while f % (d * d) == 0:
            f //= d * d
            s *= d
        d += 1
    return s, f


@dataclass(frozen=True)
class Mat2Q3:
    """scale_r / sqrt(scale_e) times a 2x2 matrix over Q(sqrt3)."""

    a: QuadElem3
    b: QuadElem3
    c: QuadElem3
    d: QuadElem3
    scale_r: Fraction = Fraction(1)
    scale_e: int = 1

    def __mul__(self, o: "Mat2Q3") -> "Mat2Q3":
        s, f = _split_sqrt(self.scale_e * o.scale_e)
        return Mat2Q3(
            self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d,
            self.scale_r * o.scale_r * Fraction(1, s),
            f,
        )

    def det(self) -> QuadElem3:
        raw = self.a * self.d - self.b * self.c
        if self.scale_e == 1:
            return raw * (self.scale_r * self.scale_r)
        # det scales by (r/sqrt(e))^2 = r^2/e
        return raw * (self.scale_r * self.scale_r / self.scale_e)

    def entry_real(self, which: str, prec: Precision) -> BigReal:
        ent = getattr(self, which).to_real(prec)
        s = BigReal.from_rational(self.scale_r, prec)
        if self.scale_e != 1:
            s = s / pow_rat(self.scale_e, Fraction(1, 2), prec)
        return ent * s

    def mobius(self, tau: BigComplex) -> BigComplex:
        prec = tau.prec
        a = self.a.to_real(prec)
        b = self.b.to_real(prec)
        c = self.c.to_real(prec)
        d = self.d.to_real(prec)
        zero = BigReal.from_int(0, prec)
        num = BigComplex(a, zero) * tau + BigComplex(b, zero)
        den = BigComplex(c, zero) * tau + BigComplex(d, zero)
        return num / den


def iota(q: QuatQ) -> Mat2Q3:
    """I -> [[0,-1],[1,0]], J -> [[s3,0],[0,-s3]], extended linearly."""
    return Mat2Q3(
        QuadElem3(q.x0, q.x2), QuadElem3(-q.x1, q.x3),
        QuadElem3(q.x1, q.x3), QuadElem3(q.x0, -q.x2),
    )


def _scaled_iota(q: QuatQ, r: Fraction, e: int) -> Mat2Q3:
    m = iota(q)
    return Mat2Q3(m.a, m.b, m.c, m.d, Fraction(r), e)


# the Atkin-Lehner representatives and the elliptic isotropy generators
GAMMA_1 = _scaled_iota(QuatQ.of(1), Fraction(1), 1)
GAMMA_2 = _scaled_iota(QuatQ.of(1, 1), Fraction(1), 2)
GAMMA_3 = _scaled_iota(QuatQ.of(Fraction(3, 2), Fraction(3, 2), Fraction(1, 2), Fraction(1, 2)),
                       Fraction(1), 3)
GAMMA_6 = _scaled_iota(QuatQ.of(0, 3, 0, 1), Fraction(1), 6)

M_2 = GAMMA_6
M_4 = GAMMA_2
M_6 = _scaled_iota(QuatQ.of(3, -3, 1, -1), Fraction(1, 2), 3)


def elliptic_points(prec: Precision) -> dict[int, BigComplex]:
    """P4 = i, P6 = (-1+i)/(1+s3), P2 = (s6 - s2) i / 2."""
    s2 = pow_rat(2, Fraction(1, 2), prec)
    s3 = pow_rat(3, Fraction(1, 2), prec)
    s6 = pow_rat(6, Fraction(1, 2), prec)
    one = BigReal.from_int(1, prec)
    zero = BigReal.from_int(0, prec)
    p4 = BigComplex(zero, one)
    den = one + s3
    p6 = BigComplex(-(one / den), one / den)
    p2 = BigComplex(zero, (s6 - s2) / 2)
    return {2: p2, 4: p4, 6: p6}


# ---------------------------------------------------------------------------
# CM embeddings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EmbeddingSpec:
    """alpha = image of sqrt(D) under an optimal embedding; trace 0,
    norm |D|, and a1 + a3*sqrt3 > 0."""

    D: Discriminant
    alpha: QuatQ

    def __post_init__(self) -> None:
        if self.alpha.trace() != 0:
            raise ValueError("embedding element must have trace 0")
        if self.alpha.norm() != abs(self.D.d):
            raise ValueError("embedding element norm must equal |D|")
        if QuadElem3(self.alpha.x1, self.alpha.x3).sign() <= 0:
            raise ValueError("sign normalization a1 + a3*sqrt3 > 0 violated")

    @property
    def a(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.alpha.x1, self.alpha.x2, self.alpha.x3)


def fixed_point(e: EmbeddingSpec, prec: Precision):
    """tau0 = (a2 sqrt3 + i sqrt|D|) / (a1 + a3 sqrt3) in the upper half-plane;
    returns (tau0, (a1, a2, a3, D))."""
    a1, a2, a3 = e.a
    den = QuadElem3(a1, a3).to_real(prec)
    s3 = pow_rat(3, Fraction(1, 2), prec)
    sD = pow_rat(abs(e.D.d), Fraction(1, 2), prec)
    re = s3 * a2 / den
    im = sD / den
    return BigComplex(re, im), (a1, a2, a3, e.D.d)


def boundary_classify(e: EmbeddingSpec) -> str:
    """Which boundary piece of the fundamental domain the CM point sits on,
    read off the coordinates: segment01 / ray_1_inf / negative_arc / interior."""
    a1, a2, a3 = e.a
    if a2 == 0:
        return "segment01"
    if a1 == 3 * a3:
        return "ray_1_inf"
    if a2 == -a3:
        return "negative_arc"
    return "interior"


def _is_discriminant(d: int) -> bool:
    return d < 0 and d % 4 in (0, 1)


def _embeds_order_of_disc(alpha_over_f: QuatQ, d: int) -> bool:
    """Does alpha/f realize the order of discriminant d inside O?"""
    if d % 4 == 0:
        return in_maximal_order(alpha_over_f / 2)
    half = (QuatQ.of(1) + alpha_over_f) / 2
    return in_maximal_order(half)


def is_optimal_embedding(alpha: QuatQ, D: Discriminant) -> bool:
    """alpha = phi(sqrtD) gives an embedding of exactly the order of
    discriminant D (and of no smaller-conductor order)."""
    if alpha.trace() != 0 or alpha.norm() != abs(D.d):
        return False
    if not _embeds_order_of_disc(alpha, D.d):
        return False
    f = 2
    while f * f <= abs(D.d):
        if D.d % (f * f) == 0 and _is_discriminant(D.d // (f * f)):
            if _embeds_order_of_disc(alpha / f, D.d // (f * f)):
                return False
        f += 1
    return True


def find_embeddings(D, klass: str) -> list[EmbeddingSpec]:
    """Bounded search for optimal embedding elements whose boundary class is
    ``klass`` ('segment01', 'ray_1_inf', or 'negative_arc'), sorted so the
    smallest representatives (largest-height fixed points) come first."""
    D = D if isinstance(D, Discriminant) else Discriminant(D)
    n = abs(D.d)
    if klass == "segment01":        # a2 = 0: a1^2 - 3 a3^2 = n
        pairs = _solve_form(1, 3, n)
        cands = [QuatQ.of(0, a1, 0, a3) for a1, a3 in pairs]
    elif klass == "ray_1_inf":      # a1 = 3 a3: 6 a3^2 - 3 a2^2 = n
        cands = []
        for a3, a2 in _solve_form(6, 3, n):
            cands.append(QuatQ.of(0, 3 * a3, a2, a3))
            cands.append(QuatQ.of(0, 3 * a3, -a2, a3))
    elif klass == "negative_arc":   # a2 = -a3: a1^2 - 6 a3^2 = n
        cands = [QuatQ.of(0, a1, -a3, a3) for a1, a3 in _solve_form(1, 6, n)]
        cands += [QuatQ.of(0, a1, a3, -a3) for a1, a3 in _solve_form(1, 6, n)]
    else:
        raise ValueError(f"unknown class {klass}")
    found = []
    for alpha in cands:
        for cand in (alpha, -alpha):
            if QuadElem3(cand.x1, cand.x3).sign() <= 0:
                continue
            if is_optimal_embedding(cand, D):
                spec = EmbeddingSpec(D, cand)
                if spec not in found:
                    found.append(spec)
    found.sort(key=lambda e: (e.alpha.x1, abs(e.alpha.x2), -e.alpha.x3))
    return found


def find_embedding(D, klass: str) -> EmbeddingSpec | None:
    """First (smallest) optimal embedding of the requested boundary class."""
    got = find_embeddings(D, klass)
    return got[0] if got else None


def _solve_form(c1: int, c2: int, n: int) -> list[tuple[int, int]]:
    """Integer solutions (u, v), u > 0, v any sign, of c1 u^2 - c2 v^2 = n,
    with |u| bounded by the obvious search window."""
    out = []
    vmax = math.isqrt(4 * n // c2) + abs(n) // c2 + 20
    for v in range(-vmax, vmax + 1):
        rhs = n + c2 * v * v
        if rhs <= 0 or rhs % c1:
            continue
        u = math.isqrt(rhs // c1)
        if c1 * u * u == rhs:
            out.append((u, v))
    return out


def dim_Sk(k: int) -> int:
    """Dimension of the weight-k automorphic forms: 1 - k + floor(k/4) +
    floor(3k/8) + floor(5k/12), for even k >= 4."""
    if k % 2 or k < 4:
        raise ValueError("k must be even and >= 4")
    return 1 - k + k // 4 + 3 * k // 8 + 5 * k // 12
