"""Elementary number theory: Kronecker characters, class numbers, unit counts,
and the optimal-embedding count for fundamental discriminants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def _squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        if n % d == 0:
            n //= d
        d += 1
    return True


@dataclass(frozen=True)
class Discriminant:
    """A negative discriminant d = 0, 1 (mod 4)."""

    d: int

    def __post_init__(self) -> None:
        if self.d >= 0:
            raise ValueError("only negative discriminants are supported")
        if self.d % 4 not in (0, 1):
            raise ValueError(f"{self.d} is not a discriminant (d % 4 must be 0 or 1)")

    @property
    def is_fundamental(self) -> bool:
        d = self.d
        if d % 4 == 1:
            return _squarefree(d)
        m = d // 4
        return _squarefree(m) and m % 4 in (2, 3)


def kronecker(d, n: int) -> int:
    """The Kronecker symbol (d | n)."""
    a = d.d if isinstance(d, Discriminant) else int(d)
    if n == 0:
        return 1 if a in (1, -1) else 0
    k = 1
    if n < 0:
        n = -n
        if a < 0:
            k = -1
    # factor out 2s of n
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            k = -k
    # Jacobi symbol (a | n) for odd n > 0 (periodic in a mod n)
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


def class_number(d) -> int:
    """Number of primitive reduced binary quadratic forms of discriminant d.

    Reduction convention: |b| <= a <= c with b >= 0 when |b| = a or a = c.
    """
    d = d if isinstance(d, Discriminant) else Discriminant(d)
    return len(reduced_forms(d))


def reduced_forms(d) -> list[tuple[int, int, int]]:
    d = d if isinstance(d, Discriminant) else Discriminant(d)
    dd = d.d
    forms = []
    amax = math.isqrt(abs(dd) // 3)
    for a in range(1, amax + 1):
        for b in range(-a, a + 1):
            if (b * b - dd) % (4 * a) != 0:
                continue
            c = (b * b - dd) // (4 * a)
            if c < a:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append((a, b, c))
    return forms


def unit_count(d) -> int:
    """Number of roots of unity in the order of discriminant d."""
    dd = d.d if isinstance(d, Discriminant) else int(d)
    if dd == -3:
        return 6
    if dd == -4:
        return 4
    return 2


def embedding_count(d) -> int:
    """Number of optimal-embedding classes into the fixed maximal order.

    Only defined for fundamental d; the three discriminants of the elliptic
    points are special-cased to 1.
    """
    d = d if isinstance(d, Discriminant) else Discriminant(d)
    if not d.is_fundamental:
        raise ValueError(f"embedding_count needs a fundamental discriminant, got {d.d}")
    if d.d in (-3, -4, -24):
        return 1
    h = class_number(d)
    cnt = h * (1 - kronecker(d, 2)) * (1 - kronecker(d, 3))
    if cnt % 4 != 0:
        raise ArithmeticError(f"embedding count formula gave non-integer for {d.d}")
    return cnt // 4
