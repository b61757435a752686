"""Stirling and Bernoulli numbers, and the polynomial arrays behind the
Goswami summands.

For each k >= 1 the integer arrays a_k(m), b_k(l) are

    a_k(m) = sum_{j=0}^{2k-1} j! (-1)^j S2(2k-1, j) C(j, m)
    b_k(l) = sum_{m=0}^{2k-1} (-1)^m a_k(m) C(2k-m-1, l)

with S2 the Stirling partition numbers, and the two summand polynomials are

    Pe(z) = sum_{l=1}^{2k-1} (-1)^l b_k(l) z^(l-1)          (degree <= 2k-2)
    Po(z) = (1+z)^(2k) Pe(z) - 2^(2k-1) z Pe(z^2)           (degree <= 4k-2)

The weight-2k constant term of the Eisenstein part is

    Z(2k) = -(-16)^k B_{2k} (4^k - 1) / (8k),

always a positive rational; an alternative textbook form via zeta(2k)/pi^(2k)
is provided separately because the two differ by a factor k for k >= 2
(the decomposition oracle in :mod:`gseries.modular` confirms the Bernoulli
form above).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact_core import Poly, Rational


def stirling2(n: int, j: int) -> int:
    """Stirling partition number {n over j} via the triangle recurrence."""
    if n < 0 or j < 0:
        raise ValueError("need n >= 0 and j >= 0")
    if j > n:
        return 0
    if n == 0:
        return 1 if j == 0 else 0
    # row[i] = S2(r, i), built upward from row 0
    row = [1]
    for r in range(1, n + 1):
        new = [0] * (r + 1)
        for i in range(1, r + 1):
            new[i] = i * (row[i] if i < len(row) else 0) + row[i - 1]
        row = new
    return row[j]


def bernoulli(n: int) -> Rational:
    """Exact Bernoulli number B_n (convention B_1 = -1/2).

    Computed by the defining recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0.
    """
    if n < 0:
        raise ValueError("need n >= 0")
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    b = [Fraction(1)]
    for m in range(1, n + 1):
        if m > 1 and m % 2 == 1:
            b.append(Fraction(0))
            continue
        acc = Fraction(0)
        for j in range(m):
            if b[j]:
                acc += math.comb(m + 1, j) * b[j]
        b.append(-acc / (m + 1))
    return b[n]


@dataclass(frozen=True)
class GoswamiPolynomials:
    """The exact integer data attached to weight 2k.

    `a[m]` covers m = 0..2k-1, `b[l-1]` covers l = 1..2k-1.
    """

    k: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    pe: Poly
    po: Poly


def build_polynomials(k: int) -> GoswamiPolynomials:
    """Construct a_k, b_k, Pe and Po for a given k >= 1."""
    if k < 1:
        raise ValueError("need k >= 1")
    n = 2 * k - 1
    s2 = [stirling2(n, j) for j in range(n + 1)]
    a = []
    for m in range(n + 1):
        acc = 0
        for j in range(m, n + 1):  # C(j, m) = 0 for j < m
            acc += math.factorial(j) * (-1) ** j * s2[j] * math.comb(j, m)
        a.append(acc)
    b = []
    for ell in range(1, n + 1):
        acc = 0
        for m in range(n + 1):
            acc += (-1) ** m * a[m] * math.comb(n - m, ell)
        b.append(acc)
    pe = Poly([(-1) ** ell * b[ell - 1] for ell in range(1, n + 1)])
    po = (Poly([1, 1]) ** (2 * k)) * pe - (2 ** (2 * k - 1)) * Poly([0, 1]) * pe.compose_square()
    if any(c.denominator != 1 for c in pe.coefficients + po.coefficients):
        raise AssertionError("summand polynomials must have integer coefficients")
    return GoswamiPolynomials(k=k, a=tuple(a), b=tuple(b), pe=pe, po=po)


def zeta_constant(k: int) -> Rational:
    """Z(2k) = -(-16)^k B_{2k} (4^k - 1) / (8k), exact and positive."""
    if k < 1:
        raise ValueError("need k >= 1")
    value = Fraction(-((-16) ** k) * (4**k - 1), 8 * k) * bernoulli(2 * k)
    if value <= 0:
        raise AssertionError("Z(2k) must be positive")
    return value


def zeta_constant_zeta_form(k: int) -> Rational:
    """The alternative expression 4^(k-1) (4^k - 1) (2k)! zeta(2k) / pi^(2k).

    Uses the exact evaluation zeta(2k)/pi^(2k) = (-1)^(k+1) B_{2k} 2^(2k-1) / (2k)!.
    Differs from :func:`zeta_constant` by a factor k when k >= 2; the
    verification suite reports the discrepancy.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    zeta_ratio = Fraction((-1) ** (k + 1) * 2 ** (2 * k - 1), math.factorial(2 * k)) * bernoulli(2 * k)
    return Fraction(4 ** (k - 1) * (4**k - 1) * math.factorial(2 * k)) * zeta_ratio
