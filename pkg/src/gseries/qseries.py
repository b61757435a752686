"""Construction of the named q-expansions: psi, theta, F, eta quotients,
the Sun series, the Goswami family G_2k, and its cusp part.

Conventions: q = e^(2*pi*i*tau); eta(m*tau) = q^(m/24) * (q^m; q^m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import build_polynomials, zeta_constant
from .exact_core import QSeries, pochhammer_series, series_div, series_mul, substitute_qpower

_ETA_ARGUMENTS = (1, 2, 4)


@dataclass(frozen=True)
class EtaQuotient:
    """A product prod eta(m*tau)^e over factors (m, e) with m in {1, 2, 4}."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for m, _ in self.factors:
            if m not in _ETA_ARGUMENTS:
                raise ValueError(f"eta argument multiplier {m} not in {_ETA_ARGUMENTS}")

    @property
    def leading_exponent(self) -> Fraction:
        return Fraction(sum(m * e for m, e in self.factors), 24)


def psi_series(order: int) -> QSeries:
    """Generating function of the triangular numbers: sum_n q^(n(n+1)/2)."""
    if order < 0:
        raise ValueError("need order >= 0")
    coeffs = [0] * (order + 1)
    n = 0
    while n * (n + 1) // 2 <= order:
        coeffs[n * (n + 1) // 2] = 1
        n += 1
    return QSeries.from_int_coeffs(coeffs)


def theta_series(order: int) -> QSeries:
    """theta(tau) = sum_{n in Z} q^(n^2) = 1 + 2q + 2q^4 + 2q^9 + ..."""
    if order < 0:
        raise ValueError("need order >= 0")
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    n = 1
    while n * n <= order:
        coeffs[n * n] = 2
        n += 1
    return QSeries.from_int_coeffs(coeffs)


def sigma1(n: int) -> int:
    """Sum of the positive divisors of n."""
    if n < 1:
        raise ValueError("need n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            if d != n // d:
                total += n // d
        d += 1
    return total


def f_eisenstein_series(order: int) -> QSeries:
    """The weight-2 form F(tau) = sum_n sigma_1(2n+1) q^(2n+1) on Gamma0(4)."""
    if order < 1:
        raise ValueError("need order >= 1")
    sig = [0] * (order + 1)
    for d in range(1, order + 1):
        for m in range(d, order + 1, d):
            sig[m] += d
    coeffs = [sig[e] if e % 2 == 1 else 0 for e in range(order + 1)]
    return QSeries.from_int_coeffs(coeffs)


def eta_quotient_series(eq: EtaQuotient, order: int) -> QSeries:
    """Exact expansion of an eta quotient to the given order.

    The fractional power of q contributed by each eta factor is carried by
    the leading exponent; the Pochhammer parts start with 1 so every
    division is by a unit.
    """
    net: dict[int, int] = {m: 0 for m in _ETA_ARGUMENTS}
    for m, e in eq.factors:
        net[m] += e
    result = QSeries.one(order)
    for m in _ETA_ARGUMENTS:
        e = net[m]
        if e == 0:
            continue
        p = pochhammer_series(m, m, order) ** abs(e)
        result = series_mul(result, p) if e > 0 else series_div(result, p)
    return result.shift(eq.leading_exponent)


def goswami_series(k: int, order: int) -> QSeries:
    """The weight-2k series G_2k(q).

    For odd k:   sum_n q^(2n+1) Po(q^(2n+1)) / (1 - q^(4n+2))^(2k);
    for even k:  2^(2k-1) sum_n q^(4n+2) Pe(q^(4n+2)) / (1 - q^(4n+2))^(2k).

    Summands with leading exponent beyond the order cannot contribute, so
    the n-sum stops at 2n+1 > order (odd k) or 4n+2 > order (even k).
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if order < 0:
        raise ValueError("need order >= 0")
    polys = build_polynomials(k)
    binom = [math.comb(t + 2 * k - 1, 2 * k - 1) for t in range(order // 2 + 2)]
    acc = [0] * (order + 1)
    if k % 2 == 1:
        pcoeffs = [int(c) for c in polys.po.coefficients]
        n = 0
        while 2 * n + 1 <= order:
            base, dbl = 2 * n + 1, 4 * n + 2
            for d, pd in enumerate(pcoeffs):
                if pd == 0:
                    continue
                e = base * (1 + d)
                t = 0
                while e <= order:
                    acc[e] += pd * binom[t]
                    t += 1
                    e += dbl
            n += 1
    else:
        scale = 2 ** (2 * k - 1)
        pcoeffs = [int(c) for c in polys.pe.coefficients]
        n = 0
        while 4 * n + 2 <= order:
            dbl = 4 * n + 2
            for d, pd in enumerate(pcoeffs):
                if pd == 0:
                    continue
                e = dbl * (1 + d)
                t = 0
                while e <= order:
                    acc[e] += scale * pd * binom[t]
                    t += 1
                    e += dbl
            n += 1
    return QSeries.from_int_coeffs(acc)


def sun_series(which: int, order: int) -> QSeries:
    """The two q-series with limits pi^2/4 and pi^4/16 as q -> 1.

    which=1: sum_n q^n (1 + q^(2n+1)) / (1 - q^(2n+1))^2
    which=2: sum_n q^(2n) (1 + 4 q^(2n+1) + q^(4n+2)) / (1 - q^(2n+1))^4
    """
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    if order < 0:
        raise ValueError("need order >= 0")
    acc = [0] * (order + 1)
    if which == 1:
        for n in range(order + 1):
            o = 2 * n + 1
            for shift in (0, o):
                e = n + shift
                t = 0
                while e <= order:
                    acc[e] += t + 1
                    t += 1
                    e += o
    else:
        n = 0
        while 2 * n <= order:
            o = 2 * n + 1
            for shift, mult in ((0, 1), (o, 4), (2 * o, 1)):
                e = 2 * n + shift
                t = 0
                while e <= order:
                    acc[e] += mult * math.comb(t + 3, 3)
                    t += 1
                    e += o
            n += 1
    return QSeries.from_int_coeffs(acc)


def psi_square_power(k: int, order: int) -> QSeries:
    """q^k * psi(q^2)^(4k), the Eisenstein part of G_2k up to the Z(2k) factor."""
    if k < 1:
        raise ValueError("need k >= 1")
    psi2 = substitute_qpower(psi_series(order), 2).truncate(order)
    return (psi2 ** (4 * k)).shift(k)


def cusp_form_series(k: int, order: int) -> QSeries:
    """The cusp part G_2k(q) - Z(2k) * q^k psi(q^2)^(4k); vanishes at q=0."""
    return goswami_series(k, order) - zeta_constant(k) * psi_square_power(k, order)
