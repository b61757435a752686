"""Discriminant machinery, Chowla-Selberg constants, CM evaluation of the
G_2k series, and recognition of the results as elements of Q(sqrt(2)).

CM points are supplied exactly, as tau = x + y*sqrt(D) with rational x, y
and y > 0 (so Im(tau) = y*sqrt(|D|) > 0); the numeric tau is derived at
evaluation precision.  For D = -4 the classical eta values at i/2, i, 2i, 4i
make everything explicit in Gamma(1/4) and pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional

from .combinatorics import zeta_constant
from .errors import NotFundamental, NotInField, NotInUpperHalfPlane
from .highprec import (
    GUARD_DIGITS,
    HPComplex,
    HPReal,
    _cdiv,
    _complex_parts,
    _context,
    _dec,
    _pi_decimal,
    _sincos,
    _wrap_complex,
    _wrap_real,
    gamma_rational,
    goswami_numeric,
)
from .modular import alphas


def _squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def is_fundamental_discriminant(D: int) -> bool:
    """D < 0 fundamental: D = 1 mod 4 squarefree, or D = 4m with
    m = 2, 3 mod 4 squarefree."""
    if D >= 0:
        return False
    if D % 4 == 1:
        return _squarefree(-D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(-m)
    return False


def _chi_value(D: int, j: int) -> int:
    """Kronecker symbol (D/j) for j >= 1, via prime factorization of j."""
    if j == 1:
        return 1
    result = 1
    rest = j
    # factor out 2
    while rest % 2 == 0:
        rest //= 2
        if D % 2 == 0:
            return 0
        result *= 1 if D % 8 in (1, 7) else -1
    p = 3
    while p * p <= rest:
        while rest % p == 0:
            rest //= p
            result *= _legendre(D, p)
            if result == 0:
                return 0
        p += 2
    if rest > 1:
        result *= _legendre(D, rest)
    return result


def _legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, by Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def class_number(D: int) -> int:
    """h(D) by enumerating reduced binary quadratic forms (a, b, c):
    b^2 - 4ac = D, |b| <= a <= c, and b >= 0 when |b| = a or a = c."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError("need a negative discriminant with D = 0 or 1 mod 4")
    h = 0
    b = D % 2
    while b * b <= -D // 3:
        m = (b * b - D) // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                # (a, b, c) reduced; count -b unless b = 0, |b| = a, or a = c
                if b == 0 or b == a or a == c:
                    h += 1
                else:
                    h += 2
            a += 1
        b += 2
    return h


@dataclass(frozen=True)
class DiscriminantData:
    """A fundamental discriminant with its character and class numbers."""

    D: int
    is_fundamental: bool
    h: int
    h_prime: Fraction
    chi: tuple[int, ...]  # chi[j] = (D/j) for 0 <= j <= |D|-1; chi[0] unused

    def chi_of(self, j: int) -> int:
        return self.chi[j % (-self.D)]


def discriminant_data(D: int) -> DiscriminantData:
    """Populate the discriminant record; reject non-fundamental D."""
    if D >= 0:
        raise NotFundamental(f"D = {D} is not negative")
    if not is_fundamental_discriminant(D):
        raise NotFundamental(f"D = {D} is not a fundamental discriminant")
    h = class_number(D)
    if D == -3:
        h_prime = Fraction(1, 3)
    elif D == -4:
        h_prime = Fraction(1, 2)
    else:
        h_prime = Fraction(h)
    chi = tuple(0 if j == 0 else _chi_value(D, j) for j in range(-D))
    return DiscriminantData(D=D, is_fundamental=True, h=h, h_prime=h_prime, chi=chi)


def omega_constants(D: DiscriminantData, precision: int) -> tuple[HPReal, HPReal]:
    """The Chowla-Selberg constants (omega_D, Omega_D).

    omega_D = pi^(-1/2) * (prod_j Gamma(j/|D|)^chi(j))^(1/(2h'))
    Omega_D = (2 pi |D|)^(-1/2) * (same product)^(1/(2h'))
    so omega_D^2 = 2|D| * Omega_D^2 holds by construction.
    """
    work = precision + 15
    ctx = _context(work)
    absD = -D.D
    with localcontext(ctx):
        prod = Decimal(1)
        for j in range(1, absD):
            ch = D.chi[j]
            if ch == 0:
                continue
            g = gamma_rational(j, absD, work).value
            prod = prod * g if ch > 0 else prod / g
        exponent = Fraction(1, 2) / D.h_prime
        root = (_dec(exponent, ctx) * prod.ln()).exp()
        pi_v = _pi_decimal(work)
        omega = root / pi_v.sqrt()
        big_omega = root / (2 * pi_v * absD).sqrt()
    return _wrap_real(omega, precision, 2), _wrap_real(big_omega, precision, 2)


class Sqrt2(object):
    """Exact element u + v*sqrt(2) of Q(sqrt(2))."""

    __slots__ = ("u", "v")

    def __init__(self, u, v=0):
        self.u = Fraction(u)
        self.v = Fraction(v)

    def __eq__(self, other):
        other = self._coerce(other)
        return self.u == other.u and self.v == other.v

    def __hash__(self):
        return hash((self.u, self.v))

    def __repr__(self):
        return f"Sqrt2({self.u}, {self.v})"

    @staticmethod
    def _coerce(x) -> "Sqrt2":
        if isinstance(x, Sqrt2):
            return x
        return Sqrt2(x)

    def __add__(self, other):
        other = self._coerce(other)
        return Sqrt2(self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Sqrt2(self.u - other.u, self.v - other.v)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return Sqrt2(
            self.u * other.u + 2 * self.v * other.v,
            self.u * other.v + self.v * other.u,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Sqrt2":
        norm = self.u * self.u - 2 * self.v * self.v
        if norm == 0:
            raise ZeroDivisionError("zero element of Q(sqrt(2))")
        return Sqrt2(self.u / norm, -self.v / norm)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Sqrt2(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def to_decimal(self, precision: int) -> Decimal:
        ctx = _context(precision + 5)
        with localcontext(ctx):
            s2 = Decimal(2).sqrt()
            return +(_dec(self.u, ctx) + _dec(self.v, ctx) * s2)


_CLOSED_FORM_POINTS = ("e^-pi", "e^-2pi")


def closed_form_coefficient(k: int, point: str) -> Sqrt2:
    """Exact Q(sqrt(2)) coefficient C with G_2k(point) = C * (Gamma(1/4)^4/pi^3)^k.

    At q = e^-pi:   C = Z(2k)/2^(7k) + 2^(-2k) sum_j alpha(j)/2^(5j)
    At q = e^-2pi:  C = Z(2k) a^(2k)/2^(9k) + 2^(-5k) a^(-2k) sum_j alpha(j) a^(4j)/2^(4j)
    with a = sqrt(2) - 1.
    """
    if point not in _CLOSED_FORM_POINTS:
        raise ValueError(f"point must be one of {_CLOSED_FORM_POINTS}")
    if k < 1:
        raise ValueError("need k >= 1")
    zc = zeta_constant(k)
    avals = alphas(k, max(4 * k + 12, 16), verify=False)
    if point == "e^-pi":
        total = Sqrt2(Fraction(zc, 2 ** (7 * k)))
        inner = Fraction(0)
        for j, aj in enumerate(avals, start=1):
            inner += Fraction(aj, 2 ** (5 * j))
        return total + Sqrt2(inner * Fraction(1, 4**k))
    a = Sqrt2(-1, 1)  # sqrt(2) - 1
    total = Fraction(zc, 2 ** (9 * k)) * a ** (2 * k)
    inner = Sqrt2(0)
    for j, aj in enumerate(avals, start=1):
        inner = inner + Fraction(aj, 2 ** (4 * j)) * a ** (4 * j)
    return total + Fraction(1, 2 ** (5 * k)) * (a ** (-2 * k)) * inner


def omega_multiple_coefficient(k: int, point: str) -> Sqrt2:
    """Exact Q(sqrt(2)) coefficient of omega_{-4}^(2k) at the two classical
    points; (Gamma(1/4)^4/pi^3)^k = 2^k omega_{-4}^(2k)."""
    return closed_form_coefficient(k, point) * Fraction(2**k)


def closed_form_value(k: int, point: str, precision: int) -> HPReal:
    """Numeric value of the closed form at e^-pi or e^-2pi."""
    coeff = closed_form_coefficient(k, point)
    work = precision + GUARD_DIGITS
    ctx = _context(work)
    with localcontext(ctx):
        g4 = gamma_rational(1, 4, work).value ** 4
        ratio = g4 / _pi_decimal(work) ** 3
        value = coeff.to_decimal(work) * ratio**k
    return _wrap_real(value, precision, 3)


@dataclass(frozen=True)
class CMPoint:
    """tau = x + y*sqrt(D) with exact rational x, y; y > 0 puts tau in H."""

    x: Fraction
    y: Fraction
    D: int

    def numeric(self, precision: int) -> HPComplex:
        ctx = _context(precision + 5)
        with localcontext(ctx):
            im = _dec(self.y, ctx) * _dec(-self.D, ctx).sqrt()
            re = _dec(self.x, ctx)
        return _wrap_complex(re, im, precision, 1)


CM_POINT_LABELS = {
    "i/2": CMPoint(Fraction(0), Fraction(1, 4), -4),
    "i": CMPoint(Fraction(0), Fraction(1, 2), -4),
    "2i": CMPoint(Fraction(0), Fraction(1), -4),
    "4i": CMPoint(Fraction(0), Fraction(2), -4),
}


@dataclass(frozen=True)
class CMEvaluationReport:
    """Everything produced by one CM evaluation of G_2k."""

    k: int
    tau: CMPoint
    precision: int
    value: HPComplex
    omega_power: HPReal
    ratio: HPComplex
    recognized: Optional[tuple[int, int, int]]
    recognized_ratio: Optional[Sqrt2]
    closed_form_match: Optional[bool]

    def to_json_dict(self) -> dict:
        return {
            "schema": "gseries.cm_report/1",
            "k": self.k,
            "tau": {
                "x": f"{self.tau.x.numerator}/{self.tau.x.denominator}",
                "y": f"{self.tau.y.numerator}/{self.tau.y.denominator}",
                "D": self.tau.D,
            },
            "precision": self.precision,
            "value": self.value.to_json_dict(),
            "omega_power": self.omega_power.to_json_dict(),
            "ratio": self.ratio.to_json_dict(),
            "recognized": list(self.recognized) if self.recognized else None,
            "recognized_ratio": (
                None
                if self.recognized_ratio is None
                else {
                    "rational_part": str(self.recognized_ratio.u),
                    "sqrt2_part": str(self.recognized_ratio.v),
                }
            ),
            "closed_form_match": self.closed_form_match,
        }


def _lll_reduce(basis: list[list[int]]) -> list[list[int]]:
    """Integer LLL reduction (delta = 3/4) with exact rational Gram-Schmidt."""
    n = len(basis)
    b = [row[:] for row in basis]

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar: list[list[Fraction]] = []
        norms: list[Fraction] = []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                if norms[j] == 0:
                    mu[i][j] = Fraction(0)
                    continue
                mu[i][j] = Fraction(
                    sum(Fraction(x) * y for x, y in zip(b[i], bstar[j])), 1
                ) / norms[j]
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(sum(x * x for x in v))
        return mu, norms

    delta = Fraction(3, 4)
    mu, norms = gso()
    i = 1
    while i < n:
        for j in range(i - 1, -1, -1):
            q = mu[i][j]
            r = round(q)
            if r:
                b[i] = [x - r * y for x, y in zip(b[i], b[j])]
        mu, norms = gso()
        if i >= 1 and norms[i] < (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            b[i], b[i - 1] = b[i - 1], b[i]
            mu, norms = gso()
            i = max(i - 1, 1)
        else:
            i += 1
    return b


def _normalize_relation(p: int, q: int, r: int) -> tuple[int, int, int]:
    g = math.gcd(math.gcd(abs(p), abs(q)), abs(r))
    if g > 1:
        p, q, r = p // g, q // g, r // g
    if q != 0:
        sign = 1 if q > 0 else -1
    elif r != 0:
        sign = 1 if r > 0 else -1
    else:
        sign = 1 if p > 0 else -1
    return (sign * p, sign * q, sign * r)


def recognize_quadratic(
    x,
    field_disc: int = 2,
    height_bound: int = 2**60,
    precision: int = 80,
) -> Optional[tuple[int, int, int]]:
    """Search for integers (p, q, r) with p + q*sqrt(2) + r*x = 0.

    Lattice search at scale 10^(precision-15); a candidate is accepted only
    if its directly evaluated residual is below 10^(20-precision) and its
    height is within the bound.  Returns None when no relation is found,
    which is a valid outcome.
    """
    if field_disc != 2:
        raise ValueError("only the field Q(sqrt(2)) (field_disc=2) is supported")
    if precision < 40:
        raise ValueError("need precision >= 40")
    work = precision + 10
    ctx = _context(work)
    xv = x.value if isinstance(x, HPReal) else _dec(x, ctx)
    with localcontext(ctx):
        s2 = Decimal(2).sqrt()
        scale = Decimal(10) ** (precision - 15)
        rows = [
            [1, 0, 0, int(scale)],
            [0, 1, 0, int(scale * s2)],
            [0, 0, 1, int(scale * xv)],
        ]
        reduced = _lll_reduce(rows)
        tol = Decimal(10) ** (20 - precision)
        best: Optional[tuple[int, int, int]] = None
        best_height = None
        for row in reduced:
            p, q, r = row[0], row[1], row[2]
            if p == 0 and q == 0 and r == 0:
                continue
            height = max(abs(p), abs(q), abs(r))
            if height > height_bound:
                continue
            residual = abs(p + q * s2 + r * xv)
            if residual < tol and (best is None or height < best_height):
                best = (p, q, r)
                best_height = height
        if best is None:
            return None
        return _normalize_relation(*best)


def evaluate_at_cm(
    k: int,
    tau: CMPoint,
    D: DiscriminantData,
    precision: int,
    height_bound: int = 2**60,
) -> CMEvaluationReport:
    """Evaluate G_2k at a CM point and report the ratio to omega_D^(2k).

    Recognition over the basis {1, sqrt(2)} is attempted only for D = -4 and
    only when the ratio is real to within the working accuracy; the closed
    forms at e^-pi and e^-2pi are compared when tau is i/2 or i.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if tau.D != D.D:
        raise NotInField(f"tau is over Q(sqrt({tau.D})), not Q(sqrt({D.D}))")
    if tau.y <= 0:
        raise NotInUpperHalfPlane("need y > 0 in tau = x + y*sqrt(D)")
    work = precision + GUARD_DIGITS
    ctx = _context(work)
    with localcontext(ctx):
        two_pi = 2 * _pi_decimal(work)
        im = _dec(tau.y, ctx) * _dec(-tau.D, ctx).sqrt()
        mag = (-two_pi * im).exp()
        s, c = _sincos(two_pi * _dec(tau.x, ctx), work)
        q = _wrap_complex(mag * c, mag * s, work, 2)
    value = goswami_numeric(k, q, precision)
    omega, _ = omega_constants(D, work)
    with localcontext(ctx):
        om_pow = _dec(omega.value, ctx) ** (2 * k)
        ratio = _cdiv(_complex_parts(value, ctx), (om_pow, Decimal(0)))
    omega_power = _wrap_real(om_pow, precision, 2)
    ratio_c = _wrap_complex(ratio[0], ratio[1], precision, 3)

    recognized = None
    recognized_ratio = None
    if D.D == -4 and precision >= 40:
        im_small = abs(ratio[1]) < Decimal(10) ** -(precision - 10) * max(abs(ratio[0]), Decimal(1))
        if im_small:
            rel = recognize_quadratic(ratio[0], 2, height_bound, precision)
            if rel is not None and rel[2] != 0:
                recognized = rel
                p, qq, r = rel
                recognized_ratio = Sqrt2(Fraction(-p, r), Fraction(-qq, r))

    closed_form_match = None
    if D.D == -4 and tau.x == 0 and tau.y in (Fraction(1, 4), Fraction(1, 2)):
        point = "e^-pi" if tau.y == Fraction(1, 4) else "e^-2pi"
        cf = closed_form_value(k, point, precision)
        with localcontext(ctx):
            diff = abs(_dec(value.real.value, ctx) - _dec(cf.value, ctx))
            closed_form_match = diff < Decimal(10) ** -(precision - 12)
    return CMEvaluationReport(
        k=k,
        tau=tau,
        precision=precision,
        value=value,
        omega_power=omega_power,
        ratio=ratio_c,
        recognized=recognized,
        recognized_ratio=recognized_ratio,
        closed_form_match=closed_form_match,
    )
