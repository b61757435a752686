"""Exact truncated power series in q with rational coefficients.

A :class:`QSeries` represents

    q^e * (c_0 + c_1 q + ... + c_N q^N)  +  O(q^(e+N+1))

where e is a rational leading exponent whose denominator divides 24
(enough for eta functions in the arguments tau, 2tau, 4tau) and the c_i
are exact rationals.  Truncation means "unknown beyond offset N", never
"zero beyond N": two series are compared only on the window both know.

All arithmetic is exact; no floating point enters this module.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DivisorNotUnit, ExponentMismatch, LeadingExponentError

# Coefficient domain for all symbolic work in this package.
Rational = Fraction


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def _lead24(exponent) -> int:
    """Leading exponent as an integer count of 1/24 steps."""
    e = _to_fraction(exponent)
    scaled = e * 24
    if scaled.denominator != 1:
        raise LeadingExponentError(
            f"leading exponent {e} is not a multiple of 1/24"
        )
    return int(scaled)


def _int_scaled(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    """Clear denominators: return (integer coefficients, common denominator)."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in coeffs], den


def _convolve(a: Sequence[Fraction], b: Sequence[Fraction], n_out: int) -> list[Fraction]:
    """Cauchy product of coefficient lists, truncated to offsets 0..n_out."""
    ia, da = _int_scaled(a)
    ib, db = _int_scaled(b)
    out = [0] * (n_out + 1)
    top_b = len(ib) - 1
    for i, ai in enumerate(ia[: n_out + 1]):
        if ai == 0:
            continue
        jmax = min(top_b, n_out - i)
        for j in range(jmax + 1):
            bj = ib[j]
            if bj:
                out[i + j] += ai * bj
    den = da * db
    return [Fraction(c, den) for c in out]


class QSeries:
    """Immutable truncated q-series with exact rational coefficients."""

    __slots__ = ("_lead24", "_coeffs")

    def __init__(self, coefficients: Iterable, leading_exponent=0):
        coeffs = tuple(_to_fraction(c) for c in coefficients)
        if not coeffs:
            raise ValueError("a QSeries needs at least the offset-0 coefficient")
        self._coeffs = coeffs
        self._lead24 = _lead24(leading_exponent)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, order: int, leading_exponent=0) -> "QSeries":
        return cls([Fraction(0)] * (order + 1), leading_exponent)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls([Fraction(1)] + [Fraction(0)] * order, 0)

    @classmethod
    def monomial(cls, exponent, order: int = 0, coefficient=1) -> "QSeries":
        """coefficient * q^exponent, known through offset `order` past the lead."""
        return cls([_to_fraction(coefficient)] + [Fraction(0)] * order, exponent)

    @classmethod
    def from_int_coeffs(cls, coeffs: Sequence[int], leading_exponent=0) -> "QSeries":
        return cls([Fraction(c) for c in coeffs], leading_exponent)

    # -- basic accessors -----------------------------------------------------

    @property
    def leading_exponent(self) -> Fraction:
        return Fraction(self._lead24, 24)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        """Truncation order N: offsets 0..N past the lead are known."""
        return len(self._coeffs) - 1

    @property
    def top_exponent(self) -> Fraction:
        """Largest q-exponent whose coefficient is known."""
        return Fraction(self._lead24 + 24 * self.order, 24)

    def __getitem__(self, exponent) -> Fraction:
        """Coefficient of q^exponent; KeyError outside the known window."""
        e24 = _lead24(exponent)
        off24 = e24 - self._lead24
        if off24 < 0 or off24 > 24 * self.order:
            raise KeyError(f"coefficient of q^{_to_fraction(exponent)} is outside the known window")
        if off24 % 24 != 0:
            # within the window but off the coefficient grid: exactly zero
            return Fraction(0)
        return self._coeffs[off24 // 24]

    def __repr__(self):
        head = ", ".join(str(c) for c in self._coeffs[:5])
        tail = ", ..." if len(self._coeffs) > 5 else ""
        return f"QSeries(q^({self.leading_exponent})*[{head}{tail}], order={self.order})"

    # -- alignment utilities ---------------------------------------------------

    def _aligned_with(self, other: "QSeries"):
        """Pad both series to a common lead and truncate to the common window.

        Returns (lead24, coeffs_self, coeffs_other, common_order).
        """
        d = self._lead24 - other._lead24
        if d % 24 != 0:
            raise ExponentMismatch(
                f"cannot align series with leads {self.leading_exponent} and {other.leading_exponent}"
            )
        lead = min(self._lead24, other._lead24)
        sa = (self._lead24 - lead) // 24
        sb = (other._lead24 - lead) // 24
        n = min(sa + self.order, sb + other.order)
        za = [Fraction(0)] * sa + list(self._coeffs)
        zb = [Fraction(0)] * sb + list(other._coeffs)
        return lead, za[: n + 1], zb[: n + 1], n

    def truncate(self, order: int) -> "QSeries":
        """Forget coefficients beyond the given offset."""
        if order >= self.order:
            return self
        if order < 0:
            raise ValueError("order must be >= 0")
        return QSeries(self._coeffs[: order + 1], self.leading_exponent)

    def shift(self, exponent) -> "QSeries":
        """Multiply by q^exponent (exponent a multiple of 1/24)."""
        return QSeries(self._coeffs, Fraction(self._lead24 + _lead24(exponent), 24))

    # -- ring operations -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        if (self._lead24 - other._lead24) % 24 != 0:
            # not alignable: equal only if both known windows are all zero
            return all(c == 0 for c in self._coeffs) and all(c == 0 for c in other._coeffs)
        _, a, b, _ = self._aligned_with(other)
        return a == b

    def __neg__(self):
        return QSeries([-c for c in self._coeffs], self.leading_exponent)

    def __add__(self, other):
        if isinstance(other, QSeries):
            lead, a, b, n = self._aligned_with(other)
            return QSeries([x + y for x, y in zip(a, b)], Fraction(lead, 24))
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, QSeries):
            return self + (-other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction)):
            c = _to_fraction(other)
            return QSeries([c * x for x in self._coeffs], self.leading_exponent)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return series_div(self, other)
        if isinstance(other, (int, Fraction)):
            c = _to_fraction(other)
            return QSeries([x / c for x in self._coeffs], self.leading_exponent)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("series exponent must be an integer")
        if e < 0:
            p = self ** (-e)
            return series_div(QSeries.one(p.order), p)
        result = QSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = series_mul(result, base)
            e >>= 1
            if e:
                base = series_mul(base, base)
        return result

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "schema": "gseries.qseries/1",
            "leading_exponent": f"{self._lead24}/24",
            "order": self.order,
            "coefficients": [f"{c.numerator}/{c.denominator}" for c in self._coeffs],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "QSeries":
        num, den = data["leading_exponent"].split("/")
        if int(den) != 24:
            raise LeadingExponentError("leading exponent must be stored in 1/24 units")
        coeffs = [Fraction(s) for s in data["coefficients"]]
        if len(coeffs) != data["order"] + 1:
            raise ValueError("coefficient count does not match the stored order")
        return cls(coeffs, Fraction(int(num), 24))


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Exact Cauchy product; leads add, the window shrinks to the shorter input."""
    n = min(a.order, b.order)
    coeffs = _convolve(a.coefficients, b.coefficients, n)
    return QSeries(coeffs, Fraction(a._lead24 + b._lead24, 24))


def series_div(a: QSeries, b: QSeries) -> QSeries:
    """Exact quotient: series_mul(result, b) == a on the common window.

    The divisor's first stored coefficient must be nonzero; exponent shifts
    are carried by the leads, not by leading zero coefficients.
    """
    b0 = b.coefficients[0]
    if b0 == 0:
        raise DivisorNotUnit("divisor's first stored coefficient is zero")
    n = min(a.order, b.order)
    ac = a.coefficients
    bc = b.coefficients
    out: list[Fraction] = []
    for i in range(n + 1):
        acc = ac[i]
        for j in range(1, min(i, b.order) + 1):
            bj = bc[j]
            if bj:
                acc -= bj * out[i - j]
        out.append(acc / b0)
    return QSeries(out, Fraction(a._lead24 - b._lead24, 24))


def reciprocal_binomial_series(a: int, m: int, order: int) -> QSeries:
    """Expansion of 1/(1-q^a)^m: sum_t C(t+m-1, m-1) q^(a*t)."""
    if a < 1 or m < 1:
        raise ValueError("need a >= 1 and m >= 1")
    coeffs = [0] * (order + 1)
    t = 0
    while a * t <= order:
        coeffs[a * t] = math.comb(t + m - 1, m - 1)
        t += 1
    return QSeries.from_int_coeffs(coeffs)


def pochhammer_series(a: int, step: int, order: int) -> QSeries:
    """Truncated infinite product (q^a; q^step) = prod_j (1 - q^(a + j*step))."""
    if a < 1 or step < 1:
        raise ValueError("need a >= 1 and step >= 1")
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    e = a
    while e <= order:
        for i in range(order, e - 1, -1):
            if coeffs[i - e]:
                coeffs[i] -= coeffs[i - e]
        e += step
    return QSeries.from_int_coeffs(coeffs)


def substitute_qpower(s: QSeries, m: int) -> QSeries:
    """Apply q -> q^m; exponents scale by m, the window scales accordingly."""
    if m < 1:
        raise ValueError("need m >= 1")
    if m == 1:
        return s
    # offsets 0..N map to 0, m, ..., m*N; offsets up to m*(N+1)-1 are then known
    n_new = m * (s.order + 1) - 1
    coeffs = [Fraction(0)] * (n_new + 1)
    for i, c in enumerate(s.coefficients):
        coeffs[m * i] = c
    return QSeries(coeffs, s.leading_exponent * m)


class Poly:
    """Dense polynomial with exact rational coefficients (degree -1 for zero)."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable):
        coeffs = [_to_fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"Poly({list(self._coeffs)})"

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(len(self._coeffs), len(other._coeffs))
        a = list(self._coeffs) + [Fraction(0)] * (n - len(self._coeffs))
        b = list(other._coeffs) + [Fraction(0)] * (n - len(other._coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self._coeffs or not other._coeffs:
                return Poly([])
            out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
            for i, a in enumerate(self._coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other._coeffs):
                    if b:
                        out[i + j] += a * b
            return Poly(out)
        if isinstance(other, (int, Fraction)):
            c = _to_fraction(other)
            return Poly([c * x for x in self._coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("polynomial exponent must be >= 0")
        result = Poly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def compose_square(self) -> "Poly":
        """p(z) -> p(z^2)."""
        out = [Fraction(0)] * (2 * len(self._coeffs))
        for i, c in enumerate(self._coeffs):
            out[2 * i] = c
        return Poly(out)
