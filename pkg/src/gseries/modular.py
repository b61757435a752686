"""Weight-2k decompositions in the F/theta algebra on Gamma0(4).

Every weight-2k form in this algebra is uniquely

    f = sum_{j=0}^{k} c_j F^j theta^(4k-4j),

and since F^j theta^(4k-4j) = q^j + O(q^(j+1)) the coefficients come out of
a unit upper-triangular solve on the q-orders 0..k; all remaining orders up
to the working window are then re-checked so inputs outside the algebra are
rejected rather than silently projected.

A form in this shape is a cusp form exactly when c_0 = 0, c_k = 0 and
sum_j c_j / 16^j = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .combinatorics import zeta_constant
from .errors import NotInSpan
from .exact_core import QSeries, Rational, series_mul
from .qseries import EtaQuotient, eta_quotient_series, f_eisenstein_series, goswami_series, theta_series


@dataclass(frozen=True)
class FThetaDecomposition:
    """Coefficients c_0..c_k of a weight-2k form over F^j theta^(4k-4j)."""

    k: int
    c: tuple[Rational, ...]

    def alphas(self) -> tuple[Rational, ...]:
        """The interior coefficients c_1..c_(k-1)."""
        return self.c[1 : self.k]


@dataclass(frozen=True)
class CuspReport:
    """The three cusp-vanishing conditions for an F/theta decomposition."""

    constant_coefficient_zero: bool
    top_coefficient_zero: bool
    sixteenth_sum_zero: bool
    sixteenth_sum: Rational

    @property
    def is_cusp_form(self) -> bool:
        return self.constant_coefficient_zero and self.top_coefficient_zero and self.sixteenth_sum_zero

    def to_json_dict(self) -> dict:
        return {
            "schema": "gseries.cusp_report/1",
            "constant_coefficient_zero": self.constant_coefficient_zero,
            "top_coefficient_zero": self.top_coefficient_zero,
            "sixteenth_sum_zero": self.sixteenth_sum_zero,
            "sixteenth_sum": f"{self.sixteenth_sum.numerator}/{self.sixteenth_sum.denominator}",
            "is_cusp_form": self.is_cusp_form,
        }


@dataclass(frozen=True)
class ExactCheckReport:
    """Outcome of an exact coefficient-by-coefficient identity check."""

    name: str
    k: int
    order: int
    equal: bool
    first_mismatch_exponent: Optional[Fraction]

    def to_json_dict(self) -> dict:
        return {
            "schema": "gseries.exact_check/1",
            "name": self.name,
            "k": self.k,
            "order": self.order,
            "equal": self.equal,
            "first_mismatch_exponent": (
                None if self.first_mismatch_exponent is None else str(self.first_mismatch_exponent)
            ),
        }


def _absolute_coeffs(f: QSeries, order: int) -> list[Fraction]:
    """Coefficients of q^0..q^order; requires an integer lead and a window
    reaching the requested order."""
    lead = f.leading_exponent
    if lead.denominator != 1:
        raise NotInSpan(f"series with fractional lead {lead} is outside the graded algebra")
    if lead < 0:
        raise NotInSpan(f"series with negative lead {lead} is outside the graded algebra")
    if f.top_exponent < order:
        raise ValueError(f"series known only to q^{f.top_exponent}, need q^{order}")
    shift = int(lead)
    out = [Fraction(0)] * (order + 1)
    for i, c in enumerate(f.coefficients):
        e = shift + i
        if e > order:
            break
        out[e] = c
    return out


def f_theta_basis(k: int, order: int) -> list[QSeries]:
    """The series F^j theta^(4k-4j) for j = 0..k, each exact to the order."""
    theta4 = theta_series(order) ** 4
    f = f_eisenstein_series(order) if order >= 1 else QSeries.zero(0)
    theta_pows = [QSeries.one(order)]
    for _ in range(k):
        theta_pows.append(series_mul(theta_pows[-1], theta4))
    basis = []
    f_pow = QSeries.one(order)
    for j in range(k + 1):
        basis.append(series_mul(f_pow, theta_pows[k - j]))
        if j < k:
            f_pow = series_mul(f_pow, f)
    return basis


def decompose(f: QSeries, k: int, order: int) -> FThetaDecomposition:
    """Solve f = sum_j c_j F^j theta^(4k-4j) exactly.

    Raises NotInSpan when the residual after the triangular solve is nonzero
    anywhere on the window q^0..q^order.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if order < k:
        raise ValueError("need order >= k")
    target = _absolute_coeffs(f, order)
    basis = [_absolute_coeffs(b, order) for b in f_theta_basis(k, order)]
    residual = list(target)
    c: list[Fraction] = []
    for j in range(k + 1):
        cj = residual[j]
        c.append(cj)
        if cj:
            bj = basis[j]
            for i in range(j, order + 1):
                if bj[i]:
                    residual[i] -= cj * bj[i]
    for i in range(order + 1):
        if residual[i] != 0:
            raise NotInSpan(f"residual is nonzero at q^{i}; input is not a weight-{2*k} form in F/theta")
    return FThetaDecomposition(k=k, c=tuple(c))


def reconstruct(d: FThetaDecomposition, order: int) -> QSeries:
    """sum_j c_j F^j theta^(4k-4j) to the given order."""
    basis = f_theta_basis(d.k, order)
    acc = QSeries.zero(order)
    for cj, bj in zip(d.c, basis):
        if cj:
            acc = acc + cj * bj
    return acc


def alphas(k: int, order: int, verify: bool = True) -> tuple[Rational, ...]:
    """The interior decomposition coefficients alpha(1)..alpha(k-1) of G_2k.

    Empty for k = 1.  With verify=True the values are cross-checked through
    the independent eta-quotient identity before being returned.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    d = decompose(goswami_series(k, order), k, order)
    if verify:
        report = eta_identity_check(k, order)
        if not report.equal:
            raise AssertionError(
                f"eta-quotient cross-check failed at q^{report.first_mismatch_exponent}"
            )
    return d.alphas()


def cusp_certificate(d: FThetaDecomposition) -> CuspReport:
    """Evaluate the three cusp conditions on a decomposition, exactly."""
    s = Fraction(0)
    for j, cj in enumerate(d.c):
        s += cj * Fraction(1, 16**j)
    return CuspReport(
        constant_coefficient_zero=(d.c[0] == 0),
        top_coefficient_zero=(d.c[d.k] == 0),
        sixteenth_sum_zero=(s == 0),
        sixteenth_sum=s,
    )


def _first_mismatch(a: QSeries, b: QSeries) -> Optional[Fraction]:
    lead, ca, cb, _ = a._aligned_with(b)
    for i, (x, y) in enumerate(zip(ca, cb)):
        if x != y:
            return Fraction(lead + 24 * i, 24)
    return None


def eta_identity_check(k: int, order: int) -> ExactCheckReport:
    """Check the eta-quotient expression of G_2k coefficient-exactly.

    G_2k = Z(2k) eta(4t)^8k / eta(2t)^4k
           + eta(2t)^20k / (eta(t)^8k eta(4t)^8k)
             * sum_{j=1}^{k-1} alpha(j) eta(4t)^16j eta(t)^8j / eta(2t)^24j
    """
    if k < 1:
        raise ValueError("need k >= 1")
    lhs = goswami_series(k, order)
    coeffs = decompose(lhs, k, order).alphas()
    rhs = zeta_constant(k) * eta_quotient_series(EtaQuotient(((4, 8 * k), (2, -4 * k))), order)
    if any(a != 0 for a in coeffs):
        prefactor = eta_quotient_series(EtaQuotient(((2, 20 * k), (1, -8 * k), (4, -8 * k))), order)
        inner = QSeries.zero(order)
        for j, aj in enumerate(coeffs, start=1):
            if aj:
                inner = inner + aj * eta_quotient_series(
                    EtaQuotient(((4, 16 * j), (1, 8 * j), (2, -24 * j))), order
                )
        rhs = rhs + series_mul(prefactor, inner)
    mismatch = _first_mismatch(lhs, rhs)
    return ExactCheckReport(
        name="goswami-eta-quotient",
        k=k,
        order=order,
        equal=(mismatch is None),
        first_mismatch_exponent=mismatch,
    )


def zeta_from_decomposition(k: int, order: int) -> Rational:
    """Top coefficient c_k of the decomposition of G_2k.

    Independent route to Z(2k): the cusp part has a vanishing top
    coefficient, which pins c_k to the Eisenstein factor.
    """
    return decompose(goswami_series(k, order), k, order).c[k]
