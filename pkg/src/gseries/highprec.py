"""Arbitrary-precision numeric kernel on top of the stdlib decimal module.

Every operation takes an explicit target precision P (decimal digits) and
works internally in a local context with guard digits; nothing in this
module mutates process-global precision.  Results are returned as
:class:`HPReal` / :class:`HPComplex` values rounded to P significant digits
together with a declared relative-error budget.

Guard-digit losses per operation (documented, enforced by the
precision-doubling tests): pi and agm lose <= 1 digit, gamma_rational <= 2,
eta_numeric and exp_complex <= 3, goswami_numeric <= 3.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from decimal import Context, Decimal, ROUND_FLOOR, localcontext
from fractions import Fraction
from typing import Sequence

from .combinatorics import build_polynomials
from .errors import NonPositiveInput, NotInUnitDisk, NotInUpperHalfPlane, PoleAtNonPositiveInteger

DEFAULT_PRECISION = 64
GUARD_DIGITS = 10

_PI_CACHE: dict[int, Decimal] = {}
_PI_LOCK = threading.Lock()


def _context(digits: int) -> Context:
    return Context(prec=digits, Emax=10**8, Emin=-(10**8))


def _dec(x, ctx: Context) -> Decimal:
    """Convert to Decimal inside ctx (Fractions via exact division)."""
    if isinstance(x, Decimal):
        return ctx.plus(x)
    if isinstance(x, int):
        return ctx.create_decimal(x)
    if isinstance(x, Fraction):
        return ctx.divide(ctx.create_decimal(x.numerator), ctx.create_decimal(x.denominator))
    if isinstance(x, str):
        return ctx.create_decimal(x)
    if isinstance(x, float):
        raise TypeError("pass exact inputs (int, str, Fraction, Decimal), not float")
    raise TypeError(f"cannot convert {type(x).__name__} to Decimal")


@dataclass(frozen=True)
class HPReal:
    """An arbitrary-precision real with a stated relative-error budget.

    |true - value| / |true| <= 10**rel_error_exp (for nonzero values).
    """

    value: Decimal
    precision: int
    rel_error_exp: int

    def to_string(self) -> str:
        return str(self.value)

    def to_json_dict(self) -> dict:
        return {"value": str(self.value), "digits": self.precision}

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class HPComplex:
    """A complex value with per-component precision metadata."""

    real: HPReal
    imag: HPReal

    @property
    def rel_error_exp(self) -> int:
        return max(self.real.rel_error_exp, self.imag.rel_error_exp)

    def to_json_dict(self) -> dict:
        return {"real": self.real.to_json_dict(), "imag": self.imag.to_json_dict()}


def hp_real(value, precision: int = DEFAULT_PRECISION) -> HPReal:
    ctx = _context(precision)
    return HPReal(_dec(value, ctx), precision, -precision)


def hp_complex(re, im=0, precision: int = DEFAULT_PRECISION) -> HPComplex:
    return HPComplex(hp_real(re, precision), hp_real(im, precision))


def _round_to(x: Decimal, digits: int) -> Decimal:
    return _context(digits).plus(x)


def _wrap_real(x: Decimal, precision: int, lost: int) -> HPReal:
    return HPReal(_round_to(x, precision), precision, -(precision - lost))


def _wrap_complex(re: Decimal, im: Decimal, precision: int, lost: int) -> HPComplex:
    return HPComplex(_wrap_real(re, precision, lost), _wrap_real(im, precision, lost))


def rel_diff(a, b) -> Decimal:
    """|a - b| / max(|a|, |b|, 1e-999) as a Decimal, for tolerance checks."""
    ctx = _context(50)
    da = a.value if isinstance(a, HPReal) else _dec(a, ctx)
    db = b.value if isinstance(b, HPReal) else _dec(b, ctx)
    with localcontext(ctx):
        scale = max(abs(da), abs(db), Decimal("1e-999"))
        return abs(da - db) / scale


def _pi_decimal(digits: int) -> Decimal:
    """pi by the Gauss-Legendre AGM iteration, quadratically convergent."""
    with _PI_LOCK:
        cached = _PI_CACHE.get(digits)
    if cached is not None:
        return cached
    work = digits + 10
    with localcontext(_context(work)):
        a = Decimal(1)
        b = Decimal("0.5").sqrt()
        t = Decimal("0.25")
        p = Decimal(1)
        for _ in range(int(math.log2(work)) + 4):
            an = (a + b) / 2
            b = (a * b).sqrt()
            t -= p * (a - an) ** 2
            a = an
            p *= 2
        result = (a + b) ** 2 / (4 * t)
    result = _round_to(result, digits)
    with _PI_LOCK:
        _PI_CACHE[digits] = result
    return result


def pi(precision: int) -> HPReal:
    """pi accurate to the full requested precision."""
    if precision < 10:
        raise ValueError("need precision >= 10")
    return _wrap_real(_pi_decimal(precision + 5), precision, 1)


def _sincos(x: Decimal, work: int) -> tuple[Decimal, Decimal]:
    """(sin x, cos x) by Taylor series after reduction to (-pi, pi]."""
    with localcontext(_context(work + 5)):
        two_pi = 2 * _pi_decimal(work + 5)
        n = (x / two_pi).to_integral_value(rounding=ROUND_FLOOR)
        r = x - n * two_pi
        if r > two_pi / 2:
            r -= two_pi
        tol = Decimal(10) ** -(work + 3)
        s = r
        c = Decimal(1)
        term_s = r
        term_c = Decimal(1)
        r2 = r * r
        j = 0
        while True:
            j += 1
            term_c *= -r2 / ((2 * j - 1) * (2 * j))
            c += term_c
            term_s *= -r2 / ((2 * j) * (2 * j + 1))
            s += term_s
            if abs(term_s) < tol and abs(term_c) < tol:
                break
        return +s, +c


def exp_complex(z: HPComplex, precision: int) -> HPComplex:
    """e^z for complex z: e^re * (cos im + i sin im)."""
    work = precision + GUARD_DIGITS
    ctx = _context(work)
    with localcontext(ctx):
        mag = _dec(z.real.value, ctx).exp()
        s, c = _sincos(_dec(z.imag.value, ctx), work)
        re = mag * c
        im = mag * s
    return _wrap_complex(re, im, precision, 3)


def agm(a, b, precision: int) -> HPReal:
    """Common limit of the arithmetic-geometric mean iteration (a, b > 0)."""
    work = precision + GUARD_DIGITS
    ctx = _context(work)
    x = a.value if isinstance(a, HPReal) else _dec(a, ctx)
    y = b.value if isinstance(b, HPReal) else _dec(b, ctx)
    if x <= 0 or y <= 0:
        raise NonPositiveInput("agm requires strictly positive inputs")
    with localcontext(ctx):
        tol = Decimal(10) ** -(precision + 5)
        while abs(x - y) >= tol:
            x, y = (x + y) / 2, (x * y).sqrt()
        result = (x + y) / 2
    return _wrap_real(result, precision, 1)


def _spouge_gamma_z_plus_1(z: Fraction, precision: int) -> Decimal:
    """Gamma(z+1) for rational z in [0, 1) by Spouge's convergent family.

    The parameter a is chosen so the formula's relative truncation error is
    below 10^-(precision+5); the alternating sum loses about 0.13*a digits
    to cancellation, covered by the working guard.
    """
    a = int(1.26 * (precision + 8)) + 3
    work = precision + (a // 6) + 12
    ctx = _context(work)
    with localcontext(ctx):
        two_pi = 2 * _pi_decimal(work)
        s = two_pi.sqrt()
        fact = 1  # (k-1)!
        for k in range(1, a):
            if k > 1:
                fact *= k - 1
            m = a - k
            term = (
                Decimal(m**k)
                * Decimal(m).exp()
                / (Decimal(m).sqrt() * Decimal(fact))
            )
            denom = _dec(z + k, ctx)
            if k % 2 == 1:
                s += term / denom
            else:
                s -= term / denom
        w = _dec(z + a, ctx)
        half = Decimal(1) / 2
        zc = _dec(z, ctx)
        result = ((zc + half) * w.ln()).exp() * (-w).exp() * s
        return +result


def gamma_rational(j: int, n: int, precision: int) -> HPReal:
    """Gamma(j/n) for positive integers j, n, to the requested precision."""
    if n < 1:
        raise ValueError("need n >= 1")
    if j < 1:
        raise PoleAtNonPositiveInteger("gamma_rational requires a positive argument j/n")
    x = Fraction(j, n)
    work = precision + GUARD_DIGITS
    ctx = _context(work)
    if x.denominator == 1:
        return _wrap_real(ctx.create_decimal(math.factorial(int(x) - 1)), precision, 0)
    ip = int(x)  # floor for positive x
    frac = x - ip
    core = _spouge_gamma_z_plus_1(frac, work)
    with localcontext(ctx):
        value = core / _dec(frac, ctx)  # Gamma(frac) = Gamma(frac+1)/frac
        for i in range(ip):
            value *= _dec(frac + i, ctx)
    return _wrap_real(value, precision, 2)


def _complex_parts(z: HPComplex, ctx: Context) -> tuple[Decimal, Decimal]:
    return _dec(z.real.value, ctx), _dec(z.imag.value, ctx)


def _cmul(a: tuple[Decimal, Decimal], b: tuple[Decimal, Decimal]) -> tuple[Decimal, Decimal]:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cdiv(a: tuple[Decimal, Decimal], b: tuple[Decimal, Decimal]) -> tuple[Decimal, Decimal]:
    n = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / n, (a[1] * b[0] - a[0] * b[1]) / n)


def _cpow(a: tuple[Decimal, Decimal], e: int) -> tuple[Decimal, Decimal]:
    result = (Decimal(1), Decimal(0))
    base = a
    while e:
        if e & 1:
            result = _cmul(result, base)
        e >>= 1
        if e:
            base = _cmul(base, base)
    return result


def _cabs(a: tuple[Decimal, Decimal]) -> Decimal:
    if not a[1]:
        return abs(a[0])
    return (a[0] * a[0] + a[1] * a[1]).sqrt()


def eta_numeric(tau: HPComplex, precision: int) -> HPComplex:
    """Dedekind eta at tau in the upper half-plane.

    eta(tau) = e^(2 pi i tau / 24) * prod_{n>=1} (1 - q^n), q = e^(2 pi i tau);
    the product is cut once the remaining tail is below the error budget
    (geometric bound in |q|).
    """
    work = precision + 12
    ctx = _context(work)
    re, im = _complex_parts(tau, ctx)
    if im <= 0:
        raise NotInUpperHalfPlane("eta requires Im(tau) > 0")
    with localcontext(ctx):
        two_pi = 2 * _pi_decimal(work)
        abs_q = (-two_pi * im).exp()
        s, c = _sincos(two_pi * re, work)
        q = (abs_q * c, abs_q * s)
        s24, c24 = _sincos(two_pi * re / 24, work)
        mag24 = (-two_pi * im / 24).exp()
        prefix = (mag24 * c24, mag24 * s24)
        tol = Decimal(10) ** -(precision + 6)
        tail_scale = (1 - abs_q) ** 2
        acc = (Decimal(1), Decimal(0))
        qn = q
        abs_qn = abs_q
        while abs_qn / tail_scale >= tol:
            acc = _cmul(acc, (1 - qn[0], -qn[1]))
            qn = _cmul(qn, q)
            abs_qn *= abs_q
        result = _cmul(prefix, acc)
    return _wrap_complex(result[0], result[1], precision, 3)


def goswami_numeric(k: int, q: HPComplex, precision: int) -> HPComplex:
    """Direct summation of G_2k at a numeric point q with |q| < 1.

    Terms are added until the geometric tail bound drops below the error
    budget; polynomial values are bounded by the sum of |coefficients|.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    work = precision + 12
    ctx = _context(work)
    qv = _complex_parts(q, ctx)
    with localcontext(ctx):
        abs_q = _cabs(qv)
        if abs_q >= 1:
            raise NotInUnitDisk("goswami_numeric requires |q| < 1")
        if abs_q == 0:
            return _wrap_complex(Decimal(0), Decimal(0), precision, 0)
        polys = build_polynomials(k)
        tol = Decimal(10) ** -(precision + 6)
        acc = (Decimal(0), Decimal(0))
        if k % 2 == 1:
            coeffs = [int(c) for c in polys.po.coefficients]
            # sum over the remaining n of the term bounds is geometric with
            # ratio |q|^2, hence the extra 1/(1-|q|^2) factor
            bound_c = Decimal(sum(abs(c) for c in coeffs)) / (1 - abs_q * abs_q)
            q2 = _cmul(qv, qv)
            w = qv  # q^(2n+1)
            abs_w = abs_q
            while True:
                tail = abs_w * bound_c / (1 - abs_w * abs_w) ** (2 * k)
                if tail < tol:
                    break
                pw = (Decimal(coeffs[-1]), Decimal(0))
                for cd in reversed(coeffs[:-1]):
                    pw = _cmul(pw, w)
                    pw = (pw[0] + cd, pw[1])
                w2 = _cmul(w, w)
                den = _cpow((1 - w2[0], -w2[1]), 2 * k)
                num = _cmul(w, pw)
                acc_term = _cdiv(num, den)
                acc = (acc[0] + acc_term[0], acc[1] + acc_term[1])
                w = _cmul(w, q2)
                abs_w *= abs_q * abs_q
        else:
            scale = Decimal(2 ** (2 * k - 1))
            coeffs = [int(c) for c in polys.pe.coefficients]
            bound_c = scale * Decimal(sum(abs(c) for c in coeffs)) / (1 - abs_q ** 4)
            q4 = _cpow(qv, 4)
            w = _cmul(qv, qv)  # q^(4n+2)
            abs_w = abs_q * abs_q
            while True:
                tail = abs_w * bound_c / (1 - abs_w) ** (2 * k)
                if tail < tol:
                    break
                pw = (Decimal(coeffs[-1]), Decimal(0))
                for cd in reversed(coeffs[:-1]):
                    pw = _cmul(pw, w)
                    pw = (pw[0] + cd, pw[1])
                den = _cpow((1 - w[0], -w[1]), 2 * k)
                num = _cmul(w, pw)
                term = _cdiv(num, den)
                acc = (acc[0] + scale * term[0], acc[1] + scale * term[1])
                w = _cmul(w, q4)
                abs_w *= abs_q ** 4
        return _wrap_complex(acc[0], acc[1], precision, 3)


@dataclass(frozen=True)
class LimitReport:
    """Scaled values of a Sun series near q=1 plus a linear Richardson estimate.

    The error model (linear in 1-q) is a toolkit decision, recorded in
    `method`; the extrapolation uses the last two sample points.
    """

    which: int
    precision: int
    rows: tuple[tuple[str, str], ...]  # (q, scaled value)
    extrapolated: Decimal
    method: str = "richardson-linear-in-(1-q)"

    def to_json_dict(self) -> dict:
        return {
            "schema": "gseries.limit_report/1",
            "which": self.which,
            "precision": self.precision,
            "rows": [{"q": q, "scaled": v} for q, v in self.rows],
            "extrapolated": str(self.extrapolated),
            "method": self.method,
        }


def _sun_sum(which: int, q: Decimal, precision: int) -> Decimal:
    with localcontext(_context(precision + 8)):
        one = Decimal(1)
        tol = Decimal(10) ** -(precision + 5)
        acc = Decimal(0)
        if which == 1:
            tail_den = 2 / (one - q) ** 3
            qn = one
            qo = q  # q^(2n+1)
            q2 = q * q
            while qn * tail_den >= tol:
                d = one - qo
                acc += qn * (one + qo) / (d * d)
                qn *= q
                qo *= q2
        else:
            tail_den = 6 / (one - q) ** 5
            qn = one  # q^(2n)
            qo = q
            q2 = q * q
            while qn * tail_den >= tol:
                d = one - qo
                d2 = d * d
                acc += qn * (one + 4 * qo + qo * qo) / (d2 * d2)
                qn *= q2
                qo *= q2
        return +acc


def sun_limit_probe(which: int, qs: Sequence, precision: int) -> LimitReport:
    """Probe the q->1 limit of a Sun series through scaled partial evaluations.

    For which=1 the scaling is (1-q)^2 (limit pi^2/4); for which=2 it is
    (1-q)^4 (limit pi^4/16).  qs must increase strictly toward 1.
    """
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    ctx = _context(precision + 8)
    points = [_dec(q, ctx) for q in qs]
    if not points:
        raise ValueError("need at least one sample point")
    for p in points:
        if not (0 < p < 1):
            raise ValueError("sample points must lie in (0, 1)")
    if any(b <= a for a, b in zip(points, points[1:])):
        raise ValueError("sample points must increase strictly")
    power = 2 if which == 1 else 4
    rows = []
    scaled = []
    with localcontext(ctx):
        for p in points:
            v = (1 - p) ** power * _sun_sum(which, p, precision)
            scaled.append(v)
            rows.append((str(p), str(_round_to(v, precision))))
        if len(points) >= 2:
            x1 = 1 - points[-2]
            x2 = 1 - points[-1]
            extrapolated = scaled[-1] + x2 * (scaled[-1] - scaled[-2]) / (x1 - x2)
        else:
            extrapolated = scaled[0]
    return LimitReport(
        which=which,
        precision=precision,
        rows=tuple(rows),
        extrapolated=_round_to(extrapolated, precision),
    )


def evaluate_qseries_numeric(series, q: HPComplex, precision: int) -> HPComplex:
    """Numerically evaluate an exact truncated QSeries at a point q.

    Used as the cross-check partner of goswami_numeric: the difference must
    stay below the truncation tail of the series.
    """
    work = precision + 10
    ctx = _context(work)
    qv = _complex_parts(q, ctx)
    with localcontext(ctx):
        acc = (Decimal(0), Decimal(0))
        for c in reversed(series.coefficients):
            acc = _cmul(acc, qv)
            if c:
                cd = _dec(c, ctx)
                acc = (acc[0] + cd, acc[1])
        lead = series.leading_exponent
        if lead != 0:
            # q^lead via exp(lead * log q): restrict to real positive q
            if qv[1] != 0 or qv[0] <= 0:
                raise ValueError("fractional lead requires real positive q")
            powv = (_dec(lead, ctx) * qv[0].ln()).exp()
            acc = (acc[0] * powv, acc[1] * powv)
        return _wrap_complex(acc[0], acc[1], precision, 3)
