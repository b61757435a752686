import decimal
from decimal import Decimal
from fractions import Fraction

import pytest
from sympy.functions.combinatorial.numbers import kronecker_symbol

from gseries.cm_eval import (
    CM_POINT_LABELS,
    CMPoint,
    Sqrt2,
    class_number,
    closed_form_coefficient,
    closed_form_value,
    discriminant_data,
    evaluate_at_cm,
    is_fundamental_discriminant,
    omega_constants,
    omega_multiple_coefficient,
    recognize_quadratic,
)
from gseries.errors import NotFundamental, NotInField, NotInUpperHalfPlane
from gseries.highprec import eta_numeric, gamma_rational, pi

from conftest import reduced_forms


def ctx(prec):
    return decimal.localcontext(decimal.Context(prec=prec, Emax=10**8, Emin=-(10**8)))


FUNDAMENTAL_TO_200 = [
    D for D in range(-3, -201, -1) if is_fundamental_discriminant(D)
]


class TestDiscriminants:
    def test_fundamentality_classification(self):
        assert is_fundamental_discriminant(-3)
        assert is_fundamental_discriminant(-4)
        assert is_fundamental_discriminant(-8)
        assert not is_fundamental_discriminant(-12)
        assert not is_fundamental_discriminant(-9)
        assert not is_fundamental_discriminant(-16)
        assert not is_fundamental_discriminant(5)

    def test_not_fundamental_raises(self):
        with pytest.raises(NotFundamental):
            discriminant_data(-12)
        with pytest.raises(NotFundamental):
            discriminant_data(4)

    def test_minus_four(self):
        d = discriminant_data(-4)
        assert d.h == 1
        assert d.h_prime == Fraction(1, 2)
        assert d.chi[1] == 1 and d.chi[2] == 0 and d.chi[3] == -1

    def test_minus_three(self):
        d = discriminant_data(-3)
        assert d.h == 1
        assert d.h_prime == Fraction(1, 3)

    def test_minus_23_class_number(self):
        # reduced forms (1,1,6), (2,1,3), (2,-1,3)
        assert discriminant_data(-23).h == 3
        assert len(reduced_forms(-23)) == 3

    @pytest.mark.parametrize("D", FUNDAMENTAL_TO_200)
    def test_class_number_against_form_scan(self, D):
        assert class_number(D) == len(reduced_forms(D))

    @pytest.mark.parametrize("D", FUNDAMENTAL_TO_200[:12])
    def test_chi_against_kronecker_oracle(self, D):
        d = discriminant_data(D)
        for j in range(1, -D):
            assert d.chi[j] == kronecker_symbol(D, j)

    def test_chi_vanishes_exactly_on_common_factors(self):
        import math

        d = discriminant_data(-15)
        for j in range(1, 15):
            assert (d.chi[j] == 0) == (math.gcd(j, 15) > 1)


class TestOmegaConstants:
    def test_omega_minus4_closed_form(self):
        p = 50
        data = discriminant_data(-4)
        omega, _ = omega_constants(data, p)
        with ctx(p + 10):
            target = gamma_rational(1, 4, p + 5).value ** 2 / (
                Decimal(2).sqrt() * (pi(p + 5).value ** 3).sqrt()
            )
            assert abs(omega.value - target) < Decimal(10) ** (8 - p)

    @pytest.mark.parametrize("D", [-3, -4, -7, -8, -11, -15, -19, -20])
    def test_squared_relation(self, D):
        p = 50
        data = discriminant_data(D)
        omega, big = omega_constants(data, p)
        with ctx(p + 5):
            lhs = omega.value**2
            rhs = 2 * (-D) * big.value**2
            assert abs(lhs - rhs) < Decimal("1e-35") * max(lhs, 1)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_power_ratio(self, k):
        p = 50
        for D in (-4, -7):
            data = discriminant_data(D)
            omega, big = omega_constants(data, p)
            with ctx(p + 5):
                ratio = omega.value ** (2 * k) / big.value ** (2 * k)
                assert abs(ratio - (2 * (-D)) ** k) < Decimal(10) ** (12 - p)

    def test_omega_half_is_eta_i(self):
        p = 50
        _, big = omega_constants(discriminant_data(-4), p + 5)
        eta_i = eta_numeric(CM_POINT_LABELS["i"].numeric(p + 10), p + 5)
        with ctx(p + 10):
            assert abs(big.value.sqrt() - eta_i.real.value) < Decimal(10) ** -(p - 10)


class TestEtaValueTable:
    """The four classical eta values as multiples of Omega_{-4}^(1/2)."""

    @pytest.mark.parametrize(
        "label,log2_num,log2_den,quartic_eps",
        [
            ("i/2", 1, 8, 0),
            ("i", 0, 1, 0),
            ("2i", -3, 8, 0),
            ("4i", -13, 16, 1),
        ],
    )
    def test_table(self, label, log2_num, log2_den, quartic_eps):
        p = 55
        _, big = omega_constants(discriminant_data(-4), p)
        v = eta_numeric(CM_POINT_LABELS[label].numeric(p + 5), p)
        with ctx(p + 10):
            expected = big.value.sqrt() * (Decimal(2).ln() * log2_num / log2_den).exp()
            if quartic_eps:
                expected *= ((Decimal(2).sqrt() - 1).ln() / 4).exp()
            assert abs(v.real.value - expected) < Decimal("1e-40")
            assert abs(v.imag.value) < Decimal("1e-40")

    @pytest.mark.parametrize(
        "label,exp_num,exp_den,pow2_num,pow2_den,quartic_eps",
        [
            ("i/2", 1, 24, -3, 8, 0),
            ("i", 1, 12, -1, 2, 0),
            ("2i", 1, 6, -7, 8, 0),
            ("4i", 1, 3, -21, 16, 1),
        ],
    )
    def test_weber_f_values(self, label, exp_num, exp_den, pow2_num, pow2_den, quartic_eps):
        # f(-q) = q^(-1/24) eta(tau) against pi^(1/4) e^(pi*c) / (2^d Gamma(3/4))
        p = 50
        tau = CM_POINT_LABELS[label]
        v = eta_numeric(tau.numeric(p + 10), p + 5)
        with ctx(p + 10):
            piv = pi(p + 5).value
            f_value = v.real.value * (piv * Decimal(exp_num) / Decimal(exp_den)).exp()
            target = (
                (piv.ln() / 4).exp()
                * (piv * Decimal(exp_num) / Decimal(exp_den)).exp()
                / ((Decimal(2).ln() * -pow2_num / pow2_den).exp() * gamma_rational(3, 4, p + 5).value)
            )
            if quartic_eps:
                target *= ((Decimal(2).sqrt() - 1).ln() / 4).exp()
            assert abs(f_value - target) < Decimal(10) ** -(p - 10)


class TestSqrt2Field:
    def test_arithmetic(self):
        a = Sqrt2(-1, 1)  # sqrt(2) - 1
        assert a * a == Sqrt2(3, -2)
        assert a * a.inverse() == Sqrt2(1, 0)
        assert a ** -2 == Sqrt2(3, 2)  # (sqrt2+1)^2
        assert (a + 1) * (a + 1) == Sqrt2(2, 0)

    def test_numeric_embedding(self):
        v = Sqrt2(Fraction(1, 3), Fraction(-2, 7)).to_decimal(40)
        with ctx(45):
            target = Decimal(1) / 3 - 2 * Decimal(2).sqrt() / 7
            assert abs(v - target) < Decimal("1e-38")


class TestClosedForms:
    @pytest.mark.parametrize(
        "k,point,expected",
        [
            (3, "e^-pi", "0.0633804556"),
            (3, "e^-2pi", "0.0018690318"),
            (4, "e^-pi", "0.2980189122"),
            (4, "e^-2pi", "0.0004465790"),
        ],
    )
    def test_ten_digit_values(self, k, point, expected):
        v = closed_form_value(k, point, 64)
        assert abs(v.value - Decimal(expected)) < Decimal("1e-10")

    def test_exact_coefficients_k3(self):
        # at e^-pi: Z(6)/2^21 + 2^-6 (1/2^5 - 16/2^10) = 3/2^13, all rational
        assert closed_form_coefficient(3, "e^-pi") == Sqrt2(Fraction(3, 2**13), 0)
        # at e^-2pi the sqrt(2) part is nonzero
        c = closed_form_coefficient(3, "e^-2pi")
        assert c == Sqrt2(Fraction(99, 2**19), Fraction(-66, 2**19))

    def test_omega_multiple_is_2k_scaled(self):
        for k in (1, 2, 3, 4):
            for point in ("e^-pi", "e^-2pi"):
                assert (
                    omega_multiple_coefficient(k, point)
                    == Fraction(2**k) * closed_form_coefficient(k, point)
                )

    def test_k1_value(self):
        # empty alpha sum: G_2(e^-pi) = 2^-7 Gamma(1/4)^4 / pi^3
        p = 60
        v = closed_form_value(1, "e^-pi", p)
        with ctx(p + 10):
            target = gamma_rational(1, 4, p + 5).value ** 4 / pi(p + 5).value ** 3 / 128
            assert abs(v.value - target) < Decimal(10) ** (8 - p)


class TestRecognition:
    def test_sqrt2_itself(self):
        with ctx(100):
            x = Decimal(2).sqrt()
        assert recognize_quadratic(x, 2, 2**20, 80) == (0, 1, -1)

    def test_quadratic_unit_square(self):
        with ctx(100):
            x = (Decimal(2).sqrt() - 1) ** 2  # 3 - 2 sqrt(2)
        assert recognize_quadratic(x, 2, 2**20, 80) == (-3, 2, 1)

    def test_rational(self):
        assert recognize_quadratic(Decimal("0.375"), 2, 2**20, 80) == (-3, 0, 8)

    def test_no_relation_for_pi(self):
        x = pi(100).value
        assert recognize_quadratic(x, 2, 10**6, 80) is None

    def test_unsupported_field(self):
        with pytest.raises(ValueError):
            recognize_quadratic(Decimal(1), 3, 100, 80)

    def test_example_height_bound(self):
        # ratio at k=3, e^-2pi is (99 - 66 sqrt2)/2^16: height 2^16 < 2^30
        coeff = omega_multiple_coefficient(3, "e^-2pi")
        x = coeff.to_decimal(100)
        rel = recognize_quadratic(x, 2, 2**30, 80)
        assert rel == (-99, 66, 65536)


class TestEvaluateAtCM:
    def test_requires_matching_field(self):
        data = discriminant_data(-4)
        with pytest.raises(NotInField):
            evaluate_at_cm(1, CMPoint(Fraction(0), Fraction(1, 2), -8), data, 40)

    def test_requires_upper_half_plane(self):
        data = discriminant_data(-4)
        with pytest.raises(NotInUpperHalfPlane):
            evaluate_at_cm(1, CMPoint(Fraction(0), Fraction(-1, 2), -4), data, 40)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    @pytest.mark.parametrize("label,point", [("i/2", "e^-pi"), ("i", "e^-2pi")])
    def test_matches_closed_form(self, k, label, point):
        p = 64
        data = discriminant_data(-4)
        report = evaluate_at_cm(k, CM_POINT_LABELS[label], data, p)
        assert report.closed_form_match is True
        cf = closed_form_value(k, point, p)
        with ctx(p + 5):
            assert abs(report.value.real.value - cf.value) < Decimal(10) ** -(p - 12)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    @pytest.mark.parametrize("label,point", [("i/2", "e^-pi"), ("i", "e^-2pi")])
    def test_recognized_ratio_is_exact_coefficient(self, k, label, point):
        p = 80
        data = discriminant_data(-4)
        report = evaluate_at_cm(k, CM_POINT_LABELS[label], data, p)
        assert report.recognized is not None
        assert report.recognized_ratio == omega_multiple_coefficient(k, point)

    def test_recognized_value_reconstructs(self):
        p = 70
        data = discriminant_data(-4)
        report = evaluate_at_cm(3, CM_POINT_LABELS["i"], data, p)
        with ctx(p + 5):
            rebuilt = report.recognized_ratio.to_decimal(p + 5) * report.omega_power.value
            assert abs(rebuilt - report.value.real.value) < Decimal(10) ** -(p - 15)

    def test_report_serializes(self):
        report = evaluate_at_cm(1, CM_POINT_LABELS["i"], discriminant_data(-4), 50)
        doc = report.to_json_dict()
        assert doc["k"] == 1
        assert doc["tau"]["D"] == -4
        assert "value" in doc and "ratio" in doc

    def test_complex_point_off_imaginary_axis(self):
        # x != 0 gives a genuinely complex q; no closed-form comparison applies
        report = evaluate_at_cm(
            2, CMPoint(Fraction(1, 3), Fraction(1, 2), -4), discriminant_data(-4), 48
        )
        assert report.value.imag.value != 0
        assert report.closed_form_match is None
