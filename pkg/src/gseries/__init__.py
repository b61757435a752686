"""Exact q-series toolkit: the Goswami-Sun family G_2k on Gamma0(4), its
F/theta decomposition and eta-quotient identities, and arbitrary-precision
evaluation at CM points against Gamma(1/4)/pi closed forms."""

from .combinatorics import (
    GoswamiPolynomials,
    bernoulli,
    build_polynomials,
    stirling2,
    zeta_constant,
    zeta_constant_zeta_form,
)
from .cm_eval import (
    CMEvaluationReport,
    CMPoint,
    CM_POINT_LABELS,
    DiscriminantData,
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
from .exact_core import (
    Poly,
    QSeries,
    Rational,
    pochhammer_series,
    reciprocal_binomial_series,
    series_div,
    series_mul,
    substitute_qpower,
)
from .highprec import (
    DEFAULT_PRECISION,
    HPComplex,
    HPReal,
    LimitReport,
    agm,
    eta_numeric,
    evaluate_qseries_numeric,
    exp_complex,
    gamma_rational,
    goswami_numeric,
    hp_complex,
    hp_real,
    pi,
    rel_diff,
    sun_limit_probe,
)
from .modular import (
    CuspReport,
    ExactCheckReport,
    FThetaDecomposition,
    alphas,
    cusp_certificate,
    decompose,
    eta_identity_check,
    f_theta_basis,
    reconstruct,
    zeta_from_decomposition,
)
from .qseries import (
    EtaQuotient,
    cusp_form_series,
    eta_quotient_series,
    f_eisenstein_series,
    goswami_series,
    psi_series,
    psi_square_power,
    sigma1,
    sun_series,
    theta_series,
)

__version__ = "0.1.0"
