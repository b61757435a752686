#!/usr/bin/env python3
"""Print the decomposition table for k = 1..8 and the classical CM
evaluations of G_6 and G_8, each computed by direct summation and through
the Gamma(1/4)^4/pi^3 closed form."""

import argparse

from gseries.cm_eval import (
    CM_POINT_LABELS,
    closed_form_value,
    discriminant_data,
    evaluate_at_cm,
    omega_multiple_coefficient,
)
from gseries.combinatorics import zeta_constant, zeta_constant_zeta_form
from gseries.modular import alphas


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--prec", type=int, default=64)
    parser.add_argument("--max-k", type=int, default=8)
    args = parser.parse_args()

    print("k | alpha(1..k-1) | Z(2k) [Bernoulli] | Z(2k) [zeta-form]")
    for k in range(1, args.max_k + 1):
        a = alphas(k, 4 * k + 20, verify=False)
        body = ", ".join(str(x) for x in a) if a else "-"
        print(f"{k} | {body} | {zeta_constant(k)} | {zeta_constant_zeta_form(k)}")
    print()

    data = discriminant_data(-4)
    for k in (3, 4):
        for label, point in (("i/2", "e^-pi"), ("i", "e^-2pi")):
            report = evaluate_at_cm(k, CM_POINT_LABELS[label], data, args.prec)
            closed = closed_form_value(k, point, args.prec)
            coeff = omega_multiple_coefficient(k, point)
            print(f"G_{2*k}({point}):")
            print(f"  summation   = {report.value.real.to_string()}")
            print(f"  closed form = {closed.to_string()}")
            print(f"  / omega^{2*k} = {coeff.u} + {coeff.v}*sqrt(2)   "
                  f"(match: {report.closed_form_match})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
