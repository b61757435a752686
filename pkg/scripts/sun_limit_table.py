#!/usr/bin/env python3
"""Tabulate the scaled Sun series near q = 1 and extrapolate toward the
limits pi^2/4 and pi^4/16."""

import argparse
import decimal

from gseries.highprec import pi, sun_limit_probe


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--prec", type=int, default=28)
    parser.add_argument(
        "--points", default="0.9,0.99,0.999", help="comma-separated q values increasing toward 1"
    )
    args = parser.parse_args()
    qs = args.points.split(",")

    with decimal.localcontext(decimal.Context(prec=args.prec + 8)):
        targets = {1: pi(args.prec + 5).value ** 2 / 4, 2: pi(args.prec + 5).value ** 4 / 16}
        names = {1: "pi^2/4", 2: "pi^4/16"}
        for which in (1, 2):
            report = sun_limit_probe(which, qs, args.prec)
            print(f"series {which}, scaling (1-q)^{2 * which}:")
            for q, v in report.rows:
                print(f"  q = {q:<8} scaled = {v}")
            rel = abs(report.extrapolated - targets[which]) / targets[which]
            print(f"  {report.method}: {report.extrapolated}")
            print(f"  target {names[which]} = {+targets[which]}  (rel err {rel:.2E})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
