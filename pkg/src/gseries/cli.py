"""Command-line front end.

Subcommands: expand (series coefficients), alphas (decomposition table),
eval (CM evaluation with closed-form comparison), verify (invariant suites).

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 bad discriminant, 4 bad CM point.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import cache, cm_eval, combinatorics, modular, qseries, verification
from .errors import NotFundamental, NotInField, NotInUpperHalfPlane
from .exact_core import QSeries
from .highprec import DEFAULT_PRECISION

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_ARGS = 2
EXIT_BAD_DISCRIMINANT = 3
EXIT_BAD_CM_POINT = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gseries",
        description="Exact q-series, F/theta decompositions, and CM evaluations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser("expand", help="print coefficients of G_2k")
    p_expand.add_argument("--k", type=int, required=True)
    p_expand.add_argument("--order", type=int, required=True)
    p_expand.add_argument("--format", choices=["json", "csv", "pretty"], default="pretty")
    _add_cache_flags(p_expand)

    p_alphas = sub.add_parser("alphas", help="decomposition coefficients and Z(2k)")
    p_alphas.add_argument("--k", type=int, required=True)
    p_alphas.add_argument("--order", type=int, default=None)
    p_alphas.add_argument("--format", choices=["json", "pretty"], default="pretty")
    _add_cache_flags(p_alphas)

    p_eval = sub.add_parser("eval", help="evaluate G_2k at a CM point")
    p_eval.add_argument("--k", type=int, required=True)
    p_eval.add_argument(
        "--tau",
        required=True,
        help="label (i/2, i, 2i, 4i) or exact coordinates x,y meaning tau = x + y*sqrt(D)",
    )
    p_eval.add_argument("--D", type=int, default=-4)
    p_eval.add_argument("--prec", type=int, default=DEFAULT_PRECISION)
    p_eval.add_argument("--format", choices=["json", "pretty"], default="pretty")
    p_eval.add_argument("--no-timestamp", action="store_true")

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument(
        "--suite", choices=["series", "modular", "cm", "sun", "all"], default="all"
    )
    p_verify.add_argument("--order", type=int, default=None)
    p_verify.add_argument("--prec", type=int, default=None)
    p_verify.add_argument("--format", choices=["json", "pretty"], default="pretty")
    return parser


def _add_cache_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--cache-dir", type=Path, default=None)
    p.add_argument("--no-timestamp", action="store_true")


def _cached_goswami(k: int, order: int, args) -> QSeries:
    payload = cache.load_or_compute(
        "goswami",
        k,
        order,
        lambda: qseries.goswami_series(k, order).to_json_dict(),
        cache_dir=args.cache_dir,
        enabled=not args.no_cache,
    )
    return QSeries.from_json_dict(payload)


def _meta(args) -> dict:
    meta = {"schema": "gseries.cli/1"}
    if not getattr(args, "no_timestamp", False):
        meta["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return meta


def cmd_expand(args) -> int:
    if not (1 <= args.k <= 16) or not (0 <= args.order <= 2000):
        print("expand: need 1 <= k <= 16 and 0 <= order <= 2000", file=sys.stderr)
        return EXIT_BAD_ARGS
    series = _cached_goswami(args.k, args.order, args)
    if args.format == "json":
        doc = _meta(args)
        doc["name"] = "goswami"
        doc["k"] = args.k
        doc["series"] = series.to_json_dict()
        print(json.dumps(doc, sort_keys=True))
    elif args.format == "csv":
        print("exponent,numerator,denominator")
        for i, c in enumerate(series.coefficients):
            e = series.leading_exponent + i
            print(f"{e},{c.numerator},{c.denominator}")
    else:
        terms = [
            f"{c}*q^{series.leading_exponent + i}"
            for i, c in enumerate(series.coefficients)
            if c != 0
        ]
        body = " + ".join(terms) if terms else "0"
        print(f"G_{2*args.k}(q) = {body} + O(q^{series.leading_exponent + series.order + 1})")
    return EXIT_OK


def cmd_alphas(args) -> int:
    if args.k < 1:
        print("alphas: need k >= 1", file=sys.stderr)
        return EXIT_BAD_ARGS
    k = args.k
    order = args.order if args.order is not None else 4 * k + 20
    if order < k:
        print("alphas: need order >= k", file=sys.stderr)
        return EXIT_BAD_ARGS
    d = modular.decompose(_cached_goswami(k, order, args), k, order)
    avals = d.alphas()
    z_dec = d.c[k]
    z_bern = combinatorics.zeta_constant(k)
    z_zeta = combinatorics.zeta_constant_zeta_form(k)
    mismatch = z_zeta != z_bern
    if args.format == "json":
        doc = _meta(args)
        doc.update(
            {
                "k": k,
                "order": order,
                "alphas": [f"{a.numerator}/{a.denominator}" for a in avals],
                "zeta_bernoulli_form": f"{z_bern.numerator}/{z_bern.denominator}",
                "zeta_zeta_form": f"{z_zeta.numerator}/{z_zeta.denominator}",
                "zeta_from_decomposition": f"{z_dec.numerator}/{z_dec.denominator}",
                "zeta_forms_mismatch": mismatch,
            }
        )
        print(json.dumps(doc, sort_keys=True))
    else:
        body = ", ".join(str(a) for a in avals) if avals else "(empty)"
        print(f"alpha_{2*k}(1..{k-1}) = {body}")
        print(f"Z({2*k}) [Bernoulli form]     = {z_bern}")
        print(f"Z({2*k}) [zeta/pi^2k form]    = {z_zeta}")
        print(f"Z({2*k}) [decomposition c_k]  = {z_dec}")
        if mismatch:
            print(
                f"note: the two printed forms disagree by a factor {z_zeta / z_bern}; "
                "the Bernoulli form matches the decomposition"
            )
    if z_dec != z_bern:
        print("alphas: decomposition oracle disagrees with the Bernoulli form", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def _parse_tau(text: str, D: int) -> cm_eval.CMPoint:
    if text in cm_eval.CM_POINT_LABELS:
        return cm_eval.CM_POINT_LABELS[text]
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"tau must be a label or 'x,y' exact coordinates, got {text!r}")
    return cm_eval.CMPoint(Fraction(parts[0]), Fraction(parts[1]), D)


def cmd_eval(args) -> int:
    if args.k < 1 or args.prec < 20:
        print("eval: need k >= 1 and prec >= 20", file=sys.stderr)
        return EXIT_BAD_ARGS
    try:
        data = cm_eval.discriminant_data(args.D)
    except NotFundamental as exc:
        print(f"eval: {exc}", file=sys.stderr)
        return EXIT_BAD_DISCRIMINANT
    try:
        tau = _parse_tau(args.tau, args.D)
        report = cm_eval.evaluate_at_cm(args.k, tau, data, args.prec)
    except (ValueError, NotInField, NotInUpperHalfPlane) as exc:
        print(f"eval: {exc}", file=sys.stderr)
        return EXIT_BAD_CM_POINT
    if args.format == "json":
        doc = _meta(args)
        doc["report"] = report.to_json_dict()
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"G_{2*args.k} at tau = {tau.x} + {tau.y}*sqrt({tau.D}), {args.prec} digits")
        print(f"value = {report.value.real.to_string()}")
        if report.value.imag.value != 0:
            print(f"        + {report.value.imag.to_string()} i")
        print(f"omega_D^{2*args.k} = {report.omega_power.to_string()}")
        print(f"ratio = {report.ratio.real.to_string()}")
        if report.recognized is not None:
            p, q, r = report.recognized
            print(
                f"recognized: {p} + {q}*sqrt(2) + {r}*ratio = 0  "
                f"(ratio = {report.recognized_ratio.u} + {report.recognized_ratio.v}*sqrt(2))"
            )
        if report.closed_form_match is not None:
            print("closed form: MATCH" if report.closed_form_match else "closed form: NO MATCH")
    return EXIT_OK


def cmd_verify(args) -> int:
    names = ["series", "modular", "cm", "sun"] if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        fn = verification.SUITES[name]
        kwargs = {}
        if name in ("series", "modular") and args.order is not None:
            kwargs["order"] = args.order
        if name in ("cm", "sun") and args.prec is not None:
            kwargs["precision"] = args.prec
        results.extend(fn(**kwargs))
    failed = [r for r in results if not r.passed and not r.informational]
    for r in results:
        if args.format == "json":
            print(json.dumps(r.to_json_dict(), sort_keys=True))
        else:
            status = "PASS" if r.passed else "FAIL"
            if r.informational:
                status = "NOTE"
            print(f"{status} {r.name}: {r.detail}")
    if args.format != "json":
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_ARGS if exc.code not in (0, None) else EXIT_OK
    handlers = {
        "expand": cmd_expand,
        "alphas": cmd_alphas,
        "eval": cmd_eval,
        "verify": cmd_verify,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
