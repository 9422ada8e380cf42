"""Command-line entry point.

Exit codes: 0 success, 2 invalid input, 3 certificate failed, 4 numerical
failure.
"""
import argparse
import logging
import math
import sys
from typing import Dict, List, Optional

import numpy as np

from cli.matrix_io import parse_matrix, write_matrix
from cli.plot import write_region_svg
from shared.config import settings
from shared.exceptions import InputError, NumspecError
from shared.schemas import CertificateDocument, HildebrandtEntry, RegionDocument
from shared.utils import atomic_write_text, format_number, to_json
from spectrum.matcore import NormSpec, eigenvalues
from spectrum.numspec import (
    GridSpec,
    build_region,
    certify_halfplane,
    numerical_bounds,
    numerical_radius,
    support_sweep,
    support_value,
)
from spectrum.renorm import hull_convergence_report
from spectrum.semigroup import norm_curve
from spectrum.zoo import list_examples, make_example

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CERTIFICATE_FAILED = 3


def _add_matrix_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--matrix", required=True, help="matrix file (JSON)")
    parser.add_argument("--p", default="2", help="norm exponent in [1, inf]; 'inf' for the maximum norm")
    parser.add_argument("--seed", type=int, default=None, help="random seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="numspec", description="Numerical spectra of complex matrices")
    parser.add_argument("--log-level", default=None, help="logging level (default from NUMSPEC_LOG_LEVEL)")
    parser.add_argument("--threads", type=int, default=None, help="worker threads (default NUMSPEC_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    region = sub.add_parser("region", help="sweep the support function and write the region")
    _add_matrix_args(region)
    region.add_argument("--angles", type=int, default=None, help="number of angles K")
    region.add_argument("--out", required=True, help="region JSON path")
    region.add_argument("--svg", default=None, help="optional SVG path")

    radius = sub.add_parser("radius", help="print the numerical radius")
    _add_matrix_args(radius)
    radius.add_argument("--angles", type=int, default=None)

    bounds = sub.add_parser("bounds", help="print s_n^theta")
    _add_matrix_args(bounds)
    bounds.add_argument("--theta", type=float, required=True, help="angle in radians")

    certify = sub.add_parser("certify", help="check the resolvent bound on a rotated half-plane")
    _add_matrix_args(certify)
    certify.add_argument("--theta", type=float, required=True)
    certify.add_argument("--omega", type=float, required=True)
    certify.add_argument("--grid", default=None, help="DxT: log-spaced distances by tangential offsets (default 40x10)")

    curve = sub.add_parser("curve", help="write t, ||e^{t e^{-i theta} A}|| as CSV")
    _add_matrix_args(curve)
    curve.add_argument("--theta", type=float, default=0.0)
    curve.add_argument("--tmax", type=float, required=True)
    curve.add_argument("--steps", type=int, required=True, help="uniform steps in (0, tmax]")
    curve.add_argument("--out", required=True)

    hildebrandt = sub.add_parser("hildebrandt", help="regions under Hildebrandt renorms for decreasing omega")
    _add_matrix_args(hildebrandt)
    hildebrandt.add_argument("--omegas", required=True, help="comma-separated, strictly decreasing")
    hildebrandt.add_argument("--angles", type=int, default=None)
    hildebrandt.add_argument("--fan", type=int, default=None, help="renormed directions (default: every angle)")
    hildebrandt.add_argument("--out", required=True)

    zoo = sub.add_parser("zoo", help="list or emit example matrices")
    group = zoo.add_mutually_exclusive_group(required=True)
    group.add_argument("--list", action="store_true")
    group.add_argument("--name")
    zoo.add_argument("--out", default=None)
    zoo.add_argument("--param", action="append", default=[], help="key=value example parameter")
    return parser


def _parse_params(items: List[str]) -> Dict[str, str]:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise InputError(f"parameter must look like key=value, got {item!r}")
        params[key.strip()] = value.strip()
    return params


def _parse_grid(text: Optional[str], A: np.ndarray) -> GridSpec:
    if text is None:
        return GridSpec.default_for(A)
    try:
        distances, offsets = (int(part) for part in text.lower().split("x"))
    except ValueError:
        raise InputError(f"grid must look like 40x10, got {text!r}")
    return GridSpec.default_for(A, distances, offsets)


def _parse_omegas(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InputError(f"invalid omega list {text!r}")


def cmd_region(args) -> int:
    A = parse_matrix(args.matrix)
    norm = NormSpec.lp(args.p)
    samples = support_sweep(A, norm, args.angles, args.seed, threads=args.threads)
    region = build_region(samples, norm_label=norm.label)
    doc = RegionDocument.from_region(region, norm.p)
    atomic_write_text(args.out, to_json(doc.model_dump(by_alias=True)))
    if args.svg:
        write_region_svg(args.svg, region, eigenvalues(A), title=f"p = {norm.label}")
    logger.info(f"region written to {args.out}: radius={region.radius:.10g}")
    return EXIT_OK


def cmd_radius(args) -> int:
    A = parse_matrix(args.matrix)
    norm = NormSpec.lp(args.p)
    region = build_region(support_sweep(A, norm, args.angles, args.seed, threads=args.threads))
    print(format_number(numerical_radius(region)))
    return EXIT_OK


def cmd_bounds(args) -> int:
    A = parse_matrix(args.matrix)
    norm = NormSpec.lp(args.p)
    sample = support_value(A, norm, args.theta, seed=args.seed)
    print(format_number(numerical_bounds([sample], args.theta)))
    return EXIT_OK


def cmd_certify(args) -> int:
    A = parse_matrix(args.matrix)
    norm = NormSpec.lp(args.p)
    cert = certify_halfplane(A, norm, args.theta, args.omega, _parse_grid(args.grid, A), seed=args.seed)
    sys.stdout.write(to_json(CertificateDocument.from_certificate(cert).model_dump()))
    if not cert.passed:
        logger.info(f"certificate failed: worst ratio {cert.worst_ratio:.10g} at lambda={cert.worst_lambda}")
        return EXIT_CERTIFICATE_FAILED
    return EXIT_OK


def cmd_curve(args) -> int:
    A = parse_matrix(args.matrix)
    norm = NormSpec.lp(args.p)
    if not (math.isfinite(args.tmax) and args.tmax > 0.0) or args.steps < 1:
        raise InputError("curve needs tmax > 0 and steps >= 1")
    ts = args.tmax * np.arange(1, args.steps + 1) / args.steps
    curve = norm_curve(A, norm, args.theta, ts, seed=args.seed, threads=args.threads)
    atomic_write_text(args.out, curve.to_csv())
    logger.info(f"curve written to {args.out}: {curve.ts.size} points, truncated={curve.truncated}")
    return EXIT_OK


def cmd_hildebrandt(args) -> int:
    A = parse_matrix(args.matrix)
    norm = NormSpec.lp(args.p)
    report = hull_convergence_report(A, norm, _parse_omegas(args.omegas), args.angles,
                                     fan=args.fan, seed=args.seed, threads=args.threads)
    records = [HildebrandtEntry(**record).model_dump() for record in report.as_records()]
    atomic_write_text(args.out, to_json(records))
    logger.info(f"hildebrandt report written to {args.out}: monotone={report.monotone}")
    return EXIT_OK


def cmd_zoo(args) -> int:
    if args.list:
        for name, notes, params in list_examples():
            extra = "; ".join(f"{key}: {doc}" for key, doc in params.items())
            print(f"{name}\t{notes}" + (f"\t[{extra}]" if extra else ""))
        return EXIT_OK
    if not args.out:
        raise InputError("zoo --name needs --out")
    example = make_example(args.name, _parse_params(args.param))
    write_matrix(args.out, example.matrix)
    return EXIT_OK


COMMANDS = {
    "region": cmd_region,
    "radius": cmd_radius,
    "bounds": cmd_bounds,
    "certify": cmd_certify,
    "curve": cmd_curve,
    "hildebrandt": cmd_hildebrandt,
    "zoo": cmd_zoo,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except NumspecError as e:
        logger.error(f"{args.command}: {e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
