"""Command-line front end.

Subcommands: density, compare, pointset, thomson, quantize, series and
constants.  Angles accept plain radians or pi-literals ("pi/3", "2pi/3",
"0.5pi").  Every command is deterministic given its arguments and --seed;
CSV output carries '#'-prefixed provenance lines before the header row and
floats with 17 significant digits, JSON output is UTF-8 with sorted keys.
Exit codes: 0 success, 2 usage or precondition violation (the message
names the violated precondition), 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .classes import (
    ConjugacyClass,
    SphericalClassCompact,
    SphericalClassNC,
    descriptor_to_json,
)
from .densities import (
    conj_product_density,
    constants_report,
    density_curve,
    noncompact_product_density,
    product_density_for,
    spherical_product_density,
)
from .errors import ClassconvError, InvalidParams, NumericalError
from .experiments import compare_experiment, stream_rng
from .groups import Flavor
from .harmonic import series_diagnostics
from .pointsets import (
    icosahedral_lattice,
    minimize_energy,
    polar_points,
    random_points,
    riesz_energy,
)
from .quantize import quantization_consistency


def parse_angle(text):
    """Radians, or a pi-literal: 'pi', 'pi/3', '2pi/3', '0.5pi', '-pi/4'."""
    t = str(text).strip().lower().replace(" ", "")
    if "pi" not in t:
        try:
            return float(t)
        except ValueError:
            raise InvalidParams(f"cannot parse angle {text!r}") from None
    head, _, tail = t.partition("pi")
    if head in ("", "+"):
        coef = 1.0
    elif head == "-":
        coef = -1.0
    else:
        try:
            coef = float(head)
        except ValueError:
            raise InvalidParams(f"cannot parse angle {text!r}") from None
    if tail == "":
        div = 1.0
    elif tail.startswith("/"):
        try:
            div = float(tail[1:])
        except ValueError:
            raise InvalidParams(f"cannot parse angle {text!r}") from None
    else:
        raise InvalidParams(f"cannot parse angle {text!r}")
    return coef * math.pi / div


def _classes_for(kind, p1, p2):
    if kind == "conj":
        return ConjugacyClass(parse_angle(p1)), ConjugacyClass(parse_angle(p2))
    if kind == "sphA":
        return SphericalClassCompact(float(p1)), SphericalClassCompact(float(p2))
    if kind == "sphB":
        return (
            SphericalClassNC(float(p1), Flavor.REAL),
            SphericalClassNC(float(p2), Flavor.REAL),
        )
    if kind == "sphC":
        return (
            SphericalClassNC(float(p1), Flavor.COMPLEX),
            SphericalClassNC(float(p2), Flavor.COMPLEX),
        )
    raise InvalidParams(f"unknown kind {kind!r} (conj, sphA, sphB, sphC)")


def _density_for(kind, p1, p2):
    if kind == "conj":
        return conj_product_density(parse_angle(p1), parse_angle(p2))
    if kind == "sphA":
        return spherical_product_density(float(p1), float(p2))
    if kind == "sphB":
        return noncompact_product_density(float(p1), float(p2), Flavor.REAL)
    if kind == "sphC":
        return noncompact_product_density(float(p1), float(p2), Flavor.COMPLEX)
    raise InvalidParams(f"unknown kind {kind!r} (conj, sphA, sphB, sphC)")


def _fmt(x):
    return f"{float(x):.17g}"


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _provenance_lines(args_list, seed):
    return [
        f"# command: classconv {' '.join(args_list)}",
        f"# seed: {seed}",
        f"# version: {__version__}",
    ]


def _write_csv(out, header, columns, args_list, seed):
    lines = _provenance_lines(args_list, seed)
    lines.append(",".join(header))
    rows = zip(*columns)
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    _emit("\n".join(lines) + "\n", out)


def _write_json(out, payload, args_list, seed):
    payload = dict(payload)
    payload["provenance"] = {
        "command": "classconv " + " ".join(args_list),
        "seed": seed,
        "version": __version__,
    }
    _emit(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n", out)


def _cmd_density(args, argv):
    density = _density_for(args.kind, args.p1, args.p2)
    curve = density_curve(density, grid_size=args.grid)
    if args.format == "json":
        payload = {
            "kind": density.kind.value,
            "params": list(density.params),
            "support": [density.support.lo, density.support.hi],
            "norm_constant": density.norm_constant,
            "curve": {k: [float(v) for v in vals] for k, vals in curve.items()},
        }
        _write_json(args.out, payload, argv, args.seed)
        return 0
    _write_csv(
        args.out,
        ["point", "pdf", "cdf", "raw_paper_value"],
        [curve["point"], curve["pdf"], curve["cdf"], curve["raw_paper_value"]],
        argv,
        args.seed,
    )
    return 0


def _cmd_compare(args, argv):
    class_a, class_b = _classes_for(args.kind, args.p1, args.p2)
    report, hist = compare_experiment(
        class_a, class_b, args.n, args.seed, streams=args.threads
    )
    if args.hist_out:
        density = product_density_for(class_a, class_b)
        centers = hist.centers
        _write_csv(
            args.hist_out,
            ["param", "count", "pdf_analytic"],
            [centers, hist.counts, np.asarray(density.pdf(centers), dtype=float)],
            argv,
            args.seed,
        )
    payload = report.to_json_dict()
    payload["class_a"] = descriptor_to_json(class_a)
    payload["class_b"] = descriptor_to_json(class_b)
    _write_json(args.out, payload, argv, args.seed)
    return 0


def _cmd_pointset(args, argv):
    if args.method == "icosa":
        if args.p2 is None:
            raise InvalidParams("icosa needs two integers m n")
        ps = icosahedral_lattice(int(args.p1), int(args.p2))
    elif args.method == "polar":
        ps = polar_points(int(args.p1))
    elif args.method == "random":
        ps = random_points(int(args.p1), stream_rng(args.seed, 0))
    else:
        raise InvalidParams(f"unknown method {args.method!r} (icosa, polar, random)")
    if args.format == "json":
        payload = {
            "method": ps.method.value,
            "n": len(ps),
            "points": [[float(v) for v in p] for p in ps.points],
        }
        _write_json(args.out, payload, argv, args.seed)
        return 0
    pts = ps.points
    _write_csv(args.out, ["x", "y", "z"], [pts[:, 0], pts[:, 1], pts[:, 2]], argv,
               args.seed)
    return 0


def _cmd_thomson(args, argv):
    if args.restarts < 1:
        raise InvalidParams(f"restarts = {args.restarts!r}, expected >= 1")
    best = None
    best_report = None
    for restart in range(args.restarts):
        rng = stream_rng(args.seed, restart)
        start = random_points(args.n_points, rng)
        out = minimize_energy(start, s=args.s, max_iters=args.max_iters, tol=args.tol)
        report = riesz_energy(out, s=args.s)
        if best is None or report.energy < best:
            best = report.energy
            best_report = report
    payload = {
        "n": args.n_points,
        "s": args.s,
        "restarts": args.restarts,
        "best_energy": best_report.energy,
        "gradient_norm": best_report.gradient_norm,
    }
    _write_json(args.out, payload, argv, args.seed)
    return 0


def _cmd_quantize(args, argv):
    report = quantization_consistency(args.n_label, args.m_label, strict=args.strict)
    _write_json(args.out, report.to_json_dict(), argv, args.seed)
    return 0


def _cmd_series(args, argv):
    diag = series_diagnostics(
        parse_angle(args.alpha), parse_angle(args.beta), parse_angle(args.theta),
        args.terms,
    )
    _write_csv(
        args.out,
        ["K", "partial", "cesaro", "reference"],
        [diag["K"], diag["partial"], diag["cesaro"], diag["reference"]],
        argv,
        args.seed,
    )
    return 0


def _cmd_constants(args, argv):
    _write_json(args.out, {"constants": constants_report()}, argv, args.seed)
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="classconv",
        description="Product densities and experiments for classes of 2x2 matrix groups",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="csv"):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--n", dest="n", type=int, default=100_000)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("density", help="sampled pdf/cdf curve over the support")
    p.add_argument("kind", choices=("conj", "sphA", "sphB", "sphC"))
    p.add_argument("p1")
    p.add_argument("p2")
    p.add_argument("--grid", type=int, default=200)
    common(p)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("compare", help="Monte-Carlo experiment scored against the law")
    p.add_argument("kind", choices=("conj", "sphA", "sphB", "sphC"))
    p.add_argument("p1")
    p.add_argument("p2")
    p.add_argument("--hist-out", default=None)
    common(p, default_format="json")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("pointset", help="sphere point sets (icosa m n | polar N | random N)")
    p.add_argument("method", choices=("icosa", "polar", "random"))
    p.add_argument("p1")
    p.add_argument("p2", nargs="?", default=None)
    common(p)
    p.set_defaults(func=_cmd_pointset)

    p = sub.add_parser("thomson", help="Riesz energy minimization with restarts")
    p.add_argument("n_points", type=int)
    p.add_argument("s", type=float)
    p.add_argument("restarts", type=int)
    p.add_argument("--max-iters", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1e-7)
    common(p, default_format="json")
    p.set_defaults(func=_cmd_thomson)

    p = sub.add_parser("quantize", help="tensor-product labels vs continuous support")
    p.add_argument("n_label", type=int)
    p.add_argument("m_label", type=int)
    p.add_argument("--strict", action="store_true")
    common(p, default_format="json")
    p.set_defaults(func=_cmd_quantize)

    p = sub.add_parser("series", help="character-series diagnostics at one angle")
    p.add_argument("alpha")
    p.add_argument("beta")
    p.add_argument("theta")
    p.add_argument("terms", type=int)
    common(p)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("constants", help="normalization constants report")
    common(p, default_format="json")
    p.set_defaults(func=_cmd_constants)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, argv)
    except NumericalError as exc:
        print(f"error: NumericalError: {exc}", file=sys.stderr)
        return 3
    except ClassconvError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OverflowError) as exc:
        print(f"error: InvalidParams: {exc}", file=sys.stderr)
        return 2


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
