"""Command-line entry point: ``mixnorm <command> [options]``.

Every command prints a JSON envelope
``{"command", "parameters", "results", "tool_version", "seed"}`` on stdout.
Exit codes: 2 usage error, 3 sign-space budget exceeded, 4 bad tensor file.
"""
import argparse
import json
import math
import os
import sys

from . import __version__
from .forms import (
    MixedNormScheme,
    SpaceSignature,
    admissibility,
    build_extremal,
    mixed_norm,
    parse_exponent,
)
from .lab import bilinear_sandwich, constant_report, gap_curve, ratio_certificate
from .norms import DEFAULT_BUDGET, BudgetExceeded, ascent_norm, exact_norm
from .specfun import critical_p, find_p0, khinchine_A
from .tensorio import FormatError, read_form, write_form

EXIT_USAGE, EXIT_BUDGET, EXIT_FORMAT = 2, 3, 4


class UsageError(Exception):
    pass


def _exponent_arg(text):
    try:
        return parse_exponent(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number or 'inf': {text!r}") from None


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def _exponent_list(text):
    return [_exponent_arg(t) for t in text.split(",") if t.strip()]


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _workers(args):
    if args.workers is not None:
        return args.workers
    return int(os.environ.get("MIXNORM_WORKERS", "1"))


def cmd_p0(args):
    return {"p0": find_p0(), "critical_p": critical_p()}


def cmd_khinchine(args):
    return {"q": args.q, "A_q": khinchine_A(args.q)}


def cmd_build_form(args):
    form = build_extremal(args.m, sparse=args.sparse)
    write_form(form, args.out)
    return {"path": args.out, "dims": list(form.dims), "nnz": form.nnz,
            "storage": "sparse" if form.is_sparse else "dense"}


def cmd_norm(args):
    form = read_form(args.form)
    if args.ascent:
        space = SpaceSignature.mixed(args.p, form.arity)
        cert = ascent_norm(form, space, restarts=args.restarts, max_iters=args.max_iters,
                           tol=args.tol, seed=args.seed)
    else:
        cert = exact_norm(form, args.p, budget=args.budget, workers=_workers(args))
    return cert.to_dict()


def cmd_mixed_norm(args):
    form = read_form(args.form)
    scheme = MixedNormScheme(tuple(args.partition), tuple(args.exponents), args.diagonal)
    return {"value": mixed_norm(form, scheme)}


def cmd_ratio(args):
    return {"ratio": ratio_certificate(args.m, args.p)}


def cmd_report(args):
    return constant_report(args.m, args.p).to_dict()


def cmd_sandwich(args):
    b = bilinear_sandwich(args.p)
    return {"lower": b.lower, "upper": b.upper, "exponent": b.exponent}


def cmd_gap_curve(args):
    curve = gap_curve(args.samples)
    with open(args.csv, "w", encoding="utf-8") as fh:
        fh.write("x,upper,lower,diff\n")
        for row in curve.rows():
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(curve))
    return {"samples": len(curve), "max_diff": curve.max_diff, "argmax_x": curve.argmax,
            "endpoint_diffs": [float(curve.diff[0]), float(curve.diff[-1])],
            "csv": args.csv, "svg": args.svg}


def cmd_admissible(args):
    space = SpaceSignature(tuple(args.p_list))
    scheme = MixedNormScheme(tuple(args.partition), tuple(args.exponents))
    verdict = admissibility(space, scheme)
    return {"admissible": verdict.ok, "violated": verdict.violated}


def render_svg(curve, width=640, height=400, margin=48):
    """Two polylines (upper, lower) with plain axes."""
    x0, x1 = float(curve.x[0]), float(curve.x[-1])
    ys = [float(v) for v in curve.upper] + [float(v) for v in curve.lower]
    y0, y1 = min(ys), max(ys)
    y1 = y1 if y1 > y0 else y0 + 1.0

    def pt(x, y):
        px = margin + (x - x0) / (x1 - x0) * (width - 2 * margin)
        py = height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin)
        return f"{px:.2f},{py:.2f}"

    def polyline(values, color):
        pts = " ".join(pt(x, y) for x, y in zip(curve.x.tolist(), values.tolist()))
        return f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>'

    left, bottom = margin, height - margin
    return "\n".join([
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<line x1="{left}" y1="{bottom}" x2="{width - margin}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{margin}" x2="{left}" y2="{bottom}" stroke="black"/>',
        f'<text x="{left}" y="{bottom + 20}" font-size="12">{x0:.4f}</text>',
        f'<text x="{width - margin - 40}" y="{bottom + 20}" font-size="12">{x1:.4f}</text>',
        f'<text x="4" y="{bottom}" font-size="12">{y0:.4f}</text>',
        f'<text x="4" y="{margin}" font-size="12">{y1:.4f}</text>',
        polyline(curve.upper, "#c0392b"),
        polyline(curve.lower, "#2c3e50"),
        "</svg>",
        "",
    ])


def build_parser():
    parser = argparse.ArgumentParser(prog="mixnorm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("p0", help="root p0 and its conjugate").set_defaults(func=cmd_p0)

    sp = sub.add_parser("khinchine", help="Haagerup constant A_q")
    sp.add_argument("--q", type=float, required=True)
    sp.set_defaults(func=cmd_khinchine)

    sp = sub.add_parser("build-form", help="write the extremal form T_m")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--out", required=True)
    storage = sp.add_mutually_exclusive_group()
    storage.add_argument("--sparse", action="store_true", default=None)
    storage.add_argument("--dense", dest="sparse", action="store_false")
    sp.set_defaults(func=cmd_build_form)

    sp = sub.add_parser("norm", help="operator norm on l_p x c_0 x ... x c_0")
    sp.add_argument("--form", required=True)
    sp.add_argument("--p", type=_exponent_arg, required=True)
    method = sp.add_mutually_exclusive_group()
    method.add_argument("--exact", action="store_true")
    method.add_argument("--ascent", action="store_true")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--restarts", type=int, default=8)
    sp.add_argument("--max-iters", type=int, default=100)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(func=cmd_norm)

    sp = sub.add_parser("mixed-norm", help="nested mixed norm of a tensor file")
    sp.add_argument("--form", required=True)
    sp.add_argument("--partition", type=_int_list, required=True)
    sp.add_argument("--exponents", type=_exponent_list, required=True)
    sp.add_argument("--diagonal", action="store_true",
                    help="repeat one basis index across each block")
    sp.set_defaults(func=cmd_mixed_norm)

    for name, func, text in [("ratio", cmd_ratio, "mixed norm of T_m over its norm"),
                             ("report", cmd_report, "bounds for C_(m),p")]:
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--p", type=_exponent_arg, required=True)
        sp.set_defaults(func=func)

    sp = sub.add_parser("sandwich", help="bounds for the bilinear C_{p,inf}")
    sp.add_argument("--p", type=_exponent_arg, required=True)
    sp.set_defaults(func=cmd_sandwich)

    sp = sub.add_parser("gap-curve", help="upper/lower bases on [2, critical_p]")
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--csv", required=True)
    sp.add_argument("--svg")
    sp.set_defaults(func=cmd_gap_curve)

    sp = sub.add_parser("admissible", help="check the exponent conditions")
    sp.add_argument("--p-list", type=_exponent_list, required=True)
    sp.add_argument("--partition", type=_int_list, required=True)
    sp.add_argument("--exponents", type=_exponent_list, required=True)
    sp.set_defaults(func=cmd_admissible)

    # seed is global so the envelope always records it
    for action in sub.choices.values():
        action.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command", "seed")}
    try:
        results = args.func(args)
    except BudgetExceeded as exc:
        print(f"mixnorm: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FormatError as exc:
        print(f"mixnorm: bad tensor file: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (ValueError, OSError) as exc:
        print(f"mixnorm: {exc}", file=sys.stderr)
        return EXIT_USAGE
    envelope = {
        "command": args.command,
        "parameters": params,
        "results": results,
        "tool_version": __version__,
        "seed": args.seed,
    }
    sys.stdout.write(json.dumps(_jsonable(envelope), indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
