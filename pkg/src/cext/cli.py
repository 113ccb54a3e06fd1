"""``cext`` command line: one subcommand per experiment, canonical JSON reports.

Reports are ``{"command", "config", "payload", "version"}`` serialized with
sorted keys, so identical arguments give byte-identical output. Wall-clock
time is only added with ``--with-timing``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import __version__
from . import finitegrp as fg
from .cayley import enumerate_ball
from .dehn import DehnSolver
from .errors import CextError, ConfigError
from .extensions import (
    check_cocycle,
    cocycle_from_section,
    maximizing_section,
    parse_alpha,
    pullback_euler,
    section_defect_stats,
    weak_boundedness_profile,
)
from .presentations import (
    DEFAULT_TRUNCATION,
    Presentation,
    check_small_cancellation,
    load_presentation,
    indexed_presentation,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def canonical_json(obj: Any) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit_report(report: dict, path: Optional[str]) -> str:
    text = canonical_json(report)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


# ---------------------------------------------------------------- helpers


def _presentation(args) -> Presentation:
    if getattr(args, "presentation", None):
        return load_presentation(args.presentation)
    return indexed_presentation(args.truncation, args.relator_form)


def _solver(args, p: Presentation) -> DehnSolver:
    return DehnSolver(p, seed=args.randomize_reduction)


def _read_cochain(path: str) -> tuple[list, Optional[int], int]:
    """Cochain file: a JSON array, or ``{"values": [...], "degree": d, "coeff": "Z"}``."""
    with open(path) as fh:
        data = json.load(fh)
    degree, coeff = None, 0
    if isinstance(data, dict):
        degree = data.get("degree")
        coeff = fg.parse_coeff(str(data.get("coeff", "Z")))
        data = data.get("values")
    if not isinstance(data, list):
        raise ConfigError("cochain file must hold a JSON array of values")
    vals = []
    for v in data:
        f = Fraction(v) if isinstance(v, (int, str)) else None
        if f is None:
            raise ConfigError(f"cochain value {v!r} is not an integer or fraction string")
        vals.append(f.numerator if f.denominator == 1 else f)
    return vals, degree, coeff


# ---------------------------------------------------------------- commands


def cmd_check_cancellation(args) -> dict:
    p = _presentation(args)
    lam = Fraction(args.lam)
    return check_small_cancellation(p, lam, args.max_index).to_json()


def cmd_word_problem(args) -> dict:
    p = _presentation(args)
    solver = _solver(args, p)
    w = p.parse(args.word)
    out = {"word": str(w), "trivial": solver.is_trivial(w)}
    if args.equals is not None:
        v = p.parse(args.equals)
        out["other"] = str(v)
        out["equal"] = solver.are_equal(w, v)
    return out


def cmd_area(args) -> dict:
    p = _presentation(args)
    solver = _solver(args, p)
    w = p.parse(args.word)
    cert = solver.area_certificate(w)
    if args.emit_certificate:
        with open(args.emit_certificate, "w") as fh:
            fh.write(canonical_json(cert.to_json()))
    return {"word": str(w), "length": len(w), "area": cert.weight, "factors": len(cert.factors),
            "certificate": cert.to_json()}


def cmd_lift(args) -> dict:
    p = _presentation(args)
    solver = _solver(args, p)
    alpha = parse_alpha(args.alpha, args.lambda_int)
    w = p.parse(args.word)
    cert = solver.area_certificate(w)
    value = solver.lift_value(w, alpha)
    return {"word": str(w), "alpha": alpha.to_json(), "value": value, "area": cert.weight}


def cmd_ball(args) -> dict:
    p = _presentation(args)
    return enumerate_ball(args.radius, p, _solver(args, p)).to_json()


def cmd_probe(args) -> dict:
    p = _presentation(args)
    alpha = parse_alpha(args.alpha, args.lambda_int)
    ball = enumerate_ball(args.radius, p, _solver(args, p))
    omega = cocycle_from_section(ball, alpha)
    check = check_cocycle(omega)
    profile = weak_boundedness_profile(omega)
    pulls = [{"index": i, "value": pullback_euler(i, alpha, p, ball.solver), "alpha": alpha(i)}
             for i in range(min(args.pullbacks, p.max_index) + 1)]
    defect = section_defect_stats(ball, alpha, args.cap_slack, args.max_depth, args.max_states)
    return {
        "alpha": alpha.to_json(),
        "radius": args.radius,
        "cocycle_check": check.to_json(),
        "generator_maxima": profile.generator_maxima,
        "C": profile.C,
        "rows": profile.rows,
        "rows_within_bound": profile.all_within_bound,
        "pullbacks": pulls,
        "defect_max": defect.defect_max,
        "theoretical_bound": defect.theoretical_bound,
        "defect": defect.to_json(),
    }


def cmd_max_section(args) -> dict:
    p = _presentation(args)
    alpha = parse_alpha(args.alpha, args.lambda_int)
    w = p.parse(args.word)
    geodesic_checked = False
    if len(w) <= args.canonical_radius:
        ball = enumerate_ball(len(w), p, _solver(args, p))
        w = ball.canonical(w).word
        geodesic_checked = True
    cap = args.cap if args.cap is not None else len(w) + args.cap_slack
    sv = maximizing_section(w, alpha, cap, p, args.max_depth, args.max_states)
    return {"alpha": alpha.to_json(), "cap": cap, "geodesic_checked": geodesic_checked, **sv.to_json()}


def cmd_finite_h2(args) -> dict:
    G = fg.parse_group(args.group, args.max_order)
    m = fg.parse_coeff(args.coeff)
    desc = fg.h2(G, m)
    out = desc.to_json()
    out["class_orders"] = [fg.class_order(r, desc) for r in desc.representatives]
    if m:
        ext = [{"class": "trivial", "census": fg.order_census(fg.extension_table(G, m, [0] * G.order ** 2))}]
        for k, r in enumerate(desc.representatives):
            ext.append({"class": k, "census": fg.order_census(fg.extension_table(G, m, r))})
        out["extensions"] = ext
    return out


def cmd_finite_transfer(args) -> dict:
    G = fg.parse_group(args.group, args.max_order)
    m = fg.parse_coeff(args.coeff)
    H = fg.subgroup(G, [int(x) for x in args.subgroup.replace(",", " ").split()])
    desc = fg.h2(G, m)
    reps, _ = fg.coset_representatives(H)
    rows = []
    for k, omega in enumerate(desc.representatives):
        tr = fg.transfer_cocycle(fg.restrict_cocycle(omega, H), H, m, degree=2)
        diff = [a - H.index * b for a, b in zip(tr, omega)]
        if m:
            diff = [v % m for v in diff]
        rows.append({
            "class": k,
            "class_order": fg.class_order(omega, desc),
            "transfer_is_cocycle": fg.is_cocycle(G, tr, m),
            "composite_class_order": fg.class_order(tr, desc),
            "difference_is_coboundary": fg.is_coboundary(G, diff, m),
        })
    return {"group": G.name, "subgroup": list(H.elements), "index": H.index,
            "coset_representatives": reps, "coeff": "Z" if not m else f"Z/{m}",
            "invariant_factors": desc.invariant_factors, "classes": rows}


def _default_cocycle(G, degree: Optional[int]):
    desc = fg.h2(G, 0)
    if desc.representatives:
        return desc.representatives[0], 2
    return [0] * (G.order ** (degree or 2)), degree or 2


def cmd_finite_avg(args) -> dict:
    G = fg.parse_group(args.group, args.max_order)
    if args.cocycle:
        omega, degree, _ = _read_cochain(args.cocycle)
    else:
        omega, degree = _default_cocycle(G, args.degree)
    degree = args.degree or degree
    f = fg.averaging_primitive(G, omega, degree)
    d = fg.cochain_degree(G, omega, degree)
    df = fg.coboundary(G, f, degree=d - 1)
    floor = fg.round_real_cochain(f)
    rounded = [Fraction(a) - b for a, b in zip(omega, fg.coboundary(G, floor, degree=d - 1))]
    integral = all(v.denominator == 1 for v in rounded)
    return {
        "group": G.name,
        "degree": d,
        "cocycle": omega,
        "primitive": f,
        "identity_holds": all(Fraction(a) == b for a, b in zip(omega, df)),
        "floor_primitive": floor,
        "rounded_cocycle": rounded,
        "rounded_is_integer_cocycle": integral and fg.is_cocycle(G, [int(v) for v in rounded], degree=d),
    }


def cmd_finite_linfty(args) -> dict:
    G = fg.parse_group(args.group, args.max_order)
    coeff = fg.parse_coeff(args.coeff)
    if args.cocycle:
        omega, degree, file_coeff = _read_cochain(args.cocycle)
        coeff = coeff or file_coeff
    else:
        omega, degree = _default_cocycle(G, args.degree)
    degree = args.degree or degree
    phi = fg.linfty_primitive(G, omega, coeff, degree)
    checked, bad = fg.check_linfty_primitive(G, omega, phi, coeff, degree)
    return {"group": G.name, "degree": fg.cochain_degree(G, omega, degree), "cocycle": omega,
            "primitive": [list(v) for v in phi], "points_checked": checked, "mismatches": bad,
            "identity_holds": bad == 0}


COMMANDS = {
    "check-cancellation": cmd_check_cancellation,
    "word-problem": cmd_word_problem,
    "area": cmd_area,
    "lift": cmd_lift,
    "ball": cmd_ball,
    "probe": cmd_probe,
    "max-section": cmd_max_section,
    "finite-h2": cmd_finite_h2,
    "finite-transfer": cmd_finite_transfer,
    "finite-avg": cmd_finite_avg,
    "finite-linfty": cmd_finite_linfty,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--with-timing", action="store_true", help="add wall-clock duration to the report")

    pres = _Parser(add_help=False)
    pres.add_argument("--presentation", help="presentation JSON file (default: the indexed family)")
    pres.add_argument("--relator-form", choices=("h", "literal"), default="h")
    pres.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION)
    pres.add_argument("--randomize-reduction", "--seed", dest="randomize_reduction", type=int, default=None,
                      metavar="SEED", help="seeded random tie-breaking between Dehn matches")

    alpha = _Parser(add_help=False)
    alpha.add_argument("--alpha", default="i", help='slow class, e.g. "i", "0", "prefix:5,3,2;tail:zero"')
    alpha.add_argument("--lambda-int", type=int, default=None, help="integer Lambda (default: ceiling)")

    section = _Parser(add_help=False)
    section.add_argument("--cap-slack", type=int, default=8)
    section.add_argument("--max-depth", type=int, default=None)
    section.add_argument("--max-states", type=int, default=20000)

    finite = _Parser(add_help=False)
    finite.add_argument("--group", required=True, help="cyclic:n, dihedral:n, quaternion, product:A,B or file.json")
    finite.add_argument("--max-order", type=int, default=fg.MAX_ORDER)

    parser = _Parser(prog="cext", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("check-cancellation", parents=[common, pres])
    s.add_argument("--lambda", dest="lam", default="1/7")
    s.add_argument("--max-index", type=int, default=None)

    s = sub.add_parser("word-problem", parents=[common, pres])
    s.add_argument("word")
    s.add_argument("--equals", default=None, help="decide equality with this word instead")

    s = sub.add_parser("area", parents=[common, pres])
    s.add_argument("word")
    s.add_argument("--emit-certificate", metavar="PATH")

    s = sub.add_parser("lift", parents=[common, pres, alpha])
    s.add_argument("word")

    s = sub.add_parser("ball", parents=[common, pres])
    s.add_argument("--radius", type=int, required=True)

    s = sub.add_parser("probe", parents=[common, pres, alpha, section])
    s.add_argument("--radius", type=int, default=3)
    s.add_argument("--pullbacks", type=int, default=10, help="evaluate the class on r_0..r_N")

    s = sub.add_parser("max-section", parents=[common, pres, alpha, section])
    s.add_argument("word")
    s.add_argument("--cap", type=int, default=None, help="absolute length cap (overrides --cap-slack)")
    s.add_argument("--canonical-radius", type=int, default=3,
                   help="replace words up to this length by their shortlex geodesic first")

    s = sub.add_parser("finite-h2", parents=[common, finite])
    s.add_argument("--coeff", default="Z", help="Z or a modulus m")

    s = sub.add_parser("finite-transfer", parents=[common, finite])
    s.add_argument("--subgroup", required=True, help='comma-separated element indices, e.g. "0,2"')
    s.add_argument("--coeff", default="Z")

    s = sub.add_parser("finite-avg", parents=[common, finite])
    s.add_argument("--cocycle", help="cochain JSON; default: first H^2 representative")
    s.add_argument("--degree", type=int, default=None)

    s = sub.add_parser("finite-linfty", parents=[common, finite])
    s.add_argument("--cocycle", help="cochain JSON; default: first H^2 representative")
    s.add_argument("--degree", type=int, default=None)
    s.add_argument("--coeff", default="Z")
    return parser


_DEPTH_DEFAULTS = {"probe": 1, "max-section": 2}


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "with_timing")}


def run(argv: Sequence[str]) -> tuple[int, dict, Optional[str]]:
    """Parse and dispatch; returns ``(exit status, report or error object, output path)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
    except UsageError as exc:
        return 2, {"error": {"code": "usage", "message": str(exc)}, "usage": parser.format_usage().strip()}, None
    if getattr(args, "max_depth", "absent") is None:
        args.max_depth = _DEPTH_DEFAULTS[args.command]
    start = time.perf_counter()
    try:
        payload = COMMANDS[args.command](args)
    except CextError as exc:
        err = {"code": exc.code, "message": str(exc)}
    except OSError as exc:
        err = {"code": "io_error", "message": str(exc)}
    except (ValueError, ZeroDivisionError) as exc:
        err = {"code": "invalid_value", "message": str(exc)}
    else:
        report = {"command": args.command, "config": _config(args), "payload": payload, "version": __version__}
        if args.with_timing:
            report["duration_seconds"] = round(time.perf_counter() - start, 3)
        return 0, report, args.out
    return 1, {"command": args.command, "error": err}, None


def main(argv: Optional[Sequence[str]] = None) -> int:
    status, report, out = run(list(sys.argv[1:] if argv is None else argv))
    try:
        emit_report(report, out)
    except OSError as exc:
        emit_report({"error": {"code": "io_error", "message": str(exc)}}, None)
        return 1
    return status
