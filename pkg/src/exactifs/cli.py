"""Command line front end.

Exit codes: 0 ok, 2 invalid input, 3 budget exceeded, 4 precondition
failed (including a rejected certificate).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
from fractions import Fraction

from .config import PRESETS, parse_config
from .errors import BudgetExceeded, CertificateError, InvalidInput, PreconditionError
from .functionals import (build_candidate_set, consistency_check, lift_to_higher_dim,
                          rank_analysis, reconstruct_translations)
from .ifs import DEFAULT_BUDGET, attractor_hull, rate_stats, similarity_dimension, span_check
from .measure import (dim_estimate, dim_upper_bound, floor_chi_n, hochman_diagnostic, nu_n)
from .overlaps import (UNDEFINED, OverlapCertificate, delta_n, find_overlap,
                       verify_certificate)

__all__ = ["main", "run"]

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_PRECONDITION = 0, 2, 3, 4


def _fraction_arg(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _float_out(x: float):
    if math.isinf(x):
        return "-inf" if x < 0 else "inf"
    return x


def _delta_literal(model, value):
    if value is UNDEFINED:
        return UNDEFINED
    return model.field.to_literal(value)


def _matrix_literal(field, rows):
    return [[field.to_literal(x) for x in r] for r in rows]


def _vectors_literal(field, vecs):
    return [[field.to_literal(x) for x in v] for v in vecs]


# -- commands ------------------------------------------------------------------------

def cmd_analyze(model, args):
    H, chi, beta = rate_stats(model)
    hull = attractor_hull(model)
    return {
        "m": model.m,
        "dimension": model.d,
        "H_p": H,
        "chi": chi,
        "beta": beta,
        "similarity_dimension": similarity_dimension(model),
        "span_check": span_check(model),
        "translations": _vectors_literal(model.field, model.t),
        "hull_radius": model.field.to_literal(hull.radius),
        "estimates_are_floats": ["H_p", "chi", "beta", "similarity_dimension"],
    }


def cmd_overlaps(model, args):
    cert = find_overlap(model, args.max_depth, args.budget)
    if cert is not None:
        return {"max_depth": args.max_depth, "result": "certificate", "delta_n": "0",
                "certificate": cert.to_json(), "verified": verify_certificate(model, cert)}
    return {"max_depth": args.max_depth, "result": f"none up to {args.max_depth}",
            "delta_n": _delta_literal(model, delta_n(model, args.max_depth, args.budget)),
            "certificate": None}


def cmd_delta(model, args):
    value = delta_n(model, args.n, args.budget)
    out = {"n": args.n, "delta_n": _delta_literal(model, value), "certificate": None}
    if value is not UNDEFINED and model.field.sign(value) == 0:
        cert = find_overlap(model, args.n, args.budget)
        out["certificate"] = cert.to_json() if cert else None
    if value is not UNDEFINED:
        out["delta_n_approx"] = model.field.approx(value)
    return out


def cmd_dim(model, args):
    H, chi, beta = rate_stats(model)
    seq = []
    for k in range(1, args.n + 1):
        nu = nu_n(model, k, args.budget)
        entry = {"n": k, "estimate": dim_estimate(model, k, nu=nu)}
        if args.upper_bound:
            entry["upper_bound"] = dim_upper_bound(model, k, nu=nu)
        seq.append(entry)
    nu = nu_n(model, args.n, args.budget)
    out = {
        "n": args.n,
        "estimate": seq[-1]["estimate"],
        "upper_bound": dim_upper_bound(model, args.n, nu=nu),
        "chi": chi,
        "H_p": H,
        "beta": beta,
        "level": floor_chi_n(model, args.n),
        "sequence": seq,
    }
    if args.join_scaling or args.q is not None:
        out["joint_estimate"] = hochman_diagnostic(model, args.n, args.q, nu=nu)
        out["q"] = "chi" if args.q is None else str(args.q)
    return out


def _candidate_report(model, S, rep):
    f = model.field
    return {
        "n": S.n,
        "delta": str(S.delta),
        "size": len(S),
        "pairs": [[list(L.w1), list(L.w2)] for L in S.functionals],
        "coefficient_matrix": _matrix_literal(f, S.matrix),
        "rank": rep.rank,
        "selected_rows": rep.rows,
        "gram": f.to_literal(rep.gram),
        "m_minus_d": S.m - S.model.d,
        "diagnostics": S.diagnostics,
    }


def cmd_rank(model, args):
    res = rank_analysis(model, args.delta, args.n, args.budget)
    out = _candidate_report(res["candidates"].model, res["candidates"], res["report"])
    search = res["overlap_search"]
    if search is None:
        out["overlap_search"] = None
    elif search == "none":
        out["overlap_search"] = {"result": f"none up to {args.n}"}
    else:
        out["overlap_search"] = {"result": "certificate", "certificate": search.to_json()}
    return out


def cmd_reconstruct(model, args):
    from .functionals import gram_rank

    S = build_candidate_set(model, args.delta, args.n, args.budget)
    rep = gram_rank(S)
    out = _candidate_report(S.model, S, rep)
    rec = reconstruct_translations(S)
    f = S.field
    out.update({
        "status": rec.status,
        "columns": rec.columns,
        "P_J": f.to_literal(rec.pj),
        "translations": None if rec.translations is None else _vectors_literal(f, rec.translations),
    })
    if rec.translations is not None:
        out["matches_model"] = all(f.eq(a, b) for u, v in zip(rec.translations, S.model.t)
                                   for a, b in zip(u, v))
    if args.check_next:
        S2 = build_candidate_set(model, args.delta, args.n + 1, args.budget)
        out["consistent_with_next_depth"] = consistency_check(S, S2)
    return out


def cmd_lift(model, args):
    S = build_candidate_set(model, args.delta, args.n, args.budget)
    res = lift_to_higher_dim(S, args.rank)
    f = S.field
    out = {
        "n": args.n,
        "delta": str(args.delta),
        "rank": args.rank,
        "lifted_dimension": len(res.basis),
        "columns": res.columns,
        "basis": res.basis,
        "P_J": f.to_literal(res.pj),
        "translations": _vectors_literal(f, res.translations),
        "combination_record": res.record.to_json(f),
        "record_holds_for_model": res.record.holds_for(S.model),
        "verified": res.verified,
    }
    return out


def cmd_certify(model, args):
    try:
        with open(args.cert) as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise InvalidInput(f"certificate file not found: {args.cert}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"certificate is not valid JSON: {exc}") from exc
    if isinstance(data, dict) and "certificate" in data and "w1" not in data:
        data = data["certificate"]
    cert = OverlapCertificate.from_json(data)
    ok = verify_certificate(model, cert)
    return {"valid": ok, "certificate": cert.to_json()}


COMMANDS = {
    "analyze": cmd_analyze,
    "overlaps": cmd_overlaps,
    "delta": cmd_delta,
    "dim": cmd_dim,
    "rank": cmd_rank,
    "reconstruct": cmd_reconstruct,
    "lift": cmd_lift,
    "certify": cmd_certify,
}


# -- parser & driver -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", metavar="PATH", help="JSON model file")
    src.add_argument("--preset", choices=PRESETS, help="bundled model")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum number of words enumerated per depth")
    common.add_argument("--no-normalize", action="store_true",
                        help="keep t_0 as given instead of conjugating it to 0")
    common.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="exactifs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="rate statistics and validators")
    p = sub.add_parser("overlaps", parents=[common], help="search for an exact overlap")
    p.add_argument("--max-depth", type=int, required=True)
    p = sub.add_parser("delta", parents=[common], help="overlap gap at one depth")
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("dim", parents=[common], help="entropy dimension estimates")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--upper-bound", action="store_true", help="add upper bounds to the sequence")
    p.add_argument("--q", type=_fraction_arg, help="dyadic rate for the joint partition")
    p.add_argument("--join-scaling", action="store_true", help="also report the joint entropy")
    for name, hlp in (("rank", "candidate set rank"), ("reconstruct", "Cramer reconstruction"),
                      ("lift", "lift to a higher-dimensional system")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--delta", type=_fraction_arg, default=Fraction(1, 2**10))
        if name == "lift":
            p.add_argument("--rank", type=int, required=True)
        if name == "reconstruct":
            p.add_argument("--check-next", action="store_true",
                           help="also check consistency with depth n + 1")
    p = sub.add_parser("certify", parents=[common], help="verify a certificate file")
    p.add_argument("--cert", required=True, metavar="PATH")
    return parser


def _validate(args):
    for name in ("max_depth", "n"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            raise InvalidInput(f"--{name.replace('_', '-')} must be >= 1")
    if args.budget < 1:
        raise InvalidInput("--budget must be >= 1")
    delta = getattr(args, "delta", None)
    if delta is not None and not 0 < delta < 1:
        raise InvalidInput("--delta must lie in (0, 1)")


def run(argv=None):
    """Parse ``argv``, execute and return ``(exit_code, report_dict)``."""
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    report = {"command": args.command, "argv": list(argv) if argv is not None else sys.argv[1:],
              "budget": args.budget}
    try:
        _validate(args)
        model = parse_config(args.config, preset=args.preset, normalize_model=not args.no_normalize) \
            if args.config else parse_config(preset=args.preset, normalize_model=not args.no_normalize)
        report.update(COMMANDS[args.command](model, args))
        code = EXIT_OK
        if args.command == "certify" and not report["valid"]:
            code = EXIT_PRECONDITION
    except InvalidInput as exc:
        code, report["error"] = EXIT_INVALID, {"kind": "invalid input", "message": str(exc)}
    except BudgetExceeded as exc:
        code, report["error"] = EXIT_BUDGET, {"kind": "budget exceeded", "message": str(exc),
                                              "needed": exc.needed}
    except (PreconditionError, CertificateError) as exc:
        code, report["error"] = EXIT_PRECONDITION, {"kind": "precondition failed",
                                                    "message": str(exc)}
    report["elapsed_s"] = round(time.perf_counter() - start, 6)
    report["exit_code"] = code
    return code, report, args


def _clean(obj):
    if isinstance(obj, float):
        return _float_out(obj)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _render_text(report) -> str:
    lines = []
    for k, v in report.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v)
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def _emit(text: str, path):
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".exactifs-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def main(argv=None) -> int:
    code, report, args = run(argv)
    report = _clean(report)
    text = json.dumps(report, indent=2) + "\n" if args.format == "json" else _render_text(report)
    _emit(text, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
