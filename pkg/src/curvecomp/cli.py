"""Command-line entry point.

Exit codes: 0 when every checked claim holds, 2 when a claim was checked and
found false, 1 for usage or input errors.  All JSON is emitted with sorted
keys and rationals as "p/q" strings.
"""
import argparse
import json
import sys
import warnings
from fractions import Fraction

from . import errors
from .corpus import load_corpus
from .counterexample import counterexample_report
from .cremona import RationalSelfMap, base_profile, quintic_gallery
from .geometry import PlaneCurve, multiplicity_at, rational_points_common
from .infnear import branch_count, multiplicity_sequence
from .lattice import DivisorClass, adjunction_genus, extend_to_minus_one, plane_genus
from .poly import XYZ, as_fraction, parse
from .sequences import (
    ALIASES,
    REGISTRY,
    classify,
    compress,
    diophantine_case,
    diophantine_solutions,
    enumerate_admissible,
    parse_sequence,
    reduced_form_agrees,
)

OK, USAGE, FAILED = 0, 1, 2


class UsageError(Exception):
    pass


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (tuple, set, frozenset)):
        return list(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    return str(o)


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, default=_default)


def _rational(text):
    try:
        return as_fraction(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}")


def _need(args, name):
    if getattr(args, name) is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")
    return getattr(args, name)


def _branches(args):
    if args.unicuspidal and args.branches not in (None, 1):
        raise UsageError("--unicuspidal contradicts --branches")
    return 1 if args.unicuspidal else args.branches


# -- commands -------------------------------------------------------------------------


def cmd_curve_info(args, corpus):
    if args.equation:
        curve = PlaneCurve(parse(args.equation), name="input")
    elif args.curve:
        entry = corpus["curves"].get(args.curve)
        if entry is None:
            raise UsageError(f"unknown curve {args.curve!r}; corpus has {', '.join(sorted(corpus['curves']))}")
        curve = PlaneCurve(parse(entry["equation"]), irreducible=entry.get("irreducible"), name=args.curve)
    else:
        raise UsageError("curve-info needs --curve NAME or --equation POLY")
    f = curve.equation
    sing = rational_points_common([f.derivative(v) for v in XYZ] + [f])
    points = []
    for p in sing:
        seq = multiplicity_sequence(curve, p)
        points.append({
            "point": str(p),
            "multiplicity": multiplicity_at(curve, p),
            "sequence": list(seq.entries),
            "sequence_compressed": compress(seq.entries),
            "branching": seq.branching,
            "branches": branch_count(curve, p),
        })
    mults = [m for pt in points for m in pt["sequence"]]
    out = {
        "name": curve.name,
        "equation": str(curve),
        "degree": curve.degree,
        "singular_points": points,
        "genus_from_rational_data": plane_genus(curve.degree, mults),
    }
    return out, OK


def cmd_enumerate(args, corpus):
    d = _need(args, "degree")
    if not 3 <= d <= 8:
        raise UsageError("--degree must lie in 3..8")
    seqs = [list(c.entries) for c in enumerate_admissible(d)]
    out = {"degree": d, "sequences": seqs}
    golden = corpus["table1"].get(str(d))
    if golden is not None and golden != seqs:
        missing = [compress(s) for s in golden if s not in seqs]
        extra = [compress(s) for s in seqs if s not in golden]
        print(f"enumerate: degree {d} differs from the golden table; missing {missing}, extra {extra}",
              file=sys.stderr)
        return out, FAILED
    return out, OK


def cmd_classify(args, corpus):
    d = _need(args, "degree")
    seq = parse_sequence(_need(args, "sequence"))
    v = classify(d, seq, branches=_branches(args))
    return {"degree": d, "sequence": list(seq), "verdict": v.to_json()}, OK


def _load_map(args, corpus):
    if args.map_file:
        with open(args.map_file) as fh:
            return RationalSelfMap.from_json(json.load(fh))
    if args.components:
        parts = [s.strip() for s in args.components.split(";")]
        if len(parts) != 3:
            raise UsageError("--components takes three polynomials separated by ';'")
        return RationalSelfMap(parts, name="input")
    if args.name:
        entry = corpus["maps"].get(args.name)
        if entry is None:
            raise UsageError(f"unknown map {args.name!r}; corpus has {', '.join(sorted(corpus['maps']))}")
        return RationalSelfMap(entry["components"], name=args.name)
    raise UsageError("map needs --name NAME, --components 'f;g;h' or --map-file PATH")


def cmd_map(args, corpus):
    f = _load_map(args, corpus)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", errors.MultiplicityAmbiguity)
        prof = base_profile(f)
    out = {
        "components": f.strings(),
        "degree": f.degree,
        "base_profile": prof.to_json(),
        "warnings": [str(w.message) for w in caught] + list(prof.warnings),
    }
    return out, OK


def cmd_quintic(args, corpus):
    g = quintic_gallery(args.alpha)
    out = g.to_json()
    if args.action == "show":
        return out, OK
    out["verified"] = g.ok()
    return out, OK if g.ok() else FAILED


def cmd_counterexample(args, corpus):
    lam = _need(args, "lambda_")
    rep = counterexample_report(lam)
    out = rep.to_json()
    fine = rep.replays_ok and not rep.figure_diffs and rep.snc[0]
    return out, OK if fine else FAILED


def cmd_lattice(args, corpus):
    d = _need(args, "degree")
    seq = parse_sequence(_need(args, "sequence"))
    ext = extend_to_minus_one(d, seq)
    D = DivisorClass(d, tuple(seq))
    ga, gp = adjunction_genus(D), plane_genus(d, seq)
    out = {
        "class": D.to_json(),
        "self_intersection": D.self_intersection(),
        "adjunction_genus": ga,
        "plane_genus": gp,
        "extended_to_minus_one": ext,
    }
    return out, OK if ga == gp else FAILED


def cmd_diophantine(args, corpus):
    if args.case is None:
        return {"cases": sorted(REGISTRY), "aliases": dict(sorted(ALIASES.items()))}, OK
    bound = args.bound or 200
    cid = ALIASES.get(args.case, args.case)
    sols = diophantine_case(cid, bound)
    agrees = reduced_form_agrees(cid, bound)
    out = {
        "case": cid,
        "bound": bound,
        "output_variables": list(REGISTRY[cid].output),
        "solutions": [list(s) for s in sols],
        "records": diophantine_solutions(cid, bound),
        "reduced_form_agrees": agrees,
        "note": REGISTRY[cid].note,
    }
    return out, OK if agrees else FAILED


COMMANDS = {
    "curve-info": cmd_curve_info,
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "map": cmd_map,
    "quintic": cmd_quintic,
    "counterexample": cmd_counterexample,
    "lattice": cmd_lattice,
    "diophantine": cmd_diophantine,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="also write the JSON output to PATH")
    common.add_argument("--corpus", metavar="DIR", help="corpus directory (default: shipped corpus, "
                        "or $CURVECOMP_CORPUS)")
    p = argparse.ArgumentParser(prog="curvecomp", description="Exact computations on plane curves "
                                "and their complements.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("curve-info", parents=[common], help="singular points and multiplicity sequences")
    s.add_argument("--curve", help="corpus curve name")
    s.add_argument("--equation", help="homogeneous polynomial in x, y, z")

    s = sub.add_parser("enumerate", parents=[common], help="admissible sequences of a degree")
    s.add_argument("--degree", type=int)

    for name, hlp in (("classify", "embedding-extension verdict"), ("lattice", "class and genus checks")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--degree", type=int)
        s.add_argument("--sequence", help='e.g. "3,3,3" or "(3_(7))"')
        if name == "classify":
            s.add_argument("--unicuspidal", action="store_true")
            s.add_argument("--branches", type=int)

    s = sub.add_parser("map", parents=[common], help="degree and base profile of a plane Cremona map")
    s.add_argument("--name", help="corpus map name")
    s.add_argument("--components", help="three polynomials separated by ';'")
    s.add_argument("--map-file", help='JSON file {"components": [...]}')

    s = sub.add_parser("quintic", parents=[common], help="the quintic gallery")
    s.add_argument("action", choices=["verify", "show"])
    s.add_argument("--alpha", type=_rational)

    s = sub.add_parser("counterexample", parents=[common], help="degree-8 conic configuration report")
    s.add_argument("--lambda", dest="lambda_", type=_rational)

    s = sub.add_parser("diophantine", parents=[common], help="registered Diophantine systems")
    s.add_argument("--case", help="case id or alias (omit to list)")
    s.add_argument("--bound", type=int)
    return p


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        corpus = load_corpus(args.corpus)
        out, code = COMMANDS[args.command](args, corpus)
    except (UsageError, FileNotFoundError, errors.UnknownCase, errors.Inadmissible,
            errors.ForbiddenLambda, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"curvecomp {args.command}: {msg}", file=sys.stderr)
        return USAGE
    except (errors.VerificationFailure, errors.NotContractible) as e:
        print(f"curvecomp {args.command}: verification failed: {e}", file=sys.stderr)
        return FAILED
    text = dumps(out)
    print(text, file=stdout)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
