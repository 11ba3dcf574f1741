"""Command line interface.

Exit codes: 0 success, 1 a verification or probe failed, 2 bad input.
"""

import argparse
import json
import sys
from itertools import combinations

from .diagonal_symmetry import DiagonalGroup, exponential_element, parse_group
from .errors import BHKError, InputError, NotCYType, VerificationFailed
from .invertible_poly import (
    WeightSystem,
    atom_decomposition,
    exponent_matrix,
    format_polynomial,
    parse_polynomial,
    polynomial_from_json,
    weight_system,
)
from .multimirror import (
    build_corpus,
    common_chart,
    enumerate_invertible,
    mirror_pipeline,
    rational_point_probe,
    read_corpus,
    shared_setup_check,
    verify_entry,
    write_corpus,
)


def _read_polynomial(text):
    text = text.strip()
    if text.startswith("{"):
        return polynomial_from_json(text)
    return parse_polynomial(text)


def _setup(poly_text, group_text):
    p = _read_polynomial(poly_text)
    e = exponent_matrix(p)
    atom_decomposition(e)
    w = weight_system(e)
    try:
        gens = parse_group(group_text or "j", e.size, exponential_element(w))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return p, e, DiagonalGroup(e.size, gens)


def cmd_analyze(args):
    p, e, g = _setup(args.polynomial, args.group)
    report = mirror_pipeline(e, g, polynomial=p, exhaustive=args.exhaustive)
    return report.to_dict(timing=args.timing), (0 if report.verified else 1)


def cmd_mirror(args):
    p, e, g = _setup(args.polynomial, args.group)
    report = mirror_pipeline(e, g, polynomial=p, exhaustive=args.exhaustive)
    cy = report.data["calabi_yau"]
    if not cy["cy_type"]:
        raise NotCYType(cy["reason"])
    d = report.data
    out = {
        "input": d["input"],
        "transpose": d["transpose"],
        "dual_group": d["dual_group"],
        "quotients": d["quotients"],
        "toric": d["toric"],
        "ambient": d["ambient"],
    }
    return out, (0 if report.verified else 1)


def _atlas_output(atlas, probe, seed):
    if probe:
        atlas.probe = rational_point_probe(atlas, probe, seed)
    return atlas.to_dict()


def cmd_compare(args):
    p1, e1, g = _setup(args.polynomial1, args.group)
    p2 = _read_polynomial(args.polynomial2)
    e2 = exponent_matrix(p2)
    atom_decomposition(e2)
    verdict = shared_setup_check(e1, e2, g)
    if not verdict:
        raise InputError(verdict.reason)
    atlas = common_chart(e1, e2, g)
    out = {
        "inputs": [format_polynomial(p1), format_polynomial(p2)],
        "group": [",".join(map(str, h)) for h in g.generators],
        "verdict": "birational",
        "atlas": _atlas_output(atlas, args.probe, args.seed),
    }
    code = 0 if (atlas.probe is None or atlas.probe["passed"]) else 1
    return out, code


def cmd_enumerate(args):
    try:
        c = tuple(int(x) for x in args.weights.split(","))
    except ValueError:
        raise InputError(f"bad weights {args.weights!r}") from None
    w = WeightSystem(c, args.degree)
    found = enumerate_invertible(w)
    out = {
        "weights": list(c),
        "degree": args.degree,
        "count": len(found),
        "polynomials": [
            {
                "polynomial": format_polynomial(e.to_polynomial()),
                "exponents": e.tolist(),
                "atoms": [a.to_dict() for a in atom_decomposition(e).atoms],
            }
            for e in found
        ],
    }
    code = 0
    if args.compare_all:
        try:
            g = DiagonalGroup(len(c), parse_group(args.group, len(c), exponential_element(w)))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        comparisons = []
        for (a, ea), (b, eb) in combinations(enumerate(found), 2):
            verdict = shared_setup_check(ea, eb, g)
            entry = {"pair": [a, b], "setup_ok": verdict.ok, "reason": verdict.reason}
            if verdict.ok:
                atlas = common_chart(ea, eb, g)
                if args.probe:
                    atlas.probe = rational_point_probe(atlas, args.probe, args.seed)
                    if not atlas.probe["passed"]:
                        code = 1
                entry["shared_chart"] = atlas.chart_text()
                entry["charts_identical"] = atlas.to_dict()["charts_identical"]
                entry["probe"] = atlas.probe
            comparisons.append(entry)
        out["comparisons"] = comparisons
    return out, code


def cmd_verify(args):
    entries = read_corpus(args.corpus)
    results = []
    for entry in entries:
        groups = verify_entry(entry, exhaustive=args.exhaustive)
        results.append({"exponents": entry.exponents.tolist(), "status": entry.status, "groups": groups})
    failed = sum(r["status"] != "verified" for r in results)
    out = {"entries": len(results), "failed": failed, "results": results}
    return out, (1 if failed else 0)


def cmd_corpus(args):
    entries = build_corpus(args.max_vars, args.max_degree, args.max_order)
    write_corpus(entries, args.path)
    return {"path": args.path, "entries": len(entries), "pairs": sum(len(e.groups) for e in entries)}, 0


def _render_text(obj, prefix=""):
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            lines.extend(_render_text(v, f"{prefix}{k}." if not isinstance(v, (dict, list)) or v else f"{prefix}{k}"))
        return [line.replace(".: ", ": ") for line in lines]
    if isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        for i, v in enumerate(obj):
            lines.extend(_render_text(v, f"{prefix}{i}."))
        return lines
    return [f"{prefix.rstrip('.')}: {json.dumps(obj)}"]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output to this file")

    parser = argparse.ArgumentParser(prog="bhkmirror", parents=[common], description="BHK mirror toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def group_opts(p):
        p.add_argument("--group", default="j", help="generators 'a,b,..;c,d,..' or 'j'")
        p.add_argument("--exhaustive", action="store_true", help="check every coset of the mirror quotient")
        p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")

    p = sub.add_parser("analyze", parents=[common], help="full report for (W, G)")
    p.add_argument("polynomial")
    group_opts(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("mirror", parents=[common], help="BHK mirror of a CY-type pair")
    p.add_argument("polynomial")
    group_opts(p)
    p.set_defaults(func=cmd_mirror)

    p = sub.add_parser("compare", parents=[common], help="shared chart of two mirrors")
    p.add_argument("polynomial1")
    p.add_argument("polynomial2")
    p.add_argument("--group", default="j")
    p.add_argument("--probe", type=int, default=0, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("enumerate", parents=[common], help="invertible polynomials with given weights")
    p.add_argument("--weights", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--group", default="j")
    p.add_argument("--compare-all", action="store_true")
    p.add_argument("--probe", type=int, default=0, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="verify a JSON-lines corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", parents=[common], help="generate a JSON-lines corpus")
    p.add_argument("path")
    p.add_argument("--max-vars", type=int, default=4)
    p.add_argument("--max-degree", type=int, default=12)
    p.add_argument("--max-order", type=int, default=200)
    p.set_defaults(func=cmd_corpus)
    return parser


def run_cli(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        out, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except VerificationFailed as exc:
        print(f"verification failed ({exc.clause}): {exc}", file=stderr)
        return 1
    except BHKError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    fmt = getattr(args, "format", "json")
    target = getattr(args, "out", None)
    if fmt == "text":
        text = "\n".join(_render_text(out)) + "\n"
    else:
        text = json.dumps(out, indent=2) + "\n"
    if target:
        with open(target, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
