"""Command-line front end.

Exit codes: 0 success (or admissible), 1 negative mathematical answer
(obstructed n, failed verification), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import geometry, presentations, section_solver
from .kernel_action import abelianize
from .words import parse

_BUILDERS = {
    "closed": lambda g, n, m: presentations.build_closed(m, g),
    "punctured": lambda g, n, m: presentations.build_punctured(n, m, g),
    "mixed": lambda g, n, m: presentations.build_mixed(n, m, g),
    "mixed-quotient": lambda g, n, m: presentations.build_mixed_quotient(n, m, g),
    "kernel-ab": lambda g, n, m: presentations.build_kernel_abelianization(n, m, g),
}


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_present(args):
    builder = _BUILDERS[args.group]
    needs_n = args.group in ("punctured", "mixed", "mixed-quotient", "kernel-ab")
    if needs_n and args.n is None:
        print(f"group {args.group} requires --n >= 1", file=sys.stderr)
        return 2
    try:
        pres = builder(args.g, args.n, args.m)
    except ValueError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return 2
    _emit(presentations.serialize(pres, args.format).decode(), args.out)
    return 0


def _cmd_abelianize(args):
    try:
        word = parse(args.word)
        vec = abelianize(word, args.g, args.n, args.m)
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    _emit(json.dumps(vec.to_json(), indent=2), args.out)
    return 0


def _cmd_obstruct(args):
    try:
        report = section_solver.obstruction(args.g, args.m)
    except ValueError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return 2
    d = report.modulus
    if args.n is not None:
        admissible = args.n >= 1 and args.n % d == 0
        _emit("admissible" if admissible else "obstructed", args.out)
        return 0 if admissible else 1
    if args.n_max is not None:
        values = [k for k in range(1, args.n_max + 1) if k % d == 0]
        _emit(json.dumps({"modulus": d, "admissible": values}), args.out)
        return 0
    _emit(report.to_json(), args.out)
    return 0


def _cmd_verify(args):
    try:
        with open(args.witness_file) as fh:
            doc = json.load(fh)
        witness = doc["witness"] if isinstance(doc, dict) else doc
        if not isinstance(witness, list) or not all(isinstance(x, int) for x in witness):
            raise ValueError("witness must be a JSON array of integers")
        violated = section_solver.verify_ansatz(args.g, args.m, args.n, witness)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    if violated:
        labels = section_solver.constraint_labels(args.g, args.m)
        lines = [f"violated rows: {violated}"]
        for i in violated[:20]:
            lines.append(f"  row {i}: relator {labels[i][0]}, coordinate {labels[i][1]}")
        _emit("\n".join(lines), args.out)
        return 1
    _emit("pass", args.out)
    return 0


def _cmd_section_demo(args):
    try:
        surface = geometry.triangulate(args.g, args.resolution)
        cycle = geometry.meridian(surface)
        retraction = geometry.build_retraction(surface, cycle)
        maps = geometry.section_maps(retraction, args.n)
    except ValueError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return 2
    report = geometry.verify_sections(surface, cycle, maps, args.n)
    if args.out:
        geometry.export_section_data(
            surface, maps, geometry.default_samples(surface), args.out
        )
    print(report.summary())
    return 0 if report.passed else 1


def _positive(name):
    def convert(text):
        value = int(text)
        if value < 1:
            raise argparse.ArgumentTypeError(f"{name} must be >= 1")
        return value

    return convert


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="surfbraid",
        description="Surface mixed braid groups: presentations, the "
        "abelianized splitting obstruction, and the geometric one-point section.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("present", help="print one of the five presentations")
    p.add_argument("--group", required=True, choices=sorted(_BUILDERS))
    p.add_argument("--g", type=_positive("g"), required=True)
    p.add_argument("--m", type=_positive("m"), required=True)
    p.add_argument("--n", type=_positive("n"))
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_present)

    p = sub.add_parser("abelianize", help="image of a kernel word in K(g,m)")
    p.add_argument("--word", required=True)
    p.add_argument("--g", type=_positive("g"), required=True)
    p.add_argument("--n", type=_positive("n"), required=True)
    p.add_argument("--m", type=_positive("m"), required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_abelianize)

    p = sub.add_parser("obstruct", help="splitting obstruction modulus for (g, m)")
    p.add_argument("--g", type=_positive("g"), required=True)
    p.add_argument("--m", type=_positive("m"), required=True)
    p.add_argument("--n", type=_positive("n"))
    p.add_argument("--n-max", type=_positive("n-max"), dest="n_max")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_obstruct)

    p = sub.add_parser("verify", help="check a section witness against the constraints")
    p.add_argument("--g", type=_positive("g"), required=True)
    p.add_argument("--m", type=_positive("m"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--witness-file", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("section-demo", help="build and verify the geometric section")
    p.add_argument("--g", type=_positive("g"), required=True)
    p.add_argument("--n", type=_positive("n"), required=True)
    p.add_argument("--resolution", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_section_demo)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
