"""Batch command-line front end.

Matrices travel as JSON documents {"n": int, "matrix": row-major floats};
every subcommand emits one JSON document per line (streamable).  Exit
codes: 0 success, 1 malformed input, 2 domain error, 3 refusal to decide
(borderline tolerance zone, undecided conjugacy, exhausted search budget).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import classgeom, conjugacy, quadspace, reality, sampling
from .classify import classify as classify_isometry
from .errors import HypisoError, RefusedToDecide
from .spectral import plane_decomposition

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_DOMAIN = 2
EXIT_UNDECIDED = 3


def _read_matrix(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return quadspace.matrix_from_json(text)


def _read_lorentz(path: str, eps: float) -> quadspace.LorentzMatrix:
    space, mat = _read_matrix(path)
    return quadspace.classify_membership(space, mat, eps)


def _emit(lines, output):
    text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args) -> int:
    lines = []
    for path in args.matrix:
        t = _read_lorentz(path, args.eps)
        report = classify_isometry(t, args.delta)
        lines.append(json.dumps(report.to_json_dict()))
    _emit(lines, args.output)
    return EXIT_OK


def cmd_reality(args) -> int:
    lines = []
    for path in args.matrix:
        if args.group in ("On", "SOn"):
            _, mat = _read_matrix(path)
            cert = (
                reality.is_real_On(mat, args.delta, args.eps)
                if args.group == "On"
                else reality.is_real_SOn(mat, args.delta, args.eps)
            )
        else:
            t = _read_lorentz(path, args.eps)
            cert = (
                reality.is_real_SOo_n1(t, args.delta)
                if args.group == "SOo"
                else reality.is_real_Mo(t, args.delta)
            )
        lines.append(json.dumps(cert.to_json_dict()))
    _emit(lines, args.output)
    return EXIT_OK


def cmd_conjugacy(args) -> int:
    t1 = _read_lorentz(args.matrix1, args.eps)
    t2 = _read_lorentz(args.matrix2, args.eps)
    if args.group == "Mon":
        answer = conjugacy.conjugate_in_Mon(t1, t2, args.delta)
    else:
        answer = conjugacy.conjugate_in_Mn(t1, t2, args.delta)
    _emit([json.dumps(answer.to_json_dict())], args.output)
    if answer.related is conjugacy.Relation.UNDECIDED:
        return EXIT_UNDECIDED
    return EXIT_OK


def cmd_decompose(args) -> int:
    lines = []
    for path in args.matrix:
        _, mat = _read_matrix(path)
        decomp = plane_decomposition(mat, args.delta, args.eps)
        doc = {
            "angles": list(decomp.angles),
            "planes": [p.T.tolist() for p in decomp.planes],
            "fixed_subspace": decomp.fixed_subspace.T.tolist(),
        }
        lines.append(json.dumps(doc))
    _emit(lines, args.output)
    return EXIT_OK


def cmd_dims(args) -> int:
    desc = classgeom.descriptor_for(
        args.klass, args.k, args.n, args.has_pi, fix_stretch=not args.all_stretches
    )
    _emit([json.dumps(desc.to_json_dict())], args.output)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    angles = [float(a) for a in args.angles.split(",") if a.strip()]
    if args.has_pi and not any(abs(a - np.pi) <= 1e-9 for a in angles):
        angles = [float(np.pi)] + angles
    k = len(angles)
    if k != args.k:
        raise HypisoError(f"--k {args.k} does not match {k} angles")
    std = sampling.rotation_with_angles(sorted(angles, reverse=True), 2 * k)
    decomp = plane_decomposition(std, args.delta)
    elements = classgeom.enumerate_fiber(decomp, decomp.angles)
    doc = {
        "k": k,
        "angles": list(decomp.angles),
        "has_pi": bool(args.has_pi),
        "count": len(elements),
        "elements": [[float(x) for x in m.ravel()] for m in elements],
    }
    _emit([json.dumps(doc)], args.output)
    return EXIT_OK


def cmd_random(args) -> int:
    rng = np.random.default_rng(args.seed)
    lines = []
    for _ in range(args.count):
        if args.group == "On":
            mat = sampling.random_orthogonal(rng, args.n)
        elif args.group == "SOn":
            mat = sampling.random_regular_special_orthogonal(rng, args.n)
        elif args.group == "SOo":
            mat = sampling.random_isometry(rng, args.n, args.klass, args.k).entries
        elif args.group == "Mo":
            mat = sampling.random_isometry(rng, args.n + 1, args.klass, args.k).entries
        else:
            raise HypisoError(f"unknown group {args.group!r}")
        lines.append(quadspace.matrix_to_json(mat))
    _emit(lines, args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    lines = []
    code = EXIT_OK
    for path in args.matrix:
        if args.group in ("On", "SOn"):
            _, mat = _read_matrix(path)
            target = mat
            group = reality.GROUP_O if args.group == "On" else reality.GROUP_SO
        else:
            target = _read_lorentz(path, args.eps)
            group = reality.GROUP_SOO if args.group == "SOo" else reality.GROUP_MO
        rep = reality.reverser_oracle(
            target, group, budget=args.budget, seed=args.seed, delta=args.delta
        )
        lines.append(json.dumps(rep.to_json_dict()))
    _emit(lines, args.output)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypiso",
        description="Classify hyperbolic-space isometries, decide reality and "
        "conjugacy, and compute conjugacy-class fibration data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, matrices=1):
        if matrices == 1:
            p.add_argument("matrix", nargs="+", help="matrix document path(s)")
        p.add_argument("--eps", type=float, default=quadspace.DEFAULT_EPS,
                       help="membership tolerance (relative)")
        p.add_argument("--delta", type=float, default=1e-7,
                       help="eigenvalue clustering tolerance")
        p.add_argument("--output", default=None, help="write documents here")

    p = sub.add_parser("classify", help="fixed-point classification report")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reality", help="reality certificate with reverser")
    common(p)
    p.add_argument("--group", required=True, choices=["On", "SOn", "SOo", "Mo"])
    p.set_defaults(func=cmd_reality)

    p = sub.add_parser("conjugacy", help="conjugacy answer for a pair")
    p.add_argument("matrix1")
    p.add_argument("matrix2")
    p.add_argument("--group", default="Mn", choices=["Mn", "Mon"])
    p.add_argument("--eps", type=float, default=quadspace.DEFAULT_EPS)
    p.add_argument("--delta", type=float, default=1e-7)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_conjugacy)

    p = sub.add_parser("decompose", help="invariant plane decomposition")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("dims", help="fibration descriptor from symbolic data")
    p.add_argument("--class", dest="klass", required=True,
                   choices=["rotation", "elliptic", "parabolic", "hyperbolic"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--has-pi", action="store_true")
    p.add_argument("--all-stretches", action="store_true",
                   help="hyperbolic class over all stretch factors")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("enumerate", help="finite fiber over the standard decomposition")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--angles", required=True, help="comma-separated angles in (0, pi]")
    p.add_argument("--has-pi", action="store_true")
    p.add_argument("--delta", type=float, default=1e-7)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("random", help="seeded random group elements")
    p.add_argument("--group", required=True, choices=["On", "SOn", "SOo", "Mo"])
    p.add_argument("--class", dest="klass", default=None,
                   choices=["elliptic", "parabolic", "hyperbolic"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("oracle", help="reverser component survey")
    common(p)
    p.add_argument("--group", required=True, choices=["On", "SOn", "SOo", "Mo"])
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RefusedToDecide as exc:
        sys.stderr.write(f"undecided: {exc}\n")
        return EXIT_UNDECIDED
    except HypisoError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"malformed input: {exc}\n")
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
