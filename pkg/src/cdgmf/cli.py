"""Command-line surface: inspectable pipelines over JSON instance files.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 malformed
input, 3 internal assertion (the PID invariants that must never fire).
"""

from __future__ import annotations

import argparse
import json
import sys

from .fields import field_from_token, FieldError
from .poly import Poly
from .cdg import (
    CDGRing, MatrixFactorization, FPCDGModule, ClosedMorphism,
    CurvatureMismatch, InternalAssertionFailure, identity_morphism,
    zero_morphism, direct_sum, cone, shift, g_plus, g_minus, validate,
    as_fpcdg, LEFT, RIGHT,
)
from .fpmod import IllDefinedMap
from .matrices import ShapeMismatch
from .homotopy import (
    hom_complex, tensor_complex, cohomology, homotopy_witness,
    is_contractible, HomotopyWitness,
)
from .duality import resolve, compact_dual
from .verify import (
    InstanceGenerator, check_pairing, check_duality, selftest, all_passed,
    CHECK_NAMES,
)
from . import io as cio


def _read(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return cio.parse(fh.read())
    except FileNotFoundError as exc:
        raise cio.MalformedInput(str(exc)) from exc


def _emit(args, payload: str):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _emit_obj(args, obj):
    _emit(args, cio.serialize(obj))


def _ring_from_args(args) -> CDGRing:
    field = field_from_token(args.field)
    w = Poly.from_strings(field, args.w.split(",")) if args.w else Poly.zero(field)
    return CDGRing(field, w)


def cmd_new(args):
    ring = _ring_from_args(args)
    gen = InstanceGenerator(args.seed, field=ring.field)
    if args.kind == "mf":
        obj = gen.mf(ring, args.side, max_blocks=args.max_rank)
    else:
        obj = gen.fpcdg(ring, side=args.side, max_pieces=args.max_rank)
    _emit_obj(args, obj)
    return 0


def cmd_validate(args):
    obj = _read(args.path)
    try:
        validate(obj)
    except (CurvatureMismatch, IllDefinedMap) as exc:
        sys.stderr.write(f"invalid: {exc}\n")
        return 1
    _emit(args, cio.canonical_text({"valid": True}))
    return 0


def cmd_shift(args):
    _emit_obj(args, shift(_read(args.path), args.n))
    return 0


def cmd_sum(args):
    _emit_obj(args, direct_sum(_read(args.left), _read(args.right)))
    return 0


def cmd_cone(args):
    f = _read(args.path)
    if not isinstance(f, ClosedMorphism):
        raise cio.MalformedInput("cone expects a morphism file")
    f.validate()
    c, incl, proj = cone(f)
    payload = {
        "cone": cio.to_json_dict(c),
        "inclusion": {"f0": cio._matrix_to_json(incl.f0),
                      "f1": cio._matrix_to_json(incl.f1)},
        "projection": {"f0": cio._matrix_to_json(proj.f0),
                       "f1": cio._matrix_to_json(proj.f1)},
    }
    _emit(args, cio.canonical_text(payload))
    return 0


def cmd_gplus(args):
    ring = _ring_from_args(args)
    _emit_obj(args, g_plus(ring, args.side, args.r0, args.r1))
    return 0


def cmd_gminus(args):
    ring = _ring_from_args(args)
    _emit_obj(args, g_minus(ring, args.side, args.r0, args.r1))
    return 0


def cmd_hom(args):
    _emit_obj(args, hom_complex(_read(args.left), _read(args.right)))
    return 0


def cmd_tensor(args):
    _emit_obj(args, tensor_complex(_read(args.left), _read(args.right)))
    return 0


def cmd_cohom(args):
    left = _read(args.left)
    right = _read(args.right)
    if args.of == "hom":
        p = hom_complex(left, right)
    else:
        p = tensor_complex(left, right)
    h = cohomology(p)
    _emit(args, cio.serialize(h))
    return 0


def cmd_homotopy(args):
    f = _read(args.f)
    g = _read(args.g) if args.g else None
    if not isinstance(f, ClosedMorphism):
        raise cio.MalformedInput("homotopy expects morphism files")
    f.validate()
    if g is None:
        g = zero_morphism(f.source, f.target)
    else:
        g.validate()
    w = homotopy_witness(f, g)
    payload = {"homotopic": w is not None}
    if w is not None and args.emit_witness:
        payload["witness"] = cio.to_json_dict(w)
    _emit(args, cio.canonical_text(payload))
    return 0


def cmd_contractible(args):
    obj = _read(args.path)
    ok, w = is_contractible(obj)
    payload = {"contractible": ok}
    if ok and args.emit_witness:
        payload["witness"] = cio.to_json_dict(w)
    _emit(args, cio.canonical_text(payload))
    return 0


def cmd_resolve(args):
    obj = _read(args.path)
    res = resolve(obj)
    _emit(args, cio.canonical_text(cio.to_json_dict(res)))
    return 0


def cmd_xi(args):
    obj = _read(args.path)
    result = compact_dual(as_fpcdg(obj))
    _emit(args, cio.canonical_text(cio.to_json_dict(result)))
    return 0


def cmd_pair(args):
    n = _read(args.left)
    f = _read(args.right)
    rep = check_pairing(as_fpcdg(n), f)
    _emit(args, cio.canonical_text(rep.to_json_dict()))
    return 0 if rep.passed else 1


def cmd_duality(args):
    n = _read(args.left)
    k = _read(args.right)
    rep = check_duality(as_fpcdg(n), as_fpcdg(k))
    _emit(args, cio.canonical_text(rep.to_json_dict()))
    return 0 if rep.passed else 1


def cmd_selftest(args):
    checks = args.checks.split(",") if args.checks else None
    reports = selftest(seed=args.seed, count=args.count, checks=checks)
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.check}: left={r.left} right={r.right}")
    sys.stdout.write("\n".join(lines) + "\n")
    if args.json_report:
        with open(args.json_report, "w", encoding="utf-8") as fh:
            fh.write(cio.canonical_text([r.to_json_dict() for r in reports]))
    return 0 if all_passed(reports) else 1


def build_parser():
    top = argparse.ArgumentParser(
        prog="cdgmf",
        description="exact calculus of curved modules of matrix-factorization "
                    "type over k[x]")
    sub = top.add_subparsers(dest="command", required=True)

    def add_ring_flags(p):
        p.add_argument("--field", default="Q", help="Q or Fp:<p>")
        p.add_argument("--w", default="", help="potential coefficients, "
                       "lowest degree first, comma separated")

    def add_out(p):
        p.add_argument("--out", default=None, help="write output to a file")

    p = sub.add_parser("new", help="emit a seeded random instance")
    add_ring_flags(p)
    p.add_argument("--kind", choices=("mf", "fpcdg"), default="mf")
    p.add_argument("--side", choices=(LEFT, RIGHT), default=LEFT)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--max-rank", type=int, default=2)
    add_out(p)
    p.set_defaults(func=cmd_new)

    p = sub.add_parser("validate", help="check the curvature identities")
    p.add_argument("path")
    add_out(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("shift", help="grading shift")
    p.add_argument("path")
    p.add_argument("--n", type=int, default=1)
    add_out(p)
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("sum", help="direct sum of two instances")
    p.add_argument("left")
    p.add_argument("right")
    add_out(p)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("cone", help="mapping cone of a closed morphism")
    p.add_argument("path")
    add_out(p)
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("gplus", help="free curved module on a graded module")
    add_ring_flags(p)
    p.add_argument("--side", choices=(LEFT, RIGHT), default=LEFT)
    p.add_argument("--r0", type=int, default=1)
    p.add_argument("--r1", type=int, default=0)
    add_out(p)
    p.set_defaults(func=cmd_gplus)

    p = sub.add_parser("gminus", help="cofree curved module on a graded module")
    add_ring_flags(p)
    p.add_argument("--side", choices=(LEFT, RIGHT), default=LEFT)
    p.add_argument("--r0", type=int, default=1)
    p.add_argument("--r1", type=int, default=0)
    add_out(p)
    p.set_defaults(func=cmd_gminus)

    p = sub.add_parser("hom", help="Hom complex of two same-side instances")
    p.add_argument("left")
    p.add_argument("right")
    add_out(p)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("tensor", help="tensor complex (right, left)")
    p.add_argument("left")
    p.add_argument("right")
    add_out(p)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("cohom", help="cohomology of a hom/tensor complex")
    p.add_argument("--of", choices=("hom", "tensor"), required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    add_out(p)
    p.set_defaults(func=cmd_cohom)

    p = sub.add_parser("homotopy", help="null-homotopy solver f ~ g")
    p.add_argument("f")
    p.add_argument("g", nargs="?", default=None)
    p.add_argument("--emit-witness", action="store_true")
    add_out(p)
    p.set_defaults(func=cmd_homotopy)

    p = sub.add_parser("contractible", help="is the identity null-homotopic")
    p.add_argument("path")
    p.add_argument("--emit-witness", action="store_true")
    add_out(p)
    p.set_defaults(func=cmd_contractible)

    p = sub.add_parser("resolve", help="two-step graded-projective resolution")
    p.add_argument("path")
    add_out(p)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("xi", help="compact duality functor with provenance")
    p.add_argument("path")
    add_out(p)
    p.set_defaults(func=cmd_xi)

    p = sub.add_parser("pair", help="pairing identity on an instance pair")
    p.add_argument("left")
    p.add_argument("right")
    add_out(p)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("duality", help="duality identity on an instance pair")
    p.add_argument("left")
    p.add_argument("right")
    add_out(p)
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("selftest", help="run the verification suite")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--checks", default=None,
                   help="comma separated subset of: " + ",".join(CHECK_NAMES))
    p.add_argument("--json-report", default=None)
    p.set_defaults(func=cmd_selftest)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (cio.MalformedInput, FieldError, ShapeMismatch, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except InternalAssertionFailure as exc:
        sys.stderr.write(f"internal assertion: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
