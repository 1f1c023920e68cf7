"""Command line front end: ``hodgering <subcommand> <fixture> [options]``.

Exit codes: 0 success, 1 construction/certificate failure, 2 validation
failure, 3 parse/configuration error (including unknown subcommands).
"""
from __future__ import annotations

import argparse
import sys

from .errors import (
    CertificateFailure,
    DimensionMismatch,
    FieldConfigError,
    HodgeRingError,
    InconsistentSystem,
    ParseError,
    UnsupportedCenter,
    ValidationError,
)

OK, CONSTRUCTION_FAILED, VALIDATION_FAILED, CONFIG_ERROR = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _parser():
    p = _Parser(prog="hodgering", description="Weight-1 Hodge structures from Hodge algebras.")
    sub = p.add_subparsers(dest="command", metavar="{validate,clifford,construct,center,universal,selftest}")

    def common(sp):
        sp.add_argument("--clifford", action="store_true", help="generate C(H) from the weight-2 lattice")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol", type=float, default=1e-9, help="float tolerance")

    for name, helptext in (
        ("validate", "Hodge and algebra validation"),
        ("clifford", "build C(H), its grading and the complex structure e"),
        ("construct", "decompose and build the polarized weight-1 structure"),
        ("center", "center, t-invariant part and its field factors"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("fixture", help="built-in name, path, or - for stdin")
        common(sp)
    sp = sub.add_parser("universal", help="check the maps e_beta into a second structure")
    sp.add_argument("fixture")
    sp.add_argument("target", help="fixture B, or 'self' for the constructed structure itself")
    common(sp)
    sp = sub.add_parser("selftest", help="run every acceptance criterion")
    sp.add_argument("--seed", type=int, default=0)
    return p


def _load(ref, args, stdin):
    from .fixtures import load_fixture

    fx = load_fixture(ref, stdin)
    if fx.backend == "float":
        fx.tol = args.tol
    return fx


def _algebra(fx, args):
    """(HodgeAlgebra, CliffordAlgebra | None) for a fixture."""
    from .clifford import build

    wants = args.clifford or fx.option("clifford") == "true"
    if fx.has_algebra and not args.clifford:
        return fx.algebra(), None
    if not wants:
        raise ParseError("fixture has no structure_constants; pass --clifford", key="structure_constants")
    hs = fx.weight2()
    cl = build(hs.gram, hs)
    return cl.base, cl


def _emit(out, report):
    out.write(str(report) + "\n")


def _cmd_validate(fx, args, out):
    from .algebra import validate_algebra
    from .hodge import validate_weight1, validate_weight2

    reports = [validate_weight2(fx.weight2())]
    w1 = fx.weight1()
    if w1 is not None:
        reports.append(validate_weight1(w1))
    if fx.has_algebra or args.clifford or fx.option("clifford") == "true":
        alg, _ = _algebra(fx, args)
        reports.append(validate_algebra(alg))
    for r in reports:
        _emit(out, r)
    return OK if all(r.ok for r in reports) else VALIDATION_FAILED


def _cmd_clifford(fx, args, out):
    from .clifford import build, grading_report, ks_structure
    from .hodge import validate_weight2

    hs = fx.weight2()
    cl = build(hs.gram, hs)
    out.write(f"generators: {cl.n}, dimension {cl.dim}\n")
    out.write("diagonal form: " + " ".join(str(cl.generator_gram[i][i]) for i in range(cl.n)) + "\n")
    reports = [validate_weight2(cl.hodge), grading_report(cl), ks_structure(cl, True, args.tol).report]
    for r in reports:
        _emit(out, r)
    return OK if all(r.ok for r in reports) else CONSTRUCTION_FAILED


def _construct(fx, args):
    from .algebra import validate_algebra
    from .construction import build_weight1, decompose, general_construct

    alg, cl = _algebra(fx, args)
    vrep = validate_algebra(alg)
    if not vrep.ok:
        bad = vrep.failed()[0]
        raise ValidationError(f"algebra fails {bad.name}", bad.name)
    dec = decompose(alg)
    if dec.M.dim == 0:
        res = build_weight1(alg, dec, args.seed)
    else:
        res = general_construct(alg, dec, args.seed, args.tol)
    return alg, cl, res


def _cmd_construct(fx, args, out):
    alg, cl, res = _construct(fx, args)
    if cl is not None:
        res.report.info["a"] = cl.format_element(res.a)
    dec = res.decomposition
    out.write(f"dim W = {dec.W.dim}, dim M = {dec.M.dim}, g = {res.g}\n")
    _emit(out, res.report)
    return OK if res.report.ok else CONSTRUCTION_FAILED


def _cmd_center(fx, args, out):
    from .algebra import center

    alg, _ = _algebra(fx, args)
    cr = center(alg, split=True, seed=args.seed)
    names = alg.names
    for label, space in (("center", cr.center), ("t_invariant", cr.t_invariant)):
        out.write(f"{label} (dim {space.dim}):\n")
        for v in space.basis:
            terms = [f"{c}*{names[i]}" for i, c in enumerate(v) if c]
            out.write("  " + " + ".join(terms) + "\n")
    _emit(out, cr.report)
    return OK if cr.report.ok else CONSTRUCTION_FAILED


def _cmd_universal(fx, args, out, stdin):
    from .construction import e_beta_maps
    from .hodge import validate_weight1

    alg, _, res = _construct(fx, args)
    if args.target in ("self", fx.name):
        B = res.w1
        embedding = alg.left_matrix
    else:
        fb = _load(args.target, args, stdin)
        B = fb.weight1()
        if B is None:
            raise ParseError("target fixture needs omega and h10 blocks", key="omega")
        wrep = validate_weight1(B)
        if not wrep.ok:
            _emit(out, wrep)
            return VALIDATION_FAILED
        if fb.embedding is None:
            if B.rank != alg.dim:
                raise ParseError("target fixture needs an embedding block", key="embedding")
            embedding = alg.left_matrix
        else:
            if len(fb.embedding) != alg.dim or any(len(r) != B.rank ** 2 for r in fb.embedding):
                raise DimensionMismatch("embedding needs one row of rank² entries per algebra basis element")
            N = B.rank
            mats = [[row[i * N:(i + 1) * N] for i in range(N)] for row in fb.embedding]

            def embedding(h, mats=mats, N=N):
                return [[sum(c * m[r][s] for c, m in zip(h, mats) if c) for s in range(N)] for r in range(N)]

    betas = [tuple(int(i == j) for j in range(B.rank)) for i in range(B.rank)]
    rep = e_beta_maps(alg, res, B, embedding, betas)
    _emit(out, rep)
    return OK if rep.ok else CONSTRUCTION_FAILED


def run_command(argv, stdin=None, stdout=None) -> int:
    """Run one CLI invocation; returns the exit code."""
    out = stdout or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        out.write(str(exc) + "\n")
        return CONFIG_ERROR
    except SystemExit as exc:  # --help
        return OK if not exc.code else CONFIG_ERROR
    if args.command is None:
        out.write(parser.format_usage())
        return CONFIG_ERROR
    if args.command == "selftest":
        from .selftest import run_all

        out.write(f"seed: {args.seed}\n")
        ok = run_all(args.seed, out=lambda line: out.write(line + "\n"))
        return OK if ok else CONSTRUCTION_FAILED
    try:
        fx = _load(args.fixture, args, stdin)
        out.write(f"fixture: {fx.name}\nseed: {args.seed}\n")
        if args.command == "validate":
            code = _cmd_validate(fx, args, out)
        elif args.command == "clifford":
            code = _cmd_clifford(fx, args, out)
        elif args.command == "construct":
            code = _cmd_construct(fx, args, out)
        elif args.command == "center":
            code = _cmd_center(fx, args, out)
        else:
            code = _cmd_universal(fx, args, out, stdin)
    except (ParseError, FieldConfigError, DimensionMismatch) as exc:
        out.write(f"error: {exc}\n")
        return CONFIG_ERROR
    except ValidationError as exc:
        out.write(f"FAIL {exc.invariant}: {exc}\n")
        return VALIDATION_FAILED
    except (CertificateFailure, UnsupportedCenter, InconsistentSystem) as exc:
        name = getattr(exc, "invariant", None) or type(exc).__name__
        out.write(f"FAIL {name}: {exc}\n")
        return CONSTRUCTION_FAILED
    except HodgeRingError as exc:
        out.write(f"error: {exc}\n")
        return CONSTRUCTION_FAILED
    out.write(f"exit status: {code}\n")
    return code


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
