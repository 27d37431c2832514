"""Command-line interface.

Exit codes: 0 success, 1 internal error, 2 solver did not converge (or a
verification failed), 3 input contract violated, 4 size guard.
"""
import argparse
import json
import os
import sys
import warnings

import numpy as np

from . import groups as gc
from . import io, pipeline, render, symmetry
from .catalog import catalog_list, resolve
from .errors import NumericalFailure, OrbitPartError, PointCountError, PreconditionError, SizeGuardError
from .partition import verify as verify_partition
from .solver import DEFAULT_MAX_ITER, DEFAULT_TOL, ColorClasses, brute_force_solve, solve_with_restarts
from .testmap import Configuration, build_testmap, random_points, required_N

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_NOT_CONVERGED = 2
EXIT_INPUT = 3
EXIT_SIZE = 4


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _labels(rep):
    return [rep.group.label(g) for g in range(rep.order)]


def cmd_catalog(args):
    for e in catalog_list(args.keys.split(",") if args.keys else None):
        print(json.dumps(e.summary()))
    return EXIT_OK


def cmd_gen_points(args):
    e = resolve(args.rep)
    pts = random_points(required_N(e.r, e.d), e.d, args.seed)
    _emit(io.format_points_csv(pts), args.output)
    return EXIT_OK


def _intersection_dict(inter):
    return {
        "cosets": [[[j + 1 for j in A] for A in row] for row in inter.cosets],
        "targets": inter.targets.tolist(),
        "membership_residuals": inter.membership_residuals.tolist(),
        "witness_gaps": inter.witness_gaps.tolist(),
        "regularity": inter.regularity,
    }


def cmd_partition(args):
    e = resolve(args.rep)
    pts = io.read_points(args.points)
    out = pipeline.run(
        e.rep, pts, rep_key=e.key, tol=args.tol, restarts=args.restarts, seed=args.seed,
        max_iter=args.max_iter, threads=args.threads,
    )
    res = out.solver
    solver_info = {
        "residual": res.residual, "iterations": res.iterations,
        "restarts_used": res.restarts_used, "converged": res.converged,
    }
    if out.partition is None:
        io_obj = {"rep_key": e.key, "converged": False, "solver": solver_info}
        _emit(io.dump_json(io_obj), args.output)
        print(f"solver did not converge (best residual {res.residual:.3g})", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    extra = {"solver": solver_info}
    if out.intersection is not None:
        extra["intersection"] = _intersection_dict(out.intersection)
    obj = io.partition_to_dict(out.partition, e.rep, e.key, checks=out.report.as_dict(), extra=extra)
    _emit(io.dump_json(obj), args.output)
    if not out.report.passed:
        print("verification failed: " + ", ".join(out.report.failed()), file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_verify(args):
    e = resolve(args.rep)
    config = Configuration(io.read_points(args.points), e.key)
    part = io.read_partition(args.partition, e.rep)
    rpt = verify_partition(part, e.rep, config, tol=args.tol)
    print(io.dump_json({"passed": rpt.passed, "checks": rpt.as_dict()}), end="")
    return EXIT_OK if rpt.passed else EXIT_NOT_CONVERGED


def cmd_oracle(args):
    e = resolve(args.rep)
    N = required_N(e.r, e.d)
    want = N - 1 if args.below_threshold else N
    if args.points:
        pts = io.read_points(args.points)
    else:
        pts = random_points(want, e.d, args.seed)
    config = Configuration(pts, e.key)
    if config.N != want:
        raise PointCountError(want, config.N)
    if e.r ** want > args.limit:
        raise SizeGuardError(f"{e.r}^{want} assignments exceed the limit {args.limit}")
    tm = build_testmap(e.rep, config, allow_any_N=args.below_threshold)
    classes = ColorClasses.from_testmap(tm, square=not args.below_threshold)
    brute = brute_force_solve(classes, limit=args.limit)
    report = {
        "rep_key": e.key, "N": config.N, "assignments": e.r ** config.N,
        "brute_force_residual": brute.residual,
        "brute_force_assignment": [int(g) for g in brute.selection.assignment],
    }
    if args.below_threshold:
        report["bounded_away_from_zero"] = brute.residual > 1e-6
    else:
        piv = solve_with_restarts(classes, tol=args.tol, restarts=args.restarts, seed=args.seed)
        report["pivoting_residual"] = piv.residual
        report["pivoting_converged"] = piv.converged
        report["difference"] = abs(piv.residual - brute.residual)
    print(io.dump_json(report), end="")
    return EXIT_OK


def cmd_symmetry(args):
    e = resolve(args.rep)
    try:
        u = np.array([float(t) for t in args.u.split(",")])
    except ValueError:
        raise PreconditionError(f"cannot parse --u {args.u!r}") from None
    if u.size != e.d:
        raise PreconditionError(f"--u needs {e.d} coordinates, got {u.size}")
    rpt = symmetry.osym(e.rep, u, quantization=args.quantization)
    out = {
        "rep_key": e.key,
        "osym_order": rpt.osym_order,
        "observed_generic_order": rpt.osym_order,
        "expected_iso_order": e.expected_iso_order,
        "contains_left_regular": rpt.contains_left_regular,
        "quantization": rpt.quantization,
        "osym_generators": rpt.osym_generators,
        "gram": rpt.gram.tolist(),
    }
    print(io.dump_json(out), end="")
    return EXIT_OK


def cmd_irreducibility(args):
    e = resolve(args.rep)
    cn = gc.character_norm(e.rep)
    out = {
        "rep_key": e.key,
        "character_norm": cn,
        "absolutely_irreducible": abs(cn - 1.0) <= 1e-8,
        "complex_type": abs(cn - 2.0) <= 1e-8,
    }
    print(io.dump_json(out), end="")
    return EXIT_OK


def cmd_render(args):
    e = resolve(args.rep)
    pts = io.read_points(args.points)
    part = io.read_partition(args.partition, e.rep)
    text, _ = render.render(pts, part, e.d, projection=args.project, labels=_labels(e.rep))
    _emit(text, args.output)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="orbitpart", description="Partitions of point sets by free orbit polytopes.")
    sub = p.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="list catalog entries")
    cat.add_argument("action", choices=["list"])
    cat.add_argument("--keys", help="comma-separated keys (default: built-in list)")
    cat.set_defaults(func=cmd_catalog)

    gp = sub.add_parser("gen-points", help="write seeded standard-normal points")
    gp.add_argument("--rep", required=True)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("-o", "--output")
    gp.set_defaults(func=cmd_gen_points)

    pa = sub.add_parser("partition", help="compute and certify a partition")
    pa.add_argument("--rep", required=True)
    pa.add_argument("--points", required=True)
    pa.add_argument("--tol", type=float, default=DEFAULT_TOL)
    pa.add_argument("--restarts", type=int, default=8)
    pa.add_argument("--seed", type=int, default=0)
    pa.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    pa.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    pa.add_argument("-o", "--output")
    pa.set_defaults(func=cmd_partition)

    ve = sub.add_parser("verify", help="re-check a partition file")
    ve.add_argument("--rep", required=True)
    ve.add_argument("--points", required=True)
    ve.add_argument("--partition", required=True)
    ve.add_argument("--tol", type=float, default=1e-8)
    ve.set_defaults(func=cmd_verify)

    orc = sub.add_parser("oracle", help="compare pivoting with exhaustive search")
    orc.add_argument("--rep", required=True)
    orc.add_argument("--points", help="points file (default: seeded random points)")
    orc.add_argument("--below-threshold", action="store_true", help="use one point fewer than required")
    orc.add_argument("--seed", type=int, default=0)
    orc.add_argument("--tol", type=float, default=DEFAULT_TOL)
    orc.add_argument("--restarts", type=int, default=8)
    orc.add_argument("--limit", type=int, default=10**7)
    orc.set_defaults(func=cmd_oracle)

    sy = sub.add_parser("symmetry", help="orthogonal symmetries of the orbit of u")
    sy.add_argument("--rep", required=True)
    sy.add_argument("--u", required=True, help='coordinates "c1,...,cd"')
    sy.add_argument("--quantization", type=float, default=symmetry.DEFAULT_QUANTIZATION)
    sy.set_defaults(func=cmd_symmetry)

    ir = sub.add_parser("irreducibility", help="normalized character norm")
    ir.add_argument("--rep", required=True)
    ir.set_defaults(func=cmd_irreducibility)

    re_ = sub.add_parser("render", help="SVG for planar, OBJ for spatial partitions")
    re_.add_argument("--rep", required=True)
    re_.add_argument("--points", required=True)
    re_.add_argument("--partition", required=True)
    re_.add_argument("--project", help='three coordinate axes "i,j,k" for d > 3')
    re_.add_argument("-o", "--output")
    re_.set_defaults(func=cmd_render)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return args.func(args)
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except NumericalFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except (OrbitPartError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
