"""Command-line front end.

Every subcommand prints a short human-readable summary to stdout followed by
a JSON report of the form {"result": ..., "meta": ...}; --out redirects the
JSON to a file.  The result section is deterministic (byte-identical across
runs and worker counts); volatile data (timings, backend, cache state) lives
in meta.

Exit codes: 0 pass, 1 verification failure, 2 usage, 3 budget, 4 io.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import blocking, codes, fplinalg, kernels, projgeom, verify, wsearch
from .blocking import PointSet
from .codes import Code, Codeword
from .errors import (
    AssertionFailed,
    BudgetExceeded,
    IOFormatError,
    NoTransversal,
    NotInDual,
    UsageError,
)
from .gfq import field
from .projgeom import desarguesian_spread, projective_space
from .wsearch import SearchBudget

EXIT_PASS = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_IO = 4


def _add_space_args(sp: argparse.ArgumentParser, n_default: int = 2) -> None:
    sp.add_argument("--p", type=int, required=True, help="prime characteristic")
    sp.add_argument("--h", type=int, default=1, help="extension degree (q = p^h)")
    sp.add_argument("--n", type=int, default=n_default, help="projective dimension")


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=str, default=None, help="write the JSON report here")
    common.add_argument("--workers", type=int, default=1, help="worker processes for searches")
    common.add_argument(
        "--budget", type=int, default=None,
        help="node budget for bounded searches (max combinations)",
    )
    common.add_argument(
        "--cache-dir", type=str, default=os.environ.get("PGCODES_CACHE"),
        help="directory for cached results and checkpoints (env PGCODES_CACHE)",
    )
    return common


def _budget(args) -> SearchBudget:
    kw = {"workers": args.workers}
    if args.budget is not None:
        kw["max_combinations"] = args.budget
    return SearchBudget(**kw)


def _cache_path(args, key_parts: dict) -> Path | None:
    if not args.cache_dir:
        return None
    blob = json.dumps(key_parts, sort_keys=True).encode()
    digest = hashlib.sha256(blob).hexdigest()[:16]
    root = Path(args.cache_dir)
    root.mkdir(parents=True, exist_ok=True)
    return root / f"{key_parts['cmd']}-{digest}.json"


def _cached_result(args, key_parts: dict, compute):
    """result section from cache when available, else computed and stored."""
    path = _cache_path(args, key_parts)
    if path is not None and path.exists():
        try:
            return json.loads(path.read_text()), "hit"
        except (OSError, json.JSONDecodeError):
            pass
    result = compute()
    if path is not None:
        path.write_text(json.dumps(result, sort_keys=True, indent=2) + "\n")
        return result, "miss"
    return result, "off"


def _emit(args, lines: list[str], result: dict, meta: dict) -> None:
    for line in lines:
        print(line)
    payload = json.dumps({"meta": meta, "result": result}, sort_keys=True, indent=2)
    if args.out:
        Path(args.out).write_text(payload + "\n")
        print(f"report written to {args.out}")
    else:
        print(payload)


def _meta(args, cache_state: str = "off") -> dict:
    return {"backend": kernels.backend_name(), "workers": args.workers, "cache": cache_state}


# -- simple space/code commands ---------------------------------------------------------


def cmd_space(args) -> int:
    space = projective_space(args.p, args.h, args.n)
    q = space.field.q
    thetas = [space.theta(k) for k in range(args.n + 1)]
    result = {
        "p": args.p, "h": args.h, "q": q, "n": args.n,
        "theta": thetas,
        "num_points": space.num_points,
        "num_hyperplanes": space.num_hyperplanes,
        "points_per_hyperplane": space.theta(args.n - 1),
    }
    lines = [
        f"PG({args.n},{q}): {space.num_points} points, {space.num_hyperplanes} hyperplanes",
        "theta: " + ", ".join(f"theta_{k} = {t}" for k, t in enumerate(thetas)),
    ]
    _emit(args, lines, result, _meta(args))
    return EXIT_PASS


def cmd_matrix(args) -> int:
    space = projective_space(args.p, args.h, args.n)
    inc = space.incidence
    weights = sorted(set(int(w) for w in inc.sum(axis=1)))
    result = {
        "p": args.p, "h": args.h, "n": args.n,
        "shape": list(inc.shape),
        "row_weights": weights,
        "symmetric": bool(np.array_equal(inc, inc.T)),
    }
    lines = [f"incidence matrix {inc.shape[0]} x {inc.shape[1]}, row weight {weights}"]
    if args.save:
        fplinalg.write_matrix(args.save, inc, args.p)
        lines.append(f"matrix written to {args.save}")
    _emit(args, lines, result, _meta(args))
    return EXIT_PASS


def cmd_code_dim(args) -> int:
    space = projective_space(args.p, args.h, args.n)
    code = Code(space)
    expected = codes.dimension_formula(args.p, args.h, args.n)
    got = code.dimension
    result = {
        "p": args.p, "h": args.h, "n": args.n,
        "dimension": got, "formula": expected, "match": got == expected,
        "length": code.length,
    }
    lines = [f"dim C(PG({args.n},{space.field.q})) = {got} (formula {expected})"]
    _emit(args, lines, result, _meta(args))
    return EXIT_PASS if got == expected else EXIT_ASSERTION


def _report_command(args, key, compute, describe) -> int:
    result, state = _cached_result(args, key, compute)
    meta = _meta(args, state)
    _emit(args, describe(result), result, meta)
    return EXIT_PASS


def cmd_min_weight(args) -> int:
    space = projective_space(args.p, args.h, args.n)
    key = {"cmd": "min-weight", "p": args.p, "h": args.h, "n": args.n}
    return _report_command(
        args, key,
        lambda: wsearch.min_weight_report(Code(space), _budget(args)).result,
        lambda r: [
            f"min weight = {r['min']} with {r['count']} words",
            f"all hyperplane multiples: {r['all_hyperplane_multiples']}",
        ],
    )


def cmd_hull(args) -> int:
    space = projective_space(args.p, args.h, args.n)
    key = {"cmd": "hull", "p": args.p, "h": args.h, "n": args.n}
    return _report_command(
        args, key,
        lambda: wsearch.hull_min_weight(Code(space), _budget(args)).result,
        lambda r: [f"hull min weight = {r['min']} with {r['count']} words"],
    )


def cmd_gap_scan(args) -> int:
    space = projective_space(args.p, args.h, args.n)
    key = {"cmd": "gap-scan", "p": args.p, "h": args.h, "n": args.n,
           "lo": args.lo, "hi": args.hi}
    return _report_command(
        args, key,
        lambda: wsearch.gap_scan(Code(space), args.lo, args.hi, _budget(args)).result,
        lambda r: [f"weights in ]{args.lo},{args.hi}[: {r['weights_present'] or 'none'}"],
    )


def cmd_dual_min_weight(args) -> int:
    space = projective_space(args.p, args.h, args.n)
    budget = _budget(args)
    checkpoint = args.checkpoint
    if checkpoint is None and args.cache_dir:
        root = Path(args.cache_dir)
        root.mkdir(parents=True, exist_ok=True)
        checkpoint = str(root / f"dual-p{args.p}-h{args.h}-n{args.n}.ckpt")
    key = {"cmd": "dual-min-weight", "p": args.p, "h": args.h, "n": args.n,
           "cap": args.cap, "max_combinations": budget.max_combinations}
    return _report_command(
        args, key,
        lambda: wsearch.dual_min_weight(space, budget, cap=args.cap, checkpoint=checkpoint).result,
        lambda r: [
            f"dual min weight = {r['min']} (exhaustive: {r['exhaustive']})",
            "certificates: " + ", ".join(f"{c['kind']} w={c['weight']}" for c in r["certificates"]),
        ],
    )


# -- blocking-set commands ----------------------------------------------------------------


def _profile_payload(ps: PointSet) -> dict:
    me = blocking.max_exponent(ps)
    prof = blocking.line_profile(ps, ps.space.field.p**me.e)
    q, n = ps.space.field.q, ps.space.n
    out = {
        "size": len(ps),
        "blocking": blocking.is_blocking(ps),
        "minimal": blocking.is_minimal_blocking(ps),
        "exponent": me.e,
        "exponent_divides_h": me.divides_h,
        "histogram": {str(k): v for k, v in sorted(prof.histogram.items())},
        "one_mod_E": prof.one_mod_E,
        "identities_hold": prof.holds(),
    }
    if prof.tau is not None:
        out["tau"] = {str(k): v for k, v in sorted(prof.tau.items())}
    br = blocking.bounds(q, n, me.e)
    out["bounds"] = {
        "lower": str(br.lower), "upper": str(br.upper),
        "upper_applicable": br.upper_applicable,
        "brackets_size": br.brackets(len(ps)),
    }
    return out


def _write_pointset_save(args, ps: PointSet, lines: list[str]) -> None:
    if args.save:
        projgeom.write_pointset(args.save, ps.space, ps.indices)
        lines.append(f"point set written to {args.save}")


def cmd_blocking_build(args) -> int:
    space = projective_space(args.p, args.h, args.n)
    if args.kind == "hyperplane":
        ps = PointSet.from_indices(space, space.hyperplane_points(args.index))
    else:  # baer-cone
        ps = blocking.baer_cone(space, args.t).points
    result = {"kind": args.kind, "p": args.p, "h": args.h, "n": args.n,
              "indices": [int(i) for i in ps.indices]}
    result.update(_profile_payload(ps))
    lines = [f"{args.kind}: {len(ps)} points, minimal: {result['minimal']}"]
    _write_pointset_save(args, ps, lines)
    _emit(args, lines, result, _meta(args))
    return EXIT_PASS


def cmd_blocking_reduce(args) -> int:
    space, idx = projgeom.read_pointset(args.infile)
    ps = PointSet.from_indices(space, idx)
    red = blocking.reduce_to_minimal(ps)
    result = {
        "size_in": len(ps), "size_out": len(red.points),
        "removed": [int(i) for i in red.removed],
        "unique_reduction_range": red.hypothesis_met,
        "minimal": blocking.is_minimal_blocking(red.points),
    }
    lines = [f"reduced {len(ps)} -> {len(red.points)} points (removed {len(red.removed)})"]
    _write_pointset_save(args, red.points, lines)
    _emit(args, lines, result, _meta(args))
    return EXIT_PASS


def cmd_blocking_profile(args) -> int:
    space, idx = projgeom.read_pointset(args.infile)
    ps = PointSet.from_indices(space, idx)
    result = _profile_payload(ps)
    lines = [
        f"{len(ps)} points, exponent e = {result['exponent']}, "
        f"identities hold: {result['identities_hold']}",
    ]
    _emit(args, lines, result, _meta(args))
    return EXIT_PASS


def cmd_blocking_companion(args) -> int:
    if args.n != 2:
        raise UsageError("companion construction is implemented for n = 2")
    spread = desarguesian_spread(args.p, args.h, args.n)
    u = blocking.first_baer_plane(spread)
    rep = blocking.companion_blocking_set(spread, u)
    result = {
        "p": args.p, "h": args.h, "n": args.n,
        "size_b": len(rep.b), "size_b_prime": len(rep.b_prime),
        "intersection": len(rep.intersection),
        "two_mod_p": rep.two_mod_p,
        "b": [int(i) for i in rep.b.indices],
        "b_prime": [int(i) for i in rep.b_prime.indices],
    }
    lines = [
        f"|B| = {len(rep.b)}, |B'| = {len(rep.b_prime)}, "
        f"|B /\\ B'| = {len(rep.intersection)} (= 2 mod {args.p}: {rep.two_mod_p})",
    ]
    _write_pointset_save(args, rep.b_prime, lines)
    _emit(args, lines, result, _meta(args))
    return EXIT_PASS if rep.two_mod_p else EXIT_ASSERTION


def cmd_blocking_redei(args) -> int:
    f = field(args.p, args.h)
    rs = blocking.redei_blocking_set(f, args.e)
    rep = blocking.redei_dual_word(rs)
    result = {
        "p": args.p, "h": args.h, "e": args.e,
        "size": len(rs.points), "k": rs.k, "minimal": rs.minimal,
        "weight": rep.weight, "hypothesis_met": rep.hypothesis_met,
        "digits": fplinalg.digits_of_row(rep.word.vector),
    }
    lines = [
        f"Redei set: {len(rs.points)} points with a {rs.k}-secant",
        f"dual word weight {rep.weight} = 2q+1-k (in-range hypothesis: {rep.hypothesis_met})",
    ]
    if args.save:
        codes.write_codeword(args.save, rep.word, args.p)
        lines.append(f"codeword written to {args.save}")
    _emit(args, lines, result, _meta(args))
    return EXIT_PASS


# -- verify -------------------------------------------------------------------------------


def cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    reports = []
    ok = True
    lines = []
    for name in names:
        r = verify.run_suite(name, workers=args.workers)
        result = {"name": r.name, "passed": r.passed, "checks": r.checks}
        reports.append(result)
        ok = ok and r.passed
        for c in r.checks:
            lines.append(f"  {'pass' if c['passed'] else 'FAIL'}  {c['name']}")
        lines.append(f"suite {name}: {'pass' if r.passed else 'FAIL'}")
    payload = reports[0] if len(reports) == 1 else {"suites": reports, "passed": ok}
    _emit(args, lines, payload, _meta(args))
    return EXIT_PASS if ok else EXIT_ASSERTION


# -- export -------------------------------------------------------------------------------


def cmd_export(args) -> int:
    if not args.out:
        raise UsageError("export requires --out")
    space = projective_space(args.p, args.h, args.n)
    if args.object == "matrix":
        fplinalg.write_matrix(args.out, space.incidence, args.p)
    elif args.object == "points":
        projgeom.write_points(args.out, space)
    elif args.object == "spread":
        spread = desarguesian_spread(args.p, args.h, args.n)
        projgeom.write_spread(args.out, spread)
    elif args.object == "pointset":
        projgeom.write_pointset(args.out, space, space.hyperplane_points(args.index))
    else:  # codeword
        vec = space.incidence[args.index].astype(np.int64)
        codes.write_codeword(args.out, Codeword(vec, {"hyperplane": args.index}), args.p)
    print(f"{args.object} written to {args.out}")
    return EXIT_PASS


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="pgcodes",
        description="codes from point-hyperplane incidences of PG(n,q), with "
        "blocking-set constructions and verification suites",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("space", parents=[common], help="point/hyperplane counts and theta values")
    _add_space_args(sp)
    sp.set_defaults(fn=cmd_space)

    sp = sub.add_parser("matrix", parents=[common], help="incidence matrix summary or file")
    _add_space_args(sp)
    sp.add_argument("--save", type=str, default=None, help="also write the matrix file here")
    sp.set_defaults(fn=cmd_matrix)

    sp = sub.add_parser("code-dim", parents=[common], help="code dimension vs the counting formula")
    _add_space_args(sp)
    sp.set_defaults(fn=cmd_code_dim)

    sp = sub.add_parser("min-weight", parents=[common], help="minimum weight by full enumeration")
    _add_space_args(sp)
    sp.set_defaults(fn=cmd_min_weight)

    sp = sub.add_parser("hull", parents=[common], help="hull minimum weight by full enumeration")
    _add_space_args(sp)
    sp.set_defaults(fn=cmd_hull)

    sp = sub.add_parser("gap-scan", parents=[common], help="codeword weights in an open interval")
    _add_space_args(sp)
    sp.add_argument("--lo", type=int, required=True, help="exclusive lower end")
    sp.add_argument("--hi", type=int, required=True, help="exclusive upper end")
    sp.set_defaults(fn=cmd_gap_scan)

    sp = sub.add_parser("dual-min-weight", parents=[common], help="dual minimum weight with certificates")
    _add_space_args(sp)
    sp.add_argument("--cap", type=int, default=None, help="support-size cap for the search")
    sp.add_argument("--checkpoint", type=str, default=None, help="checkpoint file for resumable search")
    sp.set_defaults(fn=cmd_dual_min_weight)

    bl = sub.add_parser("blocking", help="blocking-set constructions and reports")
    bsub = bl.add_subparsers(dest="blocking_command", required=True)

    sp = bsub.add_parser("build", parents=[common], help="construct a named blocking set")
    _add_space_args(sp)
    sp.add_argument("--kind", choices=["hyperplane", "baer-cone"], default="hyperplane")
    sp.add_argument("--index", type=int, default=0, help="hyperplane index")
    sp.add_argument("--t", type=int, default=-1, help="cone vertex dimension (-1: subgeometry)")
    sp.add_argument("--save", type=str, default=None, help="also write the point set here")
    sp.set_defaults(fn=cmd_blocking_build)

    sp = bsub.add_parser("reduce", parents=[common], help="reduce a blocking set to a minimal one")
    sp.add_argument("--in", dest="infile", required=True, help="point-set file")
    sp.add_argument("--save", type=str, default=None, help="also write the reduced set here")
    sp.set_defaults(fn=cmd_blocking_reduce)

    sp = bsub.add_parser("profile", parents=[common], help="line-intersection profile and bounds")
    sp.add_argument("--in", dest="infile", required=True, help="point-set file")
    sp.set_defaults(fn=cmd_blocking_profile)

    sp = bsub.add_parser("companion", parents=[common], help="companion of a Baer-type linear blocking set")
    _add_space_args(sp)
    sp.add_argument("--save", type=str, default=None, help="also write the companion set here")
    sp.set_defaults(fn=cmd_blocking_companion)

    sp = bsub.add_parser("redei", parents=[common], help="Redei-type set and its dual word")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--e", type=int, default=1, help="subfield exponent (e | h)")
    sp.add_argument("--save", type=str, default=None, help="also write the dual codeword here")
    sp.set_defaults(fn=cmd_blocking_redei)

    sp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    sp.add_argument(
        "suite",
        choices=sorted(verify.SUITES) + ["all", "blocking-lemmas"],
        help="suite name ('all' runs every suite)",
    )
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("export", parents=[common], help="write an object in its interchange format")
    sp.add_argument("object", choices=["matrix", "points", "spread", "pointset", "codeword"])
    _add_space_args(sp)
    sp.add_argument("--index", type=int, default=0, help="hyperplane index for pointset/codeword")
    sp.set_defaults(fn=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "suite", None) == "blocking-lemmas":
        args.suite = "lemmas"
    try:
        return args.fn(args)
    except (AssertionFailed, NotInDual, NoTransversal) as exc:
        payload = getattr(exc, "payload", {})
        print(f"verification failure: {exc}" + (f" {json.dumps(payload, sort_keys=True)}" if payload else ""),
              file=sys.stderr)
        return EXIT_ASSERTION
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        detail = ""
        if exc.needed is not None:
            detail = f" (needed {exc.needed}, allowed {exc.allowed})"
        print(f"budget exceeded: {exc}{detail}", file=sys.stderr)
        return EXIT_BUDGET
    except (IOFormatError, OSError) as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
