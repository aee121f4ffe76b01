"""``efl`` command-line front end.

JSON results go to stdout, diagnostics to stderr.  Exit status: 0 success or
property holds, 1 property fails or search exhausted, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .auxgraph import build_aux
from .coefficients import (
    as_exponent,
    coefficient_by_expansion,
    coefficient_by_formula,
    coefficient_by_orientations,
    default_grid,
    exponent_from_json,
    exponent_to_json,
)
from .coloring import (
    brute_force_coloring,
    coloring_from_point,
    coloring_to_json,
    nonvanishing_search,
    verify_coloring,
)
from .experiments import ENGINE_MAX_N, EngineInfeasible, auto_target, first_nonzero, search_nonzero_coefficients
from .families import default_field, expand_P, make_evaluator
from .fields import QQ
from .hypergraph import (
    HypergraphError,
    dualize,
    generate,
    parse_hypergraph,
    strip_degree_one,
    uniformize,
    validate,
)
from .orientation import complete_orientation, is_vandermonde_completable, orient_G1, orient_G2_pathlike
from .polynomial import FeasibilityError

log = logging.getLogger("efl")


class UsageError(Exception):
    pass


def _emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=False) + "\n")


def _load(path: str):
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return parse_hypergraph(data), hashlib.sha256(data).hexdigest()[:16]


def _standard(H):
    if not validate(H).is_standard_form:
        raise UsageError("input is not in standard form (n linear edges of size n); try `efl uniformize`")
    return H


def cmd_validate(args):
    H, _ = _load(args.file)
    rep = validate(H)
    _emit({"n": H.n, "edges": H.m, "vertices": len(H.vertices), **rep.to_json()})
    return 0 if rep.is_linear else 1


def cmd_dualize(args):
    H, _ = _load(args.file)
    _emit(dualize(H).to_json())
    return 0


def cmd_derive(args):
    H, _ = _load(args.file)
    derived, removed = strip_degree_one(H)
    _emit({"derived": derived.to_json(), "removed": removed})
    return 0


def cmd_uniformize(args):
    H, _ = _load(args.file)
    _emit(uniformize(H, args.n).to_json())
    return 0


def cmd_gen(args):
    H = generate(args.family, seed=args.seed, n=args.n, q=args.q)
    _emit(H.to_json())
    return 0


def cmd_aux(args):
    H = _standard(_load(args.file)[0])
    _emit(build_aux(H, kind=args.kind).to_json())
    return 0


def cmd_orient(args):
    H = _standard(_load(args.file)[0])
    if args.kind == "G1":
        aux = build_aux(H, kind="G1")
        o = orient_G1(aux)
    else:
        aux, o = orient_G2_pathlike(H)
    ok = is_vandermonde_completable(aux, o)
    out = {
        "kind": args.kind.lower(),
        "completable": ok,
        "identifier_in_degrees": o.in_degrees(),
        "orientation": o.to_json(),
    }
    if ok:
        out["total_in_degrees"] = complete_orientation(aux, o).in_degrees()
    _emit(out)
    return 0 if ok else 1


def _parse_target(spec: str, n: int):
    data = json.loads(spec)
    if isinstance(data, dict):
        return exponent_from_json(n, data)
    return as_exponent(n, data)


def cmd_coeff(args):
    H = _standard(_load(args.file)[0])
    n = H.n
    kind = args.kind
    field = default_field(kind, n)
    if args.target == "auto":
        aux, target = auto_target(H, kind)
    else:
        aux = build_aux(H, kind=kind)
        target = _parse_target(args.target, n)
    engines = ["expand", "orient", "formula"] if args.engine == "all" else [args.engine]
    values = {}
    for eng in engines:
        if n > ENGINE_MAX_N[eng]:
            raise EngineInfeasible(f"engine {eng} is limited to n <= {ENGINE_MAX_N[eng]}")
        if eng == "expand":
            values[eng] = coefficient_by_expansion(expand_P(kind, aux, field), target)
        elif eng == "orient":
            values[eng] = coefficient_by_orientations(aux, target, field)
        else:
            ev = make_evaluator(kind, aux, field)
            values[eng] = coefficient_by_formula(ev, target, default_grid(target, field), field, integral=field is QQ)
    agree = len({field.format(v) for v in values.values()}) == 1
    _emit({
        "kind": kind.lower(),
        "field": field.tag,
        "target": exponent_to_json(n, target),
        "coefficients": {k: {"value": field.format(v), "field": field.tag} for k, v in values.items()},
        "agree": agree,
    })
    return 0 if agree else 1


def cmd_color(args):
    H, _ = _load(args.file)
    if args.via == "oracle":
        c = brute_force_coloring(H, H.n)
        if c is None:
            _emit({"coloring": None, "verified": False, "exhausted": True})
            return 1
        _emit(coloring_to_json(c, verify_coloring(H, c)))
        return 0
    _standard(H)
    kind = args.kind
    aux = build_aux(H, kind=kind)
    target, _, _, _ = first_nonzero(aux, kind)
    if target is None:
        log.warning("no nonzero bounded maximal coefficient found; searching anyway")
    pt = nonvanishing_search(aux, kind, target)
    if pt is None:
        _emit({"coloring": None, "verified": False, "exhausted": True})
        return 1
    c = coloring_from_point(aux, pt, kind, H)
    out = coloring_to_json(c, verify_coloring(H, c))
    out["point"] = [int(x) for x in pt]
    if target is not None:
        out["target"] = exponent_to_json(H.n, target)
    _emit(out)
    return 0 if out["verified"] else 1


def cmd_search(args):
    records = []
    flagged = 0
    stream = search_nonzero_coefficients(args.n, args.samples, args.seed, args.kind, args.tree_limit, skip=args.skip)
    out = open(args.out, "a") if args.out else sys.stdout
    try:
        for rec in stream:
            out.write(json.dumps(rec) + "\n")
            out.flush()
            records.append(rec)
            if rec["refutation_candidate"]:
                flagged += 1
                log.warning("REFUTATION CANDIDATE: %s", rec["instance"])
    finally:
        if out is not sys.stdout:
            out.close()
    if args.plot_dir:
        from .plotting import plot_search_report

        for p in plot_search_report(records, args.plot_dir, stem=f"search_{args.kind.lower()}_n{args.n}"):
            log.info("wrote %s", p)
    return 1 if flagged else 0


def cmd_selftest(args):
    from .acceptance import run_all

    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = run_all(only, echo=lambda line: print(line, file=sys.stderr))
    _emit({"passed": all(r.passed for r in results), "criteria": [
        {"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail, "seconds": round(r.seconds, 2)}
        for r in results
    ]})
    return 0 if all(r.passed for r in results) else 1


def _kind(s: str) -> str:
    k = s.upper()
    if k not in ("G1", "G2"):
        raise argparse.ArgumentTypeError("kind must be g1 or g2")
    return k


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="efl", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"efl {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check linearity, uniformity, standard form")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("dualize", help="incidence-transpose hypergraph")
    s.add_argument("file")
    s.set_defaults(func=cmd_dualize)

    s = sub.add_parser("derive", help="strip degree-1 vertices (one pass)")
    s.add_argument("file")
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("uniformize", help="pad to standard form")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("file")
    s.set_defaults(func=cmd_uniformize)

    s = sub.add_parser("gen", help="generate a standard-form instance")
    s.add_argument("--family", required=True, choices=["random", "near_pencil", "truncated_projective_plane"])
    g = s.add_mutually_exclusive_group()
    g.add_argument("--n", type=int)
    g.add_argument("--q", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("aux", help="auxiliary graph as JSON")
    s.add_argument("--kind", type=_kind, required=True)
    s.add_argument("file")
    s.set_defaults(func=cmd_aux)

    s = sub.add_parser("orient", help="constructive Vandermonde-completable orientation")
    s.add_argument("--kind", type=_kind, required=True)
    s.add_argument("file")
    s.set_defaults(func=cmd_orient)

    s = sub.add_parser("coeff", help="monomial coefficient of P1 (g1) or P2 (g2)")
    s.add_argument("--kind", type=_kind, required=True)
    s.add_argument("--engine", choices=["expand", "orient", "formula", "all"], default="all")
    s.add_argument("--target", default="auto", help='"auto" or JSON: {"(i,j)": e} map or flat list')
    s.add_argument("file")
    s.set_defaults(func=cmd_coeff)

    s = sub.add_parser("color", help="find a proper n-coloring")
    s.add_argument("--via", choices=["oracle", "nullstellensatz"], default="oracle")
    s.add_argument("--kind", type=_kind, default="G2", help="polynomial used by --via nullstellensatz")
    s.add_argument("file")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("search", help="nonzero-coefficient experiment over random instances")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--kind", type=_kind, required=True)
    s.add_argument("--tree-limit", type=int, default=None)
    s.add_argument("--skip", type=int, default=0, help="resume after this many instances")
    s.add_argument("--out", help="append JSON lines here instead of stdout")
    s.add_argument("--plot-dir", help="write summary figures into this directory")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("selftest", help="run the acceptance criteria")
    s.add_argument("--only", help="comma-separated criterion numbers")
    s.set_defaults(func=cmd_selftest)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, HypergraphError, EngineInfeasible, FeasibilityError, ValueError, OSError) as exc:
        print(f"efl: error: {exc}", file=sys.stderr)
        return 2


main = run
