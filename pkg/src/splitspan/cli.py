"""Command-line front end: JSON in, JSON out, one-based point indices.

Exit codes: 0 success, 1 domain error, 2 usage or input error, 3 size guard.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from pathlib import Path

from .config import (
    ConfigurationError,
    PointConfiguration,
    Subdivision,
    WeightFunction,
    has_G_property,
    induces,
    regular_subdivision,
    tight_span,
    validate_subdivision,
)
from .gale import GaleError, gale_dual, pc_to_polytope_tightspan, polytope_as_tightspan, polytope_with_same_secondary
from .hypersimplex import (
    Hypersimplex,
    HypersimplexError,
    count_three_splits,
    hypersimplex_config,
    hypersimplex_two_splits,
    is_matroid_subdivision,
    three_split_cells,
    three_split_core,
    three_split_families,
    tripartition_splits,
)
from .kernel import fmt
from .ksplit import (
    KSplitError,
    classify_tight_span,
    detect_k_split,
    is_coarsest,
    is_regular,
    k_splits,
    necessary_shape_filter,
)
from .polyhedron import VPolyhedron
from .secondary import SizeGuardError, guards, secondary_polytope, split_polyhedron
from .splits import SplitError, one_splits, split_decomposition, two_splits, verify_decomposition

log = logging.getLogger("splitspan")

DOMAIN_ERRORS = (ConfigurationError, SplitError, KSplitError, GaleError, HypersimplexError)


class InputError(Exception):
    pass


# ---------------------------------------------------------------- input


class Inputs:
    """Loads JSON files and records a content hash for each."""

    def __init__(self):
        self.hashes: dict[str, str] = {}

    def load(self, role: str, path: str):
        try:
            raw = Path(path).read_bytes()
        except OSError as e:
            raise InputError(f"{path}: {e.strerror}") from None
        self.hashes[role] = hashlib.sha256(raw).hexdigest()
        try:
            return json.loads(raw)
        except json.JSONDecodeError as e:
            raise InputError(f"{path}:{e.lineno}:{e.colno}: malformed JSON: {e.msg}") from None

    def parse(self, role: str, path: str, parser):
        data = self.load(role, path)
        try:
            return parser(data)
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, DOMAIN_ERRORS):
                raise
            raise InputError(f"{path}: invalid {role} data: {e}") from None

    def config(self, path: str) -> PointConfiguration:
        return self.parse("config", path, PointConfiguration.from_json)

    def weights(self, path: str) -> WeightFunction:
        return self.parse("weights", path, _weights_from_json)

    def subdivision(self, path: str) -> Subdivision:
        return self.parse("subdivision", path, Subdivision.from_json)


def _weights_from_json(data) -> WeightFunction:
    if isinstance(data, list):
        return WeightFunction.of(data)
    return WeightFunction.from_json(data)


def _polytope_from_json(data) -> VPolyhedron:
    pts = data["vertices"] if "vertices" in data else data["points"]
    return VPolyhedron.from_points(pts)


def _vec(v) -> list[str]:
    return [fmt(x) for x in v]


def _one(idx) -> list[int]:
    return sorted(i + 1 for i in idx)


# ---------------------------------------------------------------- commands


def cmd_subdivide(args, inp: Inputs):
    A = inp.config(args.config)
    w = inp.weights(args.weights)
    _check_len(A, w)
    return regular_subdivision(A, w).to_json()


def cmd_tightspan(args, inp: Inputs):
    A = inp.config(args.config)
    w = inp.weights(args.weights)
    _check_len(A, w)
    T = tight_span(A, w)
    return {
        "vertices": [_vec(v) for v in T.vertices],
        "dual_cells": [_one(T.cells.cells[c]) for c in T.cell_of_vertex],
        "f_vector": T.f_vector(),
        "maximal_faces": [sorted(i + 1 for i in f.vertices) for f in T.lattice.maximal()],
        "subdivision": T.cells.to_json(),
    }


def cmd_splits(args, inp: Inputs):
    A = inp.config(args.config)
    return {
        "one_splits": [s.to_json() for s in one_splits(A)],
        "two_splits": [s.to_json() for s in two_splits(A)],
    }


def cmd_decompose(args, inp: Inputs):
    A = inp.config(args.config)
    w = inp.weights(args.weights)
    _check_len(A, w)
    dec = split_decomposition(A, w)
    out = dec.to_json()
    out["verified"] = verify_decomposition(A, w, dec)
    return out


def cmd_ksplits(args, inp: Inputs):
    A = inp.config(args.config)
    return {"k_splits": [K.to_json() for K in k_splits(A, max_k=args.max_k)]}


def cmd_classify(args, inp: Inputs):
    A = inp.config(args.config)
    S = inp.subdivision(args.subdivision)
    shape = classify_tight_span(A, S)
    verdict = necessary_shape_filter(shape, len(S.cells))
    out = shape.to_json()
    out["shape_filter"] = {"ok": verdict.ok, "reason": verdict.reason}
    return out


def cmd_secondary(args, inp: Inputs):
    A = inp.config(args.config)
    sec = secondary_polytope(A)
    return {
        "dim": sec.dim,
        "n_vertices": len(sec.vertices),
        "n_facets": len(sec.facets),
        "vertices": [
            {"gkz": _vec(x), "triangulation": T.as_one_based()} for x, T in zip(sec.vertices, sec.triangulations)
        ],
        "equations": [_vec(a) + [fmt(b)] for a, b in sec.hrep.equations],
        "facets": [
            {"normal": _vec(f.normal), "offset": fmt(f.offset), "subdivision": f.subdivision.as_one_based()}
            for f in sec.facets
        ],
    }


def cmd_splitpoly(args, inp: Inputs):
    A = inp.config(args.config)
    P = split_polyhedron(A, args.k)
    sec = secondary_polytope(A)
    ineqs = sorted(P.inequalities)
    return {
        "k": args.k,
        "inequalities": [[str(x) for x in a] + [str(b)] for a, b in ineqs],
        "n_inequalities": len(ineqs),
        "equals_secondary": P.inequalities == sec.canonical_facets(),
    }


def cmd_gale(args, inp: Inputs):
    A = inp.config(args.config)
    G = gale_dual(A)
    return {"dim": G.dim, "vectors": [_vec(v) for v in G.vectors]}


def cmd_lift_polytope(args, inp: Inputs):
    A = inp.config(args.config)
    P, m = polytope_with_same_secondary(A)
    return {"added_points": m, "polytope": P.to_json()}


def cmd_realize_tightspan(args, inp: Inputs):
    if args.weights:
        A = inp.config(args.input)
        w = inp.weights(args.weights)
        _check_len(A, w)
        L = pc_to_polytope_tightspan(A, w)
        return {
            "polytope": L.polytope.to_json(),
            "weights": _vec(L.weights.weights),
            "kept_points": [i + 1 for i in L.kept],
            "shift": fmt(L.shift),
        }
    P = inp.parse("polytope", args.input, _polytope_from_json)
    A, w, c = polytope_as_tightspan(P)
    return {"configuration": A.to_json(), "weights": _vec(w.weights), "center": _vec(c)}


def cmd_hypersimplex(args, inp: Inputs):
    k, n = args.k, args.n
    hs = Hypersimplex(k, n)
    out: dict = {"k": k, "n": n, "n_vertices": len(hs.vertex_sets)}
    label = lambda s: "".join(str(i + 1) for i in sorted(s)) if n <= 9 else ",".join(str(i + 1) for i in sorted(s))
    if args.count or not (args.two_splits or args.three_splits):
        out["two_splits"] = len(hypersimplex_two_splits(k, n))
        out["three_splits"] = count_three_splits(k, n)
    if args.two_splits:
        items = []
        for s in hypersimplex_two_splits(k, n):
            item = s.to_json()
            if args.certify:
                S = s.cells(hs)
                item["certificate"] = _certify_cells(hypersimplex_config(k, n), S, hs)
            items.append(item)
        out["two_split_list"] = items
    if args.three_splits:
        items = []
        for t in tripartition_splits(k, n):
            item = t.to_json()
            item["cells"] = [sorted(label(s) for s in f) for f in three_split_families(t, k, n)]
            item["core"] = sorted(label(hs.vertex_sets[i]) for i in three_split_core(t, k, n))
            if args.certify:
                item["certificate"] = _certify_cells(hypersimplex_config(k, n), three_split_cells(t, k, n), hs)
            items.append(item)
        out["three_split_list"] = items
    return out


def _certify_cells(A, S, hs) -> dict:
    w = is_regular(A, S)
    return {
        "valid": bool(validate_subdivision(A, S)),
        "matroid": is_matroid_subdivision(hs, S),
        "regular": w is not None,
        "coarsest": w is not None and is_coarsest(A, S, witness=w),
    }


def cmd_certify(args, inp: Inputs):
    A = inp.config(args.config)
    S = inp.subdivision(args.subdivision)
    v = validate_subdivision(A, S)
    out: dict = {"valid": v.ok}
    if not v:
        out["reason"] = v.reason
        out["witness"] = [_one(c) for c in v.witness]
        return out
    w = is_regular(A, S)
    out["regular"] = w is not None
    if w is not None:
        out["regular_witness"] = _vec(w.weights)
        out["coarsest"] = is_coarsest(A, S, witness=w)
    else:
        out["coarsest"] = is_coarsest(A, S)
    out["G_property"] = has_G_property(A, S)
    K = detect_k_split(A, S, coarsest=out["coarsest"])
    out["k_split"] = K.k if K is not None else None
    if args.weights:
        ww = inp.weights(args.weights)
        _check_len(A, ww)
        out["induced_by_weights"] = induces(A, ww, S)
    return out


def _check_len(A: PointConfiguration, w: WeightFunction) -> None:
    if len(w) != A.n:
        raise InputError(f"weights have length {len(w)}, configuration has {A.n} points")


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-points", type=int, help="size guard: largest configuration for enumerations")
    common.add_argument("--max-dim", type=int, help="size guard: largest dimension for enumerations")
    common.add_argument("--jobs", type=int, default=1, help="accepted for compatibility; work runs in one process")
    common.add_argument("-v", "--verbose", action="store_true", help="log timings to stderr")

    p = argparse.ArgumentParser(prog="splitspan", description="Splits and tight spans of point configurations.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    sp = add("subdivide", cmd_subdivide, "regular subdivision induced by a weight")
    sp.add_argument("config")
    sp.add_argument("--weights", required=True)

    sp = add("tightspan", cmd_tightspan, "bounded faces of the envelope")
    sp.add_argument("config")
    sp.add_argument("--weights", required=True)

    sp = add("splits", cmd_splits, "1-splits and 2-splits")
    sp.add_argument("config")

    sp = add("decompose", cmd_decompose, "split decomposition of a weight")
    sp.add_argument("config")
    sp.add_argument("weights")

    sp = add("ksplits", cmd_ksplits, "k-splits among the coarsest regular subdivisions")
    sp.add_argument("config")
    sp.add_argument("--max-k", type=int, default=None)

    sp = add("classify", cmd_classify, "tight span shape of a subdivision")
    sp.add_argument("config")
    sp.add_argument("subdivision")

    sp = add("secondary", cmd_secondary, "secondary polytope")
    sp.add_argument("config")

    sp = add("splitpoly", cmd_splitpoly, "k-split polyhedron")
    sp.add_argument("config")
    sp.add_argument("--k", type=int, required=True)

    sp = add("gale", cmd_gale, "Gale dual vectors")
    sp.add_argument("config")

    sp = add("lift-polytope", cmd_lift_polytope, "polytope with the same secondary polytope")
    sp.add_argument("config")

    sp = add("realize-tightspan", cmd_realize_tightspan, "polytope/weight realizing a tight span")
    sp.add_argument("input", help="configuration (with weights) or polytope vertices (without)")
    sp.add_argument("weights", nargs="?")

    sp = add("hypersimplex", cmd_hypersimplex, "splits of the hypersimplex")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--two-splits", action="store_true")
    sp.add_argument("--three-splits", action="store_true")
    sp.add_argument("--count", action="store_true")
    sp.add_argument("--certify", action="store_true", help="check validity, matroid property, regularity, coarseness")

    sp = add("certify", cmd_certify, "validity, regularity, coarseness and k-split test for a subdivision")
    sp.add_argument("config")
    sp.add_argument("subdivision")
    sp.add_argument("--weights")
    return p


def _apply_guards(args) -> dict:
    g = guards()
    if args.max_points is not None:
        g["max_points"] = args.max_points
    if args.max_dim is not None:
        g["max_dim"] = args.max_dim
    os.environ["SPLITSPAN_GUARDS"] = ",".join(f"{k}={v}" for k, v in sorted(g.items()))
    return g


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(message)s")
    saved = os.environ.get("SPLITSPAN_GUARDS")
    g = _apply_guards(args)
    inp = Inputs()
    start = time.perf_counter()
    try:
        result = args.func(args, inp)
    except InputError as e:
        print(f"splitspan: {e}", file=sys.stderr)
        return 2
    except SizeGuardError as e:
        print(f"splitspan: size guard: {e}", file=sys.stderr)
        return 3
    except DOMAIN_ERRORS as e:
        print(f"splitspan: {e}", file=sys.stderr)
        return 1
    finally:
        # guards only apply to this run, also when called in-process
        if saved is None:
            os.environ.pop("SPLITSPAN_GUARDS", None)
        else:
            os.environ["SPLITSPAN_GUARDS"] = saved
    log.info("%s finished in %.3fs", args.command, time.perf_counter() - start)
    report = {"command": args.command, "inputs": inp.hashes, "guards": g, "result": result}
    json.dump(report, sys.stdout, indent=1, sort_keys=False)
    sys.stdout.write("\n")
    return 0


def main() -> None:
    sys.exit(run())
