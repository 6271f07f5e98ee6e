"""Command-line orchestration: parse inputs, run checks, emit reports.

Reports are JSON with every integer rendered as a decimal string, so
arbitrary precision survives serialization.  Exit codes: 0 = all
asserted properties held, 1 = a property violation, 2 = usage or
capability error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import ENGINE_VERSION, __version__
from .cache import CountCache
from .certificates import (
    algebraic_independence_check,
    cancellation_check,
    find_witness,
    independence_check,
)
from .errors import CapabilityError, FormatError, HomLabError, VerificationError
from .factorization import verify_decomposition
from .graph_analysis import (
    all_graphs,
    complete_family,
    degenerate_family,
    hom_to_family,
    lovasz_check,
    profile,
    tutte_profile_equivalence,
)
from .graphs import Graph, graph_to_text, parse_graph
from .group_analysis import conjecture_scan, spectrum
from .groups import FiniteGroup, catalog_groups, group_to_text, parse_group
from .homsearch import (
    OrbitSpec,
    canonical_key,
    count_morphisms,
    hopfian_report,
    object_from_key,
    orbit_count,
)
from .morphisms import kind_of


@dataclass
class CampaignConfig:
    """Bounds and output destination for a multi-object run."""

    kind: str
    max_size: int
    out_path: str | None
    jobs: int = 1
    seed: int = 0


# --- serialization helpers --------------------------------------------------


def to_jsonable(x):
    """Recursively convert a report: ints become decimal strings."""
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, bytes):
        return x.hex()
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    return x


def describe_object(obj):
    return {
        "kind": kind_of(obj),
        "text": graph_to_text(obj) if isinstance(obj, Graph) else group_to_text(obj),
        "canonical_key": canonical_key(obj).hex(),
    }


def load_object(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    head = text.lstrip().split(None, 1)
    if head and head[0] == "graph":
        return parse_graph(text)
    if head and head[0] == "group":
        return parse_group(text)
    raise FormatError(f"{path}: expected a 'graph <n>' or 'group <n>' header")


def emit(report, out_path):
    payload = json.dumps(to_jsonable(report), sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


# --- cache wiring -----------------------------------------------------------


def default_cache_path():
    env = os.environ.get("HOMLAB_CACHE")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "homlab", "counts.jsonl")


def open_cache(args):
    path = args.cache or default_cache_path()
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    return CountCache(path, ENGINE_VERSION)


def _count_for_cache_key(key):
    ka, kb, cls, orbit_side, orbit = key
    a = object_from_key(bytes.fromhex(ka))
    b = object_from_key(bytes.fromhex(kb))
    if orbit == "trivial":
        return count_morphisms(a, b, cls)
    return orbit_count(a, b, cls, OrbitSpec(orbit_side, orbit))


# --- subcommand handlers ----------------------------------------------------


def cmd_count(args):
    a, b = load_object(getattr(args, "from")), load_object(args.to)
    cache = open_cache(args)
    if args.verify_cache:
        mismatches = cache.verify(_count_for_cache_key)
        if mismatches:
            emit({"verified": False, "mismatches": mismatches}, args.out)
            print("cache verification failed; entries repaired", file=sys.stderr)
            return 1
    key = (
        canonical_key(a).hex(),
        canonical_key(b).hex(),
        args.cls,
        args.orbit_side if args.orbit != "trivial" else "-",
        args.orbit,
    )

    def compute():
        if args.orbit == "trivial":
            return count_morphisms(a, b, args.cls)
        return orbit_count(a, b, args.cls, OrbitSpec(args.orbit_side, args.orbit))

    value = cache.get_or_compute(key, compute)
    print(value)
    if args.out:
        emit({"class": args.cls, "orbit": args.orbit, "count": value}, args.out)
    return 0


def cmd_profile(args):
    g = load_object(args.graph)
    if not isinstance(g, Graph):
        raise FormatError("profile expects a graph input")
    if args.family == "all":
        family = all_graphs(args.max, loops=True)
    elif args.family == "complete":
        family = complete_family(args.kmax)
    elif args.family == "degenerate2":
        family = degenerate_family(args.max, k=2)
    elif args.family == "homto":
        if not args.gamma:
            raise FormatError("--family homto needs --gamma FILE")
        gamma = load_object(args.gamma)
        family = hom_to_family(args.max, gamma)
    else:
        raise FormatError(f"unknown family {args.family!r}")
    p = profile(g, family, args.side)
    report = {
        "side": p.side,
        "family": args.family,
        "family_size": len(p.family),
        "values": list(p.values),
    }
    emit(report, args.out)
    return 0


def cmd_witness(args):
    a, b = load_object(args.a), load_object(args.b)
    res = find_witness(a, b, args.side, args.max)
    if res is None:
        report = {"found": False, "side": args.side, "max_size": args.max}
        print("no witness (objects agree on every candidate)")
    else:
        report = {
            "found": True,
            "side": args.side,
            "max_size": args.max,
            "witness": describe_object(res.witness),
            "counts": list(res.counts),
        }
        print(report["witness"]["text"], end="")
    if args.out:
        emit(report, args.out)
    return 0


def cmd_verify_decomposition(args):
    c, d = load_object(args.c), load_object(args.d)
    orbits = ("trivial", "aut") if args.orbit == "both" else (args.orbit,)
    try:
        report = verify_decomposition(c, d, args.side, orbits)
    except VerificationError as exc:
        emit(exc.report, args.out)
        print(f"FAIL: {exc}", file=sys.stderr)
        return 1
    emit(report, args.out)
    return 0


def cmd_independence(args):
    objects = tuple(load_object(p) for p in args.objects)
    verdict = independence_check(objects, args.cls, args.side)
    report = {
        "independent": verdict.independent,
        "certificate": verdict.certificate,
        "matrix": [list(r) for r in verdict.matrix.entries],
        "class": args.cls,
        "side": args.side,
    }
    emit(report, args.out)
    return 0


def cmd_algebraic_independence(args):
    objects = tuple(load_object(p) for p in args.objects)
    if not objects:
        raise FormatError("need at least one object")
    if isinstance(objects[0], Graph):
        evals = all_graphs(args.eval_max, loops=True)
    else:
        evals = tuple(e.obj for e in catalog_groups(args.eval_max))
    report = algebraic_independence_check(objects, args.degree, evals, args.side)
    emit(report, args.out)
    return 0


def cmd_cancellation(args):
    a, b = load_object(args.a), load_object(args.b)
    c = load_object(args.c) if args.c else None
    report = cancellation_check(a, b, args.mode, c=c, n=args.n, op=args.op)
    emit(report, args.out)
    if report["violation"]:
        print("VIOLATION: premise holds but objects are not isomorphic", file=sys.stderr)
        return 1
    return 0


def cmd_spectrum(args):
    g = load_object(args.group)
    if not isinstance(g, FiniteGroup):
        raise FormatError("spectrum expects a group input")
    rep = spectrum(g)
    report = {
        "order": rep.order,
        "spectrum": list(rep.spectrum),
        "per_d": [
            {"d": d, "torsion": h, "exact_order": m} for d, h, m in rep.per_d
        ],
    }
    emit(report, args.out)
    return 0


def cmd_scan_conjecture(args):
    extra = []
    for path in args.extra or ():
        g = load_object(path)
        if not isinstance(g, FiniteGroup):
            raise FormatError(f"{path}: scan extras must be groups")
        extra.append(g.table)
    entries = catalog_groups(args.max_order, extra_tables=tuple(extra))
    report = conjecture_scan(entries, args.max_order, jobs=args.jobs)
    emit(report, args.out)
    nz = report["min_abs_determinant"]
    print(
        f"pairs={report['pair_count']} zero-determinant={len(report['zero_determinant_pairs'])}"
        f" min|det|={nz}"
    )
    for z in report["zero_determinant_pairs"]:
        print(f"COUNTEREXAMPLE CANDIDATE (det=0, non-isomorphic): {z['names']}", file=sys.stderr)
    if report["criterion_violations"]:
        print(f"criterion violations: {report['criterion_violations']}", file=sys.stderr)
        return 1
    return 0


def cmd_lovasz(args):
    a, b = load_object(args.a), load_object(args.b)
    if not isinstance(a, Graph) or not isinstance(b, Graph):
        raise FormatError("lovasz expects graph inputs")
    report = lovasz_check(a, b, args.max)
    out = {
        "isomorphic": report["isomorphic"],
        "n_bound": report["n_bound"],
        "family_size": report["family_size"],
    }
    for side in ("left", "right"):
        hit = report[side]
        out[side] = (
            None
            if hit is None
            else {
                "index": hit["index"],
                "witness": describe_object(hit["witness"]),
                "counts": list(hit["counts"]),
            }
        )
    emit(out, args.out)
    if not report["isomorphic"] and (out["left"] is None or out["right"] is None):
        print("no distinguishing witness within bound", file=sys.stderr)
        return 1
    return 0


def cmd_tutte_profile(args):
    a, b = load_object(args.a), load_object(args.b)
    if not isinstance(a, Graph) or not isinstance(b, Graph):
        raise FormatError("tutte-profile expects graph inputs")
    report = tutte_profile_equivalence(a, b, args.kmax)
    emit(report, args.out)
    # the implication tested at this scale: profile difference => Tutte difference
    if not report["profile_equal"] and report["tutte_equal"]:
        print("profile differs but Tutte polynomials agree", file=sys.stderr)
        return 1
    return 0


def cmd_hopfian(args):
    reports = []
    ok = True
    for path in args.objects:
        obj = load_object(path)
        rep = hopfian_report(obj)
        rep["source"] = path
        reports.append(rep)
        if not (rep["hopfian"] and rep["co_hopfian"]):
            ok = False
    emit({"objects": reports, "all_hopfian": ok}, args.out)
    return 0 if ok else 1


def cmd_corpus(args):
    os.makedirs(args.out_dir, exist_ok=True)
    manifest = {
        "kind": args.kind,
        "max_size": args.max,
        "notes": [],
        "entries": [],
    }
    if args.kind == "graphs":
        corpus = all_graphs(args.max, loops=not args.loopless)
        manifest["notes"].append(
            "the empty graph is included: it is admitted as the initial object"
        )
        for i, g in enumerate(corpus):
            name = f"g{g.vertex_count}_{i:04d}.grf"
            with open(os.path.join(args.out_dir, name), "w", encoding="utf-8") as fh:
                fh.write(graph_to_text(g))
            manifest["entries"].append(
                {"file": name, "vertices": g.vertex_count, "edges": len(g.edges),
                 "canonical_key": canonical_key(g).hex()}
            )
    else:
        entries = catalog_groups(args.max)
        manifest["notes"].append(
            "construction-based catalog; complete for order <= 15 only"
        )
        for i, e in enumerate(entries):
            name = f"{e.name}.cay"
            with open(os.path.join(args.out_dir, name), "w", encoding="utf-8") as fh:
                fh.write(group_to_text(e.obj))
            manifest["entries"].append(
                {"file": name, "name": e.name, "order": e.obj.order,
                 "canonical_key": e.canonical_key.hex()}
            )
    emit(manifest, args.out or os.path.join(args.out_dir, "manifest.json"))
    return 0


# --- parser -----------------------------------------------------------------


def _add_common(p):
    p.add_argument("--out", help="write the JSON report to this path")
    p.add_argument("--cache", help="count cache file (default: HOMLAB_CACHE or ~/.cache/homlab)")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers where supported")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="homlab",
        description="exact homomorphism-counting laboratory for finite graphs and groups",
    )
    ap.add_argument("--version", action="version", version=f"homlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count morphisms between two objects")
    p.add_argument("--from", required=True, help="source object file (.grf/.cay)")
    p.add_argument("--to", required=True, help="target object file")
    p.add_argument("--class", dest="cls", default="hom",
                   choices=("hom", "epi", "mono", "iso"))
    p.add_argument("--orbit", default="trivial", choices=("trivial", "aut"))
    p.add_argument("--orbit-side", default="precompose",
                   choices=("precompose", "postcompose"))
    p.add_argument("--verify-cache", action="store_true",
                   help="recompute every cached value first")
    _add_common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("profile", help="hom-count profile against a test family")
    p.add_argument("--graph", required=True)
    p.add_argument("--family", default="all",
                   choices=("all", "complete", "degenerate2", "homto"))
    p.add_argument("--side", default="left", choices=("left", "right"))
    p.add_argument("--max", type=int, default=4, help="family size bound (vertices)")
    p.add_argument("--kmax", type=int, default=3, help="k bound for the complete family")
    p.add_argument("--gamma", help="target graph for the homto family")
    _add_common(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("witness", help="smallest distinguishing object for a pair")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--side", default="left", choices=("left", "right"))
    p.add_argument("--max", type=int, default=4)
    _add_common(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify-decomposition",
                       help="check a counting decomposition exactly")
    p.add_argument("--c", required=True)
    p.add_argument("--d", required=True)
    p.add_argument("--side", default="left", choices=("left", "right"))
    p.add_argument("--orbit", default="both", choices=("trivial", "aut", "both"))
    _add_common(p)
    p.set_defaults(func=cmd_verify_decomposition)

    p = sub.add_parser("independence", help="linear independence certificate")
    p.add_argument("--objects", nargs="+", required=True)
    p.add_argument("--class", dest="cls", default="hom",
                   choices=("hom", "epi", "mono", "iso"))
    p.add_argument("--side", default="right", choices=("left", "right"))
    _add_common(p)
    p.set_defaults(func=cmd_independence)

    p = sub.add_parser("algebraic-independence",
                       help="annihilating-polynomial search up to a degree")
    p.add_argument("--objects", nargs="+", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--side", default="right", choices=("left", "right"))
    p.add_argument("--eval-max", type=int, default=4,
                   help="evaluation corpus bound (vertices or group order)")
    _add_common(p)
    p.set_defaults(func=cmd_algebraic_independence)

    p = sub.add_parser("cancellation", help="cancellation-law check")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", help="third object for coproduct/product mode")
    p.add_argument("--mode", required=True, choices=("coproduct", "product", "power"))
    p.add_argument("--n", type=int, help="exponent for power mode")
    p.add_argument("--op", choices=("coproduct", "product"),
                   help="operation for power mode (default: coproduct for graphs, product for groups)")
    _add_common(p)
    p.set_defaults(func=cmd_cancellation)

    p = sub.add_parser("spectrum", help="element-order spectrum via cyclic test groups")
    p.add_argument("--group", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("scan-conjecture",
                       help="pairwise determinant scan over the group catalog")
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--extra", nargs="*", help="additional Cayley table files")
    _add_common(p)
    p.set_defaults(func=cmd_scan_conjecture)

    p = sub.add_parser("lovasz", help="profile comparison over all graphs up to a bound")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--max", type=int, default=4)
    _add_common(p)
    p.set_defaults(func=cmd_lovasz)

    p = sub.add_parser("tutte-profile",
                       help="Tutte equality vs complete-family profile equality")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--kmax", type=int, default=3)
    _add_common(p)
    p.set_defaults(func=cmd_tutte_profile)

    p = sub.add_parser("hopfian", help="endomorphism class counts per object")
    p.add_argument("--objects", nargs="+", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_hopfian)

    p = sub.add_parser("corpus", help="generate object corpora to a directory")
    p.add_argument("--kind", required=True, choices=("graphs", "groups"))
    p.add_argument("--max", type=int, default=4)
    p.add_argument("--loopless", action="store_true")
    p.add_argument("--out-dir", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_corpus)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, CapabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return 1
    except HomLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
