"""Command-line front end.

Subcommands: analyze, enumerate, verify, reproduce, search-detmf.  Output is
a single JSON document on stdout (or --out); every numeric leaf is a decimal
string so values never depend on native integer width.  Timing goes to
stderr only, keeping documents byte-stable for fixed (config, seed) across
reruns and worker counts.

Exit codes: 0 all checks pass; 1 a mathematical claim failed (the document
carries the witness); 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .errors import ArbormatError, MismatchAgainstCaption, WitnessFailed
from .fixtures import FIGURE_IDS, check_fixture, load_fixture, reconstruct_instance
from .harness import (
    DEFAULT_N_CAP,
    OrientationPolicy,
    run_det_search,
    run_theorem_sweep,
)
from .theorems import verify_instance
from .trees import Orientation, canonical_form, enumerate_trees, parse_tree
from .dynamics import parse_map

USAGE_ERROR = 2
CLAIM_ERROR = 1


def _cap() -> int:
    raw = os.environ.get("ARBOR_CAP_N")
    if raw is None:
        return DEFAULT_N_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise ArbormatError(f"ARBOR_CAP_N must be an integer, got {raw!r}") from exc


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _s(x) -> str:
    return str(int(x))


def _emit(doc: dict, out_path: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _matrix_strings(rows) -> list[list[str]]:
    return [[str(e) for e in row] for row in rows]


def _coeff_strings(coeffs) -> list[str]:
    return [str(c) for c in coeffs]


def cmd_analyze(args) -> int:
    tree = parse_tree(args.tree)
    f = parse_map(args.map, tree)
    if args.orientation is not None:
        orientation = Orientation.from_bitstring(args.orientation)
        if len(orientation) != tree.edge_count:
            raise ArbormatError(
                f"orientation length {len(orientation)} != edge count {tree.edge_count}"
            )
    else:
        orientation = Orientation.canonical(tree.edge_count)
    report = verify_instance(f, orientation, all_witnesses=args.all_witnesses)
    doc = {
        "command": "analyze",
        "instance": {
            "tree": report.tree_edges,
            "tree_canonical": report.tree_canonical,
            "orientation": report.orientation,
            "map": report.image,
            "n": _s(report.n),
        },
        "matrices": {
            "oriented": _matrix_strings(report.oriented_rows),
            "unoriented": _matrix_strings(report.unoriented_rows),
        },
        "charpolys": {
            "oriented": _coeff_strings(report.oriented_charpoly),
            "unoriented": _coeff_strings(report.unoriented_charpoly),
            "unoriented_mod2": _coeff_strings(report.unoriented_charpoly_mod2),
        },
        "determinants": {
            "oriented": _s(report.det_oriented),
            "unoriented": _s(report.det_unoriented),
        },
        "claims": {name: res.status.value for name, res in sorted(report.claims.items())},
        "witness": None,
    }
    if report.witness:
        doc["witness"] = {
            "i": _s(report.witness["i"]),
            "j": _s(report.witness["j"]),
            "matrix": _matrix_strings(report.witness["rows"]),
            "determinant": _s(report.witness["determinant"]),
        }
    _emit(doc, args.out)
    return 0 if report.all_pass() else CLAIM_ERROR


def cmd_enumerate(args) -> int:
    cap = _cap() + 1
    trees = list(enumerate_trees(args.vertices, cap=cap))
    doc = {
        "command": "enumerate",
        "vertex_count": _s(args.vertices),
        "count": _s(len(trees)),
        "trees": [
            {"edges": t.edge_list_str(), "canonical": canonical_form(t)} for t in trees
        ],
    }
    _emit(doc, args.out)
    return 0


def cmd_verify(args) -> int:
    policy = OrientationPolicy.parse(args.orientations)
    ns = _parse_range(args.n)
    started = time.perf_counter()
    result = run_theorem_sweep(
        ns,
        policy,
        seed=args.seed,
        workers=args.workers,
        cap=_cap(),
    )
    elapsed = time.perf_counter() - started
    doc = {
        "command": "verify",
        "config": {
            "n": [_s(n) for n in result.ns],
            "orientations": result.policy,
            "seed": _s(result.seed),
        },
        "per_n": {
            _s(n): {key: _s(val) for key, val in stats.items()}
            for n, stats in result.per_n.items()
        },
        "claim_failures": {k: _s(v) for k, v in result.claim_failures.items()},
        "failures": result.failures,
        "total_instances": _s(result.total_instances),
        "all_pass": result.all_pass,
    }
    print(f"verify: {result.total_instances} instances in {elapsed:.2f}s", file=sys.stderr)
    _emit(doc, args.out)
    return 0 if result.all_pass else CLAIM_ERROR


def cmd_reproduce(args) -> int:
    figures = list(FIGURE_IDS) if args.figure == "all" else [args.figure]
    directory = Path(args.fixtures) if args.fixtures else None
    out_figures = {}
    all_match = True
    mismatch_message = None
    for figure in figures:
        fixture = load_fixture(figure, directory)
        try:
            checks = check_fixture(fixture, raise_on_mismatch=True)
        except MismatchAgainstCaption as exc:
            checks = check_fixture(fixture, raise_on_mismatch=False)
            mismatch_message = str(exc)
        entry = {
            "n": _s(fixture.n),
            "checks": checks,
            "match": all(checks.values()),
            "unoriented_charpoly": fixture.caption_charpoly.to_strings(),
        }
        if args.reconstruct:
            entry["reconstructions"] = reconstruct_instance(fixture)
        out_figures[figure] = entry
        all_match &= entry["match"]
    doc = {"command": "reproduce", "figures": out_figures, "all_match": all_match}
    _emit(doc, args.out)
    if mismatch_message:
        print(f"caption mismatch: {mismatch_message}", file=sys.stderr)
    return 0 if all_match else CLAIM_ERROR


def cmd_search_detmf(args) -> int:
    policy = OrientationPolicy.parse(args.orientations)
    ns = _parse_range(args.n)
    result = run_det_search(
        ns,
        policy,
        seed=args.seed,
        workers=args.workers,
        cap=_cap(),
        paths_only=args.paths_only,
    )
    doc = {
        "command": "search-detmf",
        "config": {
            "n": [_s(n) for n in result.ns],
            "orientations": result.policy,
            "seed": _s(result.seed),
            "paths_only": args.paths_only,
        },
        "histogram": {_s(k): _s(v) for k, v in result.histogram.items()},
        "nonunit_witnesses": result.nonunit_witnesses,
        "all_odd": result.all_odd,
        "all_unit": result.all_unit,
    }
    _emit(doc, args.out)
    # non-unit determinants are a reportable discovery, not a failure
    return 0 if result.all_odd else CLAIM_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arbormat",
        description="Exact transition-matrix toolkit for vertex maps on trees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full claim report for one instance")
    p.add_argument("--tree", required=True, help="edge list '1-2,2-3' or Prufer code '1,1'")
    p.add_argument("--map", required=True, help="image list '2,3,1' or cycle '(1 2 3)'")
    p.add_argument("--orientation", help="bitstring, one char per edge (default all 0)")
    p.add_argument("--all-witnesses", action="store_true", help="validate every (i, j) witness")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("enumerate", help="one tree per isomorphism class")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="sweep instance spaces and check all claims")
    p.add_argument("--n", required=True, help="edge count or range, e.g. 4 or 2..5")
    p.add_argument("--orientations", default="all", help="all | canonical | sample:K")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="check bundled figure fixtures")
    p.add_argument("--figure", default="all", choices=list(FIGURE_IDS) + ["all"])
    p.add_argument("--fixtures", help="directory overriding the bundled fixtures")
    p.add_argument("--reconstruct", action="store_true",
                   help="search for instances behind 5x5 panels")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("search-detmf", help="histogram of |det| over witness matrices")
    p.add_argument("--n", required=True)
    p.add_argument("--orientations", default="canonical", help="all | canonical | sample:K")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--paths-only", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search_detmf)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_ERROR
    try:
        return args.func(args)
    except (MismatchAgainstCaption, WitnessFailed) as exc:
        print(f"claim failure: {exc}", file=sys.stderr)
        return CLAIM_ERROR
    except (ArbormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
