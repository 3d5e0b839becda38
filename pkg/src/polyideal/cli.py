"""Command line entry point: ``polyideal <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import cross_verify, report_matrix
from .enumerate import enumerate_kind
from .errors import NotALatticeError, NotSimpleError, PolyidealError, ResourceCapError
from .fixtures import check_fixture, load_fixtures
from .lattice import Poset, classify_lattice, h_vector_of_poset, is_pure, is_simple, order_ideal_lattice
from .linalg import Field
from .polyomino import (
    CellCollection,
    is_convex,
    is_polyomino,
    is_stack,
    parse_collection,
    shape_profile,
    stack_profile,
    to_grid,
)
from .resolution import betti_table
from .sweeps import THEOREMS, verify_theorem
from .toric import edge_graph, inner_minors, quadratic_gb_certificate, semigroup_of

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_cells(path: str) -> CellCollection:
    return parse_collection(_read(path))


def cmd_analyze(args) -> int:
    c = _load_cells(args.file)
    minors = inner_minors(c)
    poly = is_polyomino(c)
    convex = poly and is_convex(c)
    cert = quadratic_gb_certificate(edge_graph(c))
    data = {
        "cells": [list(x) for x in c.sorted_cells()],
        "bbox": [[1, 1], [c.m, c.n]],
        "vertex_count": len(c.vertices),
        "is_polyomino": poly,
        "is_convex": convex,
        "is_stack": is_stack(c),
        "generators": [m.to_json() for m in minors],
        "every_long_cycle_has_chord": cert.ok,
        "chordless_cycle": [list(v) for v in cert.witness] if cert.witness else None,
    }
    if convex:
        p = shape_profile(c)
        data["shape_profile"] = {
            "missing_corners": [list(v) for v in p.missing_corners],
            "inner_corners_present": list(p.inner_corners_present),
            "spans": {k: getattr(p, k) for k in ("i1", "i2", "i3", "i4", "j1", "j2", "j3", "j4")},
        }
    if data["is_stack"]:
        sp = stack_profile(c)
        data["stack_profile"] = {"width": sp.width, "height": sp.height,
                                 "truncations": list(sp.truncations), "jumps": list(sp.jumps)}
    lines = [
        to_grid(c),
        f"cells: {len(c)}  vertex box: [(1,1),({c.m},{c.n})]  vertices: {len(c.vertices)}",
        f"polyomino: {poly}  convex: {convex}  stack: {data['is_stack']}",
        f"{len(minors)} generators:",
        *(f"  {m}" for m in minors),
        "every cycle of length >= 6 has a chord: " + ("yes" if cert.ok else f"no, e.g. {cert.witness}"),
    ]
    if convex:
        sp_ = data["shape_profile"]
        lines.append(f"missing corners: {sp_['missing_corners']}  spans: {sp_['spans']}")
    if data["is_stack"]:
        lines.append(f"stack profile: {data['stack_profile']}")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_betti(args) -> int:
    c = _load_cells(args.file)
    field = Field.parse(args.field)
    bt = betti_table(c, args.max_degree, field)
    _emit(args, bt.to_json(), bt.to_text())
    return EXIT_OK if bt.complete else EXIT_CAP


def cmd_classify(args) -> int:
    c = _load_cells(args.file)
    if not (is_polyomino(c) and is_convex(c)):
        print("error: classify needs a convex polyomino", file=sys.stderr)
        return EXIT_USAGE
    rep = cross_verify(c, name=Path(args.file).stem, field=Field.parse(args.field))
    lr = rep.check("linearly_related")
    words = "linearly related" if lr.oracle else "not linearly related"
    agree = "agree" if lr.agree else "DISAGREE"
    lines = [
        f"{words} (oracle and corner classification {agree})",
        f"corner case: {rep.main.case}" + (f" ({rep.main.reason})" if rep.main.reason else ""),
        f"h-vector: {rep.h_vector}",
        report_matrix([rep]),
    ]
    _emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_lattice(args) -> int:
    p = Poset.from_json(_read(args.file))
    if args.action == "h-vector":
        h = h_vector_of_poset(p)
        _emit(args, {"h_vector": list(h)}, str(tuple(h)))
        return EXIT_OK
    lat = order_ideal_lattice(p)
    simple = is_simple(lat)
    data = {"lattice_size": len(lat), "simple": simple, "pure": is_pure(p),
            "h_vector": list(h_vector_of_poset(p))}
    if simple:
        data.update(classify_lattice(lat).to_json())
    text = "\n".join(f"{k}: {v}" for k, v in data.items())
    _emit(args, data, text)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    items = list(enumerate_kind(args.kind, args.bound))
    if args.kind == "poset":
        data = [p.to_json() for p in items]
        text = "\n".join(json.dumps(d) for d in data)
    else:
        data = [[list(x) for x in c.sorted_cells()] for c in items]
        text = "\n\n".join(to_grid(c) for c in items)
    _emit(args, {"kind": args.kind, "bound": args.bound, "count": len(items), "items": data},
          text + f"\n# {len(items)} classes")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.theorem == "fixtures":
        rows, bad = [], 0
        for fx in load_fixtures().values():
            for exp, got, ok in check_fixture(fx):
                bad += not ok
                rows.append({"fixture": fx.name, "check": exp.check, "expected": exp.value,
                             "got": got, "provenance": exp.provenance, "ok": ok})
        text = "\n".join(
            f"{'ok      ' if r['ok'] else 'MISMATCH'} {r['fixture']}: {r['check']}" for r in rows
        )
        _emit(args, {"theorem": "fixtures", "mismatch_count": bad, "checks": rows}, text)
        return EXIT_MISMATCH if bad else EXIT_OK
    rep = verify_theorem(args.theorem, args.bound, args.field, args.degree_cap)
    _emit(args, rep.to_json(), rep.to_text())
    if rep.mismatches:
        return EXIT_MISMATCH
    return EXIT_CAP if rep.capped else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    # accepted before or after the subcommand; the subcommand copy must not
    # overwrite a value given earlier
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    ap = argparse.ArgumentParser(prog="polyideal", description=__doc__)
    ap.add_argument("--format", choices=("json", "text"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="geometry, generators and chordality")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("betti", parents=[common], help="multigraded Betti table")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--field", default="q", help="q (rationals) or gf:P")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("classify", parents=[common], help="predicates against oracles")
    p.add_argument("file")
    p.add_argument("--field", default="q")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("lattice", parents=[common], help="poset h-vector or lattice classification")
    p.add_argument("file")
    p.add_argument("action", choices=("h-vector", "classify"))
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("enumerate", parents=[common], help="objects up to isomorphism")
    p.add_argument("--kind", choices=("convex", "stack", "poset"), required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="exhaustive theorem sweeps")
    p.add_argument("--theorem", choices=THEOREMS + ("fixtures",), required=True)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--field", default="q")
    p.add_argument("--degree-cap", type=int, default=6)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (NotALatticeError, NotSimpleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PolyidealError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
