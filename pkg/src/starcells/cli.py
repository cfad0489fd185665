"""Command line surface: algebras, tables, cells, classification, verification.

Exit codes: 0 success, 1 verification or consistency failure, 2 usage error.
Reports go to stdout; diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import cell_rep, matrix_solver, verification
from .bimodule_2cat import (
    cell_structure,
    composition_table,
    label_str,
    left_cell_subcategory,
    right_cell_subcategory,
    table_to_json,
)
from .matrix_solver import ConstraintTier, Side
from .quiver_algebra import algebra_to_json, build_star_algebra

CLASSIFY_N_CAP = 6


@dataclass
class RunConfig:
    n: int = 1
    side: str = "left"
    tier: str = "projective-functor"
    output: str = "table"
    seed: int = 0
    force: bool = False
    threads: int = 1


def _matrix_lines(m) -> list[str]:
    return ["  [" + " ".join(str(x) for x in row) + "]" for row in m]


def _emit_json(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def cmd_algebra(cfg: RunConfig) -> int:
    alg = build_star_algebra(cfg.n)
    if cfg.output == "dot":
        print(alg.quiver.to_dot())
        return 0
    loewy = {v: [list(layer) for layer in alg.projective_structure(v)]
             for v in sorted(alg.quiver.vertices)}
    if cfg.output == "json":
        doc = algebra_to_json(alg)
        doc.update({
            "n": cfg.n,
            "dimension": alg.dimension,
            "basis": [str(p) for p in alg.basis],
            "cartan": [list(row) for row in alg.cartan_matrix()],
            "loewy": {str(v): layers for v, layers in loewy.items()},
            "self_injective": alg.is_self_injective(),
        })
        _emit_json(doc)
        return 0
    print(f"star algebra on {cfg.n} leaf vertex(es)")
    print(f"dimension: {alg.dimension}")
    print("basis: " + ", ".join(str(p) for p in alg.basis))
    print("cartan matrix:")
    print("\n".join(_matrix_lines(alg.cartan_matrix())))
    for v, layers in loewy.items():
        text = " / ".join("{" + ", ".join(f"L{t}" for t in layer) + "}" for layer in layers)
        print(f"projective at {v}: {text}")
    print(f"self-injective: {alg.is_self_injective()}")
    return 0


def _category_for(cfg: RunConfig):
    alg = build_star_algebra(cfg.n)
    if cfg.side == "left":
        return left_cell_subcategory(alg)
    return right_cell_subcategory(alg)


def cmd_cells(cfg: RunConfig) -> int:
    category = _category_for(cfg)
    cs = cell_structure(category)
    if cfg.output == "dot":
        print(cs.hasse_dot())
        return 0
    table = composition_table(category)
    if cfg.output == "json":
        _emit_json({
            "n": cfg.n,
            "side": cfg.side,
            "table": table_to_json(table),
            "cells": cs.to_json(),
        })
        return 0
    print(f"composition table ({category.name}):")
    for (f, g), result in sorted(table.items()):
        print(f"  {label_str(f)} o {label_str(g)} = {result}")
    for kind, cells in (("left", cs.left_cells), ("right", cs.right_cells),
                        ("two-sided", cs.twosided_cells)):
        text = "; ".join("{" + ", ".join(label_str(l) for l in cell) + "}" for cell in cells)
        print(f"{kind} cells: {text}")
    for k, flag in enumerate(cs.idempotent):
        members = ", ".join(label_str(l) for l in cs.twosided_cells[k])
        print(f"two-sided cell {{{members}}} idempotent: {flag}")
    return 0


def cmd_classify(cfg: RunConfig) -> int:
    report = matrix_solver.classify(cfg.n, Side(cfg.side), ConstraintTier(cfg.tier))
    ok = True
    try:
        for fam in report.families:
            fam.validate(side=report.side)
        if report.side is Side.LEFT and report.tier is ConstraintTier.PROJECTIVE_FUNCTOR:
            ok = report.count_up_to_perm == report.oracle_count
        if len({f.matrices for f in report.families}) != len(report.families):
            ok = False
    except ValueError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        ok = False
    if cfg.output == "json":
        _emit_json(report.to_json())
    else:
        print(f"n={report.n} side={report.side.value} tier={report.tier.value}")
        for k, fam in enumerate(report.families):
            rows = ", ".join(str(fam.phi_map().get(i)) for i in range(1, report.n + 1))
            print(f"family {k}: rank {fam.r}, row assignment ({rows})")
            for i, m in enumerate(fam.matrices):
                print(f" generator {i}:")
                print("\n".join(_matrix_lines(m)))
        print(f"families up to simultaneous permutation: {report.count_up_to_perm}")
        print(f"set-partition oracle: {report.oracle_count}")
        note = "match" if report.count_up_to_perm == report.oracle_count else "differ"
        print(f"count vs oracle: {note}")
        print("(the family count excludes the degenerate case where every "
              "non-identity generator acts by zero)")
    return 0 if ok else 1


def cmd_cellrep(cfg: RunConfig) -> int:
    if cfg.side == "left":
        rep = cell_rep.left_cell_representation(cfg.n)
    else:
        rep = cell_rep.right_cell_representation(cfg.n)
    if cfg.output == "table":
        print(f"objects: {', '.join(rep.objects)}")
        for name in rep.generators:
            print(f"action of {name}:")
            print("\n".join(_matrix_lines(rep.action[name])))
        print("hom dimensions before quotient:")
        print("\n".join(_matrix_lines(rep.hom_dims_raw)))
        print("cartan matrix (after quotient):")
        print("\n".join(_matrix_lines(rep.cartan)))
        return 0
    _emit_json(rep.to_json())
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    results, ok = verification.run_verification(seed=cfg.seed)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.anchor}")
        if not r.ok:
            print(f"      expected: {r.expected!r}", file=sys.stderr)
            print(f"      actual:   {r.actual!r}", file=sys.stderr)
    print(f"{sum(r.ok for r in results)}/{len(results)} checks passed")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starcells",
        description="Star algebras, projective-bimodule cells, and the "
                    "classification of their action-matrix families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, outputs, with_n=True, with_side=False, with_tier=False):
        if with_n:
            p.add_argument("--n", type=int, required=True, help="number of leaves")
        if with_side:
            p.add_argument("--side", choices=["left", "right"], default="left")
        if with_tier:
            p.add_argument("--tier", choices=[t.value for t in ConstraintTier],
                           default=ConstraintTier.PROJECTIVE_FUNCTOR.value)
        p.add_argument("--output", choices=outputs, default=outputs[0])

    p = sub.add_parser("algebra", help="basis, Cartan data and Loewy layers")
    add_common(p, ["table", "json", "dot"])
    p = sub.add_parser("cells", help="composition table and cell structure")
    add_common(p, ["table", "json", "dot"], with_side=True)
    p = sub.add_parser("classify", help="families of action matrices")
    add_common(p, ["table", "json"], with_side=True, with_tier=True)
    p.add_argument("--force", action="store_true",
                   help=f"allow n beyond {CLASSIFY_N_CAP} (search grows quickly)")
    p = sub.add_parser("cellrep", help="cell 2-representation data")
    add_common(p, ["json", "table"], with_side=True)
    p = sub.add_parser("verify", help="run the full golden-value and property suite")
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    threads = os.environ.get("CELLREP_THREADS", "1")
    try:
        threads = int(threads)
        if threads < 1:
            raise ValueError
    except ValueError:
        parser.error(f"CELLREP_THREADS must be a positive integer, got {threads!r}")
    cfg = RunConfig(
        n=getattr(args, "n", 1),
        side=getattr(args, "side", "left"),
        tier=getattr(args, "tier", ConstraintTier.PROJECTIVE_FUNCTOR.value),
        output=getattr(args, "output", "table"),
        seed=getattr(args, "seed", 0),
        force=getattr(args, "force", False),
        threads=threads,
    )
    if args.command != "verify" and cfg.n < 1:
        parser.error("--n must be a positive integer")
    if args.command == "classify" and cfg.n > CLASSIFY_N_CAP and not cfg.force:
        parser.error(f"classify with --n above {CLASSIFY_N_CAP} needs --force")
    handlers = {
        "algebra": cmd_algebra,
        "cells": cmd_cells,
        "classify": cmd_classify,
        "cellrep": cmd_cellrep,
        "verify": cmd_verify,
    }
    return handlers[args.command](cfg)


def entrypoint() -> None:
    sys.exit(main())
