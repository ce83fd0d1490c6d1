"""Command-line interface: verify suites, witness inspection, discontinuity demo.

Exit codes: 0 = all checks passed, 1 = at least one check failed,
2 = usage or configuration error.  Identical invocations (same flags, same
seed) produce byte-identical output; numeric text output uses 17 significant
digits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .core import NormKind, Tolerance, piece
from .constructions import (
    CONSTRUCTION_IDS,
    ConstructionError,
    build_construction,
    sphere_retraction,
)
from .fields import FieldDomainError, parse_field
from .verification import borsuk_discontinuity_demo, run_suite

SEED_ENV = "PCRETRACT_SEED"


def _default_seed() -> int:
    try:
        return int(os.environ.get(SEED_ENV, "0"))
    except ValueError:
        return 0


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_vector(text: str) -> np.ndarray:
    return np.array([float(c) for c in text.split(",")], dtype=float)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcretract", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--construction", required=True, choices=CONSTRUCTION_IDS)
        sp.add_argument("--dim", type=int, default=2)
        sp.add_argument("--norm", default="p:2", help="'p:<value>' or 'max'")
        sp.add_argument("--seed", type=int, default=_default_seed())

    v = sub.add_parser("verify", help="run the full check suite for a construction")
    common(v)
    v.add_argument("--samples", type=int, default=10_000)
    v.add_argument("--max-piece-index", type=int, default=10)
    v.add_argument("--pairs", type=int, default=2_000)
    v.add_argument("--membership-tol", type=float, default=1e-9)
    v.add_argument("--identity-tol", type=float, default=1e-12)
    v.add_argument("--fields", default="", help="comma-separated field expressions")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--output", default=None, help="also write the report to this path")
    v.add_argument("--paper-witness", action="store_true",
                   help="sphere only: use the un-augmented band witness, which misses the origin")
    v.add_argument("--allow-low-dim", action="store_true",
                   help="open-ball only: permit dimension 1 (exploration)")

    w = sub.add_parser("witness", help="print a witness piece as descriptor JSON")
    common(w)
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--paper-witness", action="store_true")
    w.add_argument("--allow-low-dim", action="store_true")

    d = sub.add_parser("demo", help="discontinuity-at-the-origin evidence table")
    d.add_argument("--dim", type=int, default=2)
    d.add_argument("--norm", default="p:2")
    d.add_argument("--depth", type=int, default=12)
    d.add_argument("--u", default=None, help="unit direction, comma-separated coordinates")
    d.add_argument("--v", default=None, help="unit direction, comma-separated coordinates")
    return p


def _build_map(args):
    kind = NormKind.parse(args.norm)
    if args.dim < 1:
        raise ConstructionError("dimension must be >= 1")
    dim = 1 if args.construction == "fractional" else args.dim
    return build_construction(
        args.construction,
        dim,
        kind,
        paper_witness=getattr(args, "paper_witness", False),
        allow_low_dim=getattr(args, "allow_low_dim", False),
    )


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise ConstructionError("samples must be >= 1")
    m = _build_map(args)
    tol = Tolerance(membership_tol=args.membership_tol, identity_tol=args.identity_tol)
    fields = []
    if args.fields:
        for expr in args.fields.split(","):
            fields.append(parse_field(expr, m.codomain.dim, m.codomain, radius=1.0))
    reports = run_suite(
        m,
        seed=args.seed,
        samples=args.samples,
        max_piece_index=args.max_piece_index,
        pairs=args.pairs,
        tolerance=tol,
        fields=fields,
    )
    all_pass = all(r.status != "fail" for r in reports)
    doc = {
        "construction": args.construction,
        "dim": m.dim,
        "norm": m.kind.label(),
        "seed": args.seed,
        "samples": args.samples,
        "all_pass": all_pass,
        "checks": [r.to_json_dict() for r in reports],
    }
    if args.format == "json":
        text = json.dumps(doc, indent=2)
    else:
        lines = [f"construction={args.construction} dim={m.dim} norm={m.kind.label()} "
                 f"seed={args.seed} samples={args.samples}"]
        for r in reports:
            lines.append(
                f"[{r.status.upper():>12}] {r.check_name}: "
                f"max_violation={_fmt(r.max_violation)} tolerance={_fmt(r.tolerance)} "
                f"samples={r.samples_used}"
            )
        lines.append("result: " + ("ALL PASS" if all_pass else "FAILURES"))
        text = "\n".join(lines)
    print(text)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0 if all_pass else 1


def cmd_witness(args) -> int:
    if args.n < 0:
        raise ConstructionError("witness index must be >= 0")
    m = _build_map(args)
    print(json.dumps(piece(m.witness, args.n).to_json(), indent=2))
    return 0


def cmd_demo(args) -> int:
    if args.depth < 1:
        raise ConstructionError("depth must be >= 1")
    if args.dim < 2 and (args.u is None or args.v is None):
        raise ConstructionError("default directions need dimension >= 2")
    kind = NormKind.parse(args.norm)
    m = sphere_retraction(args.dim, kind)
    if args.u is not None:
        u = _parse_vector(args.u)
    else:
        u = np.zeros(args.dim)
        u[0] = 1.0
    if args.v is not None:
        v = _parse_vector(args.v)
    else:
        v = np.zeros(args.dim)
        v[1] = 1.0
    try:
        rows = borsuk_discontinuity_demo(m, u, v, depth=args.depth)
    except ValueError as exc:
        raise ConstructionError(str(exc)) from exc
    print(f"{'k':>3}  {'scale':>24}  {'input_gap':>24}  {'output_gap':>24}")
    for r in rows:
        print(f"{r.k:>3}  {_fmt(r.scale):>24}  {_fmt(r.input_gap):>24}  {_fmt(r.output_gap):>24}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "witness":
            return cmd_witness(args)
        if args.command == "demo":
            return cmd_demo(args)
    except (ConstructionError, FieldDomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
