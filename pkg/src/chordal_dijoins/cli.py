"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input (including
non-chordal instances), 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence

from . import io
from .chordal import find_chordless_cycle, maximum_cardinality_search, is_perfect_elimination_order
from .dicuts import ENUMERATION_BOUND, min_dicut, min_dicut_weight_by_flow
from .errors import DijoinError
from .generators import FIXTURES, fixture_metadata, random_chordal_digraph
from .graph import condense, node_key, underlying_adjacency
from .oracle import DEFAULT_BUDGET, can_pack, max_packing_size
from .packing import packing_violations, solve

NO_DICUT_NOTE = "no dicut: every arc set (including the empty set) is a dijoin"


def _emit(args: argparse.Namespace, doc: dict, lines: Sequence[str]) -> None:
    if args.json:
        sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _fmt_ids(ids) -> str:
    return "{" + ", ".join(str(x) for x in sorted(ids, key=node_key)) + "}"


def cmd_check_chordal(args: argparse.Namespace) -> int:
    g = io.read_graph(args.file)
    adj = underlying_adjacency(g)
    order = maximum_cardinality_search(adj)
    chordal = is_perfect_elimination_order(adj, order)
    doc: dict = {"chordal": chordal}
    if chordal:
        doc["elimination_order"] = order
        lines = ["chordal: yes", "elimination order: " + " ".join(map(str, order))]
    else:
        cycle = find_chordless_cycle(adj, longest=args.longest)
        doc["chordless_cycle"] = cycle
        lines = [
            "chordal: no",
            f"chordless cycle (length {len(cycle)}): " + " - ".join(map(str, cycle)),
        ]
    _emit(args, doc, lines)
    return 0


def cmd_min_dicut(args: argparse.Namespace) -> int:
    g = io.read_graph(args.file)
    cut = min_dicut(g, bound=args.bound)
    if cut is None:
        _emit(args, {"tau": None, "no_dicut": True}, [NO_DICUT_NOTE])
        return 0
    doc = {
        "tau": cut.weight,
        "shore": sorted(cut.shore, key=node_key),
        "arcs": sorted(cut.arcs, key=node_key),
    }
    _emit(args, doc, [f"tau: {cut.weight}", f"shore: {_fmt_ids(cut.shore)}",
                      f"arcs: {_fmt_ids(cut.arcs)}"])
    return 0


def _packing_lines(doc: dict) -> list[str]:
    lines = [f"tau: {doc['tau']}", f"support: {len(doc['dijoins'])}"]
    for rec in doc["dijoins"]:
        lines.append(f"  {rec['multiplicity']} x {_fmt_ids(rec['arcs'])}")
    return lines


def cmd_pack(args: argparse.Namespace) -> int:
    g = io.read_graph(args.file)
    run = solve(g, verify_steps=args.verify_steps, bound=args.bound)
    doc = io.packing_to_dict(run.packing)
    if args.out:
        io.write_json(args.out, doc)
    lines = [NO_DICUT_NOTE] if run.packing.no_dicut else []
    lines += _packing_lines(doc)
    doc = dict(doc, support_bound=run.support_bound)
    _emit(args, doc, lines)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    g = io.read_graph(args.instance)
    p = io.read_packing(args.packing)
    checks = packing_violations(g, p)
    tau = min_dicut_weight_by_flow(g)
    if tau is None:
        checks["tau is the minimum dicut weight"] = (
            None if p.tau == 0 and p.no_dicut else f"no dicut exists, but tau={p.tau}"
        )
    else:
        checks["tau is the minimum dicut weight"] = (
            None if p.tau == tau else f"tau {p.tau} != minimum dicut weight {tau}"
        )
    cond = condense(g)
    # lifting to parallel copies can split a dijoin once per extra copy
    external = sum(len(copies) for copies in cond.arc_map.values())
    bound = external - cond.condensed.n + 2
    checks["support bound"] = (
        None if p.support <= bound else f"support {p.support} > {bound}"
    )
    doc = {name: problem is None for name, problem in checks.items()}
    lines = [
        f"{'PASS' if problem is None else 'FAIL'}  {name}" + (f": {problem}" if problem else "")
        for name, problem in checks.items()
    ]
    _emit(args, {"checks": doc, "ok": all(doc.values())}, lines)
    return 0 if all(doc.values()) else 1


def cmd_gen(args: argparse.Namespace) -> int:
    g = random_chordal_digraph(
        args.n, args.density, args.max_weight, args.seed, unweighted=args.unweighted
    )
    text = io.dumps(io.graph_to_dict(g))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_fixture(args: argparse.Namespace) -> int:
    text = io.dumps(fixture_metadata(args.name))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    g = io.read_graph(args.file)
    if args.max:
        k = max_packing_size(g, budget=args.budget, bound=args.bound)
        line = NO_DICUT_NOTE if k is None else f"max packing size: {k}"
        _emit(args, {"max_packing_size": k}, [line])
        return 0
    witness = can_pack(g, args.k, budget=args.budget, bound=args.bound)
    doc: dict = {"k": args.k, "can_pack": witness is not None}
    lines = [f"can pack {args.k}: {'yes' if witness is not None else 'no'}"]
    if witness is not None:
        doc["witness"] = [sorted(J, key=node_key) for J in witness]
        lines += [f"  {_fmt_ids(J)}" for J in witness]
    _emit(args, doc, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="dijoins", description="Pack dijoins in weighted chordal digraphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-chordal", parents=[common], help="chordality of the underlying graph")
    p.add_argument("file")
    p.add_argument("--longest", action="store_true",
                   help="examine all candidate chordless cycles and report the longest found")
    p.set_defaults(func=cmd_check_chordal)

    p = sub.add_parser("min-dicut", parents=[common], help="minimum dicut weight and a shore")
    p.add_argument("file")
    p.add_argument("--bound", type=int, default=ENUMERATION_BOUND)
    p.set_defaults(func=cmd_min_dicut)

    p = sub.add_parser("pack", parents=[common], help="pack tau dijoins")
    p.add_argument("file")
    p.add_argument("--verify-steps", action="store_true",
                   help="check every elimination step by dicut enumeration (exponential)")
    p.add_argument("--out", help="write the packing file here")
    p.add_argument("--bound", type=int, default=ENUMERATION_BOUND)
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("verify", parents=[common], help="check a packing file against an instance")
    p.add_argument("instance")
    p.add_argument("packing")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", parents=[common], help="random chordal digraph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=float, required=True)
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--unweighted", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fixture", parents=[common], help="print a bundled counterexample")
    p.add_argument("name", choices=FIXTURES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive packing search")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--k", type=int)
    mode.add_argument("--max", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--bound", type=int, default=ENUMERATION_BOUND)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except DijoinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
