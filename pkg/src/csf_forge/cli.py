"""Command-line entry point: ``csf-forge <command> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from .conjugacy import ConjugatorSearchInconclusive, find_conjugator, reformulation_probe
from .csf import (
    csf, csf_coloring_oracle, csf_group_algebra, csf_subset_oracle, is_connected_from_csf,
    leaf_count_from_csf, matching_poly_from_csf, subtree_counts_from_csf,
)
from .distinguisher import max_order, verify_range
from .group_algebra import k_function, parse_ordering
from .symfunc import p_to_m
from .trees import LabeledTree, format_graph, gen_free_trees, parse_graph, parse_tree

DEFAULT_SEED = 20240601

EXIT_OK, EXIT_ERROR, EXIT_COLLISION = 0, 1, 2


class CliError(Exception):
    pass


def _tree_text(args, attr="tree") -> str:
    text = getattr(args, attr, None)
    path = getattr(args, attr + "_file", None)
    if path:
        text = Path(path).read_text().strip()
    if not text:
        raise CliError(f"--{attr.replace('_', '-')} is required")
    return text


def _load_tree(args, attr="tree") -> LabeledTree:
    return parse_tree(_tree_text(args, attr))


def _load_forest(args, attr="tree"):
    return parse_graph(_tree_text(args, attr))


def _cmd_csf(args):
    g = _load_forest(args)
    if args.route == "coloring":
        if args.basis != "m":
            raise CliError("the coloring route produces the monomial basis; pass --basis m")
        x = csf_coloring_oracle(g)
    else:
        route = {"subset": csf, "group": csf_group_algebra, "oracle": csf_subset_oracle}[args.route]
        x = route(g)
        if args.basis == "m":
            x = p_to_m(x)
    return x.to_dict(), str(x)


def _cmd_kexpand(args):
    g = _load_forest(args)
    ordering = parse_ordering(args.order) if args.order else None
    k = k_function(g, ordering)
    if args.scaled:
        k = k.scaled()
    data = {
        "n": k.n,
        "order": args.order or ",".join(f"{i}-{j}" for i, j in g.sorted_edges()),
        "scaled": bool(args.scaled),
        "terms": [{"perm": p.cycle_notation(), "coeff": c} for p, c in k.items()],
    }
    return data, k.dump()


def _cmd_match(args):
    g = _load_forest(args)
    mu = matching_poly_from_csf(csf(g))
    return mu.to_dict(g.n), str(mu)


def _cmd_subtrees(args):
    t = _load_tree(args)
    counts = subtree_counts_from_csf(csf(t))
    text = "\n".join(f"{k}: {v}" for k, v in sorted(counts.counts.items()))
    return counts.to_dict(t.n), text


def _cmd_leaves(args):
    t = _load_tree(args)
    leaves = leaf_count_from_csf(csf(t))
    return {"n": t.n, "leaves": leaves}, str(leaves)


def _cmd_connected(args):
    g = _load_forest(args)
    conn = is_connected_from_csf(csf(g))
    return {"n": g.n, "connected": conn}, str(conn).lower()


def _cmd_gen(args):
    trees = [format_graph(t) for t in gen_free_trees(args.n)]
    return {"n": args.n, "count": len(trees), "trees": trees}, "\n".join(trees)


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise CliError(f"malformed range {text!r}; expected LO..HI") from None


def _cmd_verify(args):
    if args.range:
        lo, hi = _parse_range(args.range)
    elif args.n is not None:
        lo = hi = args.n
    else:
        raise CliError("verify needs --n or --range")
    if hi > max_order():
        raise CliError(f"order {hi} exceeds the guard {max_order()} (set CSF_FORGE_MAX_N)")
    reports = verify_range(lo, hi, args.workers, checkpoint=args.checkpoint)
    data = {"reports": [r.to_dict(timing=not args.no_timing) for r in reports],
            "collisions_found": any(not r.ok for r in reports)}
    text = "\n".join(f"n={r.n} trees={r.tree_count} collision_groups={len(r.collision_groups)}"
                     for r in reports)
    return data, text


def _cmd_probe(args):
    t1, t2 = _load_tree(args), _load_tree(args, "tree2")
    report = reformulation_probe(t1, t2, samples=args.samples, seed=args.seed,
                                 exhaustive=args.exhaustive)
    data = report.to_dict()
    w = data["witness"]
    text = (f"csf_equal={str(report.csf_equal).lower()} "
            + (f"sigma={w['sigma']} pi1={w['pi1']} pi2={w['pi2']}" if w else "witness=none"))
    return data, text


def _cmd_conj(args):
    t1, t2 = _load_forest(args), _load_forest(args, "tree2")
    k1 = k_function(t1, parse_ordering(args.order) if args.order else None)
    k2 = k_function(t2, parse_ordering(args.order2) if args.order2 else None)
    try:
        sigma = find_conjugator(k1, k2, cap=args.cap)
        status = "found" if sigma else "none"
    except ConjugatorSearchInconclusive:
        sigma, status = None, "inconclusive"
    data = {"n": k1.n, "status": status, "sigma": str(sigma) if sigma else None}
    return data, str(sigma) if sigma else status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csf-forge",
        description="Chromatic symmetric functions of trees via the symmetric group algebra.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text, tree=True, tree2=False):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", help="write output to this file (atomically)")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--workers", type=int, default=1)
        if tree:
            p.add_argument("--tree", help='edge list, e.g. "n=4:1-2,1-3,1-4"')
            p.add_argument("--tree-file", help="file containing the edge list")
        if tree2:
            p.add_argument("--tree2")
            p.add_argument("--tree2-file")
        return p

    p = command("csf", _cmd_csf, "chromatic symmetric function")
    p.add_argument("--basis", choices=("p", "m"), default="p")
    p.add_argument("--route", choices=("subset", "group", "oracle", "coloring"), default="subset")
    p = command("kexpand", _cmd_kexpand, "expand the ordered product of (1 - (ij))")
    p.add_argument("--order", help='edge order, e.g. "1-2,2-3"')
    p.add_argument("--scaled", action="store_true", help="multiply by n!")
    command("match", _cmd_match, "matching polynomial read off the CSF")
    command("subtrees", _cmd_subtrees, "subtree counts read off the CSF")
    command("leaves", _cmd_leaves, "leaf count read off the CSF")
    command("connected", _cmd_connected, "connectivity read off the CSF")
    p = command("gen", _cmd_gen, "list the free trees of order n", tree=False)
    p.add_argument("--n", type=int, required=True)
    p = command("verify", _cmd_verify, "check CSF distinctness of all trees of given orders",
                tree=False)
    p.add_argument("--n", type=int)
    p.add_argument("--range", help="LO..HI")
    p.add_argument("--checkpoint", help="JSON-lines checkpoint for resumption")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed time and worker count")
    p = command("probe", _cmd_probe, "search for conjugate K products of two trees", tree2=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--exhaustive", action="store_true")
    p = command("conj", _cmd_conj, "find s with s K1 s^-1 = K2", tree2=True)
    p.add_argument("--order")
    p.add_argument("--order2")
    p.add_argument("--cap", type=int, default=10_000)
    return parser


def _write_atomic(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=target.name + ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        data, text = args.func(args)
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    out = json.dumps(data, indent=2) + "\n" if args.format == "json" else text + "\n"
    if args.out:
        _write_atomic(args.out, out)
    else:
        sys.stdout.write(out)
    if args.command == "verify" and data["collisions_found"]:
        return EXIT_COLLISION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
