"""Command-line interface.

Exit codes: 0 success, 1 certificate rejected by ``verify``, 2 precondition
error (bad input, bad parameters), 3 search cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bounds import PreconditionError, bound_report
from .generators import FAMILIES, FamilySpec, GeneratorError, gen
from .graph import EdgeSet, Graph, GraphError, emit_graph, parse_graph
from .harness import METHODS, conjecture_sweep, solve_auto, standard_suite, verify, write_csv, write_jsonl
from .kernel import KernelStatus, kernelize, no_instance_artifact
from .oracle import (
    DEFAULT_MAX_CANDIDATES,
    DEFAULT_MAX_K,
    DEFAULT_MAX_NODES,
    SearchCapExceeded,
    SearchLimits,
)
from .vertex_cover import DEFAULT_VC_CAP

EXIT_OK, EXIT_REJECTED, EXIT_PRECONDITION, EXIT_CAP = 0, 1, 2, 3


def _read_input(path: str | None) -> Graph:
    if path is None or path == "-":
        return parse_graph(sys.stdin.buffer.read())
    return parse_graph(Path(path).read_bytes())


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _limits(args) -> SearchLimits:
    return SearchLimits(
        max_candidates=args.max_candidates,
        max_k=args.max_k,
        max_nodes=args.max_nodes,
        jobs=args.jobs,
    )


def _pairs(g: Graph, s) -> list[list[int]]:
    return [[u + 1, v + 1] for u, v in g.pairs(s)]


def parse_certificate(g: Graph, text: str) -> EdgeSet:
    """Edge list, one ``u v`` or ``e u v`` pair per line, 1-indexed."""
    ids = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] in ("c", "p"):
            continue
        if parts[0] == "e":
            parts = parts[1:]
        try:
            u, v = int(parts[0]), int(parts[1])
        except (IndexError, ValueError):
            raise GraphError(f"certificate line {lineno}: expected 'u v'") from None
        if not (1 <= u <= g.n and 1 <= v <= g.n) or not g.has_edge(u - 1, v - 1):
            raise GraphError(f"certificate line {lineno}: ({u}, {v}) is not an edge")
        ids.append(g.edge_id(u - 1, v - 1))
    return EdgeSet.of(ids)


def parse_params(items: list[str]) -> dict:
    """``key=value`` items; ``base=family:key=val,key=val`` nests a spec."""
    params: dict = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise GeneratorError(f"parameter {item!r} is not key=value")
        if key == "base":
            fam, _, rest = value.partition(":")
            inner = parse_params([x for x in rest.split(",") if x])
            params[key] = FamilySpec(fam, inner)
        else:
            params[key] = value
    return params


# --- subcommands ----------------------------------------------------------------


def cmd_compute(args) -> int:
    g = _read_input(args.input)
    res = solve_auto(g, _limits(args), args.vc_cap, args.method)
    out = {
        "schema": 1,
        "n": g.n,
        "m": g.m,
        "value": res.value,
        "method": res.method,
        "lower": res.lower if res.lower is not None else res.value,
        "upper": res.upper if res.upper is not None else res.value,
        "certificate": _pairs(g, res.certificate),
    }
    if not args.deterministic:
        out["elapsed"] = round(res.elapsed, 6)
    _write_output(args.output, _dump(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _read_input(args.input)
    s = parse_certificate(g, Path(args.certificate).read_text(encoding="utf-8"))
    res = verify(g, s)
    out = {"ok": res.ok, "size": len(s)}
    if res.witness is not None:
        u, v, d = res.witness
        out["witness"] = {"edge": [u + 1, v + 1], "degree": d}
    _write_output(args.output, _dump(out))
    return EXIT_OK if res.ok else EXIT_REJECTED


def cmd_bound(args) -> int:
    g = _read_input(args.input)
    rep = bound_report(g)
    out = {
        "lower": rep.lower,
        "lower_sources": list(rep.lower_sources),
        "upper": rep.upper,
        "upper_source": rep.upper_source,
        "gap": rep.gap,
        "certificate": _pairs(g, rep.certificate),
    }
    _write_output(args.output, _dump(out))
    return EXIT_OK


def cmd_kernelize(args) -> int:
    g = _read_input(args.input)
    kr = kernelize(g, args.k)
    stats = " ".join(f"{k}={v}" for k, v in sorted(kr.stats.items()))
    comments = [f"status={kr.status.value} k={kr.k} added_leaves={kr.added_leaves}", stats]
    if kr.status is KernelStatus.KERNEL:
        h = kr.kernel
    elif kr.status is KernelStatus.NO_INSTANCE:
        h, budget = no_instance_artifact()
        comments.append(f"trivial no-instance with budget {budget}")
    else:
        h = Graph.from_edges(0, [])
    _write_output(args.output, emit_graph(h, comments))
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = FamilySpec(args.family, parse_params(args.params), args.seed)
    g = gen(spec).graph
    _write_output(args.output, emit_graph(g, [spec.describe()]))
    return EXIT_OK


def cmd_conjecture(args) -> int:
    specs: list = standard_suite(random_trees=args.random_trees, seed=args.seed)
    for path in args.input or ():
        specs.append(("file", path, parse_graph(Path(path).read_bytes())))
    rep = conjecture_sweep(
        specs,
        _limits(args),
        args.vc_cap,
        jobs=args.jobs,
        deterministic=args.deterministic,
        certificates=args.certificates,
    )
    if args.output:
        write_jsonl(rep.instances, args.output)
    if args.csv:
        write_csv(rep.instances, args.csv)
    sys.stdout.write(_dump(rep.summary()))
    return EXIT_OK


# --- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="output file (default stdout)")
    common.add_argument("--method", choices=METHODS, default="auto")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--deterministic", action="store_true", help="omit timings")
    common.add_argument("--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES)
    common.add_argument("--max-k", type=int, default=DEFAULT_MAX_K)
    common.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    common.add_argument("--vc-cap", type=int, default=DEFAULT_VC_CAP)
    common.add_argument("--verbose", "-v", action="store_true")

    parser = argparse.ArgumentParser(
        prog="irregularity",
        description="Edge deletions needed to make a graph locally irregular.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    single = argparse.ArgumentParser(add_help=False, parents=[common])
    single.add_argument("--input", "-i", help="graph file ('-' for stdin)")

    p = sub.add_parser("compute", parents=[single], help="solve an instance")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", parents=[single], help="check a certificate")
    p.add_argument("--certificate", "-c", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", parents=[single], help="lower/upper bounds")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("kernelize", parents=[single], help="reduce (G, k) to a kernel")
    p.add_argument("--k", "-k", type=int, required=True)
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("gen", parents=[single], help="generate a graph family member")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("conjecture", parents=[common], help="run the m/3 + c sweep")
    p.add_argument("--input", "-i", action="append", help="extra graph file (repeatable)")
    p.add_argument("--csv", help="also write a CSV export")
    p.add_argument("--random-trees", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--certificates", action="store_true")
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except SearchCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphError, GeneratorError, PreconditionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
