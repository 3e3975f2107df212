"""Command line interface: ``metdim {gen,dim,check,verify,table}``.

Graph specs are family tokens, either space separated (``andrasfai 4``,
``product andrasfai:3 path:2``) or colon delimited (``andrasfai:4``,
``complement:andrasfai:4``, ``product:andrasfai:3,path:2``, ``file:g.g6``).
"""

from __future__ import annotations

import argparse
import csv
import functools
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from . import theorems as A
from . import graphs as G
from .graphs import Graph, GraphError
from .io import read_graph, to_graph6, to_json, write_graph
from .metric import DisconnectedGraphError, distance_matrix, is_resolving
from .solver import DEFAULT_BUDGET, SearchBudget, metric_dimension_exact

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERVAL = 3

CSV_HEADER = ["family", "params", "n", "dim_lo", "dim_hi", "exact", "witness", "ms"]


class SpecError(ValueError):
    pass


_FAMILIES: dict[str, Callable[[int], Graph]] = {
    "andrasfai": G.andrasfai,
    "path": G.path,
    "cycle": G.cycle,
    "complete": G.complete,
}


def parse_graph_spec(tokens: Sequence[str] | str) -> Graph:
    if isinstance(tokens, str):
        tokens = tokens.split()
    if not tokens:
        raise SpecError("empty graph spec")
    head, _, tail = tokens[0].partition(":")
    rest = ([tail] if tail else []) + list(tokens[1:])
    if head in _FAMILIES:
        if len(rest) != 1:
            raise SpecError(f"{head} takes exactly one integer parameter")
        try:
            size = int(rest[0])
        except ValueError:
            raise SpecError(f"{head}: {rest[0]!r} is not an integer") from None
        return _FAMILIES[head](size)
    if head == "complement":
        return G.complement(parse_graph_spec(rest))
    if head == "line":
        return G.line_graph(parse_graph_spec(rest))
    if head == "product":
        parts = rest[0].split(",", 1) if len(rest) == 1 else rest
        if len(parts) != 2:
            raise SpecError("product takes two factor specs, e.g. product andrasfai:3 path:2")
        return G.cartesian_product(parse_graph_spec(parts[0]), parse_graph_spec(parts[1]))
    if head == "file":
        if len(rest) != 1:
            raise SpecError("file takes one path")
        return read_graph(rest[0])
    raise SpecError(f"unknown graph family {head!r}")


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1..7"`` or ``"2,5,9"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
    return out


@dataclass(frozen=True)
class RunConfig:
    command: str
    graph: Graph | None = None
    fmt: str = "text"
    budget: SearchBudget = DEFAULT_BUDGET
    seed: int = 0
    threads: int = 1


def _config(args: argparse.Namespace) -> RunConfig:
    if getattr(args, "budget_subsets", None) is not None or getattr(args, "budget_seconds", None) is not None:
        budget = SearchBudget(
            args.budget_subsets if args.budget_subsets is not None else DEFAULT_BUDGET.max_subsets,
            args.budget_seconds if args.budget_seconds is not None else DEFAULT_BUDGET.max_seconds,
        )
    else:
        budget = DEFAULT_BUDGET
    graph = None
    if args.command in ("gen", "dim", "check"):
        if bool(args.spec) == bool(args.input):
            raise SpecError("give exactly one graph source: a family spec or --input FILE")
        graph = read_graph(args.input) if args.input else parse_graph_spec(args.spec)
    return RunConfig(
        command=args.command,
        graph=graph,
        fmt=getattr(args, "format", "text"),
        budget=budget,
        seed=getattr(args, "seed", 0),
        threads=getattr(args, "threads", 1),
    )


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def cmd_gen(cfg: RunConfig, out: str | None, err) -> int:
    g = cfg.graph
    dm = distance_matrix(g)
    reg = g.regularity()
    print(
        f"{g.name}: n={g.n} m={g.num_edges} "
        f"regular={reg if reg is not None else 'no'} diameter={dm.diameter()}",
        file=err,
    )
    if not dm.connected:
        print(f"warning: {g.name} is disconnected", file=err)
    fmt = cfg.fmt if cfg.fmt in ("graph6", "json") else None
    if out:
        try:
            write_graph(g, out, fmt)
        except OSError as exc:
            print(f"error: cannot write {out}: {exc}", file=err)
            return EXIT_FAIL
    else:
        print(to_json(g) if fmt == "json" else to_graph6(g))
    return EXIT_OK


def cmd_dim(cfg: RunConfig, err) -> int:
    rep = metric_dimension_exact(cfg.graph, cfg.budget, threads=cfg.threads)
    if cfg.fmt == "json":
        print(_dumps(rep.to_dict()))
    elif rep.exact:
        print(rep.dimension)
        print(f"witness: {' '.join(map(str, rep.witness))}", file=err)
    else:
        print(f"[{rep.lower},{rep.upper}]")
        print(f"budget exhausted; best witness ({rep.upper}): {' '.join(map(str, rep.witness))}",
              file=err)
    return EXIT_OK if rep.exact else EXIT_INTERVAL


def cmd_check(cfg: RunConfig, landmarks: list[int], err) -> int:
    g = cfg.graph
    dm = distance_matrix(g)
    cert = is_resolving(g, landmarks, dm)
    if cfg.fmt == "json":
        print(_dumps(cert.to_dict()))
    else:
        print(cert.verdict.value)
        if cert.witness is not None:
            u, v = cert.witness
            code = ",".join(map(str, cert.witness_code))
            print(f"witness: {u} and {v} both have code ({code})")
    return EXIT_OK if cert.resolving else EXIT_FAIL


_DEFAULT_RANGES = {
    "andk": {"k": list(range(1, 8))},
    "complement": {"k": list(range(2, 8))},
    "prism": {"k": list(range(1, 5)), "n": list(range(2, 5))},
    "cycle-product": {"k": [3, 4], "n": [3, 4]},
    "small-cases": {"n": list(range(3, 9))},
}


def _verify_jobs(theorem: str, ks, ns, cfg: RunConfig, samples: int, gate) -> list:
    rng = _DEFAULT_RANGES[theorem]
    defaults = not ks and not ns
    ks = ks or rng.get("k")
    ns = ns or rng.get("n")
    b = cfg.budget
    if theorem == "andk":
        return [functools.partial(A.check_theorem_andk, k, b, samples, cfg.seed) for k in ks]
    if theorem == "complement":
        return [functools.partial(A.check_theorem_complement, k, b) for k in ks]
    if theorem == "prism":
        jobs = []
        for k in ks:
            for n in ns:
                # the default grid stops at 44-vertex products
                if not defaults or n * (3 * k - 1) <= 44:
                    jobs.append(functools.partial(A.check_theorem_prism, k, n, b, gate))
        return jobs
    if theorem == "cycle-product":
        return [functools.partial(A.check_proposition_cycle, k, n, b, gate) for k in ks for n in ns]
    return [functools.partial(A.check_small_cases, ns, (1, 2), b)]


def _call(job):
    return job()


def cmd_verify(cfg: RunConfig, theorems: list[str], ks, ns, samples: int, gate,
               evidence: str | None, err) -> int:
    t0 = time.monotonic()
    jobs = []
    for th in theorems:
        jobs.extend(_verify_jobs(th, ks, ns, cfg, samples, gate))
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            checks = list(pool.map(_call, jobs))
    else:
        checks = [job() for job in jobs]
    passed = all(c.passed for c in checks)
    bundle = {
        "passed": passed,
        "checks": [c.to_dict(timing=False) for c in checks],
        "timing": {
            "total_seconds": round(time.monotonic() - t0, 6),
            "checks": [round(c.wall_seconds, 6) for c in checks],
        },
    }
    if evidence:
        with open(evidence, "w") as fh:
            fh.write(_dumps(bundle) + "\n")
    if cfg.fmt == "json":
        print(_dumps(bundle))
    else:
        print(A.summary_table(checks))
        for c in checks:
            if not c.passed:
                print(file=err)
                print(c.to_text(), file=err)
                for cl in c.claims:
                    if not cl.passed:
                        print(f"  evidence for {cl.description!r}: {json.dumps(cl.evidence)}", file=err)
    return EXIT_OK if passed else EXIT_FAIL


def _table_graphs(family: str, ks, ns) -> list[tuple[str, Graph]]:
    out = []
    if family == "andrasfai":
        out = [(f"k={k}", G.andrasfai(k)) for k in ks or range(1, 8)]
    elif family == "complement-andrasfai":
        out = [(f"k={k}", G.complement(G.andrasfai(k))) for k in ks or range(2, 8)]
    elif family == "line-andrasfai":
        out = [(f"k={k}", G.line_graph(G.andrasfai(k))) for k in ks or range(1, 5)]
    else:
        second = {
            "prism": G.path,
            "complement-prism": G.path,
            "cycle-product": G.cycle,
            "complete-product": G.complete,
        }.get(family)
        if second is None:
            raise SpecError(f"unknown table family {family!r}")
        for k in ks or range(1, 5):
            base = G.andrasfai(k)
            if family == "complement-prism":
                if k < 2:
                    continue
                base = G.complement(base)
            for n in ns or range(2 if second is not G.cycle else 3, 5):
                out.append((f"k={k};n={n}", G.cartesian_product(base, second(n))))
    return out


def cmd_table(cfg: RunConfig, family: str, ks, ns) -> int:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    status = EXIT_OK
    for params, g in _table_graphs(family, ks, ns):
        t = time.monotonic()
        rep = metric_dimension_exact(g, cfg.budget, threads=cfg.threads)
        ms = round((time.monotonic() - t) * 1000)
        w.writerow([family, params, g.n, rep.lower, rep.upper, str(rep.exact).lower(),
                    " ".join(map(str, rep.witness)), ms])
        if not rep.exact:
            status = EXIT_INTERVAL
    sys.stdout.write(buf.getvalue())
    return status


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-subsets", type=int, metavar="N",
                   help=f"cap on search nodes (default {DEFAULT_BUDGET.max_subsets})")
    p.add_argument("--budget-seconds", type=float, metavar="S",
                   help=f"wall-clock cap (default {DEFAULT_BUDGET.max_seconds:g})")
    p.add_argument("--threads", type=int, default=1, metavar="T")


def _landmarks(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad landmark list {text!r}") from None


def _gate(text: str):
    if text == "none":
        return None
    k, n = text.split(",")
    return int(k), int(n)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metdim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="build a graph and write graph6 or edge-list JSON")
    p.add_argument("spec", nargs="*")
    p.add_argument("--input", help="read the graph from a graph6/JSON file")
    p.add_argument("-o", "--output", help="output file (.json for edge-list JSON)")
    p.add_argument("--format", choices=["graph6", "json"], default=None,
                   help="default: graph6, or json for a .json output file")

    p = sub.add_parser("dim", help="exact metric dimension with a minimum witness")
    p.add_argument("spec", nargs="*")
    p.add_argument("--input")
    p.add_argument("--format", choices=["json", "text"], default="text")
    _add_budget(p)

    p = sub.add_parser("check", help="test whether a landmark set resolves a graph")
    p.add_argument("spec", nargs="*")
    p.add_argument("--input")
    p.add_argument("--set", dest="landmarks", type=_landmarks, required=True, metavar="IDS")
    p.add_argument("--format", choices=["json", "text"], default="text")

    p = sub.add_parser("verify", help="run the theorem checks")
    p.add_argument("theorems", nargs="+",
                   choices=["all", "andk", "complement", "prism", "cycle-product", "small-cases"])
    p.add_argument("--k", type=parse_range, metavar="RANGE")
    p.add_argument("--n", type=parse_range, metavar="RANGE")
    p.add_argument("--samples", type=int, default=100,
                   help="random landmark sets for the diameter-2 criterion (andk)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact-gate", type=_gate, default=A.DEFAULT_EXACT_GATE, metavar="K,N|none")
    p.add_argument("--json", dest="evidence", metavar="PATH", help="write the evidence bundle")
    p.add_argument("--format", choices=["json", "text"], default="text")
    _add_budget(p)

    p = sub.add_parser("table", help="CSV of exact dimensions over a family")
    p.add_argument("family", choices=["andrasfai", "complement-andrasfai", "prism", "complement-prism",
                                      "cycle-product", "complete-product", "line-andrasfai"])
    p.add_argument("--k", type=parse_range, metavar="RANGE")
    p.add_argument("--n", type=parse_range, metavar="RANGE")
    p.add_argument("--format", choices=["csv"], default="csv")
    _add_budget(p)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    err = sys.stderr
    try:
        cfg = _config(args)
        if args.command == "gen":
            return cmd_gen(cfg, args.output, err)
        if args.command == "dim":
            return cmd_dim(cfg, err)
        if args.command == "check":
            return cmd_check(cfg, args.landmarks, err)
        if args.command == "verify":
            theorems = list(_DEFAULT_RANGES) if "all" in args.theorems else args.theorems
            return cmd_verify(cfg, theorems, args.k, args.n, args.samples, args.exact_gate,
                              args.evidence, err)
        return cmd_table(cfg, args.family, args.k, args.n)
    except DisconnectedGraphError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_FAIL
    except (SpecError, GraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
