"""Command-line front end.

Reports are ``key=value`` pairs, several per line.  Exit status is 0 on
success, 1 when a ``--verify`` check fails and 2 on bad input.
"""
from __future__ import annotations

import argparse
import sys
import time

from . import generators
from .cactus import cactus_of, format_cactus, validate_cactus
from .compact import audit_bounds, check_minimal, compact_cactus, sandwich_errors
from .connectivity import min_cut_kernel
from .enumerate import build_pipeline, enumerate_all_min_cuts, list_cuts
from .graph import MultiGraph, format_edge_cut, format_graph, parse_graph
from .oracle import DEFAULT_LIMIT, OracleLimitError, enumerate_min_cuts_bruteforce
from .sparsify import sparsify, verify_sparsifier

POST_CACTUS = ("compact", "sparsify", "dags", "enumerate")


class VerificationError(Exception):
    pass


def _flag(ok: bool) -> str:
    return "true" if ok else "false"


def _kv(**pairs) -> str:
    return " ".join(f"{k}={_flag(v) if isinstance(v, bool) else v}" for k, v in pairs.items())


def _read_graph(path: str) -> MultiGraph:
    if path == "-":
        data = sys.stdin.buffer.read()
    else:
        with open(path, "rb") as fh:
            data = fh.read()
    return parse_graph(data, simple=True, connected=True)


def _oracle(G: MultiGraph, args):
    return enumerate_min_cuts_bruteforce(G, args.oracle_limit)


def _check(ok: bool, what: str) -> None:
    if not ok:
        raise VerificationError(what)


def _star_test(G: MultiGraph, lam: int):
    """Predicate telling whether a sorted edge-id tuple is the star of one vertex."""
    deg = G.degrees()
    ends = dict(zip(G.ids.tolist(), zip(G.u.tolist(), G.v.tolist())))

    def is_star(cut) -> bool:
        return any(deg[x] == lam and all(x in ends[e] for e in cut) for x in ends[cut[0]])

    return is_star


def cmd_mincut(args, out) -> None:
    G = _read_graph(args.input)
    kernel = min_cut_kernel(G)
    out.write(_kv(n=G.n, m=G.m, delta=G.min_degree(), **{"lambda": kernel.lam}, kernel=kernel.n) + "\n")
    if args.verify:
        cuts = _oracle(G, args)
        _check(cuts[0].size == kernel.lam, "edge connectivity disagrees with the oracle")


def cmd_oracle(args, out) -> None:
    G = _read_graph(args.input)
    ends = G.edge_endpoints()
    for cut in _oracle(G, args):
        out.write(format_edge_cut(G.crossing_edges(cut.side).edges, ends) + "\n")


def cmd_cactus(args, out) -> None:
    G = _read_graph(args.input)
    kc, lam = cactus_of(G)
    out.write(format_cactus(kc))
    if args.verify:
        cuts = _oracle(G, args)
        report = validate_cactus(G, kc, cuts, lam, oracle=cuts)
        _check(report.ok, "; ".join(report.errors))


def cmd_compact(args, out) -> None:
    G = _read_graph(args.input)
    kc, lam = cactus_of(G)
    stats: dict = {}
    kp = compact_cactus(kc, G, stats)
    out.write(format_cactus(kp))
    audit = audit_bounds(kp, G.n, G.min_degree())
    out.write(_kv(**audit) + "\n")
    out.write(_kv(**stats) + "\n")
    if args.verify:
        cuts = _oracle(G, args)
        errs = sandwich_errors(kp, G, cuts)
        _check(not errs, "; ".join(errs))
        _check(check_minimal(kp, G, limit=args.oracle_limit).minimal, "compact cactus is not minimal")


def cmd_sparsify(args, out) -> None:
    G = _read_graph(args.input)
    kc, lam = cactus_of(G)
    kp = compact_cactus(kc, G)
    H, vertex_map = sparsify(G, kp)
    out.write(format_graph(H))
    for x, h in enumerate(vertex_map.tolist()):
        out.write(f"map {x} {h}\n")
    if args.verify:
        cuts = _oracle(G, args)
        report = verify_sparsifier(G, H, vertex_map, lam, cuts, kp.n_nodes)
        _check(report.ok, "; ".join(report.errors))


def cmd_enumerate(args, out) -> None:
    G = _read_graph(args.input)
    cuts = enumerate_all_min_cuts(G, threads=args.threads)
    ends = None if args.count_only else G.edge_endpoints()
    seen = [] if args.verify else None
    count = 0
    for cut in cuts:
        count += 1
        if ends is not None:
            out.write(format_edge_cut(cut, ends) + "\n")
        if seen is not None:
            seen.append(cut)
    if args.count_only:
        out.write(_kv(count=count) + "\n")
    if args.verify:
        want = {tuple(G.crossing_edges(c.side).edges) for c in _oracle(G, args)}
        _check(len(set(seen)) == len(seen), "duplicate cuts in the output")
        _check(set(seen) == want, "output differs from the oracle")


def cmd_gen(args, out) -> None:
    p = args.params
    kind = args.family
    try:
        if kind == "tightness":
            n, delta, lam = (int(x) for x in p)
            G = generators.tightness_graph(n, delta, lam)
        elif kind == "cycle":
            (n,) = (int(x) for x in p)
            G = generators.cycle_graph(n)
        elif kind == "clique":
            (k,) = (int(x) for x in p)
            G = generators.clique(k)
        elif kind == "random":
            G = generators.random_connected(int(p[0]), float(p[1]), args.seed)
        elif kind == "disjoint":
            n, delta = (int(x) for x in p)
            G = generators.disjoint_cliques(n, delta)
        elif kind == "clustered":
            G = generators.random_clustered(int(p[0]), int(p[1]), float(p[2]), int(p[3]), args.seed)
        else:
            raise ValueError(f"unknown family {kind!r}")
    except (TypeError, IndexError) as exc:
        raise ValueError(f"wrong parameters for {kind}: {exc}") from None
    out.write(format_graph(G))


def cmd_audit(args, out) -> None:
    G = _read_graph(args.input)
    pipe = build_pipeline(G)
    kp, H = pipe.compact, pipe.H
    audit = audit_bounds(kp, G.n, pipe.delta)
    edge_bound = pipe.lam * (kp.n_nodes - 1)
    is_star = _star_test(G, pipe.lam)
    total = trivial = 0
    for cut in list_cuts(G, pipe):
        total += 1
        trivial += is_star(cut)
    out.write(_kv(vertices_Kprime=audit["vertices_Kprime"], bound=audit["bound"], **{"pass": audit["pass"]}) + "\n")
    out.write(_kv(vertices_H=H.n, edges_H=H.m, edge_bound=edge_bound, edges_pass=H.m <= edge_bound) + "\n")
    out.write(_kv(n=G.n, m=G.m, delta=pipe.delta, **{"lambda": pipe.lam}) + "\n")
    out.write(_kv(min_cuts=total, trivial=trivial, non_trivial=total - trivial) + "\n")
    rest = {k: v for k, v in audit.items() if k not in ("vertices_Kprime", "bound", "pass")}
    out.write(_kv(**rest) + "\n")
    if args.verify:
        cuts = _oracle(G, args)
        _check(total == len(cuts), "min-cut count differs from the oracle")


def bench_row(r: int, delta: int, lam: int, repeat: int = 1, threads: int = 1) -> dict:
    """Best-of-``repeat`` phase timings for one tightness instance."""
    G = generators.tightness_graph(r * (delta + 1), delta, lam)
    best = None
    count = 0
    for _ in range(repeat):
        timings: dict = {}
        start = time.perf_counter()
        count = sum(1 for _ in enumerate_all_min_cuts(G, threads=threads, timings=timings))
        total = time.perf_counter() - start
        post = sum(timings.get(k, 0.0) for k in POST_CACTUS)
        row = {"cactus_s": timings.get("cactus", 0.0), "post_s": post, "total_s": total}
        if best is None:
            best = row
        else:
            best = {k: min(best[k], row[k]) for k in best}
    return {"r": r, "n": G.n, "delta": delta, "lam": lam, "cuts": count, **best}


def cmd_bench(args, out) -> None:
    for r in (int(x) for x in args.r.split(",")):
        row = bench_row(r, args.delta, args.lam, args.repeat, args.threads)
        out.write(_kv(**{k: f"{v:.6f}" if isinstance(v, float) else v for k, v in row.items()}) + "\n")
        out.flush()


COMMANDS = {
    "mincut": cmd_mincut,
    "oracle": cmd_oracle,
    "cactus": cmd_cactus,
    "compact": cmd_compact,
    "sparsify": cmd_sparsify,
    "enumerate": cmd_enumerate,
    "gen": cmd_gen,
    "audit": cmd_audit,
    "bench": cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verify", action="store_true", help="cross-check against the brute-force oracle")
    common.add_argument("--oracle-limit", type=int, default=DEFAULT_LIMIT, metavar="N")
    common.add_argument("--threads", type=int, default=1, metavar="K")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="cactuscut", description="Min-cut cacti, sparsifiers and enumeration.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("mincut", "oracle", "cactus", "compact", "sparsify", "audit"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("input", nargs="?", default="-", help="graph file, '-' for stdin")
    p = sub.add_parser("enumerate", parents=[common])
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--count-only", action="store_true")
    p = sub.add_parser("gen", parents=[common])
    p.add_argument("family", choices=["tightness", "cycle", "clique", "random", "disjoint", "clustered"])
    p.add_argument("params", nargs="*")
    p = sub.add_parser("bench", parents=[common])
    p.add_argument("--delta", type=int, default=20)
    p.add_argument("--lam", type=int, default=4)
    p.add_argument("--r", default="10,20,40,80", help="comma-separated clique counts")
    p.add_argument("--repeat", type=int, default=3)
    return parser


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = out if out is not None else sys.stdout
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 2
    try:
        COMMANDS[args.command](args, out)
    except VerificationError as exc:
        out.flush()
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (OracleLimitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
