"""Command line entry point: ``run``, ``check`` and ``exact`` subcommands."""

from __future__ import annotations

import argparse
import logging
import sys
import time

import numpy as np

from . import oracle
from .absorbing import build_system
from .errors import DataError, NavtimeError, UsageError
from .graph import candidate_edges, sample_partition
from .greedy import greedy_descent, reverse_greedy
from .harness import ALGORITHMS, ExperimentConfig, load_graph, records_to_csv, run_experiment

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_VIOLATION = 0, 1, 2, 3

CHECKS = {
    "monotonicity": oracle.check_monotonicity,
    "supermodularity": oracle.check_supermodularity,
    "sherman-morrison": oracle.check_sherman_morrison,
    "montecarlo": oracle.check_montecarlo,
    "centrality": oracle.check_centrality,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _algorithms(text: str) -> list[str]:
    algs = [a.strip() for a in text.split(",") if a.strip()]
    bad = [a for a in algs if a not in ALGORITHMS]
    if bad or not algs:
        raise argparse.ArgumentTypeError(f"choose from {','.join(ALGORITHMS)}")
    return algs


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="navtime", description="Place Q->C links to shorten random-walk absorption time.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run the trial protocol and write a CSV of m(k)")
    run.add_argument("--graph", required=True)
    run.add_argument("--c-size", type=int, required=True)
    run.add_argument("--trials", type=int, default=20)
    run.add_argument("--k-max", type=int, default=15)
    run.add_argument("--algorithms", type=_algorithms, default=list(ALGORITHMS))
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", default="-", help="CSV path, '-' for stdout")

    check = sub.add_parser("check", help="run a property check on random instances")
    check.add_argument("--property", required=True, choices=sorted(CHECKS))
    check.add_argument("--instances", type=int, default=200)
    check.add_argument("--seed", type=int, default=1)
    check.add_argument("--csv", help="also write the per-instance report here")

    exact = sub.add_parser("exact", help="compare both greedy variants against exhaustive search")
    exact.add_argument("--graph", required=True)
    exact.add_argument("--c-size", type=int, required=True)
    exact.add_argument("--k", type=int, required=True)
    exact.add_argument("--seed", type=int, default=0)
    return parser


def cmd_run(args) -> int:
    cfg = ExperimentConfig(
        graph_path=args.graph,
        c_size=args.c_size,
        trials=args.trials,
        k_max=args.k_max,
        algorithms=args.algorithms,
        master_seed=args.seed,
    )
    text = records_to_csv(run_experiment(cfg))
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_check(args) -> int:
    t0 = time.perf_counter()
    report = CHECKS[args.property](args.instances, rng=np.random.default_rng(args.seed))
    print(report.summary())
    print(f"elapsed {time.perf_counter() - t0:.2f}s")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(report.to_csv())
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_exact(args) -> int:
    g = load_graph(args.graph)
    p = sample_partition(g, args.c_size, np.random.default_rng(args.seed))
    cands = candidate_edges(g, p)
    if args.k > len(cands):
        raise UsageError(f"k={args.k} but only {len(cands)} candidates")
    best, m_opt = oracle.exhaustive_best_k(g, p, cands, args.k)
    sys_ = build_system(g, p)
    desc = greedy_descent(sys_, cands, args.k)
    rev = reverse_greedy(sys_, cands, args.k)

    def fmt(edges):
        return " ".join(f"{g.label(e.q)}->{g.label(e.c)}" for e in sorted(edges)) or "(none)"

    print(f"C = {{{', '.join(g.label(c) for c in p.C)}}}  |Q| = {len(p.Q)}  candidates = {len(cands)}")
    print(f"m(initial)  {sys_.absorption_time():.12g}")
    for name, m, edges in (("exhaustive", m_opt, best), ("greedy", desc.final_m, desc.chosen),
                           ("reverse", rev.final_m, rev.chosen)):
        print(f"{name:<11} {m:.12g}  ratio {m / m_opt:.6f}  {fmt(edges)}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    handler = {"run": cmd_run, "check": cmd_check, "exact": cmd_exact}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NavtimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
