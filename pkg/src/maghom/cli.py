"""Command-line interface.

Subcommands: compute, enumerate, analyze, experiment er|rgg, verify.
Exit codes: 0 success, 2 validation error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys

from .graphs import all_pairs_distances, read_graph
from .harness import (SweepConfig, run_sweep, summary_csv, threshold_crossing,
                      trials_csv, fmt)
from .homology import (DEFAULT_BUDGET, compute_homology, les_consistency_check,
                       verify_vanishing_consequences)
from .structure import classify_collection, collection_matrix, local_collections
from .homology import matrix_rank_exact
from .trails import BudgetExceededError, enumerate_trails

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


def _parse_floats(s: str) -> tuple[float, ...]:
    return tuple(float(x) for x in s.split(","))


def _parse_ints(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in s.split(","))


def _cmd_compute(args) -> int:
    G = read_graph(args.graph)
    D = all_pairs_distances(G)
    theories = ("mc", "emc", "dmc") if args.theory == "all" else (args.theory,)
    lines = ["theory,k,l,dim,rank_out,rank_in,betti,torsion"]
    for th in theories:
        res = compute_homology(G, args.k, args.l, th,
                               want_torsion=args.torsion, budget=args.budget,
                               D=D)
        tor = "" if res.torsion is None else ";".join(map(str, res.torsion))
        lines.append(f"{th},{res.k},{res.ell},{res.dim_source},"
                     f"{res.rank_out},{res.rank_in},{res.betti},{tor}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    G = read_graph(args.graph)
    D = all_pairs_distances(G)
    basis = enumerate_trails(G, D, args.k, args.l, args.theory,
                             budget=args.budget)
    out = "".join(f"{','.join(map(str, t))} len={args.l}\n"
                  for t in basis.generators)
    _emit(out, args.out)
    return EXIT_OK


def _cmd_analyze(args) -> int:
    G = read_graph(args.graph)
    D = all_pairs_distances(G)
    lines = []
    for X in local_collections(G, D, args.k):
        mat = collection_matrix(X)
        kdim = len(X) - matrix_rank_exact(mat)
        lines.append(f"{X.start},{X.end},{X.k},{len(X)},"
                     f"{classify_collection(X)},{kdim}")
    _emit("\n".join(lines) + ("\n" if lines else ""), args.out)
    return EXIT_OK


def _cmd_experiment(args) -> int:
    if args.model == "er":
        if (args.q is None) == (args.p is None):
            raise ValueError("er experiment needs exactly one of --q / --p")
        pname, values = ("q", args.q) if args.q is not None else ("p", args.p)
    else:
        if (args.q is None) == (args.r is None):
            raise ValueError("rgg experiment needs exactly one of --q / --r")
        pname, values = ("q", args.q) if args.q is not None else ("r", args.r)
    cfg = SweepConfig(model=args.model, k=args.k, n_list=args.n,
                      param_name=pname, param_values=values,
                      trials=args.trials, seed=args.seed, area=args.area,
                      budget=args.budget, workers=args.workers)
    summaries, records = run_sweep(cfg)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "summary.csv"), "w") as fh:
            fh.write(summary_csv(summaries))
        for n, v in sorted({(r.n, r.param_value) for r in records}):
            cell = [r for r in records if r.n == n and r.param_value == v]
            name = f"trials_{args.model}_n{n}_k{args.k}_{pname}{fmt(v)}.csv"
            with open(os.path.join(args.out, name), "w") as fh:
                fh.write(trials_csv(cell))
    else:
        sys.stdout.write(summary_csv(summaries))
    cross = threshold_crossing(summaries)
    if cross is not None:
        theory = ((args.k + 1) / (2 * args.k - 1) if args.model == "er"
                  else (args.k + 1) / (2 * args.k))
        sys.stderr.write(f"first mean-beta<1 crossing at {pname}={fmt(cross)} "
                         f"(threshold exponent {fmt(theory)})\n")
    return EXIT_OK


def _cmd_verify(args) -> int:
    G = read_graph(args.graph)
    if (args.l is None) == (args.k is None):
        raise ValueError("verify needs exactly one of --l (exactness) / --k "
                         "(vanishing consequences)")
    if args.l is not None:
        rep = les_consistency_check(G, args.l)
        for nd in rep.nodes:
            status = "ok" if nd.exact and nd.composite_zero else "FAIL"
            print(f"{nd.name}: dim={nd.dim_h} rank_in={nd.rank_incoming} "
                  f"rank_out={nd.rank_outgoing} {status}")
        print("exactness:", "pass" if rep.passed else "fail")
        return EXIT_OK if rep.passed else 1
    rep = verify_vanishing_consequences(G, args.k)
    if not rep.applicable:
        print(f"not applicable: {rep.reason}")
        return EXIT_OK
    print(f"betti mh diag = {rep.betti_mh}, 2|E| = {rep.two_e}, "
          f"back-and-forth = {rep.all_back_and_forth}"
          + (f", betti dmh diag = {rep.betti_dmh}" if rep.iso_checked else ""))
    print("verdict:", "pass" if rep.passed else "fail")
    return EXIT_OK if rep.passed else 1


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="maghom")
    sub = ap.add_subparsers(dest="cmd", required=True)

    pc = sub.add_parser("compute", help="homology of one bigrade")
    pc.add_argument("--graph", required=True)
    pc.add_argument("--k", type=int, required=True)
    pc.add_argument("--l", type=int, required=True)
    pc.add_argument("--theory", choices=["mc", "emc", "dmc", "all"],
                    default="all")
    pc.add_argument("--torsion", action="store_true")
    pc.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    pc.add_argument("--out")
    pc.set_defaults(fn=_cmd_compute)

    pe = sub.add_parser("enumerate", help="list trails of a bigrade")
    pe.add_argument("--graph", required=True)
    pe.add_argument("--k", type=int, required=True)
    pe.add_argument("--l", type=int, required=True)
    pe.add_argument("--theory", choices=["mc", "emc", "dmc"], default="mc")
    pe.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    pe.add_argument("--out")
    pe.set_defaults(fn=_cmd_enumerate)

    pa = sub.add_parser("analyze", help="diagonal local-collection records")
    pa.add_argument("--graph", required=True)
    pa.add_argument("--k", type=int, required=True)
    pa.add_argument("--out")
    pa.set_defaults(fn=_cmd_analyze)

    px = sub.add_parser("experiment", help="Monte Carlo sweep")
    px.add_argument("model", choices=["er", "rgg"])
    px.add_argument("--n", type=_parse_ints, required=True)
    px.add_argument("--k", type=int, required=True)
    px.add_argument("--q", type=_parse_floats)
    px.add_argument("--p", type=_parse_floats)
    px.add_argument("--r", type=_parse_floats)
    px.add_argument("--area", type=float, default=1.0)
    px.add_argument("--trials", type=int, required=True)
    px.add_argument("--seed", type=int, default=0)
    px.add_argument("--workers", type=int, default=1)
    px.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    px.add_argument("--out")
    px.set_defaults(fn=_cmd_experiment)

    pv = sub.add_parser("verify", help="exactness / vanishing-consequence checks")
    pv.add_argument("--graph", required=True)
    pv.add_argument("--l", type=int)
    pv.add_argument("--k", type=int)
    pv.set_defaults(fn=_cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
