"""Command-line front end: ``rbacs solve | bench | inspect``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .acs import AcsConfig, GroupParams
from .bench import (
    compare_table,
    emit_trace_csv,
    metadata_lines,
    run_engine,
    run_trials,
    summarize,
    summary_lines,
)
from .core import TspInstance, nearest_neighbor_tour, reference_tau0, validate_tour
from .rbacs import DEFAULT_BLACK, DEFAULT_RED, RbacsConfig
from .tsplib import BUNDLED_INSTANCES, InstanceHeader, TsplibError, bundled_path, parse_tsplib

# TSPLIB published optima for the bundled instances
KNOWN_OPTIMA = {"eil51": 426, "eil76": 538, "kroA100": 21282}


class CliError(Exception):
    pass


def resolve_instance_path(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    if name.lower() in {b.lower() for b in BUNDLED_INSTANCES}:
        return bundled_path(name)
    raise CliError(f"file not found: {name}")


def load_instance(name: str) -> tuple[TspInstance, InstanceHeader]:
    path = resolve_instance_path(name)
    try:
        header, coords = parse_tsplib(path.read_text(encoding="utf-8"))
    except UnicodeDecodeError as exc:
        raise CliError(f"{path}: not a text file ({exc})") from None
    except TsplibError as exc:
        raise CliError(f"{path}: {exc}") from None
    if not header.name:
        header = replace(header, name=path.stem)
    return TspInstance.from_tsplib(header, coords), header


def _group(base: GroupParams, args, rho: float | None, alpha: float | None) -> GroupParams:
    return GroupParams(
        q0=args.q0 if args.q0 is not None else base.q0,
        beta=args.beta if args.beta is not None else base.beta,
        rho=rho if rho is not None else base.rho,
        alpha=alpha if alpha is not None else base.alpha,
        m=args.ants if args.ants is not None else base.m,
    )


def build_config(args) -> AcsConfig | RbacsConfig:
    common = dict(budget=args.budget, stagnation_limit=args.stagnation, decay_scope=args.decay_scope)
    if args.algo == "acs":
        return AcsConfig(
            params=_group(GroupParams(), args, args.rho_black, args.alpha_black),
            init=args.acs_init, c_init=args.c_init, **common,
        )
    return RbacsConfig(
        black=_group(DEFAULT_BLACK, args, args.rho_black, args.alpha_black),
        red=_group(DEFAULT_RED, args, args.rho_red, args.alpha_red),
        c_init=args.c_init, **common,
    )


def _optimum_for(name: str, override: int | None) -> int | None:
    if override is not None:
        return override
    return {k.lower(): v for k, v in KNOWN_OPTIMA.items()}.get(name.lower())


def cmd_solve(args) -> int:
    inst, header = load_instance(args.instance)
    name = header.name
    config = build_config(args)
    best, trace = run_engine(inst, args.algo, config, args.seed)
    verdict = validate_tour(best.order, inst.n)
    if not verdict:
        raise CliError(f"engine produced an invalid tour: {verdict.reason}")
    print(f"instance: {name} ({inst.n} cities)")
    print(f"algorithm: {args.algo}")
    print(f"best length: {best.length}")
    print(f"iterations run: {len(trace)} (stopped by {trace.stop_reason})")
    print(f"seed: {args.seed}")
    print("tour (1-based ids): " + " ".join(str(c + 1) for c in best.order))
    for line in metadata_lines(instance=name, algorithm=args.algo, seed=args.seed, config=config):
        print(line)
    print(f"best_length={best.length}")
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="") as fh:
            emit_trace_csv(trace, fh)
    return 0


def cmd_bench(args) -> int:
    if args.trials < 1:
        raise CliError("--trials must be at least 1")
    inst, header = load_instance(args.instance)
    name = header.name
    algos = ["acs", "rbacs"] if args.algo == "both" else [args.algo]
    rows = []
    meta: list[str] = metadata_lines(instance=name, trials=args.trials, base_seed=args.seed)
    for algo in algos:
        args.algo = algo
        config = build_config(args)
        results = run_trials(inst, algo, config, args.trials, args.seed, workers=args.workers)
        for i, res in enumerate(results):
            if not validate_tour(res.best_tour.order, inst.n):
                raise CliError(f"{algo} trial {i} produced an invalid tour")
        stats = summarize(results)
        rows.append((algo, stats))
        meta += metadata_lines(**{f"{algo}.config": config})
        meta += [f"{algo}.iterations_run=" + ",".join(str(r.iterations_run) for r in results)]
        meta += [f"{algo}.best_lengths=" + ",".join(str(r.best_length) for r in results)]
        meta += summary_lines(algo, stats)
        if args.trace_dir:
            out = Path(args.trace_dir)
            out.mkdir(parents=True, exist_ok=True)
            for i, res in enumerate(results):
                with open(out / f"{name}_{algo}_trial{i:03d}.csv", "w", encoding="utf-8", newline="") as fh:
                    emit_trace_csv(res.trace, fh)

    text = f"instance: {name} ({inst.n} cities)\n"
    text += compare_table(rows, _optimum_for(name, args.optimum))
    text += "\n".join(meta) + "\n"
    sys.stdout.write(text)
    if args.summary:
        Path(args.summary).write_text(text, encoding="utf-8")
    return 0


def cmd_inspect(args) -> int:
    inst, header = load_instance(args.instance)
    nn = nearest_neighbor_tour(inst, 0)
    print(f"name: {header.name}")
    print(f"dimension: {header.dimension}")
    print(f"edge_weight_type: {header.edge_weight_type}")
    print(f"nn_tour_length: {nn.length}")
    print(f"tau0: {reference_tau0(inst):.6e}")
    opt = _optimum_for(header.name, None)
    if opt is not None:
        print(f"known_optimum: {opt}")
    return 0


def _add_engine_flags(p: argparse.ArgumentParser, algos: list[str]) -> None:
    p.add_argument("instance", help="TSPLIB .tsp file (or a bundled name: eil51, eil76, kroA100)")
    p.add_argument("--algo", choices=algos, default="rbacs")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--q0", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--ants", type=int, help="ants per group")
    p.add_argument("--rho-black", type=float, help="local decay, black group (or the ACS colony)")
    p.add_argument("--rho-red", type=float)
    p.add_argument("--alpha-black", type=float, help="global decay, black group (or the ACS colony)")
    p.add_argument("--alpha-red", type=float)
    p.add_argument("--c-init", type=float, default=100.0)
    p.add_argument("--budget", type=int, default=2000, help="iteration cap")
    p.add_argument("--stagnation", type=int, default=0, help="stop after this many non-improving iterations (0: off)")
    p.add_argument("--decay-scope", choices=["all_edges", "best_tour_only"], default="all_edges")
    p.add_argument("--acs-init", choices=["uniform", "inverse_cost"], default="uniform")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rbacs", description="ACS and Red-Black ACS for symmetric TSP")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve one instance once")
    _add_engine_flags(solve, ["acs", "rbacs"])
    solve.add_argument("--trace", help="write the convergence trace CSV here")
    solve.set_defaults(func=cmd_solve)

    bench = sub.add_parser("bench", help="repeated trials with a summary table")
    _add_engine_flags(bench, ["acs", "rbacs", "both"])
    bench.add_argument("--trials", type=int, default=30)
    bench.add_argument("--workers", type=int, default=1)
    bench.add_argument("--trace-dir", help="directory for per-trial trace CSVs")
    bench.add_argument("--summary", help="also write the summary to this file")
    bench.add_argument("--optimum", type=int, help="reference optimum for the excess column")
    bench.set_defaults(func=cmd_bench)

    inspect = sub.add_parser("inspect", help="print instance facts")
    inspect.add_argument("instance")
    inspect.set_defaults(func=cmd_inspect)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError) as exc:
        print(f"rbacs: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
