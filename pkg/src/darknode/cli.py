"""Command line entry point ``sim``."""

from __future__ import annotations

import argparse
import contextlib
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import _backend, acceptance, output, scenarios
from .config import ConfigError, RunConfig, emit_config, parse_config
from .dynamics import DEFAULT_RTOL, IntegrationError
from .units import default_params

EXIT_OK, EXIT_PHYSICS, EXIT_USAGE = 0, 1, 2


def _columns_help() -> str:
    lines = ["scenarios and CSV columns:"]
    for sc in scenarios.SCENARIOS.values():
        lines.append(f"  {sc.name}: {', '.join(sc.columns)}")
        lines.append(f"      {sc.description}")
    lines += [
        "",
        "P_ode: integrated dark-state survival; P_lz: Landau-Zener product;",
        "nodes: nodal planes crossed; tangential/overlap: 1 where the",
        "Landau-Zener estimate is flagged; norm_drift: max |norm - 1|.",
    ]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sim",
        description="Dark-state survival of a moving atom in a cavity-assisted Raman transfer.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser(
        "run",
        help="run one scenario and write CSV + gnuplot script",
        epilog=_columns_help(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    run.add_argument("scenario", help="scenario name, see 'sim list'")
    run.add_argument("--config", help="TOML file with [params] and [scenario.NAME] sections")
    run.add_argument("--out", default="out", help="output directory (default: out)")
    run.add_argument("--jobs", type=int, default=1, help="worker processes (default: 1)")
    run.add_argument("--points", type=int, help="sweep resolution (scenario default if omitted)")
    run.add_argument("--tol", type=float, help=f"integrator relative tolerance (default: {DEFAULT_RTOL:g})")

    sub.add_parser("list", help="list scenarios")

    check = sub.add_parser("check", help="run the acceptance checks")
    check.add_argument("--jobs", type=int, default=1, help="worker processes (default: 1)")

    emit = sub.add_parser("emit-config", help="print the effective configuration as TOML")
    emit.add_argument("--config", help="TOML file to normalise")
    return parser


@contextlib.contextmanager
def _mapper(jobs: int):
    if jobs <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # Executor.map yields in submission order, which keeps rows in sweep order
        yield lambda fn, items: pool.map(fn, items, chunksize=4)


def _load(path: str | None) -> RunConfig:
    return parse_config(path) if path else RunConfig(default_params())


def _cmd_run(args) -> int:
    try:
        scenarios.get(args.scenario)
    except KeyError as exc:
        print(f"sim: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    cfg = _load(args.config)
    sc = cfg.scenario(args.scenario)
    params = cfg.params.replace(**sc.overrides)
    points = args.points if args.points is not None else sc.points
    tol = args.tol if args.tol is not None else (sc.tol or DEFAULT_RTOL)
    out_path = sc.output_path or os.path.join(args.out, f"{args.scenario}.csv")
    if points is not None and points < 2:
        print("sim: --points must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    if tol <= 0:
        print("sim: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE

    start = time.perf_counter()
    with _mapper(args.jobs) as map_fn:
        try:
            result = scenarios.run(args.scenario, params, points, tol, sc.options, map_fn)
        except IntegrationError as exc:
            print(f"sim: integration failed: {exc}", file=sys.stderr)
            return EXIT_PHYSICS
    elapsed = time.perf_counter() - start
    try:
        csv_path, gp_path = output.write(result, out_path, _backend.BACKEND, elapsed)
    except OSError as exc:
        print(f"sim: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"{args.scenario}: {len(result.rows)} rows in {elapsed:.1f} s -> {csv_path}, {gp_path}")
    return EXIT_OK


def _cmd_list(args) -> int:
    for sc in scenarios.SCENARIOS.values():
        print(f"{sc.name:22s} {sc.description}")
    return EXIT_OK


def _cmd_check(args) -> int:
    print(f"backend: {_backend.BACKEND}")
    with _mapper(args.jobs) as map_fn:
        results = acceptance.run_all(acceptance.Sweeps(map_fn=map_fn), report=lambda line: print(line, flush=True))
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed" + (f"; failing: {', '.join(failed)}" if failed else ""))
    return EXIT_PHYSICS if failed else EXIT_OK


def _cmd_emit(args) -> int:
    sys.stdout.write(emit_config(_load(args.config)))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "jobs", 1) < 1:
        print("sim: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    handler = {"run": _cmd_run, "list": _cmd_list, "check": _cmd_check, "emit-config": _cmd_emit}[args.command]
    try:
        return handler(args)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"sim: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
