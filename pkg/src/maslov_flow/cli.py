"""Command line entry point: ``maslov-flow run <config.json>``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .config import ConfigError, RunSettings, build_task, load_config, parse_config
from .errors import ContractViolation

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3


def _execute(data: dict, settings: RunSettings, index: int):
    cfg = parse_config(data, settings)
    plan = cfg.tasks[index]
    reports = build_task(cfg, plan, settings)()
    if len(reports) == 1:
        return [(plan.ident, reports[0])]
    out = []
    for rep in reports:
        inst = rep.evidence.get("instance", {})
        out.append((f"{plan.ident}_seed{inst.get('seed')}_n{inst.get('n')}", rep))
    return out


def exit_status(reports) -> int:
    """2 if any input error, else 3 if any numerical failure, else 1 if any mismatch, else 0."""
    kinds = {r.error_kind for r in reports}
    if "input" in kinds:
        return EXIT_INPUT
    if "numerical" in kinds:
        return EXIT_NUMERICAL
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def write_csvs(csv_dir: Path, ident: str, rep) -> None:
    csv_dir.mkdir(parents=True, exist_ok=True)
    if rep.eigenflow:
        width = max(len(w) for _, w in rep.eigenflow)
        with open(csv_dir / f"eigenflow_{ident}.csv", "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["s"] + [f"lambda_{k}" for k in range(width)])
            for s, w in rep.eigenflow:
                wr.writerow([repr(float(s))] + [repr(float(x)) for x in w])
    if rep.crossings:
        with open(csv_dir / f"crossings_{ident}.csv", "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["t", "dim", "signature", "regular"])
            for c in rep.crossings:
                wr.writerow([repr(float(c.t_star)), c.dim, c.signature, int(c.regular)])


def run_config(path, report=None, csv_dir=None, settings: RunSettings | None = None, jobs: int = 1,
               stream=None):
    """Run every task in a configuration file.

    Returns ``(status, [(ident, VerificationReport), ...])``. Parse errors
    give status 2 and an empty list; the diagnostic goes to ``stream``.
    """
    settings = settings or RunSettings()
    stream = stream if stream is not None else sys.stderr
    if csv_dir is not None and settings.eigen_samples == 0:
        settings.eigen_samples = 21
    try:
        data = load_config(path)
        cfg = parse_config(data, settings)
    except (ConfigError, ContractViolation, OSError) as exc:
        print(f"maslov-flow: {exc}", file=stream)
        return EXIT_INPUT, []
    idx = range(len(cfg.tasks))
    if jobs > 1 and len(cfg.tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_execute, [data] * len(idx), [settings] * len(idx), idx))
    else:
        chunks = [_execute(data, settings, i) for i in idx]
    results = [item for chunk in chunks for item in chunk]
    if report is not None:
        body = [dict(id=ident, **rep.to_dict()) for ident, rep in results]
        Path(report).write_text(json.dumps(body, indent=2, sort_keys=True) + "\n")
    if csv_dir is not None:
        for ident, rep in results:
            write_csvs(Path(csv_dir), ident, rep)
    return exit_status([r for _, r in results]), results


def _summary_line(ident, rep) -> str:
    if rep.error is not None:
        return f"ERROR {ident}: {rep.error}"
    return f"{'PASS' if rep.passed else 'FAIL'}  {ident}: lhs={rep.lhs} rhs={rep.rhs}"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="maslov-flow", description="Verify Maslov index and spectral flow identities.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run the tasks in a JSON configuration")
    run.add_argument("config", help="path to the configuration file")
    run.add_argument("--report", help="write the JSON report here")
    run.add_argument("--csv-dir", help="write eigenflow_<task>.csv and crossings_<task>.csv here")
    run.add_argument("--tol-rank", type=float, help="rank tolerance (default 1e-8)")
    run.add_argument("--tol-eig", type=float, help="eigenvalue zero tolerance (default 1e-7)")
    run.add_argument("--mesh", type=int, help="starting Galerkin mesh (default 64)")
    run.add_argument("--seed", type=int, help="seed for randomized suites")
    run.add_argument("--jobs", type=int, default=1, help="worker processes for independent tasks")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("tol_rank", "tol_eig", "mesh"):
        v = getattr(args, name)
        if v is not None and v <= 0:
            print(f"maslov-flow: --{name.replace('_', '-')} must be positive", file=sys.stderr)
            return EXIT_INPUT
    if args.jobs < 1:
        print("maslov-flow: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    settings = RunSettings(args.tol_rank, args.tol_eig, args.mesh, args.seed)
    status, results = run_config(args.config, args.report, args.csv_dir, settings, args.jobs)
    for ident, rep in results:
        print(_summary_line(ident, rep))
    return status


if __name__ == "__main__":
    sys.exit(main())
