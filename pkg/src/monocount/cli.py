"""Command-line harness: generate, count, predict, simulate, sweep, selfcheck.

Exit codes: 0 success, 1 usage or parse error, 2 internal inconsistency
(including selfcheck failures), 3 oracle limit exceeded. Every seeded
subcommand accepts an explicit seed; omitting it picks a fresh one and
prints it on stderr so any run can be reproduced after the fact.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import secrets
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .counting import count_with_stats, truncated_unsat, write_ledger_csv
from .dimacs import read_dimacs_file, write_dimacs_file
from .errors import DimacsParseError, InternalInconsistencyError, LimitExceededError
from .formula import Formula, clause
from .generate import (
    GenParams,
    SplitMix64,
    clause_length,
    derive_seed,
    random_clause,
    random_formula,
)
from .oracle import brute_force_ledger, brute_force_models
from .predictor import fmt_number, predict_istop, result_line, write_trace_csv
from .sampler import (
    sample_summary,
    sample_trials,
    summarize,
    summary_row,
    write_summary_csv,
    write_trials_csv,
)

SWEEP_COLUMNS = [
    "n",
    "delta",
    "lambda",
    "i_stop_pred",
    "bound",
    "obs_mean",
    "obs_min",
    "obs_max",
    "trials",
    "master_seed",
    "error",
]

_SWEEP_KEYS = {
    "n_list",
    "delta_list",
    "lambda_list",
    "trials",
    "master_seed",
    "sim_cap",
    "output_dir",
}

DEFAULT_SIM_CAP = 1 << 20


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _default_threads() -> int:
    env = os.environ.get("MONOCOUNT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _resolve_seed(seed) -> int:
    if seed is not None:
        return seed
    fresh = secrets.randbits(63)
    print(f"seed: {fresh}", file=sys.stderr)
    return fresh


def cmd_count(args) -> int:
    f = read_dimacs_file(args.input)
    t0 = time.perf_counter()
    count, stats, ledger = count_with_stats(f, workers=args.threads)
    elapsed = time.perf_counter() - t0
    print(count)
    if args.stats:
        print(
            f"stats: ledger_entries={stats.ledger_entries}"
            f" monotone_subformulae={stats.total_subformulae}"
            f" max_subformula_size={stats.max_subformula_size}"
            f" wall_seconds={elapsed:.3f}",
            file=sys.stderr,
        )
    if args.ledger_out:
        write_ledger_csv(ledger, args.ledger_out)
    return 0


def cmd_generate(args) -> int:
    seed = _resolve_seed(args.seed)
    params = GenParams(
        n=args.n,
        delta=args.delta,
        lam=args.lam,
        seed=seed,
        k_up=args.k_up,
        distinct=args.distinct,
    )
    write_dimacs_file(random_formula(params), args.out)
    return 0


def cmd_predict(args) -> int:
    result = predict_istop(args.n, args.delta, args.lam, keep_trace=bool(args.trace_out))
    print(result_line(result))
    if args.trace_out:
        write_trace_csv(result, args.trace_out)
    return 0


def cmd_psi(args) -> int:
    seed = _resolve_seed(args.master_seed)
    outcomes = sample_trials(
        args.n,
        args.delta,
        args.lam,
        args.trials,
        seed,
        workers=args.threads,
        materialize=args.materialize,
        distinct=args.distinct,
    )
    summary = summarize(args.n, args.delta, args.lam, seed, outcomes)
    print(",".join(summary_row(summary)))
    if args.trials_csv:
        write_trials_csv(outcomes, args.trials_csv)
    if args.summary_csv:
        write_summary_csv(summary, args.summary_csv)
    return 0


@dataclass(frozen=True)
class SweepConfig:
    """Validated sweep grid: every (n, lambda) pair must admit a clause
    length, and the three axis lists must be nonempty."""

    n_list: list[int]
    delta_list: list[float]
    lambda_list: list[float]
    output_dir: str
    trials: int = 100
    master_seed: Optional[int] = None
    sim_cap: int = DEFAULT_SIM_CAP

    def __post_init__(self):
        for key in ("n_list", "delta_list", "lambda_list"):
            value = getattr(self, key)
            if not isinstance(value, list) or not value:
                raise ValueError(f"sweep config key {key} must be a nonempty list")
        for n in self.n_list:
            for lam in self.lambda_list:
                clause_length(n, lam)  # raises when ceil(lam log2 n) > n
        if self.trials < 1:
            raise ValueError(f"trials = {self.trials} < 1")


def _load_sweep_config(path) -> SweepConfig:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    unknown = set(raw) - _SWEEP_KEYS
    if unknown:
        raise ValueError(f"invalid sweep config keys: {sorted(unknown)}")
    for key in ("n_list", "delta_list", "lambda_list", "output_dir"):
        if key not in raw:
            raise ValueError(f"sweep config missing required key: {key}")
    return SweepConfig(**raw)


def _sweep_row_key(row: dict) -> tuple:
    return (row["n"], row["delta"], row["lambda"])


def cmd_sweep(args) -> int:
    config = _load_sweep_config(args.config)
    trials = config.trials
    master_seed = _resolve_seed(config.master_seed)
    sim_cap = config.sim_cap
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    out_path = out_dir / "sweep.csv"

    rows: dict[tuple, dict] = {}
    if out_path.exists():  # idempotent re-runs overwrite by grid key
        with open(out_path, newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                row["n"] = int(row["n"])
                row["delta"] = float(row["delta"])
                row["lambda"] = float(row["lambda"])
                rows[_sweep_row_key(row)] = row

    for n in config.n_list:
        for delta in config.delta_list:
            for lam in config.lambda_list:
                row = {
                    "n": n,
                    "delta": float(delta),
                    "lambda": float(lam),
                    "i_stop_pred": "",
                    "bound": "",
                    "obs_mean": "",
                    "obs_min": "",
                    "obs_max": "",
                    "trials": trials,
                    "master_seed": master_seed,
                    "error": "",
                }
                try:
                    pred = predict_istop(n, delta, lam, keep_trace=False)
                    row["i_stop_pred"] = pred.i_stop
                    row["bound"] = fmt_number(pred.bound)
                    if n <= sim_cap:
                        summary = sample_summary(
                            n, delta, lam, trials, master_seed, workers=args.threads
                        )
                        row["obs_mean"] = fmt_number(summary.mean)
                        row["obs_min"] = summary.min
                        row["obs_max"] = summary.max
                except (ValueError, OverflowError) as exc:
                    row["error"] = str(exc)
                rows[_sweep_row_key(row)] = row

    with open(out_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=SWEEP_COLUMNS)
        writer.writeheader()
        for key in sorted(rows):
            out_row = dict(rows[key])
            out_row["delta"] = fmt_number(out_row["delta"])
            out_row["lambda"] = fmt_number(out_row["lambda"])
            writer.writerow(out_row)
    print(out_path)
    return 0


def _selfcheck_formulas(count: int, seed: int):
    """`count` random desk-scale formulas (n <= 16, mixed density and width)
    plus the fixed edge cases, every run."""
    yield "empty", Formula(3, ())
    yield "contradictory-pair", Formula(1, (clause(1), clause(-1)))
    yield "fully-monotone", Formula(4, (clause(1, 2), clause(2, 3), clause(3, 4)))
    yield "duplicate-clauses", Formula(3, (clause(1, -2), clause(1, -2), clause(3,)))
    yield "tautological", Formula(2, (clause(1, -1), clause(2,)))
    for t in range(count):
        rng = SplitMix64(derive_seed(seed, t))
        n = 2 + rng.randbelow(15)  # n in [2, 16]
        m = rng.randbelow(13)  # m in [0, 12]
        clauses = []
        for _ in range(m):
            width = 1 + rng.randbelow(min(n, 5))
            clauses.append(random_clause(n, width, rng))
        yield f"random-{t}", Formula(n, tuple(clauses))


def cmd_selfcheck(args) -> int:
    from .counting import build_ledger, count_models

    seed = _resolve_seed(args.seed)
    count_ok = ledger_ok = bonferroni_ok = total = 0
    failures = []
    for name, f in _selfcheck_formulas(args.count, seed):
        total += 1
        expected = brute_force_models(f)
        got = count_models(f)
        if got == expected:
            count_ok += 1
        else:
            failures.append(f"{name}: count {got} != oracle {expected}")
        if build_ledger(f) == brute_force_ledger(f):
            ledger_ok += 1
        else:
            failures.append(f"{name}: ledger mismatch")
        unsat = (1 << f.n) - expected
        sandwich = True
        for r in range(1, f.m + 1):
            value = truncated_unsat(f, r).value
            if r % 2 == 1 and value < unsat:
                sandwich = False
            if r % 2 == 0 and value > unsat:
                sandwich = False
        if sandwich:
            bonferroni_ok += 1
        else:
            failures.append(f"{name}: Bonferroni sandwich violated")
    print(
        f"{count_ok}/{total} count-oracle, {ledger_ok}/{total} ledger-oracle,"
        f" {bonferroni_ok}/{total} bonferroni"
    )
    for line in failures:
        print(f"FAIL {line}", file=sys.stderr)
    if failures:
        raise InternalInconsistencyError(f"{len(failures)} selfcheck failures")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="monocount", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact model count of a DIMACS file")
    p.add_argument("input", help="DIMACS CNF path")
    p.add_argument("--stats", action="store_true", help="print enumeration stats to stderr")
    p.add_argument("--ledger-out", help="write the ledger as CSV (nu,O,E)")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("generate", help="write a seeded random instance")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--k-up", type=int, help="upper clause length (mixed-length mode)")
    p.add_argument("--distinct", action="store_true", help="reject duplicate clauses")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("predict", help="recurrence prediction of the stopping point")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--trace-out", help="write the full i,s,p,w trace as CSV")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("psi", help="simulate the greedy process")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--master-seed", type=int)
    p.add_argument("--trials-csv", help="write per-trial rows")
    p.add_argument("--summary-csv", help="write the summary row")
    p.add_argument("--materialize", action="store_true",
                   help="build the formula first, scan a shuffled order")
    p.add_argument("--distinct", action="store_true", help="reject duplicate clauses")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("sweep", help="run a parameter grid from a JSON config")
    p.add_argument("config", help="JSON with keys n_list, delta_list, lambda_list,"
                                  " trials, master_seed, sim_cap, output_dir")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("selfcheck", help="verify the counter against brute force")
    p.add_argument("--count", type=int, default=100, help="random formulas to check")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DimacsParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 2
    except LimitExceededError as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
