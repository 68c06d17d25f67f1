#!/usr/bin/env python3
"""Fact-check the recurrence prediction against simulated greedy runs.

Writes <output-dir>/sweep.csv with both the predicted stopping point and the
observed mean/min/max of the process over --trials seeded runs, for
(delta, lambda) in {(1,1), (2,2)} across a range of n. The full grid takes
roughly ten minutes on one core; --fast caps n at 2^12.
"""

import argparse
import json
import sys
from pathlib import Path

from monocount import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--output-dir", default="results/reality_sweep")
    parser.add_argument("--fast", action="store_true", help="small grid, quick run")
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--master-seed", type=int, default=20260808)
    args = parser.parse_args()

    top = 13 if args.fast else 17
    config = {
        "n_list": [2**k for k in range(10, top, 2)],
        "delta_list": [1, 2],
        "lambda_list": [1, 2],
        "trials": args.trials,
        "master_seed": args.master_seed,
        "sim_cap": 1 << 20,
        "output_dir": args.output_dir,
    }
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    config_path = out / "config.json"
    config_path.write_text(json.dumps(config, indent=2) + "\n")
    return cli.main(["sweep", str(config_path)])


if __name__ == "__main__":
    sys.exit(main())
