#!/usr/bin/env python3
"""Sweep the prediction grid against the closed-form bound.

Writes <output-dir>/sweep.csv with one row per (n, delta, lambda) point,
predictions and bound populated, observations empty above the simulation
cap. The default grid matches the published comparison figures (fixed
lambda = 1 with growing delta, fixed delta = 1 with growing lambda, and the
delta x lambda corner combinations); --fast shrinks it to a smoke-scale run.
"""

import argparse
import json
import sys
from pathlib import Path

from monocount import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--output-dir", default="results/bound_sweep")
    parser.add_argument("--fast", action="store_true", help="small grid, quick run")
    parser.add_argument("--master-seed", type=int, default=1)
    args = parser.parse_args()

    if args.fast:
        n_list = [2**k for k in range(8, 15, 2)]
    else:
        n_list = [2**k for k in range(8, 25, 2)]
    config = {
        "n_list": n_list,
        "delta_list": [1, 2, 2048],
        "lambda_list": [1, 2, 4],
        "trials": 1,
        "master_seed": args.master_seed,
        "sim_cap": 0,  # prediction-only sweep: no simulation rows
        "output_dir": args.output_dir,
    }
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    config_path = out / "config.json"
    config_path.write_text(json.dumps(config, indent=2) + "\n")
    return cli.main(["sweep", str(config_path)])


if __name__ == "__main__":
    sys.exit(main())
