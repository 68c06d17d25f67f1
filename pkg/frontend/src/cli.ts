#!/usr/bin/env node
/**
 * figures <csv> --kind {bound|observed} -o <path> [--group-by {delta|lambda}]
 *
 * Reads a harness sweep.csv and writes an SVG chart. Exit codes: 0 success,
 * 1 usage or schema error.
 */

import { readFileSync } from "node:fs";

import { parseSweep, SchemaError } from "./csv.js";
import { GroupBy, plotPredictionVsBound, plotPredictionVsObserved } from "./plots.js";

const USAGE =
  "usage: figures <sweep.csv> --kind {bound|observed} -o <out.svg> [--group-by {delta|lambda}]";

interface Args {
  input: string;
  kind: "bound" | "observed";
  out: string;
  groupBy: GroupBy;
}

export function parseArgs(argv: string[]): Args {
  let input: string | undefined;
  let kind: string | undefined;
  let out: string | undefined;
  let groupBy: string = "delta";
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i]!;
    if (arg === "--kind") {
      kind = argv[++i];
    } else if (arg === "-o" || arg === "--out") {
      out = argv[++i];
    } else if (arg === "--group-by") {
      groupBy = argv[++i] ?? "";
    } else if (arg.startsWith("-")) {
      throw new Error(`unknown option: ${arg}`);
    } else if (input === undefined) {
      input = arg;
    } else {
      throw new Error(`unexpected argument: ${arg}`);
    }
  }
  if (!input || !out || (kind !== "bound" && kind !== "observed")) {
    throw new Error(USAGE);
  }
  if (groupBy !== "delta" && groupBy !== "lambda") {
    throw new Error(`--group-by must be delta or lambda, got ${groupBy}`);
  }
  return { input, kind, out, groupBy };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error((err as Error).message);
    return 1;
  }
  try {
    const rows = parseSweep(readFileSync(args.input, "utf8"));
    if (args.kind === "bound") {
      plotPredictionVsBound(rows, args.groupBy, args.out);
    } else {
      plotPredictionVsObserved(rows, args.out);
    }
    console.log(args.out);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
    } else if ((err as NodeJS.ErrnoException).code === "ENOENT") {
      console.error(`no such file: ${args.input}`);
    } else {
      console.error((err as Error).message);
    }
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
