import assert from "node:assert/strict";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { test } from "node:test";

import { main } from "../src/cli.js";
import { parseSweep, SWEEP_COLUMNS, SweepRow } from "../src/csv.js";
import { plotPredictionVsBound, plotPredictionVsObserved } from "../src/plots.js";

const HEADER = SWEEP_COLUMNS.join(",");
const tmp = mkdtempSync(join(tmpdir(), "figures-"));

function makeRows(text: string): SweepRow[] {
  return parseSweep(`${HEADER}\n${text}`);
}

const BOUND_TABLE = makeRows(
  [
    "256,1,1,30,46,,,,1,1,",
    "1024,1,1,93,134.4,,,,1,1,",
    "4096,1,1,294,432.2,,,,1,1,",
    "256,2,1,37,62,,,,1,1,",
    "1024,2,1,118,236.8,,,,1,1,",
    "4096,2,1,385,773.3,,,,1,1,",
  ].join("\n"),
);

const OBSERVED_TABLE = makeRows(
  [
    "1024,1,1,104,134.4,103.2,98,109,100,7,",
    "4096,1,1,294,432.2,292.8,287,300,100,7,",
    "16384,1,1,789,1289.8,791.1,784,799,100,7,",
  ].join("\n"),
);

test("bound plot: series per group plus dashed bound, no warnings", () => {
  const out = join(tmp, "bound.svg");
  const svg = plotPredictionVsBound(BOUND_TABLE, "delta", out);
  assert.equal(readFileSync(out, "utf8"), svg);
  assert.match(svg, /data-series="pred delta=1 lambda=1"/);
  assert.match(svg, /data-series="bound delta=1 lambda=1"/);
  assert.match(svg, /data-series="pred delta=2 lambda=1"/);
  assert.doesNotMatch(svg, /warning-marker/);
  assert.match(svg, /stroke-dasharray/);
});

test("bound plot: larger delta curves sit above smaller at top n", () => {
  const svg = plotPredictionVsBound(BOUND_TABLE, "delta", join(tmp, "b2.svg"));
  const lastY = (key: string): number => {
    const match = svg.match(new RegExp(`<path d="([^"]+)"[^>]*data-series="${key}"`));
    assert.ok(match, `series ${key} missing`);
    const coords = match![1]!.replace(/[ML]/g, "").trim().split(/\s+/);
    return Number(coords[coords.length - 1]!.split(",")[1]);
  };
  // larger stopping points render at smaller y pixels (higher on the chart)
  assert.ok(lastY("pred delta=2 lambda=1") < lastY("pred delta=1 lambda=1"));
});

test("bound plot: a dominated-violation point gets a warning marker", () => {
  const rows = makeRows("256,1,1,30,46,,,,1,1,\n1024,1,1,93,80,,,,1,1,");
  const svg = plotPredictionVsBound(rows, "delta", join(tmp, "warn.svg"));
  assert.match(svg, /class="warning-marker"/);
  assert.match(svg, /data-warnings="1"/);
  assert.match(svg, /bound 80 below prediction 93 at n=1024/);
});

test("bound plot: single-row table renders a point chart", () => {
  const rows = makeRows("1024,1,1,93,134.4,,,,1,1,");
  const svg = plotPredictionVsBound(rows, "delta", join(tmp, "single.svg"));
  assert.match(svg, /data-series-point="pred delta=1 lambda=1"/);
});

test("bound plot: rejects duplicate n within a group", () => {
  const rows = makeRows("256,1,1,30,46,,,,1,1,\n256,1,1,30,46,,,,1,1,");
  assert.throws(
    () => plotPredictionVsBound(rows, "delta", join(tmp, "dup.svg")),
    /strictly increasing/,
  );
});

test("observed plot: gap annotation and whiskers", () => {
  const out = join(tmp, "obs.svg");
  const svg = plotPredictionVsObserved(OBSERVED_TABLE, out);
  assert.match(svg, /data-series="obs-mean delta=1 lambda=1"/);
  assert.match(svg, /data-series="obs-range delta=1 lambda=1 n=1024"/);
  const gap = Number(svg.match(/data-gap="([0-9.]+)"/)![1]);
  // worst relative gap in the table is |103.2-104|/104
  assert.ok(Math.abs(gap - Math.abs(103.2 - 104) / 104) < 1e-6);
});

test("observed plot: identical curves annotate a zero gap", () => {
  const rows = makeRows("1024,1,1,100,134,100,95,105,100,7,");
  const svg = plotPredictionVsObserved(rows, join(tmp, "zero.svg"));
  assert.match(svg, /data-gap="0.000000"/);
});

test("observed plot: empty observation columns give a clean error", () => {
  assert.throws(
    () => plotPredictionVsObserved(BOUND_TABLE, join(tmp, "noobs.svg")),
    /obs_mean/,
  );
});

test("rendering is deterministic", () => {
  const a = plotPredictionVsBound(BOUND_TABLE, "delta", join(tmp, "d1.svg"));
  const b = plotPredictionVsBound(BOUND_TABLE, "delta", join(tmp, "d2.svg"));
  assert.equal(a, b);
  assert.equal(
    readFileSync(join(tmp, "d1.svg"), "utf8"),
    readFileSync(join(tmp, "d2.svg"), "utf8"),
  );
});

test("cli: renders both kinds and errors cleanly", () => {
  const csvPath = join(tmp, "table.csv");
  const lines = [
    "1024,1,1,104,134.4,103.2,98,109,100,7,",
    "4096,1,1,294,432.2,292.8,287,300,100,7,",
  ];
  writeFileSync(csvPath, `${HEADER}\n${lines.join("\n")}\n`);
  assert.equal(main([csvPath, "--kind", "bound", "-o", join(tmp, "c1.svg")]), 0);
  assert.equal(main([csvPath, "--kind", "observed", "-o", join(tmp, "c2.svg")]), 0);
  assert.equal(main([csvPath, "--kind", "nope", "-o", join(tmp, "c3.svg")]), 1);
  assert.equal(main(["/does/not/exist.csv", "--kind", "bound", "-o", join(tmp, "c4.svg")]), 1);
  assert.equal(main([csvPath, "--kind", "bound"]), 1); // missing -o
});
