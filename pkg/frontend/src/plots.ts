/**
 * The two figure kinds over sweep tables: predictions against the
 * closed-form bound, and predictions against observed process statistics.
 */

import { writeFileSync } from "node:fs";

import { Annotation, Marker, PALETTE, renderChart, Series } from "./chart.js";
import { SchemaError, SweepRow } from "./csv.js";

export type GroupBy = "delta" | "lambda";

function groupKey(row: SweepRow): string {
  return `delta=${row.delta} lambda=${row.lambda}`;
}

function groupRows(rows: SweepRow[], orderBy: GroupBy): Map<string, SweepRow[]> {
  const sorted = [...rows].sort((a, b) => {
    const primary = orderBy === "delta" ? a.delta - b.delta : a.lambda - b.lambda;
    const secondary = orderBy === "delta" ? a.lambda - b.lambda : a.delta - b.delta;
    return primary || secondary || a.n - b.n;
  });
  const groups = new Map<string, SweepRow[]>();
  for (const row of sorted) {
    const key = groupKey(row);
    const bucket = groups.get(key);
    if (bucket) {
      bucket.push(row);
    } else {
      groups.set(key, [row]);
    }
  }
  for (const [key, bucket] of groups) {
    for (let i = 1; i < bucket.length; i++) {
      if (bucket[i]!.n <= bucket[i - 1]!.n) {
        throw new SchemaError(
          `group ${key}: n must be strictly increasing (saw ${bucket[i - 1]!.n} then ${bucket[i]!.n})`,
        );
      }
    }
  }
  return groups;
}

/** Prediction series with a dashed bound twin per (delta, lambda) group;
 * any point where the bound drops below the prediction gets a warning
 * marker instead of silently passing. */
export function plotPredictionVsBound(
  rows: SweepRow[],
  groupBy: GroupBy,
  outPath: string,
): string {
  if (rows.length === 0) {
    throw new SchemaError("empty table");
  }
  const usable = rows.filter((r) => r.error === "");
  const missing = usable.find((r) => r.i_stop_pred === null || r.bound === null);
  if (missing) {
    throw new SchemaError(
      `row n=${missing.n} ${groupKey(missing)}: missing column value: i_stop_pred/bound`,
    );
  }
  const groups = groupRows(usable, groupBy);
  const series: Series[] = [];
  const warnings: Marker[] = [];
  let index = 0;
  for (const [key, bucket] of groups) {
    const color = PALETTE[index % PALETTE.length]!;
    index++;
    series.push({
      key: `pred ${key}`,
      label: `prediction ${key}`,
      color,
      points: bucket.map((r) => ({ x: r.n, y: r.i_stop_pred! })),
    });
    series.push({
      key: `bound ${key}`,
      label: `bound ${key}`,
      color,
      dashed: true,
      points: bucket.map((r) => ({ x: r.n, y: r.bound! })),
    });
    for (const r of bucket) {
      if (r.bound! < r.i_stop_pred!) {
        warnings.push({
          x: r.n,
          y: r.i_stop_pred!,
          note: `bound ${r.bound} below prediction ${r.i_stop_pred} at n=${r.n} ${key}`,
        });
      }
    }
  }
  const annotations: Annotation[] = [];
  if (warnings.length > 0) {
    annotations.push({
      text: `WARNING: bound below prediction at ${warnings.length} point(s)`,
      data: { warnings: String(warnings.length) },
    });
  }
  const svg = renderChart({
    title: `Predicted stopping point vs closed-form bound (grouped by ${groupBy})`,
    series,
    warnings,
    annotations,
  });
  writeFileSync(outPath, svg);
  return svg;
}

/** Predicted mean, observed mean, and the observed min/max envelope per
 * (delta, lambda); annotated with the worst relative gap between the
 * predicted and observed means. */
export function plotPredictionVsObserved(rows: SweepRow[], outPath: string): string {
  if (rows.length === 0) {
    throw new SchemaError("empty table");
  }
  const populated = rows.filter((r) => r.error === "" && r.obs_mean !== null);
  if (populated.length === 0) {
    throw new SchemaError("missing column values: obs_mean/obs_min/obs_max are all empty");
  }
  const broken = populated.find(
    (r) => r.obs_min === null || r.obs_max === null || r.i_stop_pred === null,
  );
  if (broken) {
    throw new SchemaError(
      `row n=${broken.n} ${groupKey(broken)}: missing column value: obs_min/obs_max/i_stop_pred`,
    );
  }
  const groups = groupRows(populated, "delta");
  const series: Series[] = [];
  let index = 0;
  let worstGap = 0;
  for (const [key, bucket] of groups) {
    const color = PALETTE[index % PALETTE.length]!;
    index++;
    series.push({
      key: `pred ${key}`,
      label: `predicted ${key}`,
      color,
      points: bucket.map((r) => ({ x: r.n, y: r.i_stop_pred! })),
    });
    series.push({
      key: `obs-mean ${key}`,
      label: `observed mean ${key}`,
      color,
      dashed: true,
      points: bucket.map((r) => ({ x: r.n, y: r.obs_mean! })),
    });
    // observed spread: one unlabeled vertical whisker per grid point
    for (const r of bucket) {
      series.push({
        key: `obs-range ${key} n=${r.n}`,
        label: "",
        color: "#999999",
        points: [
          { x: r.n, y: r.obs_min! },
          { x: r.n, y: r.obs_max! },
        ],
      });
    }
    for (const r of bucket) {
      worstGap = Math.max(worstGap, Math.abs(r.obs_mean! - r.i_stop_pred!) / r.i_stop_pred!);
    }
  }
  const annotations: Annotation[] = [
    {
      text: `max |observed mean - predicted| / predicted = ${(worstGap * 100).toFixed(2)}%`,
      data: { gap: worstGap.toFixed(6) },
    },
  ];
  const svg = renderChart({
    title: "Predicted stopping point vs observed greedy runs",
    series,
    warnings: [],
    annotations,
  });
  writeFileSync(outPath, svg);
  return svg;
}
