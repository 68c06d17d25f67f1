/**
 * Minimal deterministic SVG line charts: log2-scaled n on x, log10 y.
 * Fixed geometry and styles, no timestamps; the same input always renders
 * byte-identical output. Series, warning markers, and annotations carry
 * data-* attributes so tests can assert on the rendered content.
 */

export interface Point {
  x: number; // n (plotted at log2 n)
  y: number; // positive value (plotted at log10 y)
}

export interface Series {
  key: string; // stable identifier, e.g. "pred delta=1 lambda=2"
  label: string;
  points: Point[];
  dashed?: boolean;
  color: string;
}

export interface Marker {
  x: number;
  y: number;
  note: string;
}

export interface Annotation {
  text: string;
  data: Record<string, string>;
}

export interface ChartSpec {
  title: string;
  series: Series[];
  warnings: Marker[];
  annotations: Annotation[];
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#bcbd22",
  "#7f7f7f",
];

const WIDTH = 960;
const HEIGHT = 560;
const MARGIN = { left: 70, right: 260, top: 50, bottom: 55 };

const fmt = (value: number): string => {
  const rounded = Math.round(value * 100) / 100;
  return Object.is(rounded, -0) ? "0" : String(rounded);
};

function niceLog2Label(n: number): string {
  const k = Math.log2(n);
  return Number.isInteger(k) ? `2^${k}` : String(n);
}

export function renderChart(spec: ChartSpec): string {
  const xs = spec.series.flatMap((s) => s.points.map((p) => Math.log2(p.x)));
  const ys = spec.series.flatMap((s) => s.points.map((p) => Math.log10(p.y)));
  if (xs.length === 0) {
    throw new Error("nothing to plot: every series is empty");
  }
  if (ys.some((y) => !Number.isFinite(y))) {
    throw new Error("values must be positive for the log-scaled axis");
  }
  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  let yLo = Math.floor(Math.min(...ys));
  let yHi = Math.ceil(Math.max(...ys));
  if (xLo === xHi) {
    xLo -= 1;
    xHi += 1;
  }
  if (yLo === yHi) {
    yHi += 1;
  }
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const px = (n: number) =>
    MARGIN.left + ((Math.log2(n) - xLo) / (xHi - xLo)) * plotW;
  const py = (v: number) =>
    MARGIN.top + plotH - ((Math.log10(v) - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${MARGIN.left}" y="28" font-size="17" fill="#111">${spec.title}</text>`,
  );

  // axes
  const axisY = MARGIN.top + plotH;
  parts.push(
    `<line x1="${MARGIN.left}" y1="${axisY}" x2="${MARGIN.left + plotW}" y2="${axisY}" stroke="#333" stroke-width="1"/>`,
  );
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${axisY}" stroke="#333" stroke-width="1"/>`,
  );

  const xTicks = [...new Set(spec.series.flatMap((s) => s.points.map((p) => p.x)))].sort(
    (a, b) => a - b,
  );
  for (const n of xTicks) {
    const x = fmt(px(n));
    parts.push(
      `<line x1="${x}" y1="${axisY}" x2="${x}" y2="${axisY + 5}" stroke="#333"/>`,
    );
    parts.push(
      `<text x="${x}" y="${axisY + 20}" font-size="11" text-anchor="middle" fill="#333">${niceLog2Label(n)}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" font-size="13" text-anchor="middle" fill="#333">n (log scale)</text>`,
  );
  for (let k = yLo; k <= yHi; k++) {
    const y = fmt(py(10 ** k));
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${y}" x2="${MARGIN.left}" y2="${y}" stroke="#333"/>`,
    );
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" y2="${y}" stroke="#eee"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 9}" y="${fmt(py(10 ** k) + 4)}" font-size="11" text-anchor="end" fill="#333">1e${k}</text>`,
    );
  }

  // series
  for (const series of spec.series) {
    const coords = series.points.map((p) => `${fmt(px(p.x))},${fmt(py(p.y))}`);
    const dash = series.dashed ? ' stroke-dasharray="7 5"' : "";
    if (coords.length > 1) {
      parts.push(
        `<path d="M ${coords.join(" L ")}" fill="none" stroke="${series.color}" stroke-width="1.8"${dash} data-series="${series.key}"/>`,
      );
    }
    for (const p of series.points) {
      parts.push(
        `<circle cx="${fmt(px(p.x))}" cy="${fmt(py(p.y))}" r="2.6" fill="${series.color}" data-series-point="${series.key}"/>`,
      );
    }
  }

  // warning markers: points where the bound fails to dominate
  for (const w of spec.warnings) {
    const x = px(w.x);
    const y = py(w.y);
    parts.push(
      `<g class="warning-marker" data-note="${w.note}">` +
        `<line x1="${fmt(x - 6)}" y1="${fmt(y - 6)}" x2="${fmt(x + 6)}" y2="${fmt(y + 6)}" stroke="#c00" stroke-width="2.5"/>` +
        `<line x1="${fmt(x - 6)}" y1="${fmt(y + 6)}" x2="${fmt(x + 6)}" y2="${fmt(y - 6)}" stroke="#c00" stroke-width="2.5"/>` +
        `</g>`,
    );
  }

  // legend (labelled series only; whisker helpers stay unlabelled)
  const legendX = MARGIN.left + plotW + 18;
  let legendRow = 0;
  for (const series of spec.series) {
    if (!series.label) {
      continue;
    }
    const y = MARGIN.top + 8 + legendRow * 20;
    legendRow++;
    const dash = series.dashed ? ' stroke-dasharray="7 5"' : "";
    parts.push(
      `<line x1="${legendX}" y1="${y}" x2="${legendX + 26}" y2="${y}" stroke="${series.color}" stroke-width="2"${dash}/>`,
    );
    parts.push(
      `<text x="${legendX + 32}" y="${y + 4}" font-size="12" fill="#111">${series.label}</text>`,
    );
  }

  // annotations (top-right block)
  spec.annotations.forEach((a, i) => {
    const attrs = Object.entries(a.data)
      .map(([k, v]) => ` data-${k}="${v}"`)
      .join("");
    parts.push(
      `<text class="annotation" x="${WIDTH - 14}" y="${24 + i * 18}" font-size="12" text-anchor="end" fill="#444"${attrs}>${a.text}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
