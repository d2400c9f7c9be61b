/**
 * Selected-rationality trace: mean beta chosen by each expected-metric
 * strategy at every training step, with a +/- one standard deviation band.
 */

import { parseCsv, requireColumns, numericColumn, type Table } from "./csv.js";
import {
  axes,
  bandPath,
  escapeText,
  fmt,
  linearScale,
  polylinePath,
  SERIES_COLORS,
  svgDocument,
} from "./svg.js";

const PANEL_W = 420;
const PANEL_H = 300;
const MARGIN = { left: 64, right: 160, top: 40, bottom: 56 };

interface TraceSeries {
  label: string;
  steps: number[];
  mean: number[];
  std: number[];
}

function collect(table: Table): TraceSeries[] {
  const cols = requireColumns(table, ["metric", "step", "mean_beta", "std_beta"]);
  const step = numericColumn(table, cols.get("step")!, "step");
  const mean = numericColumn(table, cols.get("mean_beta")!, "mean_beta");
  const std = numericColumn(table, cols.get("std_beta")!, "std_beta");
  const byLabel = new Map<string, TraceSeries>();
  table.rows.forEach((row, r) => {
    const label = row[cols.get("metric")!];
    if (!byLabel.has(label)) {
      byLabel.set(label, { label, steps: [], mean: [], std: [] });
    }
    const series = byLabel.get(label)!;
    series.steps.push(step[r]);
    series.mean.push(mean[r]);
    series.std.push(std[r]);
  });
  return [...byLabel.values()];
}

export function renderTrace(csvText: string): string {
  const seriesList = collect(parseCsv(csvText));
  const maxStep = Math.max(...seriesList.flatMap((s) => s.steps));
  const maxY = Math.max(...seriesList.flatMap((s) => s.mean.map((m, i) => m + s.std[i])));
  const xScale = linearScale([0, maxStep], [MARGIN.left, MARGIN.left + PANEL_W]);
  const yScale = linearScale([0, maxY * 1.05], [MARGIN.top + PANEL_H, MARGIN.top]);
  const parts: string[] = [];
  parts.push(
    `<text x="${fmt(MARGIN.left + PANEL_W / 2)}" y="${fmt(MARGIN.top - 10)}" font-size="13" text-anchor="middle">selected teacher rationality over training</text>`,
  );
  seriesList.forEach((series, s) => {
    const color = SERIES_COLORS[s % SERIES_COLORS.length];
    const xs = series.steps.map(xScale);
    const upper = series.mean.map((m, i) => yScale(Math.min(maxY * 1.05, m + series.std[i])));
    const lower = series.mean.map((m, i) => yScale(Math.max(0, m - series.std[i])));
    parts.push(
      `<path d="${bandPath(xs, upper, lower)}" fill="${color}" fill-opacity="0.15" stroke="none"/>`,
      `<path d="${polylinePath(xs, series.mean.map(yScale))}" fill="none" stroke="${color}" stroke-width="1.8"/>`,
    );
    const legendY = MARGIN.top + 14 + s * 18;
    const legendX = MARGIN.left + PANEL_W + 20;
    parts.push(
      `<line x1="${fmt(legendX)}" y1="${fmt(legendY)}" x2="${fmt(legendX + 18)}" y2="${fmt(legendY)}" stroke="${color}" stroke-width="2"/>`,
      `<text x="${fmt(legendX + 24)}" y="${fmt(legendY + 4)}" font-size="11">${escapeText(`selection metric: ${series.label}`)}</text>`,
    );
  });
  parts.push(axes(xScale, yScale, { x: "step", y: "selected beta" }, 0));
  const width = MARGIN.left + PANEL_W + MARGIN.right;
  const height = MARGIN.top + PANEL_H + MARGIN.bottom;
  return svgDocument(width, height, parts.join("\n"));
}
