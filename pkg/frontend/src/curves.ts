/**
 * Strategy-comparison curves: per-step mean of each belief-error metric with
 * a +/- one standard deviation band, one panel per metric, one series per
 * teacher-selection strategy.
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

const PANEL_W = 360;
const PANEL_H = 280;
const MARGIN = { left: 64, right: 16, top: 40, bottom: 56 };
const PANEL_GAP = 70;

interface Series {
  label: string;
  steps: number[];
  mean: number[];
  std: number[];
}

function collect(table: Table, meanCol: string, stdCol: string): Series[] {
  const cols = requireColumns(table, ["strategy", "step", meanCol, stdCol]);
  const step = numericColumn(table, cols.get("step")!, "step");
  const mean = numericColumn(table, cols.get(meanCol)!, meanCol);
  const std = numericColumn(table, cols.get(stdCol)!, stdCol);
  const byLabel = new Map<string, Series>();
  table.rows.forEach((row, r) => {
    const label = row[cols.get("strategy")!];
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

function panel(seriesList: Series[], title: string, yLabel: string, originX: number): string {
  const maxStep = Math.max(...seriesList.flatMap((s) => s.steps));
  const maxY = Math.max(...seriesList.flatMap((s) => s.mean.map((m, i) => m + s.std[i])));
  const xScale = linearScale([0, maxStep], [originX, originX + PANEL_W]);
  const yScale = linearScale([0, maxY * 1.05], [MARGIN.top + PANEL_H, MARGIN.top]);
  const parts: string[] = [];
  parts.push(
    `<text x="${fmt(originX + PANEL_W / 2)}" y="${fmt(MARGIN.top - 10)}" font-size="13" text-anchor="middle">${escapeText(title)}</text>`,
  );
  seriesList.forEach((series, s) => {
    const color = SERIES_COLORS[s % SERIES_COLORS.length];
    const xs = series.steps.map(xScale);
    const upper = series.mean.map((m, i) => yScale(Math.min(maxY * 1.05, m + series.std[i])));
    const lower = series.mean.map((m, i) => yScale(Math.max(0, m - series.std[i])));
    parts.push(
      `<path d="${bandPath(xs, upper, lower)}" fill="${color}" fill-opacity="0.15" stroke="none"/>`,
      `<path d="${polylinePath(xs, series.mean.map(yScale))}" fill="none" stroke="${color}" stroke-width="1.6"/>`,
    );
  });
  parts.push(axes(xScale, yScale, { x: "step", y: yLabel }, 0));
  return parts.join("\n");
}

function legend(seriesList: Series[], originX: number, originY: number): string {
  const parts: string[] = [];
  seriesList.forEach((series, s) => {
    const y = originY + s * 16;
    const color = SERIES_COLORS[s % SERIES_COLORS.length];
    parts.push(
      `<line x1="${fmt(originX)}" y1="${fmt(y)}" x2="${fmt(originX + 18)}" y2="${fmt(y)}" stroke="${color}" stroke-width="2"/>`,
      `<text x="${fmt(originX + 24)}" y="${fmt(y + 4)}" font-size="11">${escapeText(series.label)}</text>`,
    );
  });
  return parts.join("\n");
}

export function renderCurves(csvText: string): string {
  const table = parseCsv(csvText);
  const mseSeries = collect(table, "mean_mse", "std_mse");
  const llSeries = collect(table, "mean_ll", "std_ll");
  const secondX = MARGIN.left + PANEL_W + PANEL_GAP;
  const legendX = secondX + PANEL_W + 24;
  const width = legendX + 150 + MARGIN.right;
  const height = MARGIN.top + PANEL_H + MARGIN.bottom;
  const body = [
    panel(mseSeries, "belief error over training (squared error)", "mean squared error", MARGIN.left),
    panel(llSeries, "belief error over training (log loss)", "log loss", secondX),
    legend(mseSeries, legendX, MARGIN.top + 10),
  ].join("\n");
  return svgDocument(width, height, body);
}
