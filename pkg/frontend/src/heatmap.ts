/**
 * Phase-map heatmap: most informative rationality per (mu, sigma) belief,
 * one panel per metric. Cell color encodes the best beta on the shared
 * sequential scale, dark end = low beta.
 */

import { parseCsv, requireColumns, numericColumn, type Table } from "./csv.js";
import { escapeText, fmt, linearScale, sequentialColor, svgDocument, ticks } from "./svg.js";

const PANEL_W = 330;
const PANEL_H = 300;
const MARGIN = { left: 64, right: 20, top: 44, bottom: 48 };
const PANEL_GAP = 60;
const BAR_W = 16;

interface PhaseData {
  mus: number[];
  sigmas: number[];
  /** value[metricIndex][muIndex][sigmaIndex] */
  values: number[][][];
  betaMin: number;
  betaMax: number;
}

function collect(table: Table): PhaseData {
  const cols = requireColumns(table, ["mu", "sigma", "best_beta_mse", "best_beta_ll"]);
  const mu = numericColumn(table, cols.get("mu")!, "mu");
  const sigma = numericColumn(table, cols.get("sigma")!, "sigma");
  const byMetric = [
    numericColumn(table, cols.get("best_beta_mse")!, "best_beta_mse"),
    numericColumn(table, cols.get("best_beta_ll")!, "best_beta_ll"),
  ];
  const mus = [...new Set(mu)].sort((a, b) => a - b);
  const sigmas = [...new Set(sigma)].sort((a, b) => a - b);
  const muIndex = new Map(mus.map((v, i) => [v, i]));
  const sigmaIndex = new Map(sigmas.map((v, i) => [v, i]));
  const values = byMetric.map(() =>
    mus.map(() => new Array<number>(sigmas.length).fill(Number.NaN)),
  );
  for (let r = 0; r < mu.length; r++) {
    for (let m = 0; m < 2; m++) {
      values[m][muIndex.get(mu[r])!][sigmaIndex.get(sigma[r])!] = byMetric[m][r];
    }
  }
  const all = byMetric.flat();
  return {
    mus,
    sigmas,
    values,
    betaMin: Math.min(...all),
    betaMax: Math.max(...all),
  };
}

function panel(data: PhaseData, metricIndex: number, title: string, originX: number): string {
  const { mus, sigmas, values, betaMin, betaMax } = data;
  const cellW = PANEL_W / mus.length;
  const cellH = PANEL_H / sigmas.length;
  const span = betaMax - betaMin || 1;
  const parts: string[] = [];
  parts.push(
    `<text x="${fmt(originX + PANEL_W / 2)}" y="${fmt(MARGIN.top - 12)}" font-size="13" text-anchor="middle">${escapeText(title)}</text>`,
  );
  for (let i = 0; i < mus.length; i++) {
    for (let j = 0; j < sigmas.length; j++) {
      const x = originX + i * cellW;
      // sigma grows upward
      const y = MARGIN.top + PANEL_H - (j + 1) * cellH;
      const color = sequentialColor((values[metricIndex][i][j] - betaMin) / span);
      parts.push(
        `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(cellW + 0.5)}" height="${fmt(cellH + 0.5)}" fill="${color}"/>`,
      );
    }
  }
  // axis tick labels on the panel edges
  const xScale = linearScale([mus[0], mus[mus.length - 1]], [originX + cellW / 2, originX + PANEL_W - cellW / 2]);
  const yScale = linearScale(
    [sigmas[0], sigmas[sigmas.length - 1]],
    [MARGIN.top + PANEL_H - cellH / 2, MARGIN.top + cellH / 2],
  );
  for (const t of ticks(mus[0], mus[mus.length - 1])) {
    parts.push(
      `<text x="${fmt(xScale(t))}" y="${fmt(MARGIN.top + PANEL_H + 14)}" font-size="10" text-anchor="middle">${fmt(t, 1)}</text>`,
    );
  }
  for (const t of ticks(sigmas[0], sigmas[sigmas.length - 1])) {
    parts.push(
      `<text x="${fmt(originX - 6)}" y="${fmt(yScale(t) + 3)}" font-size="10" text-anchor="end">${fmt(t, 1)}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt(originX + PANEL_W / 2)}" y="${fmt(MARGIN.top + PANEL_H + 32)}" font-size="12" text-anchor="middle">belief mean</text>`,
    `<text x="${fmt(originX - 40)}" y="${fmt(MARGIN.top + PANEL_H / 2)}" font-size="12" text-anchor="middle" transform="rotate(-90 ${fmt(originX - 40)} ${fmt(MARGIN.top + PANEL_H / 2)})">belief std dev</text>`,
  );
  return parts.join("\n");
}

function colorBar(data: PhaseData, originX: number): string {
  const steps = 64;
  const parts: string[] = [];
  const stepH = PANEL_H / steps;
  for (let s = 0; s < steps; s++) {
    const y = MARGIN.top + PANEL_H - (s + 1) * stepH;
    parts.push(
      `<rect x="${fmt(originX)}" y="${fmt(y)}" width="${BAR_W}" height="${fmt(stepH + 0.5)}" fill="${sequentialColor(s / (steps - 1))}"/>`,
    );
  }
  const scale = linearScale([data.betaMin, data.betaMax], [MARGIN.top + PANEL_H, MARGIN.top]);
  for (const t of ticks(data.betaMin, data.betaMax)) {
    parts.push(
      `<text x="${fmt(originX + BAR_W + 4)}" y="${fmt(scale(t) + 3)}" font-size="10">${fmt(t, 1)}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt(originX + BAR_W / 2)}" y="${fmt(MARGIN.top - 12)}" font-size="11" text-anchor="middle">best beta</text>`,
  );
  return parts.join("\n");
}

export function renderHeatmap(csvText: string): string {
  const data = collect(parseCsv(csvText));
  const secondX = MARGIN.left + PANEL_W + PANEL_GAP;
  const barX = secondX + PANEL_W + 30;
  const width = barX + BAR_W + 50 + MARGIN.right;
  const height = MARGIN.top + PANEL_H + MARGIN.bottom;
  const body = [
    panel(data, 0, "most informative rationality (squared-error metric)", MARGIN.left),
    panel(data, 1, "most informative rationality (log-loss metric)", secondX),
    colorBar(data, barX),
  ].join("\n");
  return svgDocument(width, height, body);
}
